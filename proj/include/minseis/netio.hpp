#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "minseis/graph.hpp"

namespace minseis::netio {

struct LoadDiagnostics {
    int duplicate_edges_collapsed = 0;
    int self_loops_dropped = 0;
};

// Reads a Pajek-style network: `*Vertices <n>`, optional vertex lines
// (ignored), `*Edges` or `*Arcs`, then `<u> <v> [<weight>]` per line.
// Weights are parsed and discarded; `%` starts a comment. Duplicate edges
// collapse to the first occurrence and self-loops are dropped, both counted
// in the diagnostics. Throws ParseError with the offending line number.
Graph load_graph(std::istream& in, LoadDiagnostics* diag = nullptr);

// Reads `<node_id> <community_id>` lines and validates them against the
// graph: every node assigned exactly once, community ids contiguous from 1.
// Throws ValidationError listing the offenders.
CommunityMap load_communities(std::istream& in, const Graph& graph);

// Writes the graph back in the same format. Reloading yields an identical
// edge list with identical edge ids.
void write_graph(const Graph& g, std::ostream& out);

void write_communities(const Graph& g, std::ostream& out);

// Convenience: graph file + community file -> labelled graph.
Graph load_instance(const std::string& graph_path, const std::string& community_path,
                    LoadDiagnostics* diag = nullptr);

struct InstanceInfo {
    std::string name;
    int nodes = 0;
    int edges = 0;
    int communities = 0;
};

// Reads the bundled-instance manifest (CSV: name,nodes,edges,communities).
std::vector<InstanceInfo> load_manifest(const std::string& path);

}  // namespace minseis::netio
