#include "minseis/netio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace minseis::netio {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool skippable(const std::string& line) { return line.empty() || line[0] == '%'; }

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph load_graph(std::istream& in, LoadDiagnostics* diag) {
    std::string raw;
    int line_no = 0;
    int num_nodes = -1;

    // Header.
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (skippable(line)) continue;
        std::istringstream ls(line);
        std::string marker;
        ls >> marker;
        if (lower(marker) != "*vertices") fail(line_no, "expected *Vertices header, got '" + marker + "'");
        if (!(ls >> num_nodes) || num_nodes < 1) fail(line_no, "malformed vertex count in header");
        break;
    }
    if (num_nodes < 0) throw ParseError("line " + std::to_string(line_no) + ": missing *Vertices header");

    // Vertex label lines (ignored) until the edge section marker.
    bool in_edges = false;
    std::vector<std::pair<NodeId, NodeId>> kept;
    std::set<std::pair<NodeId, NodeId>> seen;
    LoadDiagnostics local;
    int edge_lines = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (skippable(line)) continue;
        if (line[0] == '*') {
            const std::string marker = lower(line.substr(0, line.find_first_of(" \t")));
            if (marker == "*edges" || marker == "*arcs") {
                in_edges = true;
                continue;
            }
            if (!in_edges) continue;  // other sections before edges are ignored
            fail(line_no, "unexpected section '" + marker + "' inside edge list");
        }
        if (!in_edges) continue;  // vertex label line
        std::istringstream ls(line);
        long u = 0, v = 0;
        if (!(ls >> u >> v)) fail(line_no, "malformed edge line '" + line + "'");
        if (u < 1 || u > num_nodes || v < 1 || v > num_nodes)
            fail(line_no, "node index " + std::to_string(u < 1 || u > num_nodes ? u : v) +
                              " outside 1.." + std::to_string(num_nodes));
        ++edge_lines;
        if (u == v) {
            ++local.self_loops_dropped;
            continue;
        }
        const std::pair<NodeId, NodeId> key{std::min<NodeId>(u, v), std::max<NodeId>(u, v)};
        if (!seen.insert(key).second) {
            ++local.duplicate_edges_collapsed;
            continue;
        }
        kept.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    if (!in_edges) fail(line_no, "missing *Edges section");
    if (edge_lines == 0) fail(line_no, "empty edge section");
    if (diag) *diag = local;
    return Graph::from_edges(num_nodes, kept);
}

CommunityMap load_communities(std::istream& in, const Graph& graph) {
    const int n = graph.num_nodes();
    std::vector<CommunityId> assignment(static_cast<size_t>(n) + 1, 0);
    std::string raw;
    int line_no = 0;
    CommunityId max_community = 0;
    std::string problems;
    auto complain = [&problems](const std::string& msg) {
        problems += (problems.empty() ? "" : "; ") + msg;
    };

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (skippable(line)) continue;
        std::istringstream ls(line);
        long node = 0, community = 0;
        if (!(ls >> node >> community))
            throw ParseError("line " + std::to_string(line_no) + ": malformed assignment '" + line + "'");
        if (node < 1 || node > n) {
            complain("assignment for unknown node " + std::to_string(node));
            continue;
        }
        if (community < 1) {
            complain("node " + std::to_string(node) + " has non-positive community id");
            continue;
        }
        if (assignment[static_cast<size_t>(node)] != 0) {
            complain("node " + std::to_string(node) + " assigned more than once");
            continue;
        }
        assignment[static_cast<size_t>(node)] = static_cast<CommunityId>(community);
        max_community = std::max(max_community, static_cast<CommunityId>(community));
    }

    for (NodeId u = 1; u <= n; ++u)
        if (assignment[static_cast<size_t>(u)] == 0) complain("node " + std::to_string(u) + " has no assignment");
    if (!problems.empty()) throw ValidationError("communities: " + problems);

    std::vector<int> used(static_cast<size_t>(max_community) + 1, 0);
    for (NodeId u = 1; u <= n; ++u) ++used[static_cast<size_t>(assignment[static_cast<size_t>(u)])];
    for (CommunityId c = 1; c <= max_community; ++c)
        if (used[static_cast<size_t>(c)] == 0)
            complain("community ids not contiguous, id " + std::to_string(c) + " unused");
    if (!problems.empty()) throw ValidationError("communities: " + problems);

    return CommunityMap{std::move(assignment), max_community};
}

void write_graph(const Graph& g, std::ostream& out) {
    out << "*Vertices " << g.num_nodes() << "\n*Edges\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

void write_communities(const Graph& g, std::ostream& out) {
    for (NodeId u = 1; u <= g.num_nodes(); ++u) out << u << " " << g.community(u) << "\n";
}

Graph load_instance(const std::string& graph_path, const std::string& community_path,
                    LoadDiagnostics* diag) {
    std::ifstream gf(graph_path);
    if (!gf) throw ParseError("cannot open graph file '" + graph_path + "'");
    Graph g = load_graph(gf, diag);
    std::ifstream cf(community_path);
    if (!cf) throw ParseError("cannot open community file '" + community_path + "'");
    return g.with_communities(load_communities(cf, g));
}

std::vector<InstanceInfo> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open manifest '" + path + "'");
    std::vector<InstanceInfo> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%' || t.rfind("name,", 0) == 0) continue;
        std::istringstream ls(t);
        InstanceInfo info;
        char comma = 0;
        if (!std::getline(ls, info.name, ',') || !(ls >> info.nodes >> comma >> info.edges >> comma >> info.communities))
            throw ParseError("line " + std::to_string(line_no) + ": malformed manifest row '" + t + "'");
        out.push_back(std::move(info));
    }
    return out;
}

}  // namespace minseis::netio
