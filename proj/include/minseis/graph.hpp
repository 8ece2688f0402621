#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minseis {

using NodeId = std::int32_t;       // 1-based
using EdgeId = std::int32_t;       // 1-based, numbered in file order
using CommunityId = std::int32_t;  // 1-based, contiguous

// Input file could not be read as the expected format. Message carries the
// offending line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs are well-formed but violate a model invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommunityMap {
    std::vector<CommunityId> assignment;  // index 0 unused
    int num_communities = 0;
};

// Immutable undirected graph. Edge identifiers are 1..|E| with no gaps;
// adjacency lists are sorted by neighbour id. Instances are safe to share
// across concurrent evaluations once constructed.
class Graph {
public:
    struct Neighbor {
        NodeId node;
        EdgeId edge;
    };

    // Builds a graph from an edge list, collapsing duplicate edges (first
    // occurrence keeps its position) and dropping self-loops. Node ids must
    // lie in 1..num_nodes. All nodes start in community 1.
    static Graph from_edges(int num_nodes, const std::vector<std::pair<NodeId, NodeId>>& edge_list);

    int num_nodes() const { return num_nodes_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    std::pair<NodeId, NodeId> edge(EdgeId id) const { return edges_[static_cast<size_t>(id) - 1]; }
    const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

    std::span<const Neighbor> neighbors(NodeId u) const {
        return {adjacency_.data() + offsets_[static_cast<size_t>(u)],
                adjacency_.data() + offsets_[static_cast<size_t>(u) + 1]};
    }

    int degree(NodeId u) const { return static_cast<int>(neighbors(u).size()); }

    CommunityId community(NodeId u) const { return community_[static_cast<size_t>(u)]; }
    int num_communities() const { return num_communities_; }

    // Returns a copy carrying the given community labels. The map must cover
    // every node exactly once with contiguous community ids.
    Graph with_communities(const CommunityMap& map) const;

private:
    Graph() = default;
    void build_adjacency();

    int num_nodes_ = 0;
    int num_communities_ = 1;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::size_t> offsets_;     // size num_nodes_ + 2
    std::vector<Neighbor> adjacency_;      // 2|E| entries, sorted per node
    std::vector<CommunityId> community_;   // size num_nodes_ + 1, index 0 unused
};

}  // namespace minseis
