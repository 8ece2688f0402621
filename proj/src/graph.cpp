#include "minseis/graph.hpp"

#include <algorithm>
#include <set>

namespace minseis {

Graph Graph::from_edges(int num_nodes, const std::vector<std::pair<NodeId, NodeId>>& edge_list) {
    if (num_nodes < 0) throw ValidationError("graph: negative node count");
    Graph g;
    g.num_nodes_ = num_nodes;
    std::set<std::pair<NodeId, NodeId>> seen;
    for (auto [u, v] : edge_list) {
        if (u < 1 || u > num_nodes || v < 1 || v > num_nodes)
            throw ValidationError("graph: edge endpoint outside 1.." + std::to_string(num_nodes));
        if (u == v) continue;
        const std::pair<NodeId, NodeId> key{std::min(u, v), std::max(u, v)};
        if (!seen.insert(key).second) continue;
        g.edges_.emplace_back(u, v);
    }
    g.community_.assign(static_cast<size_t>(num_nodes) + 1, 1);
    g.num_communities_ = 1;
    g.build_adjacency();
    return g;
}

void Graph::build_adjacency() {
    offsets_.assign(static_cast<size_t>(num_nodes_) + 2, 0);
    for (auto [u, v] : edges_) {
        ++offsets_[static_cast<size_t>(u) + 1];
        ++offsets_[static_cast<size_t>(v) + 1];
    }
    for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(edges_.size() * 2);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end());
    for (size_t i = 0; i < edges_.size(); ++i) {
        const auto [u, v] = edges_[i];
        const EdgeId id = static_cast<EdgeId>(i) + 1;
        adjacency_[fill[static_cast<size_t>(u)]++] = {v, id};
        adjacency_[fill[static_cast<size_t>(v)]++] = {u, id};
    }
    for (NodeId u = 1; u <= num_nodes_; ++u) {
        auto begin = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[static_cast<size_t>(u)]);
        auto end = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[static_cast<size_t>(u) + 1]);
        std::sort(begin, end, [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
}

Graph Graph::with_communities(const CommunityMap& map) const {
    if (static_cast<int>(map.assignment.size()) != num_nodes_ + 1)
        throw ValidationError("communities: expected assignments for " +
                              std::to_string(num_nodes_) + " nodes, got " +
                              std::to_string(map.assignment.empty() ? 0 : map.assignment.size() - 1));
    std::vector<int> used(static_cast<size_t>(map.num_communities) + 1, 0);
    for (NodeId u = 1; u <= num_nodes_; ++u) {
        const CommunityId c = map.assignment[static_cast<size_t>(u)];
        if (c < 1 || c > map.num_communities)
            throw ValidationError("communities: node " + std::to_string(u) +
                                  " has community id " + std::to_string(c) + " outside 1.." +
                                  std::to_string(map.num_communities));
        ++used[static_cast<size_t>(c)];
    }
    std::string missing;
    for (CommunityId c = 1; c <= map.num_communities; ++c)
        if (used[static_cast<size_t>(c)] == 0) missing += (missing.empty() ? "" : ", ") + std::to_string(c);
    if (!missing.empty())
        throw ValidationError("communities: ids not contiguous, no node in community " + missing);
    Graph g = *this;
    g.community_ = map.assignment;
    g.num_communities_ = map.num_communities;
    return g;
}

}  // namespace minseis
