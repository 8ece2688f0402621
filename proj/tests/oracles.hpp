#pragma once

// Test-only reference implementations, kept deliberately naive and separate
// from the library code paths they check.

#include <map>
#include <set>
#include <vector>

#include "minseis/graph.hpp"
#include "minseis/rng.hpp"
#include "minseis/seis.hpp"

namespace oracle {

using namespace minseis;

// Literal two-phase update on ordered sets. Iterates in ascending id order
// and draws one variate per (infectious, susceptible neighbour) pair with the
// candidate edge removed-set erased from the edge list up front.
struct SetSim {
    std::set<NodeId> susceptibles;
    std::map<NodeId, int> exposeds;   // node -> expiry
    std::map<NodeId, int> infecteds;  // node -> expiry

    SetSim(const Graph& g, const EpidemicParams& p) {
        for (NodeId u = 1; u <= g.num_nodes(); ++u) susceptibles.insert(u);
        for (NodeId u : p.initial_infected) {
            susceptibles.erase(u);
            infecteds[u] = p.infectious_steps;
        }
    }

    void step(const Graph& g, const std::set<EdgeId>& removed, const EpidemicParams& p,
              RandomEngine& rng, int t) {
        std::vector<NodeId> infectious(infecteds.size());
        size_t idx = 0;
        for (const auto& [u, expiry] : infecteds) infectious[idx++] = u;
        for (NodeId u : infectious) {
            if (infecteds[u] <= t) {
                infecteds.erase(u);
                susceptibles.insert(u);
                continue;
            }
            for (const auto& nb : g.neighbors(u)) {
                if (removed.count(nb.edge)) continue;
                if (!susceptibles.count(nb.node)) continue;
                const double chance = g.community(nb.node) == g.community(u)
                                          ? p.intra_prob[static_cast<size_t>(g.community(nb.node))]
                                          : p.inter_prob;
                if (rng.uniform_real01() < chance) {
                    susceptibles.erase(nb.node);
                    exposeds[nb.node] = t + p.exposure_steps;
                }
            }
        }
        std::vector<NodeId> waiting;
        for (const auto& [u, expiry] : exposeds)
            if (expiry <= t) waiting.push_back(u);
        for (NodeId u : waiting) {
            exposeds.erase(u);
            infecteds[u] = t + p.infectious_steps;
        }
    }
};

// Reference evaluation with the same per-replication stream derivation as the
// library's evaluate.
inline std::int64_t evaluate(const Graph& g, const Solution& s, const EpidemicParams& p,
                             RngStream rng) {
    const std::set<EdgeId> removed(s.removed.begin(), s.removed.end());
    std::int64_t worst = -1;
    for (int rep = 0; rep < p.replications; ++rep) {
        RandomEngine engine = rng.substream(static_cast<std::uint64_t>(rep)).engine();
        SetSim sim(g, p);
        std::int64_t value = 0;
        for (int t = 1; t <= p.horizon; ++t) {
            sim.step(g, removed, p, engine, t);
            value += static_cast<std::int64_t>(sim.infecteds.size());
        }
        worst = std::max(worst, value);
    }
    return worst;
}

// Nodes reachable from the seeds once the removed edges are erased. With all
// probabilities at 1 this is exactly the ever-infected set.
inline std::set<NodeId> reachable(const Graph& g, const Solution& s,
                                  const std::vector<NodeId>& seeds) {
    const std::set<EdgeId> removed(s.removed.begin(), s.removed.end());
    std::set<NodeId> seen(seeds.begin(), seeds.end());
    std::vector<NodeId> stack(seeds.begin(), seeds.end());
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (const auto& nb : g.neighbors(u)) {
            if (removed.count(nb.edge) || seen.count(nb.node)) continue;
            seen.insert(nb.node);
            stack.push_back(nb.node);
        }
    }
    return seen;
}

// All k-subsets of 1..n.
inline std::vector<std::vector<EdgeId>> subsets(int n, int k) {
    std::vector<std::vector<EdgeId>> out;
    std::vector<EdgeId> cur;
    auto rec = [&](auto&& self, EdgeId next) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        if (next > n) return;
        for (EdgeId e = next; e <= n - (k - static_cast<int>(cur.size())) + 1; ++e) {
            cur.push_back(e);
            self(self, e + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

}  // namespace oracle
