#include "minseis/seis.hpp"

#include <algorithm>
#include <numeric>

namespace minseis {

EpidemicParams EpidemicParams::uniform(const Graph& g, double intra, double inter) {
    EpidemicParams p;
    p.intra_prob.assign(static_cast<size_t>(g.num_communities()) + 1, intra);
    p.inter_prob = inter;
    return p;
}

void EpidemicParams::validate(const Graph& g) const {
    if (static_cast<int>(intra_prob.size()) < g.num_communities() + 1)
        throw ValidationError("params: intra-community probability table smaller than community count");
    for (CommunityId c = 1; c <= g.num_communities(); ++c) {
        const double chi = intra_prob[static_cast<size_t>(c)];
        if (chi < 0.0 || chi > 1.0)
            throw ValidationError("params: intra-community probability for community " +
                                  std::to_string(c) + " outside [0,1]");
    }
    if (inter_prob < 0.0 || inter_prob > 1.0)
        throw ValidationError("params: inter-community probability outside [0,1]");
    if (exposure_steps < 1) throw ValidationError("params: exposure duration must be >= 1");
    if (infectious_steps < 1) throw ValidationError("params: infectious duration must be >= 1");
    if (horizon < 1) throw ValidationError("params: horizon must be >= 1");
    if (replications < 1) throw ValidationError("params: replications must be >= 1");
    if (initial_infected.empty()) throw ValidationError("params: initial infected set is empty");
    for (size_t i = 0; i < initial_infected.size(); ++i) {
        const NodeId u = initial_infected[i];
        if (u < 1 || u > g.num_nodes())
            throw ValidationError("params: initial infected node " + std::to_string(u) +
                                  " outside 1.." + std::to_string(g.num_nodes()));
        if (i > 0 && initial_infected[i - 1] >= u)
            throw ValidationError("params: initial infected set must be sorted and duplicate-free");
    }
}

void Solution::validate(const Graph& g) const {
    for (size_t i = 0; i < removed.size(); ++i) {
        if (removed[i] < 1 || removed[i] > g.num_edges())
            throw ValidationError("solution: edge id " + std::to_string(removed[i]) +
                                  " outside 1.." + std::to_string(g.num_edges()));
        if (i > 0 && removed[i - 1] >= removed[i])
            throw ValidationError("solution: edge ids must be sorted and distinct");
    }
}

SimState init_state(const Graph& g, const EpidemicParams& p) {
    p.validate(g);
    SimState state(g.num_nodes());
    for (NodeId u : p.initial_infected)
        state.transition(u, Compartment::Infected, p.infectious_steps);  // expiry = 0 + duration
    return state;
}

void step(SimState& state, const Graph& g, const EdgeMask& removed, const EpidemicParams& p,
          RandomEngine& rng, int t) {
    const int n = g.num_nodes();

    // Phase 1: infectious nodes, ascending id. A node that recovers here
    // re-enters the susceptible pool and can be re-exposed by a higher-id
    // infectious neighbour within the same step.
    for (NodeId u = 1; u <= n; ++u) {
        if (state.compartment(u) != Compartment::Infected) continue;
        if (state.expiry(u) <= t) {
            state.transition(u, Compartment::Susceptible, 0);
            continue;
        }
        const CommunityId cu = g.community(u);
        for (const auto& nb : g.neighbors(u)) {
            if (removed.removed(nb.edge)) continue;
            if (state.compartment(nb.node) != Compartment::Susceptible) continue;
            const CommunityId cv = g.community(nb.node);
            const double chance =
                cv == cu ? p.intra_prob[static_cast<size_t>(cv)] : p.inter_prob;
            if (rng.uniform_real01() < chance)
                state.transition(nb.node, Compartment::Exposed, t + p.exposure_steps);
        }
    }

    // Phase 2: exposed nodes whose incubation elapsed become infectious.
    for (NodeId u = 1; u <= n; ++u) {
        if (state.compartment(u) == Compartment::Exposed && state.expiry(u) <= t)
            state.transition(u, Compartment::Infected, t + p.infectious_steps);
    }

    state.set_time(t);
}

void step(SimState& state, const Graph& g, const Solution& removed, const EpidemicParams& p,
          RandomEngine& rng, int t) {
    step(state, g, EdgeMask(g, removed), p, rng, t);
}

std::int64_t evaluate(const Graph& g, const Solution& s, const EpidemicParams& p, RngStream rng) {
    s.validate(g);
    p.validate(g);
    const EdgeMask mask(g, s);
    std::int64_t worst = -1;
    for (int rep = 0; rep < p.replications; ++rep) {
        RandomEngine engine = rng.substream(static_cast<std::uint64_t>(rep)).engine();
        SimState state = init_state(g, p);
        std::int64_t value = 0;
        for (int t = 1; t <= p.horizon; ++t) {
            step(state, g, mask, p, engine, t);
            value += state.infected_count();
            // Nothing can change once both active compartments are empty;
            // the remaining steps contribute zero.
            if (state.infected_count() == 0 && state.exposed_count() == 0) break;
        }
        worst = std::max(worst, value);
    }
    return worst;
}

std::vector<EdgeId> sample_distinct_edges(int num_edges, int k, RandomEngine& rng) {
    if (k < 0 || k > num_edges)
        throw ValidationError("sample: k = " + std::to_string(k) + " outside 0.." +
                              std::to_string(num_edges));
    std::vector<EdgeId> pool(static_cast<size_t>(num_edges));
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < k; ++i) {
        const auto j = static_cast<size_t>(i) +
                       rng.uniform_below(static_cast<std::uint64_t>(num_edges - i));
        std::swap(pool[static_cast<size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<size_t>(k));
    return pool;
}

Solution random_solution(const Graph& g, int k, RandomEngine& rng) {
    Solution s{sample_distinct_edges(g.num_edges(), k, rng)};
    std::sort(s.removed.begin(), s.removed.end());
    return s;
}

}  // namespace minseis
