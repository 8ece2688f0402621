#pragma once

#include <cstdint>
#include <vector>

#include "minseis/graph.hpp"
#include "minseis/rng.hpp"

namespace minseis {

// Transmission and timing parameters of the SEIS dynamics. Probabilities are
// constant over time; the intra-community probability is a per-community
// table so cluster-specific values are honoured.
struct EpidemicParams {
    std::vector<double> intra_prob;  // indexed by community id, entry 0 unused
    double inter_prob = 0.05;
    int exposure_steps = 2;    // steps spent exposed before turning infectious
    int infectious_steps = 4;  // steps spent infectious before turning susceptible
    int horizon = 100;
    int replications = 20;
    std::vector<NodeId> initial_infected;  // sorted, non-empty

    // Same intra-community probability for every community of the graph.
    static EpidemicParams uniform(const Graph& g, double intra, double inter);

    void validate(const Graph& g) const;
};

enum class Compartment : std::uint8_t { Susceptible = 0, Exposed = 1, Infected = 2 };

// The three compartments plus per-node expiry times. The compartments
// partition the node set by construction; transitions keep the counts in
// sync. Single-owner, never shared between threads.
class SimState {
public:
    explicit SimState(int num_nodes)
        : compartment_(static_cast<size_t>(num_nodes) + 1, Compartment::Susceptible),
          expiry_(static_cast<size_t>(num_nodes) + 1, 0),
          susceptible_(num_nodes) {}

    Compartment compartment(NodeId u) const { return compartment_[static_cast<size_t>(u)]; }
    int expiry(NodeId u) const { return expiry_[static_cast<size_t>(u)]; }
    int time() const { return t_; }

    int num_nodes() const { return static_cast<int>(compartment_.size()) - 1; }
    int susceptible_count() const { return susceptible_; }
    int exposed_count() const { return exposed_; }
    int infected_count() const { return infected_; }

    void transition(NodeId u, Compartment to, int expiry_time) {
        adjust(compartment_[static_cast<size_t>(u)], -1);
        adjust(to, +1);
        compartment_[static_cast<size_t>(u)] = to;
        expiry_[static_cast<size_t>(u)] = expiry_time;
    }

    void set_time(int t) { t_ = t; }

private:
    void adjust(Compartment c, int d) {
        switch (c) {
            case Compartment::Susceptible: susceptible_ += d; break;
            case Compartment::Exposed: exposed_ += d; break;
            case Compartment::Infected: infected_ += d; break;
        }
    }

    std::vector<Compartment> compartment_;
    std::vector<int> expiry_;
    int t_ = 0;
    int susceptible_ = 0;
    int exposed_ = 0;
    int infected_ = 0;
};

// A candidate set of removed edges. Always sorted and duplicate-free.
struct Solution {
    std::vector<EdgeId> removed;

    int k() const { return static_cast<int>(removed.size()); }
    void validate(const Graph& g) const;
};

// Membership mask over edge ids; evaluation never copies the graph.
class EdgeMask {
public:
    EdgeMask(const Graph& g, const Solution& s)
        : removed_(static_cast<size_t>(g.num_edges()) + 1, 0) {
        for (EdgeId e : s.removed) removed_[static_cast<size_t>(e)] = 1;
    }

    bool removed(EdgeId e) const { return removed_[static_cast<size_t>(e)] != 0; }

private:
    std::vector<std::uint8_t> removed_;
};

// Seeds start infected with expiry 0 + infectious_steps; everyone else is
// susceptible; t = 0.
SimState init_state(const Graph& g, const EpidemicParams& p);

// One synchronous update at time t (t >= 1). Phase 1 walks infectious nodes
// in ascending id order: expired ones return to susceptible, the rest draw
// one variate per susceptible neighbour (removed edges masked out, neighbours
// in ascending id order) and expose it with the intra- or inter-community
// probability. Phase 2 turns expired exposed nodes infectious. Nodes exposed
// in phase 1 carry expiry t + exposure_steps > t and never convert within the
// same step.
void step(SimState& state, const Graph& g, const EdgeMask& removed, const EpidemicParams& p,
          RandomEngine& rng, int t);
void step(SimState& state, const Graph& g, const Solution& removed, const EpidemicParams& p,
          RandomEngine& rng, int t);

// Runs `replications` independent simulations of the solution and returns the
// worst (largest) accumulated infected count, where each simulation sums
// |infecteds| after every step t = 1..horizon. Replication r draws from
// rng.substream(r), so a given (graph, solution, params, stream) is exactly
// reproducible and replications may run in any order.
std::int64_t evaluate(const Graph& g, const Solution& s, const EpidemicParams& p, RngStream rng);

// k distinct edge ids, uniform over all k-subsets, in sampling order.
std::vector<EdgeId> sample_distinct_edges(int num_edges, int k, RandomEngine& rng);

// Uniform random solution of exactly k edges.
Solution random_solution(const Graph& g, int k, RandomEngine& rng);

}  // namespace minseis
