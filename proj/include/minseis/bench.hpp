#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minseis/evolve.hpp"
#include "minseis/netio.hpp"
#include "minseis/search_result.hpp"

namespace minseis::bench {

struct InstanceRef {
    std::string name;
    std::string graph_path;
    std::string community_path;
};

enum class Method { Classic, GaInt, GaBin };

struct MethodSpec {
    Method method = Method::Classic;
    int population_size = 0;  // 0 for classic
};

// "classic", "ga-int:10", "ga-bin:100".
MethodSpec parse_method(const std::string& text);

// "classic", "ga-int 10", "ga-bin 100".
std::string method_label(const MethodSpec& m);
std::string method_name(Method m);

struct ExperimentConfig {
    std::vector<InstanceRef> instances;
    std::vector<double> k_fractions = {0.1, 0.3, 0.5};
    std::vector<MethodSpec> methods;  // defaulted by default_methods()
    int samples = 10;
    int iterations = 300;  // attempts for classic, generations for the GAs
    int replications = 20;
    int horizon = 100;
    double initial_infected_fraction = 0.1;
    double intra_prob = 0.15;
    double inter_prob = 0.05;
    int exposure_steps = 2;
    int infectious_steps = 4;
    double crossover_rate = 0.7;
    double exchange_prob = 0.5;
    double mutation_rate = 0.1;
    double tournament_p = 0.7;
    std::uint64_t master_seed = 1;
    int jobs = 1;
    std::string out_dir = "results";

    void validate() const;
};

std::vector<MethodSpec> default_methods();

struct RunRecord {
    std::string instance;
    MethodSpec method;
    double k_fraction = 0;
    int k = 0;
    int sample = 0;
    std::int64_t best_value = 0;
    std::vector<std::int64_t> trace;
    std::int64_t wall_ms = 0;
};

struct SummaryRow {
    std::string instance;
    std::string method;
    double k_fraction = 0;
    double mean = 0;
    double stderror = 0;
};

struct ScalabilityRow {
    std::string instance;
    std::string method;
    double k_fraction = 0;
    int edges = 0;
    double prop_infections = 0;
};

struct DerivedProblem {
    EpidemicParams params;
    std::vector<int> k_values;  // one per k_fraction, round-half-up of fraction*|E|
};

// Per-sample problem: k values from the fractions, and an initial seed set of
// ceil(fraction*|V|) nodes drawn from a stream keyed by (master_seed,
// instance, sample). The seed set is shared by every method of the sample.
DerivedProblem derive_problem(const Graph& g, const std::string& instance_name,
                              const ExperimentConfig& cfg, int sample_index);

// Runs the instances x k_fractions x methods x samples cross product,
// streaming rows to <out_dir>/results.csv and per-cell traces to
// <out_dir>/traces/ as cells complete. Cells whose key already exists in
// results.csv are not recomputed, so interrupted campaigns resume. Also
// writes summary.csv (when samples >= 2) and scalability.csv.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

// Mean and standard error (n-1 sample deviation over sqrt(n)) of best_value
// per (instance, method, k) group. Every group needs at least two records.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

// Figure-of-merit for scalability plots: sum of the per-iteration best-so-far
// trace divided by |V|*iterations, averaged over the given records (which
// must share one instance/method/k cell group).
double scalability_metric(const std::vector<const RunRecord*>& records, int num_nodes,
                          int iterations);

// One row per (instance, method, k) group.
std::vector<ScalabilityRow> scalability_rows(const std::vector<RunRecord>& records,
                                             const std::map<std::string, const Graph*>& graphs,
                                             int iterations);

// DOT rendering with removed edges and seed nodes coloured for external
// layout tools.
std::string export_solution_dot(const Graph& g, const Solution& s,
                                const std::vector<NodeId>& initial_infected);

}  // namespace minseis::bench
