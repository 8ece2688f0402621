#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "minseis/search_result.hpp"

namespace minseis {

enum class Encoding { Int, Bin };

// k integer genes, each an edge id in 1..|E|. Valid once all genes are
// distinct, which repair_int restores after variation.
struct IntChromosome {
    std::vector<EdgeId> genes;
};

// |E| bits, bit i <-> edge id i+1. Valid once exactly k bits are set, which
// repair_bin restores after variation.
struct BinChromosome {
    std::vector<std::uint8_t> bits;
};

struct GAConfig {
    Encoding encoding = Encoding::Bin;
    int population_size = 100;
    int generations = 300;
    double crossover_rate = 0.7;
    double exchange_prob = 0.5;
    double mutation_rate = 0.1;
    double tournament_p = 0.7;
    int k = 0;

    void validate() const;
};

// 1 / (1 + worst_value). Strictly decreasing and defined at zero, so it
// orders solutions exactly like worst_value does.
double fitness(std::int64_t worst_value);

// Parametrized uniform crossover: each locus swaps between the two children
// with probability exchange_prob. Parents must have equal length.
std::pair<IntChromosome, IntChromosome> uniform_crossover(const IntChromosome& a,
                                                          const IntChromosome& b,
                                                          double exchange_prob, RandomEngine& rng);
std::pair<BinChromosome, BinChromosome> uniform_crossover(const BinChromosome& a,
                                                          const BinChromosome& b,
                                                          double exchange_prob, RandomEngine& rng);

// Each gene is independently replaced with probability rate by a uniform
// value in 1..num_edges. May introduce duplicates; repair before use.
IntChromosome mutate_int(const IntChromosome& c, double rate, int num_edges, RandomEngine& rng);

// Each bit is independently flipped with probability rate. May break the
// k-ones invariant; repair before use.
BinChromosome mutate_bin(const BinChromosome& c, double rate, RandomEngine& rng);

// Removes duplicate genes (first occurrence wins), then inserts uniformly
// drawn values not already present until the length is k again.
IntChromosome repair_int(const IntChromosome& c, int k, int num_edges, RandomEngine& rng);

// Draws uniform positions, clearing ones while the count exceeds k and
// setting zeros while it falls short. A reducing repair only ever clears
// bits, so its one-set is a subset of the input's; an increasing repair is a
// superset.
BinChromosome repair_bin(const BinChromosome& c, int k, RandomEngine& rng);

// Binary tournament: two contestants drawn uniformly with replacement; the
// fitter wins with probability select_fitter_prob. Always consumes exactly
// one variate for the decision, so selection depends only on the ordering of
// the fitness values.
std::size_t tournament_select(std::span<const double> fitness_values, double select_fitter_prob,
                              RandomEngine& rng);

// The decision step given both contestants; exposed for statistical tests.
std::size_t tournament_winner(std::size_t a, std::size_t b, std::span<const double> fitness_values,
                              double select_fitter_prob, RandomEngine& rng);

Solution decode(const IntChromosome& c);
Solution decode(const BinChromosome& c, int k_hint = -1);

// Generational GA over edge-removal sets. Population initialised with
// uniform random valid chromosomes; each generation evaluates unseen
// chromosomes (previously seen ones reuse their cached value), archives the
// best-ever solution, then breeds the next population with tournament
// selection, uniform crossover at crossover_rate, mutation, and repair.
//
// Stream contract: rng.substream(0) drives initialisation and variation;
// rng.substream(1).substream(i) evaluates the i-th distinct chromosome
// scheduled, counted in population order.
SearchResult run_ga(const Graph& g, const EpidemicParams& p, const GAConfig& cfg, RngStream rng);

}  // namespace minseis
