#include "minseis/evolve.hpp"

#include <algorithm>
#include <unordered_map>

namespace minseis {

namespace {

void check_probability(double v, const char* name) {
    if (v < 0.0 || v > 1.0)
        throw ValidationError(std::string("ga: ") + name + " outside [0,1]");
}

template <typename T>
std::pair<std::vector<T>, std::vector<T>> crossover_genes(const std::vector<T>& a,
                                                          const std::vector<T>& b,
                                                          double exchange_prob,
                                                          RandomEngine& rng) {
    if (a.size() != b.size()) throw ValidationError("crossover: parents differ in length");
    check_probability(exchange_prob, "exchange probability");
    std::vector<T> child_a = a;
    std::vector<T> child_b = b;
    for (size_t i = 0; i < child_a.size(); ++i)
        if (rng.uniform_real01() < exchange_prob) std::swap(child_a[i], child_b[i]);
    return {std::move(child_a), std::move(child_b)};
}

struct SolutionKeyHash {
    size_t operator()(const std::vector<EdgeId>& key) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (EdgeId e : key) {
            h ^= static_cast<std::uint64_t>(e);
            h *= 0x100000001b3ULL;
        }
        return static_cast<size_t>(h);
    }
};

// Encoding policies: what differs between GA-Int and GA-Bin.
struct IntEncoding {
    using Chromosome = IntChromosome;
    static Chromosome random(const Graph& g, int k, RandomEngine& rng) {
        return {sample_distinct_edges(g.num_edges(), k, rng)};
    }
    static Chromosome vary(const Chromosome& c, const GAConfig& cfg, int num_edges,
                           RandomEngine& rng) {
        return repair_int(mutate_int(c, cfg.mutation_rate, num_edges, rng), cfg.k, num_edges, rng);
    }
    static std::pair<Chromosome, Chromosome> cross(const Chromosome& a, const Chromosome& b,
                                                   double exchange_prob, RandomEngine& rng) {
        return uniform_crossover(a, b, exchange_prob, rng);
    }
    static Solution to_solution(const Chromosome& c) { return decode(c); }
};

struct BinEncoding {
    using Chromosome = BinChromosome;
    static Chromosome random(const Graph& g, int k, RandomEngine& rng) {
        Chromosome c{std::vector<std::uint8_t>(static_cast<size_t>(g.num_edges()), 0)};
        for (EdgeId e : sample_distinct_edges(g.num_edges(), k, rng))
            c.bits[static_cast<size_t>(e) - 1] = 1;
        return c;
    }
    static Chromosome vary(const Chromosome& c, const GAConfig& cfg, int /*num_edges*/,
                           RandomEngine& rng) {
        return repair_bin(mutate_bin(c, cfg.mutation_rate, rng), cfg.k, rng);
    }
    static std::pair<Chromosome, Chromosome> cross(const Chromosome& a, const Chromosome& b,
                                                   double exchange_prob, RandomEngine& rng) {
        return uniform_crossover(a, b, exchange_prob, rng);
    }
    static Solution to_solution(const Chromosome& c) { return decode(c); }
};

template <typename Encoding>
SearchResult run_ga_impl(const Graph& g, const EpidemicParams& p, const GAConfig& cfg,
                         RngStream rng) {
    using Chromosome = typename Encoding::Chromosome;
    struct Individual {
        Chromosome chromosome;
        Solution solution;
        std::int64_t value = 0;
        double fit = 0.0;
    };

    RandomEngine variation = rng.substream(0).engine();
    const RngStream eval_streams = rng.substream(1);
    std::uint64_t eval_counter = 0;
    std::unordered_map<std::vector<EdgeId>, std::int64_t, SolutionKeyHash> cache;

    auto evaluate_population = [&](std::vector<Individual>& population) {
        for (Individual& ind : population) {
            ind.solution = Encoding::to_solution(ind.chromosome);
            auto [it, inserted] = cache.try_emplace(ind.solution.removed, 0);
            if (inserted)
                it->second = evaluate(g, ind.solution, p, eval_streams.substream(eval_counter++));
            ind.value = it->second;
            ind.fit = fitness(ind.value);
        }
    };

    std::vector<Individual> population(static_cast<size_t>(cfg.population_size));
    for (Individual& ind : population) ind.chromosome = Encoding::random(g, cfg.k, variation);

    SearchResult result;
    result.trace.reserve(static_cast<size_t>(cfg.generations));
    bool have_best = false;
    std::vector<double> fitness_values(population.size());

    for (int generation = 0; generation < cfg.generations; ++generation) {
        evaluate_population(population);
        for (const Individual& ind : population) {
            if (!have_best || ind.value < result.best_value) {
                result.best_value = ind.value;
                result.best_solution = ind.solution;
                have_best = true;
            }
        }
        result.trace.push_back(result.best_value);
        if (generation + 1 == cfg.generations) break;

        for (size_t i = 0; i < population.size(); ++i) fitness_values[i] = population[i].fit;
        std::vector<Individual> next;
        next.reserve(population.size());
        while (next.size() < population.size()) {
            const size_t ia = tournament_select(fitness_values, cfg.tournament_p, variation);
            const size_t ib = tournament_select(fitness_values, cfg.tournament_p, variation);
            Chromosome child_a = population[ia].chromosome;
            Chromosome child_b = population[ib].chromosome;
            if (variation.uniform_real01() < cfg.crossover_rate) {
                auto crossed = Encoding::cross(child_a, child_b, cfg.exchange_prob, variation);
                child_a = std::move(crossed.first);
                child_b = std::move(crossed.second);
            }
            next.push_back({Encoding::vary(child_a, cfg, g.num_edges(), variation), {}, 0, 0.0});
            if (next.size() < population.size())
                next.push_back({Encoding::vary(child_b, cfg, g.num_edges(), variation), {}, 0, 0.0});
        }
        population = std::move(next);
    }
    return result;
}

}  // namespace

void GAConfig::validate() const {
    if (population_size < 2) throw ValidationError("ga: population size must be >= 2");
    if (generations < 1) throw ValidationError("ga: generations must be >= 1");
    check_probability(crossover_rate, "crossover rate");
    check_probability(exchange_prob, "exchange probability");
    check_probability(mutation_rate, "mutation rate");
    check_probability(tournament_p, "tournament probability");
    if (k < 0) throw ValidationError("ga: k must be >= 0");
}

double fitness(std::int64_t worst_value) { return 1.0 / (1.0 + static_cast<double>(worst_value)); }

std::pair<IntChromosome, IntChromosome> uniform_crossover(const IntChromosome& a,
                                                          const IntChromosome& b,
                                                          double exchange_prob, RandomEngine& rng) {
    auto [ga, gb] = crossover_genes(a.genes, b.genes, exchange_prob, rng);
    return {IntChromosome{std::move(ga)}, IntChromosome{std::move(gb)}};
}

std::pair<BinChromosome, BinChromosome> uniform_crossover(const BinChromosome& a,
                                                          const BinChromosome& b,
                                                          double exchange_prob, RandomEngine& rng) {
    auto [ba, bb] = crossover_genes(a.bits, b.bits, exchange_prob, rng);
    return {BinChromosome{std::move(ba)}, BinChromosome{std::move(bb)}};
}

IntChromosome mutate_int(const IntChromosome& c, double rate, int num_edges, RandomEngine& rng) {
    check_probability(rate, "mutation rate");
    IntChromosome out = c;
    for (EdgeId& gene : out.genes)
        if (rng.uniform_real01() < rate)
            gene = static_cast<EdgeId>(1 + rng.uniform_below(static_cast<std::uint64_t>(num_edges)));
    return out;
}

BinChromosome mutate_bin(const BinChromosome& c, double rate, RandomEngine& rng) {
    check_probability(rate, "mutation rate");
    BinChromosome out = c;
    for (std::uint8_t& bit : out.bits)
        if (rng.uniform_real01() < rate) bit ^= 1;
    return out;
}

IntChromosome repair_int(const IntChromosome& c, int k, int num_edges, RandomEngine& rng) {
    if (k > num_edges) throw ValidationError("repair: k exceeds edge count");
    std::vector<std::uint8_t> present(static_cast<size_t>(num_edges) + 1, 0);
    IntChromosome out;
    out.genes.reserve(static_cast<size_t>(k));
    for (EdgeId gene : c.genes) {
        if (gene < 1 || gene > num_edges)
            throw ValidationError("repair: gene " + std::to_string(gene) + " outside 1.." +
                                  std::to_string(num_edges));
        if (present[static_cast<size_t>(gene)]) continue;  // drop later duplicates
        present[static_cast<size_t>(gene)] = 1;
        out.genes.push_back(gene);
    }
    if (static_cast<int>(out.genes.size()) > k)
        throw ValidationError("repair: chromosome longer than k after deduplication");
    while (static_cast<int>(out.genes.size()) < k) {
        const auto gene =
            static_cast<EdgeId>(1 + rng.uniform_below(static_cast<std::uint64_t>(num_edges)));
        if (present[static_cast<size_t>(gene)]) continue;
        present[static_cast<size_t>(gene)] = 1;
        out.genes.push_back(gene);
    }
    return out;
}

BinChromosome repair_bin(const BinChromosome& c, int k, RandomEngine& rng) {
    const int length = static_cast<int>(c.bits.size());
    if (k > length) throw ValidationError("repair: k exceeds chromosome length");
    BinChromosome out = c;
    int ones = static_cast<int>(std::count(out.bits.begin(), out.bits.end(), std::uint8_t{1}));
    while (ones != k) {
        const auto i = rng.uniform_below(static_cast<std::uint64_t>(length));
        if (ones > k) {
            if (out.bits[i]) {
                out.bits[i] = 0;
                --ones;
            }
        } else if (!out.bits[i]) {
            out.bits[i] = 1;
            ++ones;
        }
    }
    return out;
}

std::size_t tournament_winner(std::size_t a, std::size_t b, std::span<const double> fitness_values,
                              double select_fitter_prob, RandomEngine& rng) {
    const std::size_t fitter = fitness_values[b] > fitness_values[a] ? b : a;
    const std::size_t other = fitter == b ? a : b;
    return rng.uniform_real01() < select_fitter_prob ? fitter : other;
}

std::size_t tournament_select(std::span<const double> fitness_values, double select_fitter_prob,
                              RandomEngine& rng) {
    if (fitness_values.empty()) throw ValidationError("tournament: empty population");
    const std::size_t a = rng.uniform_below(fitness_values.size());
    const std::size_t b = rng.uniform_below(fitness_values.size());
    return tournament_winner(a, b, fitness_values, select_fitter_prob, rng);
}

Solution decode(const IntChromosome& c) {
    Solution s{c.genes};
    std::sort(s.removed.begin(), s.removed.end());
    return s;
}

Solution decode(const BinChromosome& c, int k_hint) {
    Solution s;
    if (k_hint > 0) s.removed.reserve(static_cast<size_t>(k_hint));
    for (size_t i = 0; i < c.bits.size(); ++i)
        if (c.bits[i]) s.removed.push_back(static_cast<EdgeId>(i + 1));
    return s;
}

SearchResult run_ga(const Graph& g, const EpidemicParams& p, const GAConfig& cfg, RngStream rng) {
    cfg.validate();
    if (cfg.k > g.num_edges())
        throw ValidationError("ga: k = " + std::to_string(cfg.k) + " exceeds |E| = " +
                              std::to_string(g.num_edges()));
    return cfg.encoding == Encoding::Int ? run_ga_impl<IntEncoding>(g, p, cfg, rng)
                                         : run_ga_impl<BinEncoding>(g, p, cfg, rng);
}

}  // namespace minseis
