#include "minseis/classic.hpp"

namespace minseis {

SearchResult monte_carlo_search(const Graph& g, const EpidemicParams& p, int k, int attempts,
                                RngStream rng) {
    if (attempts < 1) throw ValidationError("search: attempts must be >= 1");
    if (k < 0 || k > g.num_edges())
        throw ValidationError("search: k = " + std::to_string(k) + " outside 0.." +
                              std::to_string(g.num_edges()));
    SearchResult result;
    result.trace.reserve(static_cast<size_t>(attempts));
    bool have_best = false;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        const RngStream stream = rng.substream(static_cast<std::uint64_t>(attempt));
        RandomEngine draw = stream.substream(0).engine();
        Solution candidate = random_solution(g, k, draw);
        const std::int64_t value = evaluate(g, candidate, p, stream.substream(1));
        if (!have_best || value < result.best_value) {  // strict: ties keep the earlier attempt
            result.best_value = value;
            result.best_solution = std::move(candidate);
            have_best = true;
        }
        result.trace.push_back(result.best_value);
    }
    return result;
}

}  // namespace minseis
