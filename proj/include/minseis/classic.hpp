#pragma once

#include "minseis/search_result.hpp"

namespace minseis {

// Monte Carlo baseline: draw `attempts` uniform random solutions, evaluate
// each, keep the one with the smallest worst-case value (ties keep the
// earlier attempt).
//
// Stream contract: attempt a uses rng.substream(a); the solution is drawn
// from its substream(0) and the evaluation from its substream(1). Attempts
// are therefore independent and may be computed concurrently without
// changing the result.
SearchResult monte_carlo_search(const Graph& g, const EpidemicParams& p, int k, int attempts,
                                RngStream rng);

}  // namespace minseis
