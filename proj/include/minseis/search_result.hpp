#pragma once

#include <cstdint>
#include <vector>

#include "minseis/seis.hpp"

namespace minseis {

// Outcome of a search run. `trace` holds the best-so-far value after each
// iteration (attempt or generation) and is non-increasing; its last entry
// equals best_value.
struct SearchResult {
    Solution best_solution;
    std::int64_t best_value = 0;
    std::vector<std::int64_t> trace;
};

}  // namespace minseis
