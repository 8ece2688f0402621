#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "minseis/classic.hpp"
#include "oracles.hpp"

using namespace minseis;

namespace {

Graph path4() { return Graph::from_edges(4, {{1, 2}, {2, 3}, {3, 4}}); }

EpidemicParams deterministic_params(const Graph& g, std::vector<NodeId> seeds) {
    EpidemicParams p = EpidemicParams::uniform(g, 1.0, 1.0);
    p.initial_infected = std::move(seeds);
    p.exposure_steps = 1;
    p.infectious_steps = 4;
    p.horizon = 40;
    p.replications = 2;
    return p;
}

}  // namespace

TEST_CASE("attempts must be positive and k in range") {
    const Graph g = path4();
    const EpidemicParams p = deterministic_params(g, {1});
    CHECK_THROWS_AS(monte_carlo_search(g, p, 1, 0, RngStream(1)), ValidationError);
    CHECK_THROWS_AS(monte_carlo_search(g, p, 99, 5, RngStream(1)), ValidationError);
}

TEST_CASE("a single attempt equals drawing and evaluating one random solution") {
    const Graph g = path4();
    const EpidemicParams p = deterministic_params(g, {1});
    const RngStream master(17);
    const SearchResult r = monte_carlo_search(g, p, 1, 1, master);
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0] == r.best_value);
    // Reproduce attempt 0 through the documented stream contract.
    RandomEngine draw = master.substream(0).substream(0).engine();
    const Solution expected = random_solution(g, 1, draw);
    CHECK(r.best_solution.removed == expected.removed);
    CHECK(r.best_value == evaluate(g, expected, p, master.substream(0).substream(1)));
}

TEST_CASE("k = 0 evaluates the unmodified graph on every attempt") {
    const Graph g = path4();
    EpidemicParams p = EpidemicParams::uniform(g, 0.6, 0.6);
    p.initial_infected = {2};
    p.replications = 3;
    p.horizon = 20;
    const RngStream master(5);
    const SearchResult r = monte_carlo_search(g, p, 0, 8, master);
    CHECK(r.best_solution.removed.empty());
    std::int64_t best = -1;
    for (int a = 0; a < 8; ++a) {
        const std::int64_t v = evaluate(g, Solution{}, p, master.substream(a).substream(1));
        best = best < 0 ? v : std::min(best, v);
    }
    CHECK(r.best_value == best);
}

TEST_CASE("finds the enumerated optimum on the deterministic path graph") {
    const Graph g = path4();
    const EpidemicParams p = deterministic_params(g, {1});

    std::int64_t optimum = -1;
    std::int64_t worst_single = -1;
    for (EdgeId e = 1; e <= 3; ++e) {
        const std::int64_t v = oracle::evaluate(g, Solution{{e}}, p, RngStream(0));
        optimum = optimum < 0 ? v : std::min(optimum, v);
        worst_single = std::max(worst_single, v);
    }
    REQUIRE(optimum < worst_single);  // the choice matters on this instance

    const SearchResult r = monte_carlo_search(g, p, 1, 30, RngStream(2));
    CHECK(r.best_value == optimum);
    CHECK(r.best_solution.removed == std::vector<EdgeId>{1});  // isolate the seed
}

TEST_CASE("trace is non-increasing, bounds every attempt, and reproduces bit-for-bit") {
    const Graph g = Graph::from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}, {2, 5}});
    EpidemicParams p = EpidemicParams::uniform(g, 0.5, 0.2);
    p.initial_infected = {1};
    p.replications = 4;
    p.horizon = 25;
    const SearchResult a = monte_carlo_search(g, p, 3, 40, RngStream(9));
    const SearchResult b = monte_carlo_search(g, p, 3, 40, RngStream(9));
    CHECK(a.best_value == b.best_value);
    CHECK(a.best_solution.removed == b.best_solution.removed);
    CHECK(a.trace == b.trace);
    REQUIRE(a.trace.size() == 40);
    CHECK(a.trace.back() == a.best_value);
    for (size_t i = 1; i < a.trace.size(); ++i) CHECK(a.trace[i] <= a.trace[i - 1]);
    for (size_t i = 0; i < a.trace.size(); ++i) {
        const std::int64_t attempt_value =
            evaluate(g, [&] {
                RandomEngine draw = RngStream(9).substream(i).substream(0).engine();
                return random_solution(g, 3, draw);
            }(), p, RngStream(9).substream(i).substream(1));
        CHECK(a.trace[i] <= attempt_value);
    }
}

TEST_CASE("converges to the enumerated optimum when attempts dwarf the search space") {
    const Graph g = Graph::from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 4}});
    const EpidemicParams p = deterministic_params(g, {2});

    std::int64_t optimum = -1;
    for (const auto& subset : oracle::subsets(g.num_edges(), 2)) {
        const std::int64_t v = oracle::evaluate(g, Solution{subset}, p, RngStream(0));
        optimum = optimum < 0 ? v : std::min(optimum, v);
    }
    const SearchResult r = monte_carlo_search(g, p, 2, 120, RngStream(4));
    CHECK(r.best_value == optimum);
}
