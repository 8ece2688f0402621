#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

#include "minseis/bench.hpp"

using namespace minseis;
namespace fs = std::filesystem;

namespace {

std::string data_dir() {
    const char* env = std::getenv("MINSEIS_DATA");
    REQUIRE_MESSAGE(env != nullptr, "MINSEIS_DATA must point at the bundled instances");
    return env;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("minseis_test_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// Tiny instance: a 4-node cycle in two communities.
void write_tiny_instance(const fs::path& dir, const std::string& name) {
    std::ofstream net(dir / (name + ".net"));
    net << "*Vertices 4\n*Edges\n1 2\n2 3\n3 4\n4 1\n";
    std::ofstream com(dir / (name + ".com"));
    com << "1 1\n2 1\n3 2\n4 2\n";
}

bench::ExperimentConfig tiny_config(const fs::path& dir, const std::string& out) {
    bench::ExperimentConfig cfg;
    cfg.instances = {{"tiny", (dir / "tiny.net").string(), (dir / "tiny.com").string()}};
    cfg.k_fractions = {0.5};
    cfg.methods = {{bench::Method::Classic, 0}};
    cfg.samples = 2;
    cfg.iterations = 4;
    cfg.replications = 2;
    cfg.horizon = 10;
    cfg.initial_infected_fraction = 0.25;
    cfg.master_seed = 3;
    cfg.out_dir = out;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("method parsing and labels") {
    CHECK(bench::parse_method("classic").method == bench::Method::Classic);
    const auto gi = bench::parse_method("ga-int:10");
    CHECK(gi.method == bench::Method::GaInt);
    CHECK(gi.population_size == 10);
    CHECK(bench::method_label(bench::parse_method("ga-bin:100")) == "ga-bin 100");
    CHECK_THROWS_AS(bench::parse_method("simulated-annealing"), ValidationError);
    CHECK_THROWS_AS(bench::parse_method("ga-bin"), ValidationError);
    CHECK_THROWS_AS(bench::parse_method("classic:5"), ValidationError);
}

TEST_CASE("derive_problem on the strike instance") {
    const std::string dir = data_dir();
    const Graph g = netio::load_instance(dir + "/strike.net", dir + "/strike.com");
    bench::ExperimentConfig cfg;
    cfg.instances = {{"strike", "", ""}};
    cfg.methods = bench::default_methods();

    const auto problem = bench::derive_problem(g, "strike", cfg, 0);
    CHECK(problem.params.initial_infected.size() == 3);  // ceil(0.1 * 24)
    CHECK(problem.k_values == std::vector<int>{4, 11, 19});

    SUBCASE("seed sets are per (instance, sample), shared across methods") {
        const auto again = bench::derive_problem(g, "strike", cfg, 0);
        CHECK(again.params.initial_infected == problem.params.initial_infected);
        const auto other_sample = bench::derive_problem(g, "strike", cfg, 1);
        CHECK(other_sample.params.initial_infected != problem.params.initial_infected);
        const auto other_name = bench::derive_problem(g, "strikex", cfg, 0);
        CHECK(other_name.params.initial_infected != problem.params.initial_infected);
    }
    SUBCASE("zero fraction gives an empty removal budget") {
        cfg.k_fractions = {0.0};
        CHECK(bench::derive_problem(g, "strike", cfg, 0).k_values == std::vector<int>{0});
    }
    SUBCASE("fractions outside [0,1] are rejected") {
        cfg.k_fractions = {1.5};
        CHECK_THROWS_AS(bench::derive_problem(g, "strike", cfg, 0), ValidationError);
    }
}

TEST_CASE("summarize computes mean and standard error") {
    auto record = [](std::int64_t v, int sample) {
        bench::RunRecord r;
        r.instance = "x";
        r.method = {bench::Method::Classic, 0};
        r.k_fraction = 0.1;
        r.k = 2;
        r.sample = sample;
        r.best_value = v;
        return r;
    };

    SUBCASE("textbook case {1,2,3}") {
        const auto rows = bench::summarize({record(1, 0), record(2, 1), record(3, 2)});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].mean == doctest::Approx(2.0));
        CHECK(rows[0].stderror == doctest::Approx(1.0 / std::sqrt(3.0)));
    }
    SUBCASE("identical values have zero standard error") {
        const auto rows = bench::summarize({record(7, 0), record(7, 1), record(7, 2)});
        CHECK(rows[0].mean == doctest::Approx(7.0));
        CHECK(rows[0].stderror == doctest::Approx(0.0));
    }
    SUBCASE("a single record cannot be summarised") {
        CHECK_THROWS_AS(bench::summarize({record(1, 0)}), ValidationError);
    }
    SUBCASE("record order does not matter") {
        std::vector<bench::RunRecord> records;
        for (int i = 0; i < 8; ++i) records.push_back(record(10 + 3 * i, i));
        auto shuffled = records;
        std::mt19937 rng(4);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto a = bench::summarize(records);
        const auto b = bench::summarize(shuffled);
        REQUIRE(a.size() == b.size());
        CHECK(a[0].mean == b[0].mean);
        CHECK(a[0].stderror == b[0].stderror);
    }
}

TEST_CASE("scalability metric") {
    auto record = [](std::vector<std::int64_t> trace) {
        bench::RunRecord r;
        r.instance = "x";
        r.method = {bench::Method::Classic, 0};
        r.trace = std::move(trace);
        return r;
    };
    const auto flat = record(std::vector<std::int64_t>(300, 24));

    SUBCASE("constant trace normalises to one") {
        CHECK(bench::scalability_metric({&flat}, 24, 300) == doctest::Approx(1.0));
    }
    SUBCASE("all-zero trace gives zero") {
        const auto zero = record(std::vector<std::int64_t>(300, 0));
        CHECK(bench::scalability_metric({&zero}, 24, 300) == doctest::Approx(0.0));
    }
    SUBCASE("trace length must match the iteration count") {
        CHECK_THROWS_AS(bench::scalability_metric({&flat}, 24, 299), ValidationError);
    }
}

TEST_CASE("solution DOT export") {
    const Graph g = Graph::from_edges(3, {{1, 2}, {2, 3}});

    SUBCASE("plain graph when nothing is highlighted") {
        const std::string text = bench::export_solution_dot(g, Solution{}, {});
        CHECK(text.find("1 -- 2") != std::string::npos);
        CHECK(text.find("2 -- 3") != std::string::npos);
        CHECK(text.find("color=red") == std::string::npos);
    }
    SUBCASE("removing everything marks every edge") {
        const std::string text = bench::export_solution_dot(g, Solution{{1, 2}}, {});
        size_t marks = 0, pos = 0;
        while ((pos = text.find("[color=red]", pos)) != std::string::npos) {
            ++marks;
            ++pos;
        }
        CHECK(marks == 2);
    }
    SUBCASE("one removed edge and one seed give exactly two attributes") {
        const std::string text = bench::export_solution_dot(g, Solution{{1}}, {1});
        size_t marks = 0, pos = 0;
        while ((pos = text.find("color=red", pos)) != std::string::npos) {
            ++marks;
            ++pos;
        }
        CHECK(marks == 2);
    }
}

TEST_CASE("the default protocol spans 1500 cells over the bundled instances") {
    bench::ExperimentConfig cfg;
    cfg.methods = bench::default_methods();
    CHECK(cfg.k_fractions == std::vector<double>{0.1, 0.3, 0.5});
    CHECK(cfg.methods.size() == 5);
    CHECK(cfg.samples == 10);
    CHECK(cfg.iterations == 300);
    CHECK(cfg.replications == 20);
    CHECK(cfg.horizon == 100);
    CHECK(cfg.initial_infected_fraction == doctest::Approx(0.1));
    CHECK(cfg.intra_prob == doctest::Approx(0.15));
    CHECK(cfg.inter_prob == doctest::Approx(0.05));
    CHECK(10 * cfg.k_fractions.size() * cfg.methods.size() * cfg.samples == 1500);
}

TEST_CASE("run_experiment produces one record per cell") {
    TempDir tmp("cells");
    write_tiny_instance(tmp.path, "tiny");
    const auto cfg = tiny_config(tmp.path, (tmp.path / "out").string());
    const auto records = bench::run_experiment(cfg);
    REQUIRE(records.size() == 2);
    CHECK(records[0].sample == 0);
    CHECK(records[1].sample == 1);
    CHECK(records[0].k == 2);  // round(0.5 * 4)
    for (const auto& r : records) {
        CHECK(r.trace.size() == 4);
        CHECK(r.best_value == r.trace.back());
    }
    CHECK(fs::exists(tmp.path / "out/results.csv"));
    CHECK(fs::exists(tmp.path / "out/summary.csv"));
    CHECK(fs::exists(tmp.path / "out/scalability.csv"));
}

TEST_CASE("run_experiment resumes from a partial results file") {
    TempDir tmp("resume");
    write_tiny_instance(tmp.path, "tiny");

    // Pass 1: a single sample.
    auto cfg = tiny_config(tmp.path, (tmp.path / "out").string());
    cfg.samples = 1;
    bench::run_experiment(cfg);
    const std::string after_one = slurp(tmp.path / "out/results.csv");

    // Pass 2: two samples; the first row must be reused byte-for-byte.
    cfg.samples = 2;
    const auto records = bench::run_experiment(cfg);
    REQUIRE(records.size() == 2);
    const std::string after_two = slurp(tmp.path / "out/results.csv");
    CHECK(after_two.substr(0, after_one.size()) == after_one);

    // Pass 3: nothing left to compute; the file must not change at all.
    bench::run_experiment(cfg);
    CHECK(slurp(tmp.path / "out/results.csv") == after_two);
}

TEST_CASE("a full small cross product runs under parallel jobs") {
    TempDir tmp("cross");
    write_tiny_instance(tmp.path, "tiny");
    write_tiny_instance(tmp.path, "tiny2");
    bench::ExperimentConfig cfg = tiny_config(tmp.path, (tmp.path / "out").string());
    cfg.instances.push_back(
        {"tiny2", (tmp.path / "tiny2.net").string(), (tmp.path / "tiny2.com").string()});
    cfg.k_fractions = {0.25, 0.5};
    cfg.methods = {{bench::Method::Classic, 0}, {bench::Method::GaBin, 4}};
    cfg.jobs = 2;
    const auto records = bench::run_experiment(cfg);
    CHECK(records.size() == 2 * 2 * 2 * 2);
    // Canonical row order regardless of completion order.
    std::vector<std::string> first_column;
    std::istringstream rows(slurp(tmp.path / "out/results.csv"));
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) first_column.push_back(line.substr(0, line.find(',')));
    REQUIRE(first_column.size() == 16);
    for (size_t i = 0; i < 8; ++i) CHECK(first_column[i] == "tiny");
    for (size_t i = 8; i < 16; ++i) CHECK(first_column[i] == "tiny2");
}

TEST_CASE("experiment GA beats classic on strike at reduced scale") {
    const std::string dir = data_dir();
    TempDir tmp("mini");
    bench::ExperimentConfig cfg;
    cfg.instances = {{"strike", dir + "/strike.net", dir + "/strike.com"}};
    cfg.k_fractions = {0.1};
    cfg.methods = {{bench::Method::Classic, 0}, {bench::Method::GaBin, 20}};
    cfg.samples = 2;
    cfg.iterations = 40;
    cfg.replications = 4;
    cfg.horizon = 50;
    cfg.master_seed = 11;
    cfg.jobs = 2;
    cfg.out_dir = (tmp.path / "out").string();
    const auto records = bench::run_experiment(cfg);

    std::map<std::string, const Graph*> graphs;
    const Graph g = netio::load_instance(dir + "/strike.net", dir + "/strike.com");
    graphs["strike"] = &g;
    const auto rows = bench::scalability_rows(records, graphs, cfg.iterations);
    REQUIRE(rows.size() == 2);
    double classic = -1, ga = -1;
    for (const auto& row : rows) {
        if (row.method == "classic") classic = row.prop_infections;
        if (row.method == "ga-bin 20") ga = row.prop_infections;
        CHECK(row.edges == 38);
    }
    REQUIRE(classic >= 0);
    REQUIRE(ga >= 0);
    CHECK(ga < classic);
}
