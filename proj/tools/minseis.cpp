// Command-line front-end: single simulations, single searches, experiment
// campaigns, and DOT exports of solutions.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minseis/bench.hpp"
#include "minseis/classic.hpp"
#include "minseis/evolve.hpp"
#include "minseis/netio.hpp"

namespace fs = std::filesystem;
using namespace minseis;

namespace {

struct CommonOpts {
    std::string graph_path;
    std::string community_path;
    double chi = 0.15;
    double phi = 0.05;
    int epsilon = 2;
    int lambda = 4;
    int horizon = 100;
    int replications = 20;
    double initial_fraction = 0.1;
    std::uint64_t seed = 1;
};

struct SearchOpts {
    double k_fraction = -1;
    int k = -1;
    std::string out_dir = ".";
};

void add_epidemic_flags(CLI::App* cmd, CommonOpts& o, bool with_replications) {
    cmd->add_option("--graph", o.graph_path, "graph file (Pajek-style)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--communities", o.community_path, "community assignment file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--chi", o.chi, "intra-community infection probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--phi", o.phi, "inter-community infection probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--epsilon", o.epsilon, "exposure duration in steps")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    cmd->add_option("--lambda", o.lambda, "infectious duration in steps")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    cmd->add_option("--t", o.horizon, "simulated time steps")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    cmd->add_option("--initial-fraction", o.initial_fraction,
                    "fraction of nodes initially infected")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "master random seed")->capture_default_str();
    if (with_replications)
        cmd->add_option("--replications", o.replications, "simulations per evaluation")
            ->check(CLI::Range(1, 1000000000))
            ->capture_default_str();
}

void add_k_flags(CLI::App* cmd, SearchOpts& o) {
    auto* kf = cmd->add_option("--k-fraction", o.k_fraction, "remove this fraction of the edges")
                   ->check(CLI::Range(0.0, 1.0));
    auto* k = cmd->add_option("--k", o.k, "remove exactly k edges")->check(CLI::NonNegativeNumber);
    kf->excludes(k);
    k->excludes(kf);
    cmd->add_option("--out-dir", o.out_dir, "directory for solution and trace files")
        ->capture_default_str();
}

// Single-run problems reuse the campaign derivation with sample index 0, so a
// `classic`/`ga` run sees the same seed set as sample 0 of an experiment with
// the same master seed.
bench::ExperimentConfig base_config(const CommonOpts& o, const std::string& name) {
    bench::ExperimentConfig cfg;
    cfg.instances = {{name, o.graph_path, o.community_path}};
    cfg.methods = bench::default_methods();
    cfg.intra_prob = o.chi;
    cfg.inter_prob = o.phi;
    cfg.exposure_steps = o.epsilon;
    cfg.infectious_steps = o.lambda;
    cfg.horizon = o.horizon;
    cfg.replications = o.replications;
    cfg.initial_infected_fraction = o.initial_fraction;
    cfg.master_seed = o.seed;
    return cfg;
}

Graph load_with_warnings(const CommonOpts& o) {
    netio::LoadDiagnostics diag;
    const Graph g = netio::load_instance(o.graph_path, o.community_path, &diag);
    if (diag.self_loops_dropped > 0)
        std::cerr << "warning: dropped " << diag.self_loops_dropped << " self-loop(s) from "
                  << o.graph_path << "\n";
    if (diag.duplicate_edges_collapsed > 0)
        std::cerr << "warning: collapsed " << diag.duplicate_edges_collapsed
                  << " duplicate edge(s) in " << o.graph_path << "\n";
    return g;
}

int resolve_k(const Graph& g, const SearchOpts& o) {
    if (o.k >= 0) {
        if (o.k > g.num_edges())
            throw ValidationError("--k exceeds the number of edges (" +
                                  std::to_string(g.num_edges()) + ")");
        return o.k;
    }
    if (o.k_fraction >= 0)
        return static_cast<int>(std::llround(o.k_fraction * g.num_edges()));
    throw ValidationError("one of --k or --k-fraction is required");
}

void write_search_outputs(const Graph& g, const SearchResult& r,
                          const std::vector<NodeId>& seeds, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream sol(out_dir + "/solution.csv");
    sol << "edge_id,u,v\n";
    for (EdgeId e : r.best_solution.removed) {
        const auto [u, v] = g.edge(e);
        sol << e << "," << u << "," << v << "\n";
    }
    std::ofstream trace(out_dir + "/trace.csv");
    trace << "iteration,best_so_far\n";
    for (size_t i = 0; i < r.trace.size(); ++i) trace << i + 1 << "," << r.trace[i] << "\n";
    std::ofstream sd(out_dir + "/seeds.csv");
    sd << "node\n";
    for (NodeId u : seeds) sd << u << "\n";
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

Solution read_solution_csv(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open solution file '" + path + "'");
    Solution s;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        s.removed.push_back(static_cast<EdgeId>(std::stol(line.substr(0, line.find(',')))));
    }
    std::sort(s.removed.begin(), s.removed.end());
    s.validate(g);
    return s;
}

std::vector<NodeId> read_seeds_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open seeds file '" + path + "'");
    std::vector<NodeId> seeds;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (!line.empty()) seeds.push_back(static_cast<NodeId>(std::stol(line)));
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minseis: minimise epidemic spread on community networks by removing edges"};
    app.require_subcommand(1);

    // --- simulate ---
    CommonOpts sim_opts;
    auto* simulate_cmd =
        app.add_subcommand("simulate", "run one infection simulation and print per-step counts");
    add_epidemic_flags(simulate_cmd, sim_opts, false);

    // --- classic ---
    CommonOpts classic_opts;
    SearchOpts classic_search;
    int attempts = 300;
    auto* classic_cmd =
        app.add_subcommand("classic", "Monte Carlo random search for an edge-removal set");
    add_epidemic_flags(classic_cmd, classic_opts, true);
    add_k_flags(classic_cmd, classic_search);
    classic_cmd->add_option("--attempts", attempts, "random solutions to try")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();

    // --- ga ---
    CommonOpts ga_opts;
    SearchOpts ga_search;
    GAConfig ga_cfg;
    std::string encoding = "bin";
    auto* ga_cmd = app.add_subcommand("ga", "genetic algorithm search for an edge-removal set");
    add_epidemic_flags(ga_cmd, ga_opts, true);
    add_k_flags(ga_cmd, ga_search);
    ga_cmd->add_option("--encoding", encoding, "chromosome encoding")
        ->check(CLI::IsMember({"int", "bin"}))
        ->capture_default_str();
    ga_cmd->add_option("--pop", ga_cfg.population_size, "population size")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    ga_cmd->add_option("--generations", ga_cfg.generations, "generations to evolve")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    ga_cmd->add_option("--crossover-rate", ga_cfg.crossover_rate, "probability of crossover")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    ga_cmd->add_option("--exchange-prob", ga_cfg.exchange_prob,
                       "per-locus exchange probability of uniform crossover")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    ga_cmd->add_option("--mutation-rate", ga_cfg.mutation_rate, "per-gene mutation probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    ga_cmd->add_option("--tournament-p", ga_cfg.tournament_p,
                       "probability the fitter tournament contestant wins")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    // --- experiment ---
    bench::ExperimentConfig exp_cfg;
    exp_cfg.methods = bench::default_methods();
    std::string instance_dir = "data/instances";
    std::string instances =
        "strike,karate,korea1,korea2,sawmill,dolphins,polbooks,adjnoun,football,jazz";
    std::string k_fractions = "0.1,0.3,0.5";
    std::string methods = "classic,ga-int:10,ga-int:100,ga-bin:10,ga-bin:100";
    auto* exp_cmd = app.add_subcommand(
        "experiment", "run a full campaign (instances x k fractions x methods x samples)");
    std::string config_path;
    exp_cmd->add_option("--config", config_path, "key=value file; command-line flags take precedence")
        ->check(CLI::ExistingFile);
    exp_cmd->add_option("--instance-dir", instance_dir, "directory with <name>.net/<name>.com")
        ->capture_default_str();
    exp_cmd->add_option("--instances", instances, "comma-separated instance names")
        ->capture_default_str();
    exp_cmd->add_option("--k-fractions", k_fractions, "comma-separated fractions of |E|")
        ->capture_default_str();
    exp_cmd->add_option("--methods", methods,
                        "comma-separated methods (classic, ga-int:<pop>, ga-bin:<pop>)")
        ->capture_default_str();
    exp_cmd->add_option("--samples", exp_cfg.samples, "independent samples per cell")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    exp_cmd->add_option("--iterations", exp_cfg.iterations,
                        "attempts (classic) / generations (ga) per run")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    exp_cmd->add_option("--replications", exp_cfg.replications, "simulations per evaluation")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    exp_cmd->add_option("--t", exp_cfg.horizon, "simulated time steps")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    exp_cmd->add_option("--initial-fraction", exp_cfg.initial_infected_fraction,
                        "fraction of nodes initially infected")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp_cmd->add_option("--chi", exp_cfg.intra_prob, "intra-community infection probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp_cmd->add_option("--phi", exp_cfg.inter_prob, "inter-community infection probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp_cmd->add_option("--epsilon", exp_cfg.exposure_steps, "exposure duration in steps")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    exp_cmd->add_option("--lambda", exp_cfg.infectious_steps, "infectious duration in steps")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    exp_cmd->add_option("--crossover-rate", exp_cfg.crossover_rate, "probability of crossover")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp_cmd->add_option("--exchange-prob", exp_cfg.exchange_prob,
                        "per-locus exchange probability of uniform crossover")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp_cmd->add_option("--mutation-rate", exp_cfg.mutation_rate, "per-gene mutation probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp_cmd->add_option("--tournament-p", exp_cfg.tournament_p,
                        "probability the fitter tournament contestant wins")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp_cmd->add_option("--seed", exp_cfg.master_seed, "master random seed")
        ->capture_default_str();
    exp_cmd->add_option("--jobs", exp_cfg.jobs, "concurrent experiment cells")
        ->check(CLI::Range(1, 1000000000))
        ->capture_default_str();
    exp_cmd->add_option("--out-dir", exp_cfg.out_dir, "output directory")->capture_default_str();

    // --- export-dot ---
    std::string dot_graph, dot_solution, dot_seeds, dot_seeds_file, dot_out = "-";
    auto* dot_cmd =
        app.add_subcommand("export-dot", "render a solution as DOT with removals highlighted");
    dot_cmd->add_option("--graph", dot_graph, "graph file")->required()->check(CLI::ExistingFile);
    dot_cmd->add_option("--solution", dot_solution, "solution.csv from classic/ga")
        ->required()
        ->check(CLI::ExistingFile);
    auto* seeds_opt = dot_cmd->add_option("--seeds", dot_seeds, "comma-separated seed node ids");
    dot_cmd->add_option("--seeds-file", dot_seeds_file, "seeds.csv from classic/ga")
        ->excludes(seeds_opt)
        ->check(CLI::ExistingFile);
    dot_cmd->add_option("--out", dot_out, "output file, '-' for stdout")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed()) {
            const Graph g = load_with_warnings(sim_opts);
            const auto problem =
                bench::derive_problem(g, stem_of(sim_opts.graph_path),
                                      base_config(sim_opts, stem_of(sim_opts.graph_path)), 0);
            EpidemicParams p = problem.params;
            p.replications = 1;
            SimState st = init_state(g, p);
            RandomEngine engine = RngStream(sim_opts.seed)
                                      .substream("simulate")
                                      .substream(stem_of(sim_opts.graph_path))
                                      .substream(0)
                                      .engine();
            std::cout << "t,susceptible,exposed,infected\n";
            for (int t = 1; t <= p.horizon; ++t) {
                step(st, g, Solution{}, p, engine, t);
                std::cout << t << "," << st.susceptible_count() << "," << st.exposed_count()
                          << "," << st.infected_count() << "\n";
            }
            return 0;
        }

        if (classic_cmd->parsed()) {
            const Graph g = load_with_warnings(classic_opts);
            const std::string name = stem_of(classic_opts.graph_path);
            const auto problem = bench::derive_problem(g, name, base_config(classic_opts, name), 0);
            const int k = resolve_k(g, classic_search);
            const SearchResult r =
                monte_carlo_search(g, problem.params, k, attempts,
                                   RngStream(classic_opts.seed).substream("cli-search"));
            write_search_outputs(g, r, problem.params.initial_infected, classic_search.out_dir);
            std::cout << r.best_value << "\n";
            return 0;
        }

        if (ga_cmd->parsed()) {
            const Graph g = load_with_warnings(ga_opts);
            const std::string name = stem_of(ga_opts.graph_path);
            const auto problem = bench::derive_problem(g, name, base_config(ga_opts, name), 0);
            ga_cfg.encoding = encoding == "int" ? Encoding::Int : Encoding::Bin;
            ga_cfg.k = resolve_k(g, ga_search);
            const SearchResult r = run_ga(g, problem.params, ga_cfg,
                                          RngStream(ga_opts.seed).substream("cli-search"));
            write_search_outputs(g, r, problem.params.initial_infected, ga_search.out_dir);
            std::cout << r.best_value << "\n";
            return 0;
        }

        if (exp_cmd->parsed()) {
            if (!config_path.empty()) {
                // Values from the file fill in only the options the command
                // line left untouched.
                std::ifstream cf(config_path);
                if (!cf) throw ParseError("cannot open config file '" + config_path + "'");
                try {
                    exp_cmd->parse_from_stream(cf);
                } catch (const CLI::Error& e) {
                    return app.exit(e);
                }
            }
            exp_cfg.instances.clear();
            for (const std::string& name : split_list(instances))
                exp_cfg.instances.push_back(
                    {name, instance_dir + "/" + name + ".net", instance_dir + "/" + name + ".com"});
            exp_cfg.k_fractions.clear();
            for (const std::string& f : split_list(k_fractions))
                exp_cfg.k_fractions.push_back(std::stod(f));
            exp_cfg.methods.clear();
            for (const std::string& m : split_list(methods))
                exp_cfg.methods.push_back(bench::parse_method(m));
            for (const auto& inst : exp_cfg.instances)
                if (!fs::exists(inst.graph_path))
                    throw ParseError("missing graph file '" + inst.graph_path + "'");
            const auto records = bench::run_experiment(exp_cfg);
            std::cerr << records.size() << " records in " << exp_cfg.out_dir << "/results.csv\n";
            return 0;
        }

        if (dot_cmd->parsed()) {
            std::ifstream gf(dot_graph);
            if (!gf) throw ParseError("cannot open graph file '" + dot_graph + "'");
            const Graph g = netio::load_graph(gf);
            const Solution s = read_solution_csv(dot_solution, g);
            std::vector<NodeId> seeds;
            if (!dot_seeds_file.empty()) {
                seeds = read_seeds_csv(dot_seeds_file);
            } else if (!dot_seeds.empty()) {
                for (const std::string& tok : split_list(dot_seeds))
                    seeds.push_back(static_cast<NodeId>(std::stol(tok)));
                std::sort(seeds.begin(), seeds.end());
            }
            const std::string text = bench::export_solution_dot(g, s, seeds);
            if (dot_out == "-") {
                std::cout << text;
            } else {
                std::ofstream out(dot_out);
                if (!out) throw ParseError("cannot write '" + dot_out + "'");
                out << text;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
