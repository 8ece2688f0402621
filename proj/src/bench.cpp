#include "minseis/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "minseis/classic.hpp"

namespace minseis::bench {

namespace fs = std::filesystem;

namespace {

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

int round_half_up(double v) { return static_cast<int>(std::llround(v)); }

struct Cell {
    size_t index = 0;
    size_t instance_index = 0;
    double k_fraction = 0;
    int k = 0;
    MethodSpec method;
    int sample = 0;
};

std::string cell_key(const std::string& instance, const MethodSpec& m, int k, int sample) {
    return instance + "|" + method_label(m) + "|" + std::to_string(k) + "|" +
           std::to_string(sample);
}

std::string trace_path(const std::string& out_dir, const std::string& instance,
                       const MethodSpec& m, int k, int sample) {
    std::string method = method_name(m.method);
    if (m.method != Method::Classic) method += std::to_string(m.population_size);
    return out_dir + "/traces/" + instance + "__" + method + "__k" + std::to_string(k) + "__s" +
           std::to_string(sample) + ".csv";
}

void write_trace(const std::string& path, const std::vector<std::int64_t>& trace) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write trace file '" + path + "'");
    out << "iteration,best_so_far\n";
    for (size_t i = 0; i < trace.size(); ++i) out << i + 1 << "," << trace[i] << "\n";
}

std::vector<std::int64_t> read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read trace file '" + path + "'");
    std::vector<std::int64_t> trace;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2) throw ParseError("malformed trace row in '" + path + "'");
        trace.push_back(std::stoll(fields[1]));
    }
    return trace;
}

std::string results_row(const RunRecord& r) {
    std::ostringstream out;
    out << r.instance << "," << method_name(r.method.method) << "," << r.method.population_size
        << "," << fmt_g(r.k_fraction) << "," << r.k << "," << r.sample << "," << r.best_value
        << "," << r.wall_ms;
    return out.str();
}

}  // namespace

MethodSpec parse_method(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    MethodSpec spec;
    if (name == "classic") {
        spec.method = Method::Classic;
        if (colon != std::string::npos)
            throw ValidationError("method 'classic' takes no population size");
        return spec;
    }
    if (name == "ga-int")
        spec.method = Method::GaInt;
    else if (name == "ga-bin")
        spec.method = Method::GaBin;
    else
        throw ValidationError("unknown method '" + text +
                              "' (expected classic, ga-int:<pop> or ga-bin:<pop>)");
    if (colon == std::string::npos)
        throw ValidationError("method '" + name + "' needs a population size, e.g. " + name +
                              ":100");
    spec.population_size = std::stoi(text.substr(colon + 1));
    if (spec.population_size < 2)
        throw ValidationError("method '" + text + "': population size must be >= 2");
    return spec;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Classic: return "classic";
        case Method::GaInt: return "ga-int";
        case Method::GaBin: return "ga-bin";
    }
    return "?";
}

std::string method_label(const MethodSpec& m) {
    if (m.method == Method::Classic) return "classic";
    return method_name(m.method) + " " + std::to_string(m.population_size);
}

std::vector<MethodSpec> default_methods() {
    return {{Method::Classic, 0},
            {Method::GaInt, 10},
            {Method::GaInt, 100},
            {Method::GaBin, 10},
            {Method::GaBin, 100}};
}

void ExperimentConfig::validate() const {
    if (instances.empty()) throw ValidationError("experiment: no instances given");
    if (k_fractions.empty()) throw ValidationError("experiment: no k fractions given");
    for (double f : k_fractions)
        if (f < 0.0 || f > 1.0)
            throw ValidationError("experiment: k fraction " + fmt_g(f) + " outside [0,1]");
    if (methods.empty()) throw ValidationError("experiment: no methods given");
    if (samples < 1) throw ValidationError("experiment: samples must be >= 1");
    if (iterations < 1) throw ValidationError("experiment: iterations must be >= 1");
    if (replications < 1) throw ValidationError("experiment: replications must be >= 1");
    if (horizon < 1) throw ValidationError("experiment: horizon must be >= 1");
    if (initial_infected_fraction <= 0.0 || initial_infected_fraction > 1.0)
        throw ValidationError("experiment: initial infected fraction outside (0,1]");
    if (intra_prob < 0.0 || intra_prob > 1.0 || inter_prob < 0.0 || inter_prob > 1.0)
        throw ValidationError("experiment: infection probability outside [0,1]");
    if (exposure_steps < 1 || infectious_steps < 1)
        throw ValidationError("experiment: compartment durations must be >= 1");
    if (jobs < 1) throw ValidationError("experiment: jobs must be >= 1");
}

DerivedProblem derive_problem(const Graph& g, const std::string& instance_name,
                              const ExperimentConfig& cfg, int sample_index) {
    DerivedProblem out;
    out.params = EpidemicParams::uniform(g, cfg.intra_prob, cfg.inter_prob);
    out.params.exposure_steps = cfg.exposure_steps;
    out.params.infectious_steps = cfg.infectious_steps;
    out.params.horizon = cfg.horizon;
    out.params.replications = cfg.replications;

    const int seeds =
        static_cast<int>(std::ceil(cfg.initial_infected_fraction * g.num_nodes()));
    RandomEngine engine = RngStream(cfg.master_seed)
                              .substream("seeds")
                              .substream(instance_name)
                              .substream(static_cast<std::uint64_t>(sample_index))
                              .engine();
    std::vector<NodeId> nodes(static_cast<size_t>(g.num_nodes()));
    std::iota(nodes.begin(), nodes.end(), 1);
    for (int i = 0; i < seeds; ++i) {
        const auto j = static_cast<size_t>(i) +
                       engine.uniform_below(static_cast<std::uint64_t>(g.num_nodes() - i));
        std::swap(nodes[static_cast<size_t>(i)], nodes[j]);
    }
    nodes.resize(static_cast<size_t>(seeds));
    std::sort(nodes.begin(), nodes.end());
    out.params.initial_infected = std::move(nodes);

    out.k_values.reserve(cfg.k_fractions.size());
    for (double f : cfg.k_fractions) {
        if (f < 0.0 || f > 1.0)
            throw ValidationError("experiment: k fraction " + fmt_g(f) + " outside [0,1]");
        out.k_values.push_back(round_half_up(f * g.num_edges()));
    }
    return out;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    fs::create_directories(cfg.out_dir + "/traces");

    std::vector<Graph> graphs;
    graphs.reserve(cfg.instances.size());
    for (const InstanceRef& inst : cfg.instances)
        graphs.push_back(netio::load_instance(inst.graph_path, inst.community_path));

    // Canonical cell order: instance, k fraction, method, sample. The results
    // file is always written in this order, whatever the completion order.
    std::vector<Cell> cells;
    for (size_t ii = 0; ii < cfg.instances.size(); ++ii) {
        const DerivedProblem shape = derive_problem(graphs[ii], cfg.instances[ii].name, cfg, 0);
        for (size_t fi = 0; fi < cfg.k_fractions.size(); ++fi)
            for (const MethodSpec& m : cfg.methods)
                for (int s = 0; s < cfg.samples; ++s)
                    cells.push_back({cells.size(), ii, cfg.k_fractions[fi], shape.k_values[fi], m, s});
    }

    // Rows already on disk are reused, not recomputed.
    const std::string results_path = cfg.out_dir + "/results.csv";
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> existing;  // key -> (best, wall)
    if (fs::exists(results_path)) {
        std::ifstream in(results_path);
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto f = split(line, ',');
            if (f.size() != 8) throw ParseError("malformed results row '" + line + "'");
            MethodSpec m;
            m.method = f[1] == "classic" ? Method::Classic
                       : f[1] == "ga-int" ? Method::GaInt
                                          : Method::GaBin;
            m.population_size = std::stoi(f[2]);
            existing[cell_key(f[0], m, std::stoi(f[4]), std::stoi(f[5]))] = {std::stoll(f[6]),
                                                                             std::stoll(f[7])};
        }
    }

    std::vector<std::optional<RunRecord>> done(cells.size());
    std::vector<size_t> pending;
    for (const Cell& c : cells) {
        const std::string& name = cfg.instances[c.instance_index].name;
        const auto it = existing.find(cell_key(name, c.method, c.k, c.sample));
        if (it == existing.end()) {
            pending.push_back(c.index);
            continue;
        }
        RunRecord rec;
        rec.instance = name;
        rec.method = c.method;
        rec.k_fraction = c.k_fraction;
        rec.k = c.k;
        rec.sample = c.sample;
        rec.best_value = it->second.first;
        rec.wall_ms = it->second.second;
        try {
            rec.trace = read_trace(trace_path(cfg.out_dir, name, c.method, c.k, c.sample));
        } catch (const std::exception& e) {
            throw ParseError("resuming cell " + it->first + " failed: " + e.what());
        }
        done[c.index] = std::move(rec);
    }

    std::mutex mu;
    std::condition_variable ready;
    std::atomic<size_t> next{0};
    std::exception_ptr failure;

    auto compute = [&](const Cell& c) {
        const std::string& name = cfg.instances[c.instance_index].name;
        const Graph& g = graphs[c.instance_index];
        const DerivedProblem problem = derive_problem(g, name, cfg, c.sample);
        const RngStream search = RngStream(cfg.master_seed)
                                     .substream("search")
                                     .substream(name)
                                     .substream(method_label(c.method))
                                     .substream(static_cast<std::uint64_t>(c.k))
                                     .substream(static_cast<std::uint64_t>(c.sample));
        const auto start = std::chrono::steady_clock::now();
        SearchResult result;
        if (c.method.method == Method::Classic) {
            result = monte_carlo_search(g, problem.params, c.k, cfg.iterations, search);
        } else {
            GAConfig ga;
            ga.encoding = c.method.method == Method::GaInt ? Encoding::Int : Encoding::Bin;
            ga.population_size = c.method.population_size;
            ga.generations = cfg.iterations;
            ga.crossover_rate = cfg.crossover_rate;
            ga.exchange_prob = cfg.exchange_prob;
            ga.mutation_rate = cfg.mutation_rate;
            ga.tournament_p = cfg.tournament_p;
            ga.k = c.k;
            result = run_ga(g, problem.params, ga, search);
        }
        const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        RunRecord rec;
        rec.instance = name;
        rec.method = c.method;
        rec.k_fraction = c.k_fraction;
        rec.k = c.k;
        rec.sample = c.sample;
        rec.best_value = result.best_value;
        rec.trace = std::move(result.trace);
        rec.wall_ms = wall;
        write_trace(trace_path(cfg.out_dir, name, c.method, c.k, c.sample), rec.trace);
        return rec;
    };

    auto worker = [&] {
        for (;;) {
            const size_t slot = next.fetch_add(1);
            if (slot >= pending.size()) return;
            const Cell& c = cells[pending[slot]];
            try {
                RunRecord rec = compute(c);
                std::lock_guard<std::mutex> lock(mu);
                done[c.index] = std::move(rec);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(mu);
                if (!failure) {
                    const std::string& name = cfg.instances[c.instance_index].name;
                    failure = std::make_exception_ptr(ValidationError(
                        "experiment cell " + cell_key(name, c.method, c.k, c.sample) +
                        " failed: " + e.what()));
                }
            }
            ready.notify_all();
        }
    };

    const int jobs = std::min<int>(cfg.jobs, static_cast<int>(std::max<size_t>(pending.size(), 1)));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);

    // Append rows in canonical order as soon as the contiguous prefix is
    // complete; a resumed file therefore always continues seamlessly.
    std::ofstream out;
    if (existing.empty()) {
        out.open(results_path, std::ios::trunc);
        out << "instance,method,pop_size,k_fraction,k,sample,best_value,wall_ms\n";
    } else {
        out.open(results_path, std::ios::app);
    }
    if (!out) throw ParseError("cannot write results file '" + results_path + "'");

    std::vector<RunRecord> records;
    records.reserve(cells.size());
    size_t emitted = 0;
    {
        std::unique_lock<std::mutex> lock(mu);
        for (size_t i = 0; i < cells.size(); ++i) {
            ready.wait(lock, [&] { return done[i].has_value() || failure; });
            if (failure) break;
            const std::string key = cell_key(done[i]->instance, done[i]->method, done[i]->k,
                                             done[i]->sample);
            if (!existing.count(key)) {
                out << results_row(*done[i]) << "\n";
                out.flush();
            }
            records.push_back(*done[i]);
            ++emitted;
            std::cerr << "[" << emitted << "/" << cells.size() << "] " << key
                      << " best=" << done[i]->best_value << "\n";
        }
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    if (cfg.samples >= 2) {
        const auto rows = summarize(records);
        std::ofstream sum(cfg.out_dir + "/summary.csv", std::ios::trunc);
        sum << "instance,method,k_fraction,mean,stderr\n";
        for (const SummaryRow& r : rows)
            sum << r.instance << "," << r.method << "," << fmt_g(r.k_fraction) << ","
                << fmt_g(r.mean) << "," << fmt_g(r.stderror) << "\n";
    } else {
        std::cerr << "summary.csv skipped: needs at least 2 samples\n";
    }

    std::map<std::string, const Graph*> by_name;
    for (size_t i = 0; i < cfg.instances.size(); ++i)
        by_name[cfg.instances[i].name] = &graphs[i];
    const auto scal = scalability_rows(records, by_name, cfg.iterations);
    std::ofstream sc(cfg.out_dir + "/scalability.csv", std::ios::trunc);
    sc << "instance,method,k_fraction,edges,prop_infections\n";
    for (const ScalabilityRow& r : scal)
        sc << r.instance << "," << r.method << "," << fmt_g(r.k_fraction) << "," << r.edges << ","
           << fmt_g(r.prop_infections) << "\n";

    return records;
}

namespace {

struct GroupKey {
    std::string instance;
    std::string method;
    double k_fraction;
    bool operator<(const GroupKey& o) const {
        if (instance != o.instance) return instance < o.instance;
        if (k_fraction != o.k_fraction) return k_fraction < o.k_fraction;
        return method < o.method;
    }
};

std::map<GroupKey, std::vector<const RunRecord*>> group_records(
    const std::vector<RunRecord>& records) {
    std::map<GroupKey, std::vector<const RunRecord*>> groups;
    for (const RunRecord& r : records)
        groups[{r.instance, method_label(r.method), r.k_fraction}].push_back(&r);
    return groups;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    std::vector<SummaryRow> rows;
    for (const auto& [key, group] : group_records(records)) {
        const size_t n = group.size();
        if (n < 2)
            throw ValidationError("summary: group " + key.instance + "/" + key.method + "/k=" +
                                  fmt_g(key.k_fraction) + " has fewer than 2 records");
        double mean = 0;
        for (const RunRecord* r : group) mean += static_cast<double>(r->best_value);
        mean /= static_cast<double>(n);
        double ss = 0;
        for (const RunRecord* r : group) {
            const double d = static_cast<double>(r->best_value) - mean;
            ss += d * d;
        }
        const double stderror =
            std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
        rows.push_back({key.instance, key.method, key.k_fraction, mean, stderror});
    }
    return rows;
}

double scalability_metric(const std::vector<const RunRecord*>& records, int num_nodes,
                          int iterations) {
    if (records.empty()) throw ValidationError("scalability: empty record group");
    double total = 0;
    for (const RunRecord* r : records) {
        if (static_cast<int>(r->trace.size()) != iterations)
            throw ValidationError("scalability: trace length " + std::to_string(r->trace.size()) +
                                  " does not match iterations " + std::to_string(iterations) +
                                  " for " + r->instance + "/" + method_label(r->method) + "/s" +
                                  std::to_string(r->sample));
        std::int64_t sum = 0;
        for (std::int64_t v : r->trace) sum += v;
        total += static_cast<double>(sum) /
                 (static_cast<double>(num_nodes) * static_cast<double>(iterations));
    }
    return total / static_cast<double>(records.size());
}

std::vector<ScalabilityRow> scalability_rows(const std::vector<RunRecord>& records,
                                             const std::map<std::string, const Graph*>& graphs,
                                             int iterations) {
    std::vector<ScalabilityRow> rows;
    for (const auto& [key, group] : group_records(records)) {
        const auto g = graphs.find(key.instance);
        if (g == graphs.end())
            throw ValidationError("scalability: no graph registered for instance '" +
                                  key.instance + "'");
        rows.push_back({key.instance, key.method, key.k_fraction, g->second->num_edges(),
                        scalability_metric(group, g->second->num_nodes(), iterations)});
    }
    return rows;
}

std::string export_solution_dot(const Graph& g, const Solution& s,
                                const std::vector<NodeId>& initial_infected) {
    s.validate(g);
    const EdgeMask mask(g, s);
    std::vector<std::uint8_t> seed(static_cast<size_t>(g.num_nodes()) + 1, 0);
    for (NodeId u : initial_infected) {
        if (u < 1 || u > g.num_nodes())
            throw ValidationError("dot export: seed node " + std::to_string(u) + " outside 1.." +
                                  std::to_string(g.num_nodes()));
        seed[static_cast<size_t>(u)] = 1;
    }
    std::ostringstream out;
    out << "graph epidemic {\n  node [shape=circle];\n";
    for (NodeId u = 1; u <= g.num_nodes(); ++u)
        if (seed[static_cast<size_t>(u)]) out << "  " << u << " [color=red];\n";
    for (EdgeId e = 1; e <= g.num_edges(); ++e) {
        const auto [u, v] = g.edge(e);
        out << "  " << u << " -- " << v;
        if (mask.removed(e)) out << " [color=red]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace minseis::bench
