// dyniso: graph partitioning, isomorphism decision, exact series dumps and
// numeric simulation of the graph-embedded dynamics.
//
// Exit codes: 0 = completed (any verdict, DontKnow included),
//             2 = input/usage error, 3 = internal-consistency violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dyniso/dyniso.hpp"

namespace {

using namespace dyniso;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
    std::string method = "a1prime";  // a1 | a1prime | oracle
    int s_max = -1;                  // a1/series truncation override
    double dt = 1e-3;
    double t_end = 1.0;
    std::string format = "graph6";  // graph6 | edgelist
    std::string output = "text";    // text | structured
    int threads = 1;
};

GraphFormat parse_format(const std::string& name) {
    return name == "edgelist" ? GraphFormat::EdgeList : GraphFormat::Graph6;
}

Graph load_graph(const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), parse_format(cfg.format));
}

Partitioner make_partitioner(const RunConfig& cfg) {
    if (cfg.method == "a1") {
        const int s_max = cfg.s_max;
        return [s_max](const Graph& g) { return a1_partition(g, {.s_max = s_max}); };
    }
    if (cfg.method == "oracle")
        return [](const Graph& g) { return automorphism_orbits_search(g).partition; };
    return [](const Graph& g) { return a1prime_partition(g); };
}

int read_thread_env() {
    const char* env = std::getenv("DYNISO_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

int cmd_partition(const std::string& input, const RunConfig& cfg) {
    const Graph g = load_graph(input, cfg);
    if (!is_doubly_connected(g))
        std::cerr << "warning: input graph is not doubly connected; the partitioning "
                     "algorithms are designed for doubly connected graphs\n";

    Partition part;
    json meta;
    if (cfg.method == "a1") {
        const auto coeffs = series_up_to(g, {.s_max = cfg.s_max});
        part = partition_from_signatures(coeffs.A, g.size());
        meta["terms_computed"] = coeffs.terms();
    } else if (cfg.method == "oracle") {
        const auto orbits = automorphism_orbits_search(g);
        part = orbits.partition;
        meta["group_size"] = orbits.group_size;
    } else {
        auto [state, steps] = run_refinement(g);
        part = partition_from_color_rows(state.C);
        meta["refinement_steps"] = steps;
    }

    if (cfg.output == "structured") {
        json j{{"command", "partition"},
               {"method", cfg.method},
               {"classes", partition_to_json(part)},
               {"doubly_connected", is_doubly_connected(g)},
               {"meta", meta}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "partition: " << render_partition_text(part) << "\n";
        std::cout << "method: " << cfg.method << "\n";
        for (const auto& [key, value] : meta.items())
            std::cout << key << ": " << value << "\n";
    }
    return kExitOk;
}

int cmd_iso(const std::string& input1, const std::string& input2, const RunConfig& cfg) {
    const Graph g1 = load_graph(input1, cfg);
    const Graph g2 = load_graph(input2, cfg);

    IsoResult res;
    if (g1.size() != g2.size()) {
        res.verdict = Verdict::No;
        res.reason = "order mismatch";
    } else {
        A2Options opts;
        opts.max_workers = cfg.threads;
        res = a2_decide(g1, g2, make_partitioner(cfg), opts);
    }

    if (cfg.output == "structured") {
        json j = iso_result_to_json(res);
        j["command"] = "iso";
        j["method"] = cfg.method;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << render_verdict_text(res) << "\n";
        if (res.gamma) std::cout << "gamma: " << render_gamma_text(*res.gamma) << "\n";
    }
    return kExitOk;
}

int cmd_series(const std::string& input, const RunConfig& cfg) {
    const Graph g = load_graph(input, cfg);
    const auto coeffs = series_up_to(g, {.s_max = cfg.s_max});
    if (cfg.output == "structured") {
        json j{{"command", "series"},
               {"m", coeffs.m},
               {"terms", coeffs.terms()},
               {"records", series_records_json(coeffs)}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << render_series_text(coeffs);
    }
    return kExitOk;
}

int cmd_simulate(const std::string& input, const RunConfig& cfg) {
    const Graph g = load_graph(input, cfg);
    if (cfg.dt <= 0) throw ValidationError("dt must be positive");
    if (cfg.t_end < 0) throw ValidationError("t-end must be nonnegative");

    SimState st = initial_state(g);
    const long long steps = cfg.t_end > 0 ? std::max(1LL, std::llround(cfg.t_end / cfg.dt)) : 0;
    const long long stride = std::max(1LL, steps / 100);

    json samples = json::array();
    double max_drift = 0.0;
    auto emit_sample = [&]() {
        const EnergyReport rep = energy(st, g);
        max_drift = std::max(max_drift, rep.drift);
        if (cfg.output == "structured") {
            json flat = json::array();
            for (int i = 0; i < st.order(); ++i)
                for (int l = 0; l < st.order(); ++l) flat.push_back(st.X(i, l));
            samples.push_back({{"t", st.t},
                               {"X", std::move(flat)},
                               {"kinetic", rep.kinetic},
                               {"potential", rep.potential},
                               {"total", rep.total},
                               {"drift", rep.drift}});
        } else {
            std::cout << st.t;
            for (int i = 0; i < st.order(); ++i)
                for (int l = 0; l < st.order(); ++l) std::cout << '\t' << st.X(i, l);
            std::cout << '\t' << rep.kinetic << '\t' << rep.potential << '\t' << rep.total << '\t'
                      << rep.drift << "\n";
        }
    };

    emit_sample();
    for (long long step = 0; step < steps;) {
        const long long chunk = std::min(stride, steps - step);
        integrate(st, g, static_cast<double>(chunk) * cfg.dt, cfg.dt);
        step += chunk;
        emit_sample();
    }

    const auto signature = distance_signature(st);
    if (cfg.output == "structured") {
        json j{{"command", "simulate"},
               {"samples", std::move(samples)},
               {"max_drift", max_drift},
               {"distance_signature", signature}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "max_drift " << max_drift << "\n";
        std::cout << "distance_signature";
        for (double d : signature) std::cout << ' ' << d;
        std::cout << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph isomorphism and automorphism partitioning via graph-embedded dynamics"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.threads = read_thread_env();
    std::string input1, input2;

    auto add_common = [&](CLI::App* sub, bool with_method) {
        sub->add_option("--format", cfg.format, "input format")
            ->check(CLI::IsMember({"graph6", "edgelist"}));
        sub->add_option("--output", cfg.output, "output rendering")
            ->check(CLI::IsMember({"text", "structured"}));
        if (with_method)
            sub->add_option("--method", cfg.method, "partitioning method")
                ->check(CLI::IsMember({"a1", "a1prime", "oracle"}));
    };

    auto* partition = app.add_subcommand("partition", "automorphism-partition approximation");
    partition->add_option("input", input1, "graph file")->required();
    add_common(partition, true);
    partition->add_option("--s-max", cfg.s_max, "series truncation for method a1 (default m^2)");

    auto* iso = app.add_subcommand("iso", "decide isomorphism (Yes / No / DontKnow)");
    iso->add_option("input1", input1, "first graph file")->required();
    iso->add_option("input2", input2, "second graph file")->required();
    add_common(iso, true);
    iso->add_option("--s-max", cfg.s_max, "series truncation for method a1 (default m^2)");

    auto* series = app.add_subcommand("series", "exact power-series coefficient dump");
    series->add_option("input", input1, "graph file")->required();
    add_common(series, false);
    series->add_option("--s-max", cfg.s_max, "series truncation (default m^2)");

    auto* simulate = app.add_subcommand("simulate", "numeric trajectory with energy report");
    simulate->add_option("input", input1, "graph file")->required();
    add_common(simulate, false);
    simulate->add_option("--dt", cfg.dt, "integration step");
    simulate->add_option("--t-end", cfg.t_end, "integration horizon");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (app.got_subcommand(partition)) return cmd_partition(input1, cfg);
        if (app.got_subcommand(iso)) return cmd_iso(input1, input2, cfg);
        if (app.got_subcommand(series)) return cmd_series(input1, cfg);
        if (app.got_subcommand(simulate)) return cmd_simulate(input1, cfg);
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "; reduce --dt and retry\n";
        return kExitInput;
    } catch (const InternalError& e) {
        std::cerr << "internal-consistency error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
