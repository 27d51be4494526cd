#include "cfchroma/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfchroma/experiments.hpp"
#include "cfchroma/graph_io.hpp"
#include "cfchroma/random_models.hpp"
#include "cfchroma/solvers.hpp"
#include "cfchroma/verify.hpp"

namespace cfc {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchema = "cfchroma/1";

struct CliOptions {
    // gen
    std::string gen_model = "gnp";
    int gen_n = 0;
    double gen_p = 0.5;
    double gen_base = 0.99;
    std::optional<uint64_t> gen_seed;
    std::string gen_out;
    // color
    std::string color_algo = "cfc";
    std::string color_graph;
    std::string color_out;
    double color_p = 0.5;
    bool color_p_set = false;
    double color_delta = 0.1;
    double color_bigk = 5.0;
    std::string color_tail = "lnln";
    bool color_trace = false;
    bool paper_constants = false;
    // verify
    std::string verify_graph;
    std::string verify_coloring;
    bool respect_filler = false;
    // exact
    std::string exact_what = "cf";
    std::string exact_graph;
    std::optional<int> exact_size_cap;
    // spoil
    std::string spoil_graph;
    int spoil_k = 1;
    int spoil_f = 1;
    bool spoil_decide = false;
    bool spoil_witness = false;
    // universal
    std::string universal_graph;
    int universal_k = 0;
    // cover
    std::string cover_graph;
    std::string cover_family;
    bool cover_closed = false;
    // theory
    int theory_n = 0;
    double theory_p = 0.5;
    double theory_eps = 0.0;
    // experiment
    std::string experiment_config;
    std::string experiment_out;
    std::string experiment_csv;
    std::optional<int> experiment_jobs;
    bool allow_refusals = false;
    // shared
    bool human = false;
};

std::unique_ptr<CLI::App> build_app(CliOptions& opt) {
    auto app = std::make_unique<CLI::App>("conflict-free graph coloring toolkit");
    app->name("cfc");
    app->require_subcommand(1);

    auto* gen = app->add_subcommand("gen", "sample a random graph and write it to a file");
    gen->add_option("--model", opt.gen_model, "gnp or layered")
        ->check(CLI::IsMember({"gnp", "layered"}));
    gen->add_option("--n", opt.gen_n, "vertex count")->required();
    gen->add_option("--p", opt.gen_p, "edge probability (gnp)");
    gen->add_option("--base", opt.gen_base, "weight base (layered, default 0.99)");
    gen->add_option("--seed", opt.gen_seed, "master seed (required: no hidden entropy)")
        ->required();
    gen->add_option("--out", opt.gen_out, "output file; .json selects the JSON format")
        ->required();

    auto* color = app->add_subcommand("color", "construct a coloring and write it to a file");
    color->add_option("--algo", opt.color_algo, "exact | cfc | domination | greedy-proper")
        ->check(CLI::IsMember({"exact", "cfc", "domination", "greedy-proper"}));
    color->add_option("--graph", opt.color_graph, "input graph file")->required();
    color->add_option("--out", opt.color_out, "output coloring JSON")->required();
    color->add_option("--p", opt.color_p, "model edge probability (cfc)")
        ->each([&opt](const std::string&) { opt.color_p_set = true; });
    color->add_option("--delta", opt.color_delta, "delta in (0,1) (cfc)");
    color->add_option("--bigk", opt.color_bigk, "halting constant K (cfc, default 5)");
    color->add_option("--tail", opt.color_tail, "halting size: lnln | loglog2 | const:C");
    color->add_flag("--trace", opt.color_trace, "emit the round trace as JSON on stdout");
    color->add_flag("--paper-constants", opt.paper_constants,
                    "use K = 100 as the halting analysis requires (disables the round loop "
                    "at desk scale)");
    color->add_flag("--human", opt.human, "human-readable output");

    auto* verify = app->add_subcommand("verify", "check a coloring for conflict-freeness");
    verify->add_option("--graph", opt.verify_graph, "input graph file")->required();
    verify->add_option("--coloring", opt.verify_coloring, "coloring JSON file")->required();
    verify->add_flag("--respect-filler", opt.respect_filler,
                     "the designated filler color cannot serve as a unique witness");
    verify->add_flag("--human", opt.human, "human-readable output");

    auto* exact = app->add_subcommand("exact", "exact solvers on small graphs");
    exact->add_option("--what", opt.exact_what, "cf | chi | dom | cfprime")
        ->check(CLI::IsMember({"cf", "chi", "dom", "cfprime"}));
    exact->add_option("--graph", opt.exact_graph, "input graph file")->required();
    exact->add_option("--size-cap", opt.exact_size_cap,
                      "decide only up to this size (dom; returns cap+1 for exceeds)");
    exact->add_flag("--human", opt.human, "human-readable output");

    auto* spoil = app->add_subcommand("spoil", "exhaustive (k,f)-spoiling decision");
    spoil->add_option("--graph", opt.spoil_graph, "input graph file")->required();
    spoil->add_option("--k", opt.spoil_k, "family size bound")->required();
    spoil->add_option("--f", opt.spoil_f, "set size threshold")->required();
    spoil->add_flag("--decide", opt.spoil_decide, "print the verdict only");
    spoil->add_flag("--witness", opt.spoil_witness, "print an unspoiled family on violation");
    spoil->add_flag("--human", opt.human, "human-readable output");

    auto* universal = app->add_subcommand("universal", "k-universality check");
    universal->add_option("--graph", opt.universal_graph, "input graph file")->required();
    universal->add_option("--k", opt.universal_k, "pattern size bound")->required();
    universal->add_flag("--human", opt.human, "human-readable output");

    auto* cover = app->add_subcommand("cover", "covering-family check");
    cover->add_option("--graph", opt.cover_graph, "input graph file")->required();
    cover->add_option("--family", opt.cover_family, "family JSON file")->required();
    cover->add_flag("--closed", opt.cover_closed, "use closed neighborhoods N[x]");
    cover->add_flag("--human", opt.human, "human-readable output");

    auto* theory = app->add_subcommand("theory", "closed-form bound evaluation");
    theory->add_option("--n", opt.theory_n, "vertex count")->required();
    theory->add_option("--p", opt.theory_p, "edge probability")->required();
    theory->add_option("--eps", opt.theory_eps, "epsilon (default 0)");
    theory->add_flag("--human", opt.human, "human-readable output");

    auto* experiment = app->add_subcommand("experiment", "run a Monte Carlo campaign");
    experiment->add_option("--config", opt.experiment_config, "campaign config JSON")->required();
    experiment->add_option("--out", opt.experiment_out, "result JSON path")->required();
    experiment->add_option("--csv", opt.experiment_csv, "also write the per-trial CSV here");
    experiment->add_option("--jobs", opt.experiment_jobs, "worker threads (default from config)");
    experiment->add_flag("--allow-refusals", opt.allow_refusals,
                         "do not fail the run when trials are refused by solver caps");

    return app;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open output file: " + path);
    f << content;
}

ordered_json vertex_set_json(const VertexSet& s) { return ordered_json(s); }

CfcParams parse_cfc_params(const CliOptions& opt) {
    CfcParams params;
    params.p = opt.color_p;
    params.delta = opt.color_delta;
    params.big_k = opt.paper_constants ? 100.0 : opt.color_bigk;
    if (opt.color_tail == "lnln") params.tail = TailRule::LnLn;
    else if (opt.color_tail == "loglog2") params.tail = TailRule::LogLog2;
    else if (opt.color_tail.rfind("const:", 0) == 0) {
        params.tail = TailRule::Const;
        params.tail_const = std::stod(opt.color_tail.substr(6));
    } else {
        throw InputError("unknown tail rule: " + opt.color_tail);
    }
    return params;
}

int run_gen(const CliOptions& opt, std::ostream& out) {
    if (opt.gen_model == "gnp") {
        Graph g = sample_gnp({opt.gen_n, opt.gen_p, *opt.gen_seed});
        save_graph_file(opt.gen_out, g);
        out << ordered_json{{"schema", kSchema},
                            {"model", "gnp"},
                            {"n", g.n()},
                            {"m", g.edge_count()},
                            {"out", opt.gen_out}}
                   .dump()
            << "\n";
    } else {
        WeightedGraph wg = sample_layered({opt.gen_n, opt.gen_base, *opt.gen_seed});
        save_graph_file(opt.gen_out, wg); // layers only exist in the JSON format
        out << ordered_json{{"schema", kSchema},
                            {"model", "layered"},
                            {"n", wg.graph.n()},
                            {"m", wg.graph.edge_count()},
                            {"layers", wg.layer_count},
                            {"out", opt.gen_out}}
                   .dump()
            << "\n";
    }
    return 0;
}

int run_color(const CliOptions& opt, std::ostream& out) {
    Graph g = load_graph_file(opt.color_graph).graph;
    ordered_json summary;
    summary["schema"] = kSchema;
    summary["algo"] = opt.color_algo;
    Coloring coloring;
    if (opt.color_algo == "exact") {
        CfExact res = exact_cf_chromatic(g);
        coloring = res.witness;
        summary["value"] = res.value;
    } else if (opt.color_algo == "cfc") {
        if (!opt.color_p_set) throw InputError("--algo cfc requires --p");
        CfcRun run = algorithm_cfc(g, parse_cfc_params(opt));
        coloring = run.coloring;
        summary["colorsUsed"] = run.trace.colors_used;
        summary["rounds"] = run.trace.rounds.size();
        summary["tailDegeneracy"] = run.trace.tail_degeneracy;
        summary["fillerUsed"] = run.trace.filler_used;
        summary["verified"] = is_conflict_free(g, run.coloring, true).ok;
        if (opt.color_trace) {
            ordered_json rounds = ordered_json::array();
            for (const auto& r : run.trace.rounds) {
                rounds.push_back({{"selected", vertex_set_json(r.selected)},
                                  {"cared", vertex_set_json(r.cared)},
                                  {"remaining", r.remaining}});
            }
            summary["trace"] = {{"rounds", rounds},
                                {"tailSize", run.trace.tail_size},
                                {"tailDegeneracy", run.trace.tail_degeneracy},
                                {"fillerUsed", run.trace.filler_used},
                                {"colorsUsed", run.trace.colors_used}};
        }
    } else if (opt.color_algo == "domination") {
        VertexSet s = greedy_dominating_set(g);
        coloring = domination_coloring(g, s);
        summary["dominatingSetSize"] = s.size();
        summary["colorsUsed"] = s.size() + 1;
    } else { // greedy-proper
        DegeneracyResult deg = degeneracy(g);
        coloring.color_of = greedy_degeneracy_coloring(g, deg);
        summary["degeneracy"] = deg.degeneracy;
        int used = 0;
        for (int c : coloring.color_of) used = std::max(used, c + 1);
        summary["colorsUsed"] = used;
    }
    write_text_file(opt.color_out, write_coloring_json(coloring));
    summary["out"] = opt.color_out;
    if (opt.human) {
        out << "algo: " << opt.color_algo << "\n";
        for (auto& [k, v] : summary.items())
            if (k != "schema" && k != "algo" && k != "trace") out << k << ": " << v.dump() << "\n";
    } else {
        out << summary.dump() << "\n";
    }
    return 0;
}

int run_verify(const CliOptions& opt, std::ostream& out) {
    Graph g = load_graph_file(opt.verify_graph).graph;
    Coloring c = read_coloring_file(opt.verify_coloring);
    CfVerdict verdict = is_conflict_free(g, c, opt.respect_filler);
    if (opt.human) {
        out << (verdict.ok ? "conflict-free\n"
                           : "violated at vertex " + std::to_string(verdict.vertex) + ": " +
                                 verdict.explanation + "\n");
    } else {
        ordered_json j;
        j["schema"] = kSchema;
        j["holds"] = verdict.ok;
        if (!verdict.ok) {
            j["violatingVertex"] = verdict.vertex;
            j["explanation"] = verdict.explanation;
        }
        out << j.dump() << "\n";
    }
    return verdict.ok ? 0 : 1;
}

int run_exact(const CliOptions& opt, std::ostream& out) {
    Graph g = load_graph_file(opt.exact_graph).graph;
    ordered_json j;
    j["schema"] = kSchema;
    j["what"] = opt.exact_what;
    if (opt.exact_size_cap && opt.exact_what != "dom")
        throw InputError("--size-cap only applies to --what dom");
    if (opt.exact_what == "cf") {
        CfExact res = exact_cf_chromatic(g);
        j["value"] = res.value;
        j["witness"] = {{"colors", res.witness.color_of}, {"filler", nullptr}};
    } else if (opt.exact_what == "chi") {
        j["value"] = exact_chromatic(g);
    } else if (opt.exact_what == "dom") {
        int d = exact_domination(g, opt.exact_size_cap);
        j["value"] = d;
        if (opt.exact_size_cap) j["exceedsCap"] = d > *opt.exact_size_cap;
    } else { // cfprime
        CfPrimeExact res = exact_cf_prime(g);
        j["value"] = res.value;
        ordered_json sets = ordered_json::array();
        for (const auto& s : res.family.sets) sets.push_back(vertex_set_json(s));
        j["witness"] = {{"sets", sets}};
    }
    if (opt.human) out << opt.exact_what << " = " << j["value"].dump() << "\n";
    else out << j.dump() << "\n";
    return 0;
}

int run_spoil(const CliOptions& opt, std::ostream& out) {
    Graph g = load_graph_file(opt.spoil_graph).graph;
    SpoilVerdict verdict = is_kf_spoiling(g, {opt.spoil_k, opt.spoil_f});
    bool with_witness = !opt.spoil_decide; // --witness is the default behavior
    ordered_json j;
    j["schema"] = kSchema;
    j["holds"] = verdict.spoiling;
    j["k"] = opt.spoil_k;
    j["f"] = opt.spoil_f;
    if (!verdict.spoiling && with_witness) {
        ordered_json sets = ordered_json::array();
        for (const auto& s : verdict.witness.sets) sets.push_back(vertex_set_json(s));
        j["witnessFamily"] = {{"sets", sets}};
    }
    if (opt.human)
        out << "(" << opt.spoil_k << "," << opt.spoil_f << ")-spoiling: "
            << (verdict.spoiling ? "yes" : "no") << "\n";
    else out << j.dump() << "\n";
    return verdict.spoiling ? 0 : 1;
}

int run_universal(const CliOptions& opt, std::ostream& out) {
    Graph g = load_graph_file(opt.universal_graph).graph;
    UniversalVerdict verdict = is_k_universal(g, opt.universal_k);
    ordered_json j;
    j["schema"] = kSchema;
    j["holds"] = verdict.universal;
    j["k"] = opt.universal_k;
    if (!verdict.universal) {
        j["witnessA"] = vertex_set_json(verdict.witness_a);
        j["witnessB"] = vertex_set_json(verdict.witness_b);
    }
    if (opt.human)
        out << opt.universal_k << "-universal: " << (verdict.universal ? "yes" : "no") << "\n";
    else out << j.dump() << "\n";
    return verdict.universal ? 0 : 1;
}

int run_cover(const CliOptions& opt, std::ostream& out) {
    Graph g = load_graph_file(opt.cover_graph).graph;
    SetFamily fam = read_family_file(opt.cover_family);
    CoverVerdict verdict = is_cover_family(g, fam, opt.cover_closed);
    ordered_json j;
    j["schema"] = kSchema;
    j["holds"] = verdict.ok;
    j["mode"] = opt.cover_closed ? "closed" : "open";
    if (!verdict.ok) j["uncoveredVertex"] = verdict.uncovered;
    if (opt.human)
        out << (verdict.ok ? "covering family\n"
                           : "vertex " + std::to_string(verdict.uncovered) + " uncovered\n");
    else out << j.dump() << "\n";
    return verdict.ok ? 0 : 1;
}

int run_theory(const CliOptions& opt, std::ostream& out) {
    TheoryReport r = theory_bounds(opt.theory_n, opt.theory_p, opt.theory_eps);
    if (opt.human) {
        out << "mu(" << r.p << ") = " << r.mu << " (m = " << r.m << ")\n"
            << "cf bounds: [" << r.cf_lower << ", " << r.cf_upper << "]\n"
            << "domination formula: " << r.domination_formula << "\n";
    } else {
        ordered_json j;
        j["schema"] = kSchema;
        j["n"] = r.n;
        j["p"] = r.p;
        j["eps"] = r.eps;
        j["mu"] = r.mu;
        j["m"] = r.m;
        j["cfLower"] = r.cf_lower;
        j["cfUpper"] = r.cf_upper;
        j["dominationFormula"] = r.domination_formula;
        out << j.dump() << "\n";
    }
    return 0;
}

int run_experiment(const CliOptions& opt, std::ostream& out) {
    std::ifstream in(opt.experiment_config);
    if (!in) throw InputError("cannot open config file: " + opt.experiment_config);
    std::stringstream buffer;
    buffer << in.rdbuf();
    ExperimentConfig cfg = parse_experiment_config(buffer.str());
    if (opt.experiment_jobs) cfg.jobs = *opt.experiment_jobs;
    if (opt.allow_refusals) cfg.allow_refusals = true;
    ExperimentResult res = ::cfc::run_experiment(cfg);
    write_text_file(opt.experiment_out, emit_report(res, "json"));
    if (!opt.experiment_csv.empty()) write_text_file(opt.experiment_csv, emit_report(res, "csv"));
    ordered_json j;
    j["schema"] = kSchema;
    j["kind"] = cfg.kind;
    j["trials"] = static_cast<int>(res.per_trial.size());
    j["refused"] = res.refused_count();
    j["assertionsPass"] = res.all_assertions_pass();
    j["out"] = opt.experiment_out;
    out << j.dump() << "\n";
    if (res.refused_count() > 0 && !cfg.allow_refusals) return 3;
    return res.all_assertions_pass() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliOptions opt;
    auto app = build_app(opt);
    // CLI11 consumes the vector back to front.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app->parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* deepest = app.get();
        while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
        out << deepest->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    try {
        for (auto* sub : app->get_subcommands()) {
            const std::string& name = sub->get_name();
            if (name == "gen") return run_gen(opt, out);
            if (name == "color") return run_color(opt, out);
            if (name == "verify") return run_verify(opt, out);
            if (name == "exact") return run_exact(opt, out);
            if (name == "spoil") return run_spoil(opt, out);
            if (name == "universal") return run_universal(opt, out);
            if (name == "cover") return run_cover(opt, out);
            if (name == "theory") return run_theory(opt, out);
            if (name == "experiment") return run_experiment(opt, out);
        }
        err << "no subcommand given\n";
        return 2;
    } catch (const CapError& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

std::string cli_help_text(const std::string& subcommand) {
    CliOptions opt;
    auto app = build_app(opt);
    if (subcommand.empty()) return app->help();
    return app->get_subcommand(subcommand)->help();
}

std::vector<std::string> cli_option_names(const std::string& subcommand) {
    CliOptions opt;
    auto app = build_app(opt);
    const CLI::App* sub = subcommand.empty() ? app.get() : app->get_subcommand(subcommand);
    std::vector<std::string> names;
    for (const CLI::Option* o : sub->get_options()) names.push_back(o->get_name());
    return names;
}

} // namespace cfc
