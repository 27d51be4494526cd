#include "cfchroma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace cfc {

using nlohmann::ordered_json;

double ExperimentConfig::assertion_threshold(const std::string& name, double fallback) const {
    for (const auto& [n, t] : assertion_thresholds)
        if (n == name) return t;
    return fallback;
}

double TrialRecord::measure(const std::string& name) const {
    for (const auto& [n, v] : measures)
        if (n == name) return v;
    throw InputError("trial record has no measure named " + name);
}

bool ExperimentResult::all_assertions_pass() const {
    for (const auto& a : assertions)
        if (!a.pass) return false;
    return true;
}

int ExperimentResult::refused_count() const {
    int c = 0;
    for (const auto& t : per_trial)
        if (t.refused) ++c;
    return c;
}

namespace {

TailRule tail_rule_from_string(const std::string& s) {
    if (s == "lnln") return TailRule::LnLn;
    if (s == "loglog2") return TailRule::LogLog2;
    if (s == "const") return TailRule::Const;
    throw InputError("unknown tail rule: " + s + " (expected lnln|loglog2|const)");
}

std::string tail_rule_to_string(TailRule t) {
    switch (t) {
        case TailRule::LnLn: return "lnln";
        case TailRule::LogLog2: return "loglog2";
        case TailRule::Const: return "const";
    }
    return "lnln";
}

// Run fn(0..total-1) on `jobs` threads; each index writes only its own slot,
// so the outcome is independent of scheduling. The first exception thrown by
// any worker is rethrown after all workers stop.
template <typename Fn>
void parallel_trials(int total, int jobs, Fn&& fn) {
    jobs = std::max(1, std::min(jobs, total));
    if (jobs <= 1) {
        for (int i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < total && !failed; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed = true;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

MeasureSummary summarize(std::vector<double> values) {
    MeasureSummary s;
    s.count = static_cast<int>(values.size());
    if (values.empty()) return s;
    double sum = 0;
    s.min = s.max = values[0];
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / s.count;
    double sq = 0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = s.count > 1 ? std::sqrt(sq / (s.count - 1)) : 0.0;
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        // nearest-rank on the sorted sample
        int idx = static_cast<int>(std::lround(q * (s.count - 1)));
        return values[std::clamp(idx, 0, s.count - 1)];
    };
    s.p10 = quantile(0.1);
    s.p50 = quantile(0.5);
    s.p90 = quantile(0.9);
    return s;
}

void summarize_trials(ExperimentResult& res) {
    std::vector<std::string> keys;
    for (const auto& t : res.per_trial)
        for (const auto& [name, value] : t.measures)
            if (std::find(keys.begin(), keys.end(), name) == keys.end()) keys.push_back(name);
    for (const auto& key : keys) {
        std::vector<double> vals;
        for (const auto& t : res.per_trial)
            for (const auto& [name, value] : t.measures)
                if (name == key) vals.push_back(value);
        res.summary.emplace_back(key, summarize(std::move(vals)));
    }
}

void add_refusal_assertion(ExperimentResult& res, const ExperimentConfig& cfg) {
    if (cfg.allow_refusals) return;
    AssertionOutcome a;
    a.name = "no_refusals";
    a.observed = res.refused_count();
    a.threshold = 0;
    a.pass = a.observed <= a.threshold;
    if (!a.pass) a.note = "trials refused by solver caps";
    res.assertions.push_back(a);
}

// Deterministic Fisher-Yates driven by the counter stream.
std::vector<int> stream_shuffle(int n, uint64_t seed) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t ctr = 0;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(stream::unit_double(seed, ctr++) * (i + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

VertexSet random_vertex_subset(int n, int size, uint64_t seed) {
    std::vector<int> perm = stream_shuffle(n, seed);
    VertexSet out(perm.begin(), perm.begin() + size);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid experiment config JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.kind = j.value("kind", std::string("campaign"));
    if (!j.contains("masterSeed"))
        throw InputError("experiment config requires a masterSeed (no hidden entropy)");
    cfg.master_seed = j.at("masterSeed").get<uint64_t>();
    cfg.trials = j.value("trials", 1);
    if (cfg.trials < 1) throw InputError("trials must be >= 1");
    cfg.jobs = j.value("jobs", 1);
    if (j.contains("model")) {
        const auto& m = j.at("model");
        cfg.model = m.value("type", std::string("gnp"));
        if (cfg.model != "gnp" && cfg.model != "layered")
            throw InputError("model.type must be gnp or layered");
        if (m.contains("nGrid")) cfg.n_grid = m.at("nGrid").get<std::vector<int>>();
        else if (m.contains("n")) cfg.n_grid = {m.at("n").get<int>()};
        if (m.contains("pGrid")) cfg.p_grid = m.at("pGrid").get<std::vector<double>>();
        else if (m.contains("p")) cfg.p_grid = {m.at("p").get<double>()};
        cfg.base = m.value("base", 0.99);
    }
    cfg.algo = j.value("algo", std::string("algorithm_cfc"));
    if (j.contains("algoParams")) {
        const auto& a = j.at("algoParams");
        cfg.cfc_delta = a.value("delta", 0.1);
        cfg.cfc_big_k = a.value("bigK", 5.0);
        cfg.cfc_tail = tail_rule_from_string(a.value("tail", std::string("lnln")));
        cfg.cfc_tail_const = a.value("tailConst", 4.0);
        if (a.contains("sizeCap") && !a.at("sizeCap").is_null())
            cfg.size_cap = a.at("sizeCap").get<int>();
    }
    if (j.contains("spoil")) {
        cfg.k = j.at("spoil").value("k", 1);
        cfg.f = j.at("spoil").value("f", 3);
    }
    if (j.contains("threecond")) {
        const auto& t = j.at("threecond");
        cfg.probes = t.value("probes", 100);
        cfg.alpha_exponent = t.value("alphaExponent", 0.6);
        cfg.cover_exponent = t.value("coverExponent", 0.7);
        cfg.r_constant = t.value("rConstant", 1e-5);
        cfg.alpha_cap = t.value("alphaCap", 40);
        if (t.contains("r") && !t.at("r").is_null()) cfg.r_override = t.at("r").get<int>();
    }
    if (j.contains("assertions")) {
        for (const auto& a : j.at("assertions"))
            cfg.assertion_thresholds.emplace_back(a.at("name").get<std::string>(),
                                                  a.at("threshold").get<double>());
    }
    cfg.allow_refusals = j.value("allowRefusals", false);
    return cfg;
}

namespace {

struct Cell {
    int n;
    double p; // ignored for layered
};

std::vector<Cell> build_cells(const ExperimentConfig& cfg) {
    if (cfg.n_grid.empty()) throw InputError("experiment config needs model.n or model.nGrid");
    std::vector<Cell> cells;
    if (cfg.model == "layered") {
        for (int n : cfg.n_grid) cells.push_back({n, 0.0});
    } else {
        if (cfg.p_grid.empty()) throw InputError("gnp experiments need model.p or model.pGrid");
        for (int n : cfg.n_grid)
            for (double p : cfg.p_grid) cells.push_back({n, p});
    }
    return cells;
}

void run_one_campaign_trial(const ExperimentConfig& cfg, const Cell& cell, TrialRecord& rec) {
    auto push = [&rec](const std::string& k, double v) { rec.measures.emplace_back(k, v); };
    push("n", cell.n);
    if (cfg.model == "gnp") push("p", cell.p);
    try {
        Graph g;
        if (cfg.model == "layered") {
            g = sample_layered({cell.n, cfg.base, rec.seed}).graph;
        } else {
            g = sample_gnp({cell.n, cell.p, rec.seed});
        }
        if (cfg.algo == "algorithm_cfc") {
            if (cfg.model != "gnp")
                throw InputError("algorithm_cfc campaigns need the gnp model (p drives the rounds)");
            CfcParams params;
            params.p = cell.p;
            params.delta = cfg.cfc_delta;
            params.big_k = cfg.cfc_big_k;
            params.tail = cfg.cfc_tail;
            params.tail_const = cfg.cfc_tail_const;
            CfcRun run = algorithm_cfc(g, params);
            bool verified = is_conflict_free(g, run.coloring, true).ok;
            int rounds = static_cast<int>(run.trace.rounds.size());
            int expected = rounds +
                           (run.trace.tail_size > 0 ? run.trace.tail_degeneracy + 1 : 0) +
                           (run.trace.filler_used ? 1 : 0);
            push("colors", run.trace.colors_used);
            push("rounds", rounds);
            push("tailSize", run.trace.tail_size);
            push("tailDegeneracy", run.trace.tail_degeneracy);
            push("fillerUsed", run.trace.filler_used ? 1 : 0);
            push("verified", verified ? 1 : 0);
            push("identityOk", run.trace.colors_used == expected ? 1 : 0);
        } else if (cfg.algo == "exact_cf_chromatic") {
            push("cf", exact_cf_chromatic(g).value);
        } else if (cfg.algo == "exact_chromatic") {
            push("chi", exact_chromatic(g));
        } else if (cfg.algo == "exact_domination") {
            push("D", exact_domination(g, cfg.size_cap));
        } else {
            throw InputError("unknown campaign algo: " + cfg.algo);
        }
    } catch (const CapError& e) {
        rec.refused = true;
        rec.refusal = e.what();
    }
}

} // namespace

ExperimentResult run_campaign(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.config = cfg;
    std::vector<Cell> cells = build_cells(cfg);
    int total = static_cast<int>(cells.size()) * cfg.trials;
    res.per_trial.resize(total);
    parallel_trials(total, cfg.jobs, [&](int t) {
        TrialRecord& rec = res.per_trial[t];
        rec.trial = t;
        rec.seed = stream::derive_seed(cfg.master_seed, static_cast<uint64_t>(t));
        run_one_campaign_trial(cfg, cells[t / cfg.trials], rec);
    });
    summarize_trials(res);
    if (cfg.algo == "algorithm_cfc") {
        AssertionOutcome verified;
        verified.name = "all_colorings_verified";
        verified.threshold = cfg.assertion_threshold("all_colorings_verified", 1.0);
        int ok = 0, ran = 0;
        for (const auto& t : res.per_trial)
            if (!t.refused) {
                ++ran;
                ok += t.measure("verified") > 0 ? 1 : 0;
            }
        verified.observed = ran ? static_cast<double>(ok) / ran : 0.0;
        verified.pass = verified.observed >= verified.threshold;
        res.assertions.push_back(verified);

        AssertionOutcome identity;
        identity.name = "trace_identity";
        identity.threshold = cfg.assertion_threshold("trace_identity", 1.0);
        ok = 0;
        for (const auto& t : res.per_trial)
            if (!t.refused && t.measure("identityOk") > 0) ++ok;
        identity.observed = ran ? static_cast<double>(ok) / ran : 0.0;
        identity.pass = identity.observed >= identity.threshold;
        res.assertions.push_back(identity);
    }
    add_refusal_assertion(res, cfg);
    return res;
}

ExperimentResult cf_ratio_experiment(const std::vector<int>& n_grid, double p, int trials,
                                     uint64_t master_seed, double eps, int jobs) {
    ExperimentConfig cfg;
    cfg.kind = "cf_ratio";
    cfg.master_seed = master_seed;
    cfg.trials = trials;
    cfg.jobs = jobs;
    cfg.model = "gnp";
    cfg.n_grid = n_grid;
    cfg.p_grid = {p};
    cfg.algo = "algorithm_cfc";
    ExperimentResult res = run_campaign(cfg);
    res.config.kind = "cf_ratio";
    double mu_p = mu(p);
    double denom = -std::log1p(-mu_p);
    for (size_t i = 0; i < n_grid.size(); ++i) {
        RatioRow row;
        row.n = n_grid[i];
        row.trials = trials;
        std::vector<double> colors;
        for (int t = 0; t < trials; ++t)
            colors.push_back(res.per_trial[i * trials + t].measure("colors"));
        MeasureSummary s = summarize(colors);
        row.mean_colors = s.mean;
        row.sd_colors = s.stddev;
        row.theory = (1.0 + eps) * std::log(static_cast<double>(row.n) * p) / denom;
        row.ratio = row.mean_colors / row.theory;
        row.ratio_se = trials > 1 ? row.sd_colors / (row.theory * std::sqrt(trials)) : 0.0;
        res.ratio_table.push_back(row);
    }
    res.ratio_trend_non_increasing = true;
    for (size_t i = 0; i + 1 < res.ratio_table.size(); ++i) {
        const auto& a = res.ratio_table[i];
        const auto& b = res.ratio_table[i + 1];
        double slack = std::sqrt(a.ratio_se * a.ratio_se + b.ratio_se * b.ratio_se);
        if (b.ratio > a.ratio + slack) res.ratio_trend_non_increasing = false;
    }
    return res;
}

ExperimentResult domination_concentration_experiment(int n, double p, int trials,
                                                     uint64_t master_seed,
                                                     std::optional<int> size_cap,
                                                     double threshold, int jobs) {
    if (p < 0.5) throw InputError("domination concentration runs need p >= 1/2");
    int formula = theory_bounds(n, p).domination_formula;
    ExperimentConfig cfg;
    cfg.kind = "domination_concentration";
    cfg.master_seed = master_seed;
    cfg.trials = trials;
    cfg.jobs = jobs;
    cfg.model = "gnp";
    cfg.n_grid = {n};
    cfg.p_grid = {p};
    cfg.algo = "exact_domination";
    cfg.size_cap = size_cap ? *size_cap : formula + 3;
    ExperimentResult res = run_campaign(cfg);
    res.config.kind = "domination_concentration";
    ConcentrationReport rep;
    rep.formula = formula;
    std::vector<std::pair<int, int>> hist;
    int in_target = 0, decided = 0;
    for (const auto& t : res.per_trial) {
        if (t.refused) continue;
        ++decided;
        int d = static_cast<int>(t.measure("D"));
        if (d == formula || d == formula + 1) ++in_target;
        auto it = std::find_if(hist.begin(), hist.end(),
                               [&](const auto& e) { return e.first == d; });
        if (it == hist.end()) hist.emplace_back(d, 1);
        else ++it->second;
    }
    std::sort(hist.begin(), hist.end());
    rep.histogram = std::move(hist);
    rep.fraction_in_target = decided ? static_cast<double>(in_target) / decided : 0.0;
    res.concentration = rep;
    AssertionOutcome a;
    a.name = "concentration_frequency";
    a.threshold = cfg.assertion_threshold("concentration_frequency", threshold);
    a.observed = rep.fraction_in_target;
    a.pass = a.observed >= a.threshold;
    res.assertions.push_back(a);
    return res;
}

ExperimentResult spoiling_experiment(int n, double p, int k, int f, int trials,
                                     uint64_t master_seed, int jobs) {
    ExperimentConfig cfg;
    cfg.kind = "spoiling";
    cfg.master_seed = master_seed;
    cfg.trials = trials;
    cfg.jobs = jobs;
    cfg.model = "gnp";
    cfg.n_grid = {n};
    cfg.p_grid = {p};
    cfg.algo = "spoiling";
    cfg.k = k;
    cfg.f = f;
    ExperimentResult res;
    res.config = cfg;
    res.per_trial.resize(trials);
    parallel_trials(trials, jobs, [&](int t) {
        TrialRecord& rec = res.per_trial[t];
        rec.trial = t;
        rec.seed = stream::derive_seed(master_seed, static_cast<uint64_t>(t));
        rec.measures.emplace_back("n", n);
        rec.measures.emplace_back("p", p);
        try {
            Graph g = sample_gnp({n, p, rec.seed});
            SpoilVerdict verdict = is_kf_spoiling(g, {k, f});
            rec.measures.emplace_back("spoiling", verdict.spoiling ? 1 : 0);
            if (verdict.spoiling) {
                int cf = exact_cf_chromatic(g).value;
                rec.measures.emplace_back("cf", cf);
                rec.measures.emplace_back("lowerBoundHolds", cf > k ? 1 : 0);
            }
        } catch (const CapError& e) {
            rec.refused = true;
            rec.refusal = e.what();
        }
    });
    summarize_trials(res);
    SpoilingReport rep;
    int decided = 0;
    for (const auto& t : res.per_trial) {
        if (t.refused) continue;
        ++decided;
        if (t.measure("spoiling") > 0) {
            ++rep.yes_trials;
            if (t.measure("lowerBoundHolds") <= 0) ++rep.crosscheck_failures;
        }
    }
    rep.frequency = decided ? static_cast<double>(rep.yes_trials) / decided : 0.0;
    res.spoiling = rep;
    AssertionOutcome a;
    a.name = "spoiling_implies_lower_bound";
    a.threshold = cfg.assertion_threshold("spoiling_implies_lower_bound", 0.0);
    a.observed = rep.crosscheck_failures;
    a.pass = a.observed <= a.threshold;
    if (!a.pass) a.note = "a graph decided spoiling has conflict-free chromatic number <= k";
    res.assertions.push_back(a);
    add_refusal_assertion(res, cfg);
    return res;
}

ThreecondReport threecond_check(const LayeredSpec& spec, int probes,
                                const ExperimentConfig& opts) {
    WeightedGraph wg = sample_layered(spec);
    int n = spec.n;
    ThreecondReport rep;
    rep.n_used = n;
    double lnn = std::log(static_cast<double>(n));
    rep.r_used = opts.r_override ? *opts.r_override
                                 : static_cast<int>(std::floor(opts.r_constant * lnn * lnn));
    rep.alpha_threshold = std::pow(static_cast<double>(n), opts.alpha_exponent);
    if (n <= opts.alpha_cap) {
        rep.alpha_observed = max_independent_set_size(wg.graph, opts.alpha_cap);
        rep.alpha_exact = true;
    } else {
        // greedy lower bound, ascending vertex ids
        std::vector<char> blocked(n, 0);
        int count = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (blocked[v]) continue;
            ++count;
            for (Vertex w : wg.graph.neighbors(v)) blocked[w] = 1;
        }
        rep.alpha_observed = count;
        rep.alpha_exact = false;
    }
    double sqrt_n = std::sqrt(static_cast<double>(n));
    rep.heavy_probes = probes;
    for (int j = 0; j < probes; ++j) {
        uint64_t seed = stream::derive_seed(spec.seed ^ 0x4845415659ULL, j); // "HEAVY"
        std::vector<int> perm = stream_shuffle(n, seed);
        VertexSet s;
        double weight = 0;
        for (int v : perm) {
            s.push_back(v);
            weight += wg.weight(v);
            if (weight > sqrt_n) break;
        }
        std::sort(s.begin(), s.end());
        int one = static_cast<int>(one_neighborhood(wg.graph, s).size());
        rep.heavy_max_one_nbhd = std::max(rep.heavy_max_one_nbhd, one);
        if (one >= rep.alpha_threshold) ++rep.heavy_violations;
    }
    rep.light_probes = probes;
    rep.light_threshold = n - std::pow(static_cast<double>(n), opts.cover_exponent);
    for (int j = 0; j < probes && rep.r_used > 0; ++j) {
        uint64_t seed = stream::derive_seed(spec.seed ^ 0x4C49474854ULL, j); // "LIGHT"
        std::vector<int> perm = stream_shuffle(n, seed);
        std::vector<char> union_mask(n, 0);
        size_t cursor = 0;
        for (int set_idx = 0; set_idx < rep.r_used && cursor < perm.size(); ++set_idx) {
            VertexSet s;
            double weight = 0;
            while (cursor < perm.size()) {
                double w = wg.weight(perm[cursor]);
                if (weight + w > sqrt_n) break; // keep the set light
                weight += w;
                s.push_back(perm[cursor++]);
            }
            if (s.empty()) break;
            std::sort(s.begin(), s.end());
            for (Vertex v : one_neighborhood(wg.graph, s)) union_mask[v] = 1;
        }
        long long covered = std::count(union_mask.begin(), union_mask.end(), char(1));
        rep.light_union_max = std::max(rep.light_union_max, covered);
    }
    return rep;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind == "campaign") return run_campaign(cfg);
    if (cfg.kind == "cf_ratio") {
        if (cfg.p_grid.size() != 1)
            throw InputError("cf_ratio experiments use a single p with an n grid");
        return cf_ratio_experiment(cfg.n_grid, cfg.p_grid[0], cfg.trials, cfg.master_seed, 0.0,
                                   cfg.jobs);
    }
    if (cfg.kind == "domination_concentration") {
        if (cfg.n_grid.size() != 1 || cfg.p_grid.size() != 1)
            throw InputError("domination_concentration experiments use a single (n, p)");
        return domination_concentration_experiment(
            cfg.n_grid[0], cfg.p_grid[0], cfg.trials, cfg.master_seed, cfg.size_cap,
            cfg.assertion_threshold("concentration_frequency", 0.8), cfg.jobs);
    }
    if (cfg.kind == "spoiling") {
        if (cfg.n_grid.size() != 1 || cfg.p_grid.size() != 1)
            throw InputError("spoiling experiments use a single (n, p)");
        return spoiling_experiment(cfg.n_grid[0], cfg.p_grid[0], cfg.k, cfg.f, cfg.trials,
                                   cfg.master_seed, cfg.jobs);
    }
    if (cfg.kind == "threecond") {
        if (cfg.n_grid.size() != 1) throw InputError("threecond experiments use a single n");
        ExperimentResult res;
        res.config = cfg;
        res.threecond =
            threecond_check({cfg.n_grid[0], cfg.base, cfg.master_seed}, cfg.probes, cfg);
        return res;
    }
    throw InputError("unknown experiment kind: " + cfg.kind);
}

namespace {

ordered_json config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["kind"] = cfg.kind;
    j["masterSeed"] = cfg.master_seed;
    j["trials"] = cfg.trials;
    j["jobs"] = cfg.jobs;
    ordered_json model;
    model["type"] = cfg.model;
    model["nGrid"] = cfg.n_grid;
    if (cfg.model == "gnp") model["pGrid"] = cfg.p_grid;
    else model["base"] = cfg.base;
    j["model"] = model;
    j["algo"] = cfg.algo;
    ordered_json ap;
    ap["delta"] = cfg.cfc_delta;
    ap["bigK"] = cfg.cfc_big_k;
    ap["tail"] = tail_rule_to_string(cfg.cfc_tail);
    ap["tailConst"] = cfg.cfc_tail_const;
    if (cfg.size_cap) ap["sizeCap"] = *cfg.size_cap;
    else ap["sizeCap"] = nullptr;
    j["algoParams"] = ap;
    if (cfg.kind == "spoiling") j["spoil"] = {{"k", cfg.k}, {"f", cfg.f}};
    if (cfg.kind == "threecond") {
        ordered_json t;
        t["probes"] = cfg.probes;
        t["alphaExponent"] = cfg.alpha_exponent;
        t["coverExponent"] = cfg.cover_exponent;
        t["rConstant"] = cfg.r_constant;
        t["alphaCap"] = cfg.alpha_cap;
        if (cfg.r_override) t["r"] = *cfg.r_override;
        else t["r"] = nullptr;
        j["threecond"] = t;
    }
    ordered_json asserts = ordered_json::array();
    for (const auto& [name, thr] : cfg.assertion_thresholds)
        asserts.push_back({{"name", name}, {"threshold", thr}});
    j["assertions"] = asserts;
    j["allowRefusals"] = cfg.allow_refusals;
    return j;
}

std::string json_number(double v) { return ordered_json(v).dump(); }

} // namespace

std::string emit_report(const ExperimentResult& res, const std::string& format) {
    if (format == "csv") {
        std::vector<std::string> keys;
        for (const auto& t : res.per_trial)
            for (const auto& [name, value] : t.measures)
                if (std::find(keys.begin(), keys.end(), name) == keys.end()) keys.push_back(name);
        std::ostringstream out;
        out << "trial,seed,refused";
        for (const auto& k : keys) out << "," << k;
        out << "\n";
        for (const auto& t : res.per_trial) {
            out << t.trial << "," << t.seed << "," << (t.refused ? 1 : 0);
            for (const auto& k : keys) {
                out << ",";
                for (const auto& [name, value] : t.measures)
                    if (name == k) {
                        out << json_number(value);
                        break;
                    }
            }
            out << "\n";
        }
        return out.str();
    }
    if (format != "json") throw InputError("emit_report supports json or csv, got " + format);
    ordered_json j;
    j["schema"] = "cfchroma/1";
    j["kind"] = res.config.kind;
    j["config"] = config_to_json(res.config);
    ordered_json trials = ordered_json::array();
    for (const auto& t : res.per_trial) {
        ordered_json row;
        row["trial"] = t.trial;
        row["seed"] = t.seed;
        row["refused"] = t.refused;
        if (t.refused) row["refusal"] = t.refusal;
        ordered_json measures;
        for (const auto& [name, value] : t.measures) measures[name] = value;
        row["measures"] = measures;
        trials.push_back(row);
    }
    j["perTrial"] = trials;
    ordered_json summary;
    for (const auto& [name, s] : res.summary) {
        summary[name] = {{"count", s.count}, {"mean", s.mean},   {"stddev", s.stddev},
                         {"min", s.min},     {"max", s.max},     {"p10", s.p10},
                         {"p50", s.p50},     {"p90", s.p90}};
    }
    j["summary"] = summary;
    ordered_json asserts = ordered_json::array();
    for (const auto& a : res.assertions) {
        ordered_json row;
        row["name"] = a.name;
        row["pass"] = a.pass;
        row["observed"] = a.observed;
        row["threshold"] = a.threshold;
        if (!a.note.empty()) row["note"] = a.note;
        asserts.push_back(row);
    }
    j["assertions"] = asserts;
    if (!res.ratio_table.empty()) {
        ordered_json table = ordered_json::array();
        for (const auto& r : res.ratio_table) {
            table.push_back({{"n", r.n},
                             {"trials", r.trials},
                             {"meanColors", r.mean_colors},
                             {"sdColors", r.sd_colors},
                             {"theory", r.theory},
                             {"ratio", r.ratio},
                             {"ratioSE", r.ratio_se}});
        }
        j["ratioTable"] = table;
        j["ratioTrendNonIncreasing"] = res.ratio_trend_non_increasing;
    }
    if (res.concentration) {
        ordered_json c;
        c["formula"] = res.concentration->formula;
        ordered_json hist = ordered_json::array();
        for (auto [d, count] : res.concentration->histogram)
            hist.push_back({{"D", d}, {"count", count}});
        c["histogram"] = hist;
        c["fractionInTarget"] = res.concentration->fraction_in_target;
        j["concentration"] = c;
    }
    if (res.spoiling) {
        j["spoiling"] = {{"frequency", res.spoiling->frequency},
                         {"yesTrials", res.spoiling->yes_trials},
                         {"crosscheckFailures", res.spoiling->crosscheck_failures}};
    }
    if (res.threecond) {
        const auto& t = *res.threecond;
        j["threecond"] = {{"nUsed", t.n_used},
                          {"rUsed", t.r_used},
                          {"alphaObserved", t.alpha_observed},
                          {"alphaExact", t.alpha_exact},
                          {"alphaThreshold", t.alpha_threshold},
                          {"heavyProbes", t.heavy_probes},
                          {"heavyViolations", t.heavy_violations},
                          {"heavyMaxOneNbhd", t.heavy_max_one_nbhd},
                          {"lightProbes", t.light_probes},
                          {"lightUnionMax", t.light_union_max},
                          {"lightThreshold", t.light_threshold}};
    }
    return j.dump(2) + "\n";
}

TailEventCheck domination_tail_event_check(uint64_t master_seed, int trials, int ell, double p) {
    TailEventCheck check;
    check.trials = trials;
    int m = static_cast<int>(std::floor(1.0 / p));
    for (int t = 0; t < trials; ++t) {
        uint64_t seed = stream::derive_seed(master_seed, static_cast<uint64_t>(t));
        Graph g = sample_gnp({ell, p, seed});
        if (exact_domination(g, m - 1) <= m - 1) ++check.occurrences;
    }
    check.pass = check.occurrences <= 2;
    return check;
}

OneNeighborhoodCheck one_neighborhood_expectation_check(uint64_t master_seed, int samples,
                                                        int ell, double p) {
    OneNeighborhoodCheck check;
    int m = static_cast<int>(std::floor(1.0 / p));
    check.expected = mu(p) * (ell - m);
    double total = 0;
    for (int t = 0; t < samples; ++t) {
        uint64_t seed = stream::derive_seed(master_seed, static_cast<uint64_t>(t));
        Graph g = sample_gnp({ell, p, seed});
        VertexSet s = random_vertex_subset(ell, m, stream::derive_seed(seed, 1));
        total += static_cast<double>(one_neighborhood(g, s).size());
    }
    check.empirical_mean = total / samples;
    check.pass = std::abs(check.empirical_mean - check.expected) <= 0.05 * check.expected;
    return check;
}

} // namespace cfc
