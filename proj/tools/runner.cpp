#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qk/stages.hpp"

namespace qk::cli {

using nlohmann::json;

namespace {

ScenarioConfig make(std::string name, int n, std::vector<int> translated, std::string star, int samples,
                    std::vector<std::string> checks) {
    ScenarioConfig c;
    c.scenario = std::move(name);
    c.n = n;
    c.translated = std::move(translated);
    c.star = std::move(star);
    c.samples = samples;
    c.checks = std::move(checks);
    return c;
}

const std::map<std::string, ScenarioConfig>& catalog() {
    static const std::map<std::string, ScenarioConfig> cat = [] {
        std::map<std::string, ScenarioConfig> m;
        auto s1 = make("s1-translation", 3, {1, 2}, "weyl", 20, {"momentum", "complex", "reduction", "knp", "stages"});
        s1.stage_split = StageSplit{{0}, {1}};
        m.emplace(s1.scenario, s1);
        m.emplace("s1p-single", make("s1p-single", 2, {1}, "weyl", 20, {"momentum", "complex", "reduction", "knp"}));
        auto s2 = make("s2-magnetic", 2, {1}, "weyl", 20, {"momentum", "complex", "reduction", "knp"});
        s2.b = mpq_class(3, 2);
        s2.mu = {mpq_class(-2)};
        m.emplace(s2.scenario, s2);
        for (const char* kind : {"weyl", "wick", "std"})
            m.emplace(std::string("axioms-") + kind,
                      make(std::string("axioms-") + kind, 3, {}, kind, 30, {"axioms"}));
        m.emplace("ce-heisenberg", make("ce-heisenberg", 1, {}, "weyl", 20, {"ce"}));
        return m;
    }();
    return cat;
}

mpq_class parse_rational(const json& v, const std::string& field) {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (!v.is_string()) throw ConfigError(field, "expected an integer or a string \"a/b\"");
    const std::string s = v.get<std::string>();
    try {
        mpq_class q(s, 10);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ConfigError(field, "not a rational number: \"" + s + "\"");
    }
}

template <class T>
T get_as(const json& j, const std::string& field) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError(field, "wrong type (" + std::string(j.type_name()) + ")");
    }
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

std::shared_ptr<const StarProduct> make_star(const std::string& kind, const PhaseSpace& sp) {
    if (kind == "weyl") return std::make_shared<const StarProduct>(StarProduct::weyl(sp));
    if (kind == "wick") return std::make_shared<const StarProduct>(StarProduct::wick(sp));
    return std::make_shared<const StarProduct>(StarProduct::std_ordered(sp));
}

std::vector<mpq_class> levels(const ScenarioConfig& cfg) {
    return cfg.mu.empty() ? std::vector<mpq_class>(cfg.translated.size(), mpq_class(0)) : cfg.mu;
}

bool needs_context(const std::string& suite) { return suite != "axioms" && suite != "ce"; }

ReductionContext build_context(const ScenarioConfig& cfg) {
    const PhaseSpace sp = PhaseSpace::canonical(cfg.n);
    ReductionContext base = make_translation_context(make_star(cfg.star, sp), sp, cfg.translated, cfg.lambda_order);
    const auto mu = levels(cfg);
    const bool shifted = sgn(cfg.b) != 0 || std::any_of(mu.begin(), mu.end(), [](const mpq_class& m) { return sgn(m) != 0; });
    if (!shifted) return base;
    return build_shifted_context(base, cfg.b, cfg.magnetic_pair.first, cfg.magnetic_pair.second, mu);
}

// Space carrying the classical bracket of the scenario.
PhaseSpace classical_space(const ScenarioConfig& cfg) {
    if (sgn(cfg.b) == 0) return PhaseSpace::canonical(cfg.n);
    return PhaseSpace::magnetic(cfg.n, cfg.magnetic_pair.first, cfg.magnetic_pair.second, cfg.b);
}

CheckList run_suite(const std::string& suite, const ScenarioConfig& cfg, const ReductionContext* ctx) {
    CheckList out;
    const int L = cfg.lambda_order;
    if (suite == "axioms") {
        const PhaseSpace sp = PhaseSpace::canonical(cfg.n);
        AxiomOptions opt;
        opt.samples = cfg.samples;
        opt.max_degree = cfg.max_degree;
        opt.seed = cfg.seed;
        append_checks(out, check_star_axioms(*make_star(cfg.star, sp), L, opt), "axioms");
    } else if (suite == "ce") {
        append_checks(out, check_lie_algebra(LieAlgebraData::heisenberg()), "ce.heisenberg_algebra");
        append_checks(out, check_ce_heisenberg(cfg.samples, cfg.seed), "ce");
    } else if (suite == "momentum") {
        MomentumCheckOptions opt;
        opt.samples = cfg.samples;
        opt.max_degree = cfg.max_degree;
        opt.seed = cfg.seed;
        append_checks(out, check_quantum_momentum_map(ctx->star(), ctx->Jq(), opt), "momentum");
        const PhaseSpace cl = classical_space(cfg);
        append_checks(out, {check_classical_equivariance(ctx->J(), cl)}, "momentum");
        // The level shift does not change the generated vector fields.
        const auto action = TranslationAction::make(cl, cfg.translated);
        append_checks(out, check_generates_action(ctx->J(), action, cfg.samples, cfg.seed), "momentum");
    } else if (suite == "complex") {
        ComplexCheckOptions opt;
        opt.samples = cfg.samples;
        opt.max_degree = cfg.max_degree;
        opt.seed = cfg.seed;
        append_checks(out, verify_complex_identities(*ctx, opt), "complex");
    } else if (suite == "reduction") {
        ReductionCheckOptions opt;
        opt.samples = cfg.samples;
        opt.max_degree = cfg.max_degree;
        opt.seed = cfg.seed;
        append_checks(out, check_reduced_algebra(*ctx, opt), "reduction");
        if (cfg.star == "weyl") {
            FirstFailure w{"reduction.matches_residual_weyl"};
            SampleRng rng(cfg.seed + 11);
            for (int s = 0; s < cfg.samples; ++s) {
                const auto f = rng.series(ctx->vars(), ctx->reduced_vars(), cfg.max_degree, L);
                const auto g = rng.series(ctx->vars(), ctx->reduced_vars(), cfg.max_degree, L);
                const auto lhs = reduced_star(f, g, *ctx), rhs = residual_weyl_star(f, g, *ctx);
                w.expect(lhs == rhs, "f=" + f.str() + " g=" + g.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str());
            }
            out.push_back(w.result);
        }
    } else if (suite == "knp") {
        ReductionCheckOptions opt;
        opt.samples = cfg.samples;
        opt.max_degree = cfg.max_degree;
        opt.seed = cfg.seed;
        append_checks(out, check_knp_equivalence(*ctx, opt), "knp");
    } else if (suite == "stages") {
        StageConfig sc{ctx->lie(), cfg.stage_split->sub, cfg.stage_split->complement};
        const StagePipeline pipe = StagePipeline::build(*ctx, sc);
        StageCheckOptions opt;
        opt.samples = cfg.samples;
        opt.max_degree = cfg.max_degree;
        opt.seed = cfg.seed;
        append_checks(out, check_stage_equality(pipe, opt), "stages");
        append_checks(out, check_compatible_prolongations(pipe, opt), "stages");
        append_checks(out, check_stage_momentum_maps(pipe, opt), "stages");
    }
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"axioms", "ce", "complex", "knp", "momentum", "reduction", "stages"};
    return names;
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (const auto& [name, cfg] : catalog()) out.push_back(name);
    return out;
}

ScenarioConfig builtin(const std::string& name) {
    auto it = catalog().find(name);
    if (it == catalog().end()) throw ConfigError("scenario", "unknown builtin scenario \"" + name + "\"");
    return it->second;
}

ScenarioConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    static const std::set<std::string> known{"scenario", "n",    "translated",    "star",        "lambda_order",
                                             "max_degree", "samples", "seed",   "b",           "magnetic_pair",
                                             "mu",         "stage_split", "checks"};
    for (const auto& [key, v] : j.items())
        if (!known.count(key)) throw ConfigError(key, "unknown key");

    // A config naming a builtin scenario starts from its settings.
    ScenarioConfig c;
    if (j.contains("scenario")) {
        const auto name = get_as<std::string>(j.at("scenario"), "scenario");
        if (catalog().count(name)) c = catalog().at(name);
        c.scenario = name;
    }
    if (j.contains("n")) c.n = get_as<int>(j.at("n"), "n");
    if (j.contains("translated")) c.translated = get_as<std::vector<int>>(j.at("translated"), "translated");
    if (j.contains("star")) c.star = get_as<std::string>(j.at("star"), "star");
    if (j.contains("lambda_order")) c.lambda_order = get_as<int>(j.at("lambda_order"), "lambda_order");
    if (j.contains("max_degree")) c.max_degree = get_as<int>(j.at("max_degree"), "max_degree");
    if (j.contains("samples")) c.samples = get_as<int>(j.at("samples"), "samples");
    if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j.at("seed"), "seed");
    if (j.contains("b")) c.b = parse_rational(j.at("b"), "b");
    if (j.contains("magnetic_pair")) {
        const auto p = get_as<std::vector<int>>(j.at("magnetic_pair"), "magnetic_pair");
        if (p.size() != 2) throw ConfigError("magnetic_pair", "expected two indices [a, c]");
        c.magnetic_pair = {p[0], p[1]};
    }
    if (j.contains("mu")) {
        const json& m = j.at("mu");
        if (!m.is_array()) throw ConfigError("mu", "expected an array");
        c.mu.clear();
        for (std::size_t i = 0; i < m.size(); ++i) c.mu.push_back(parse_rational(m[i], "mu[" + std::to_string(i) + "]"));
    }
    if (j.contains("stage_split")) {
        const json& s = j.at("stage_split");
        if (s.is_null()) {
            c.stage_split.reset();
        } else {
            if (!s.is_object() || !s.contains("sub"))
                throw ConfigError("stage_split", "expected {\"sub\": [...], \"complement\": [...]}");
            StageSplit split;
            split.sub = get_as<std::vector<int>>(s.at("sub"), "stage_split.sub");
            if (s.contains("complement"))
                split.complement = get_as<std::vector<int>>(s.at("complement"), "stage_split.complement");
            c.stage_split = split;
        }
    }
    if (j.contains("checks")) c.checks = get_as<std::vector<std::string>>(j.at("checks"), "checks");
    return c;
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["scenario"] = c.scenario;
    j["n"] = c.n;
    j["translated"] = c.translated;
    j["star"] = c.star;
    j["lambda_order"] = c.lambda_order;
    j["max_degree"] = c.max_degree;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["b"] = rat_str(c.b);
    j["magnetic_pair"] = {c.magnetic_pair.first, c.magnetic_pair.second};
    j["mu"] = json::array();
    for (const auto& m : c.mu) j["mu"].push_back(rat_str(m));
    if (c.stage_split)
        j["stage_split"] = {{"sub", c.stage_split->sub}, {"complement", c.stage_split->complement}};
    else
        j["stage_split"] = nullptr;
    j["checks"] = c.checks;
    return j;
}

void validate(const ScenarioConfig& c) {
    if (c.n < 1) throw ConfigError("n", "must be >= 1");
    if (c.lambda_order < 1) throw ConfigError("lambda_order", "must be >= 1");
    if (c.max_degree < 1) throw ConfigError("max_degree", "must be >= 1");
    if (c.samples < 0) throw ConfigError("samples", "must be >= 0");
    if (c.star != "weyl" && c.star != "wick" && c.star != "std")
        throw ConfigError("star", "expected weyl, wick or std, got \"" + c.star + "\"");
    std::set<int> seen;
    for (int a : c.translated) {
        if (a < 1 || a > c.n) throw ConfigError("translated", "index " + std::to_string(a) + " outside 1.." + std::to_string(c.n));
        if (!seen.insert(a).second) throw ConfigError("translated", "index " + std::to_string(a) + " listed twice");
    }
    if (!c.mu.empty() && c.mu.size() != c.translated.size())
        throw ConfigError("mu", std::to_string(c.mu.size()) + " values for " + std::to_string(c.translated.size()) +
                                    " translated directions");
    if (sgn(c.b) != 0) {
        const auto [a, cc] = c.magnetic_pair;
        if (a < 1 || a > c.n || cc < 1 || cc > c.n || a == cc)
            throw ConfigError("magnetic_pair", "invalid pair [" + std::to_string(a) + ", " + std::to_string(cc) + "]");
        if (!seen.count(a)) throw ConfigError("magnetic_pair", "q" + std::to_string(a) + " is not translated");
        if (seen.count(cc)) throw ConfigError("magnetic_pair", "q" + std::to_string(cc) + " is translated");
    }
    const auto& suites = suite_names();
    for (const auto& s : c.checks) {
        if (std::find(suites.begin(), suites.end(), s) == suites.end())
            throw ConfigError("checks", "unknown suite \"" + s + "\"");
        if (needs_context(s) && c.translated.empty())
            throw ConfigError("translated", "suite \"" + s + "\" needs at least one translated direction");
    }
    const bool wants_stages = std::find(c.checks.begin(), c.checks.end(), "stages") != c.checks.end();
    if (wants_stages && !c.stage_split) throw ConfigError("stage_split", "required by suite \"stages\"");
    if (c.stage_split) {
        try {
            StageConfig{LieAlgebraData::abelian(static_cast<int>(c.translated.size())), c.stage_split->sub,
                        c.stage_split->complement}
                .validate();
        } catch (const StageConfigError& e) {
            throw ConfigError("stage_split", e.what());
        }
    }
}

std::vector<std::pair<std::string, std::string>> derive_conventions() {
    const PhaseSpace sp = PhaseSpace::canonical(1);
    const VarList& v = sp.vars();
    const int L = 2;
    const LambdaSeries q(MultiPoly::var(v, "q1"), L), p(MultiPoly::var(v, "p1"), L);
    const LambdaSeries z(wick_z(sp, 1), L), zb(wick_zbar(sp, 1), L);
    const auto action = TranslationAction::make(sp, {1});
    return {
        {"fundamental_field", "xi_M(q1) = " + action.fundamental(0, MultiPoly::var(v, "q1")).str()},
        {"poisson_bracket", "{q1,p1} = " + sp.bracket(q, p).str()},
        {"std_ordered", "p1*q1 = " + std_star(p, q, sp).str()},
        {"weyl", "q1*p1 = " + weyl_star(q, p, sp).str()},
        {"wick", "z1*zbar1 = " + wick_star(z, zb, sp).str()},
    };
}

Report run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    Report r;
    r.scenario = cfg.scenario;
    r.config = to_json(cfg);
    r.conventions = derive_conventions();

    std::optional<ReductionContext> ctx;
    const bool any_ctx = std::any_of(cfg.checks.begin(), cfg.checks.end(), needs_context);
    if (any_ctx) {
        try {
            ctx.emplace(build_context(cfg));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("scenario", std::string("cannot build the reduction context: ") + e.what());
        }
    }
    std::set<std::string> done;
    for (const auto& suite : cfg.checks) {
        if (!done.insert(suite).second) continue;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            append_checks(r.checks, run_suite(suite, cfg, ctx ? &*ctx : nullptr));
        } catch (const std::logic_error& e) {
            r.checks.push_back({suite + ".internal", false, e.what()});
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::clog << "[qk] " << cfg.scenario << " suite " << suite << " took " << dt.count() << " s\n";
    }
    std::stable_sort(r.checks.begin(), r.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return r;
}

std::string emit_report(const Report& r, Format f) {
    if (f == Format::Json) {
        json j;
        j["scenario"] = r.scenario;
        j["status"] = r.passed() ? "pass" : "fail";
        j["config"] = r.config;
        j["conventions"] = json::object();
        for (const auto& [k, v] : r.conventions) j["conventions"][k] = v;
        j["checks"] = json::array();
        for (const auto& c : r.checks)
            j["checks"].push_back(
                {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"required", c.required}, {"witness", c.witness}});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "scenario: " << r.scenario << "\n";
    os << "status: " << (r.passed() ? "pass" : "fail") << "\n";
    os << "config: " << r.config.dump() << "\n";
    os << "conventions:\n";
    for (const auto& [k, v] : r.conventions) os << "  " << k << ": " << v << "\n";
    os << "checks: " << r.checks.size() << "\n";
    for (const auto& c : r.checks) {
        os << (c.passed ? "  PASS " : "  FAIL ") << c.name << (c.required ? "" : " (informational)") << "\n";
        if (!c.passed) os << "       witness: " << c.witness << "\n";
    }
    return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact checks of formal star products and their Koszul reduction", "qk-cli"};
    std::string config_path, scenario, format = "json";
    std::optional<int> lambda_order, degree, samples;
    std::optional<std::uint64_t> seed;
    bool list = false;
    app.add_option("--config", config_path, "JSON scenario configuration file");
    app.add_option("--scenario", scenario, "builtin scenario name");
    app.add_option("--lambda-order", lambda_order, "truncation order L");
    app.add_option("--degree", degree, "maximal degree of random samples");
    app.add_option("--samples", samples, "number of random samples per check");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--list-scenarios", list, "print the builtin scenario names");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "qk-cli: " << e.what() << "\n";
        return 2;
    }

    if (list) {
        for (const auto& n : builtin_names()) out << n << "\n";
        return 0;
    }

    ScenarioConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("config", "cannot open " + config_path);
            json j;
            try {
                in >> j;
            } catch (const json::parse_error& e) {
                throw ConfigError("config", std::string("invalid JSON: ") + e.what());
            }
            if (!scenario.empty()) j["scenario"] = scenario;
            cfg = parse_config(j);
        } else if (!scenario.empty()) {
            cfg = builtin(scenario);
        } else {
            throw ConfigError("scenario", "give --scenario NAME or --config PATH (see --list-scenarios)");
        }
        if (lambda_order) cfg.lambda_order = *lambda_order;
        if (degree) cfg.max_degree = *degree;
        if (samples) cfg.samples = *samples;
        if (seed) cfg.seed = *seed;
        validate(cfg);
    } catch (const ConfigError& e) {
        err << "qk-cli: config error: " << e.what() << "\n";
        return 2;
    }

    Report report;
    try {
        report = run_scenario(cfg);
    } catch (const ConfigError& e) {
        err << "qk-cli: config error: " << e.what() << "\n";
        return 2;
    }
    const Format f = format == "text" ? Format::Text : Format::Json;
    const std::string text = emit_report(report, f);
    out << text;
    if (const char* dir = std::getenv("QK_REPORT_DIR"); dir && *dir) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(dir, ec);
        const fs::path path = fs::path(dir) / (cfg.scenario + (f == Format::Json ? ".json" : ".txt"));
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            err << "qk-cli: cannot write " << path.string() << "\n";
            return 2;
        }
        file << text;
    }
    return report.passed() ? 0 : 1;
}

}  // namespace qk::cli
