/*
   Copyright 2026 The frog authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "frog/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frog/classifier.hpp"
#include "frog/errors.hpp"
#include "frog/exact.hpp"
#include "frog/montecarlo.hpp"
#include "frog/run_store.hpp"

namespace frog::cli {

namespace {

using nlohmann::json;

std::string num(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

struct Range {
    std::int64_t lo = 1;
    std::int64_t hi = 0;
};

Range parse_range(const std::string& text)
{
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const auto v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ConfigError("range '" + text + "' is not of the form lo:hi");
    }
}

struct Globals {
    std::string out_format;
    std::string store = "frog-runs.jsonl";
    bool no_store = false;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

// Result of a subcommand ready to be emitted and logged.
struct Completed {
    int code = kOk;
    std::string payload;  // exact bytes written to stdout
    json config;
    json result;
    std::optional<std::uint64_t> seed;
};

Completed cmd_classify(const std::string& config_path)
{
    const auto cfg = load_config(config_path);
    const auto params = params_from_json(cfg);
    const auto verdict = classify(params);
    const auto j = to_json(verdict);
    const bool decisive =
        verdict.outcome == Outcome::DiesAS || verdict.outcome == Outcome::SurvivesWPP;
    return {decisive ? kOk : kNotDecisive, j.dump(2) + "\n", to_json(params), j, std::nullopt};
}

Completed cmd_exact(const std::string& config_path, std::optional<std::int64_t> n_max_flag)
{
    const auto cfg = load_config(config_path);
    const auto params = params_from_json(cfg);
    std::int64_t n_max = 50;
    if (cfg.contains("exact") && cfg.at("exact").contains("n_max")) {
        if (!cfg.at("exact").at("n_max").is_number_integer()) {
            throw ConfigError("exact.n_max must be an integer");
        }
        n_max = cfg.at("exact").at("n_max").get<std::int64_t>();
    }
    if (n_max_flag) {
        n_max = *n_max_flag;
    }
    std::ostringstream os;
    os << "n,a_n,lower,upper,partial_product\n";
    for (const auto& row : block_table(params.spec, params.N, params.L, n_max)) {
        os << row.n << ',' << num(row.a_n) << ',' << num(row.lower) << ',' << num(row.upper) << ','
           << num(row.partial_product) << '\n';
    }
    auto config = to_json(params);
    config["exact"] = {{"n_max", n_max}};
    return {kOk, os.str(), config, os.str(), std::nullopt};
}

struct SimulateFlags {
    std::string config;
    std::optional<std::int64_t> trials;
    std::optional<std::int64_t> horizon;
    std::string profile;
};

Completed cmd_simulate(const SimulateFlags& flags, const Globals& g)
{
    auto cfg = sim_config_from_json(load_config(flags.config));
    if (g.seed) {
        cfg.seed = *g.seed;
    }
    if (flags.trials) {
        cfg.trials = *flags.trials;
    }
    if (flags.horizon) {
        cfg.horizon = *flags.horizon;
    }
    const auto format = g.out_format.empty() ? std::string("jsonl") : g.out_format;
    if (format != "jsonl" && format != "csv") {
        throw ConfigError("simulate --out must be jsonl or csv");
    }
    const auto result = estimate_survival(cfg, g.threads);
    const auto record = to_json(result);

    std::ostringstream os;
    if (format == "jsonl") {
        os << record.dump() << '\n';
    } else {
        os << "N,L,horizon,trials,seed,survived,p_hat,ci_lo,ci_hi\n"
           << cfg.params.N << ',' << cfg.params.L << ',' << cfg.horizon << ',' << cfg.trials << ','
           << cfg.seed << ',' << result.survived << ',' << num(result.p_hat) << ','
           << num(result.ci.lo) << ',' << num(result.ci.hi) << '\n';
    }
    if (!flags.profile.empty()) {
        std::ofstream prof(flags.profile);
        if (!prof) {
            throw std::runtime_error("cannot write profile '" + flags.profile + "'");
        }
        prof << "site,p_hat_Ei,lower_bound_curve,ci_half_width\n";
        for (const auto& row : activation_profile(result)) {
            prof << row.site << ',' << num(row.p_hat) << ','
                 << (row.lower_bound ? num(*row.lower_bound) : "") << ',' << num(row.half_width)
                 << '\n';
        }
    }
    return {kOk, os.str(), to_json(cfg), record, cfg.seed};
}

Completed cmd_sweep(const std::string& config_path, std::optional<std::string> n_range,
                    std::optional<std::string> l_range, const Globals& g)
{
    const auto cfg = load_config(config_path);
    const auto spec = spec_from_json(cfg.contains("spec") ? cfg.at("spec") : cfg);
    Range nr{1, 8};
    Range lr{1, 8};
    if (cfg.contains("sweep")) {
        const auto& s = cfg.at("sweep");
        auto read = [&](const char* key, Range& r) {
            if (s.contains(key)) {
                const auto& v = s.at(key);
                if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
                    !v[1].is_number_integer()) {
                    throw ConfigError(std::string("sweep.") + key + " must be [lo, hi]");
                }
                r = {v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
            }
        };
        read("N", nr);
        read("L", lr);
    }
    if (n_range) {
        nr = parse_range(*n_range);
    }
    if (l_range) {
        lr = parse_range(*l_range);
    }
    std::ostringstream os;
    os << "N,L,outcome,m,b,L0,L1,min_exponent,log_exponent_at_min\n";
    for (const auto& row : sweep(spec, nr.lo, nr.hi, lr.lo, lr.hi, g.threads)) {
        const auto& v = row.verdict;
        os << row.N << ',' << row.L << ',' << to_string(v.outcome) << ',' << v.m.to_string() << ','
           << v.b << ',' << v.L0.to_string() << ',' << v.L1.to_string() << ','
           << num(v.exponents.min_power) << ',' << v.exponents.log_at_min << '\n';
    }
    json config = {{"spec", to_json(spec)}, {"N_range", {nr.lo, nr.hi}}, {"L_range", {lr.lo, lr.hi}}};
    return {kOk, os.str(), config, os.str(), std::nullopt};
}

template <class T>
std::vector<T> list_or(const json& obj, const char* key, std::vector<T> fallback)
{
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
        throw ConfigError(std::string("verify field '") + key + "' must be a nonempty array");
    }
    std::vector<T> out;
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw ConfigError(std::string("verify field '") + key + "' must hold numbers");
        }
        out.push_back(x.get<T>());
    }
    return out;
}

Completed cmd_verify(const std::optional<std::string>& config_path, std::ostream& err)
{
    json cfg = json::object();
    if (config_path) {
        cfg = load_config(*config_path);
    }
    const json grid = cfg.contains("verify") ? cfg.at("verify") : json::object();
    const json bounds = grid.contains("bounds") ? grid.at("bounds") : json::object();
    const json oracle = grid.contains("oracle") ? grid.at("oracle") : json::object();

    const auto qs = list_or<double>(bounds, "q", {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
                                                  0.9, 0.95, 0.99});
    const auto Ns = list_or<std::int64_t>(bounds, "N", {1, 2, 3, 5});
    const auto Ls = list_or<std::int64_t>(bounds, "L", {1, 2, 3, 4, 5, 6, 7, 8});
    const auto ps = list_or<double>(oracle, "p", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    for (double q : qs) {
        if (!(q > 0 && q < 1)) {
            throw ConfigError("verify.bounds.q values must lie in (0,1)");
        }
    }
    for (double p : ps) {
        if (!(p > 0 && p < 1)) {
            throw ConfigError("verify.oracle.p values must lie in (0,1)");
        }
    }
    if (*std::min_element(Ns.begin(), Ns.end()) < 1 || *std::min_element(Ls.begin(), Ls.end()) < 1) {
        throw ConfigError("verify.bounds.N and verify.bounds.L must be positive");
    }
    std::int64_t oracle_l_max = 12;
    if (oracle.contains("L_max")) {
        if (!oracle.at("L_max").is_number_integer()) {
            throw ConfigError("verify.oracle.L_max must be an integer");
        }
        oracle_l_max = oracle.at("L_max").get<std::int64_t>();
    }
    if (oracle_l_max > kMaxEnumerationSteps) {
        throw TooLarge("oracle mode refuses L_max = " + std::to_string(oracle_l_max) + " > " +
                       std::to_string(kMaxEnumerationSteps));
    }

    json violations = json::array();
    std::int64_t bound_tuples = 0;
    for (double q : qs) {
        for (auto N : Ns) {
            for (auto L : Ls) {
                for (std::int64_t j = 1; j <= L; ++j) {
                    ++bound_tuples;
                    try {
                        check_position_bound(q, N, L, j);
                    } catch (const BoundViolation& e) {
                        violations.push_back({{"check", "bound"}, {"q", q}, {"N", N}, {"L", L}, {"j", j},
                                              {"message", e.what()}});
                    }
                }
            }
        }
    }
    // Blocks of the configured sequence, when one is given.
    std::int64_t block_tuples = 0;
    if (cfg.contains("spec")) {
        const auto params = params_from_json(cfg);
        std::int64_t n_max = 20;
        if (grid.contains("n_max") && grid.at("n_max").is_number_integer()) {
            n_max = grid.at("n_max").get<std::int64_t>();
        }
        for (std::int64_t n = 0; n <= n_max; ++n) {
            for (std::int64_t j = 1; j <= params.L; ++j) {
                ++block_tuples;
                const double q = params.spec(n + j);
                try {
                    check_position_bound(q, params.N, params.L, j);
                } catch (const BoundViolation& e) {
                    violations.push_back({{"check", "block"}, {"n", n}, {"j", j}, {"message", e.what()}});
                }
            }
        }
    }

    std::int64_t oracle_cases = 0;
    double max_diff = 0;
    for (double p : ps) {
        for (std::int64_t L = 1; L <= oracle_l_max; ++L) {
            for (std::int64_t d = 1; d <= L; ++d) {
                ++oracle_cases;
                const WalkLaw law{p, L};
                const double diff = std::abs(reach_prob(law, d) - brute_force_reach(law, d));
                max_diff = std::max(max_diff, diff);
                if (diff > 1e-12) {
                    violations.push_back(
                        {{"check", "oracle"}, {"p", p}, {"L", L}, {"d", d}, {"abs_diff", diff}});
                }
            }
        }
    }

    const bool pass = violations.empty();
    json report = {{"bound_tuples", bound_tuples},
                   {"block_tuples", block_tuples},
                   {"oracle_cases", oracle_cases},
                   {"oracle_max_abs_diff", max_diff},
                   {"violations", violations},
                   {"pass", pass}};
    if (!pass) {
        for (const auto& v : violations) {
            err << "violation: " << v.dump() << '\n';
        }
    }
    json config = {{"bounds", {{"q", qs}, {"N", Ns}, {"L", Ls}}},
                   {"oracle", {{"p", ps}, {"L_max", oracle_l_max}}}};
    if (cfg.contains("spec")) {
        config["process"] = to_json(params_from_json(cfg));
    }
    return {pass ? kOk : kVerifyFailed, report.dump(2) + "\n", config, report, std::nullopt};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite-lifetime random walk systems on the integers: survival classification, "
                 "exact block probabilities and Monte Carlo estimates",
                 "frog"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    Globals g;
    bool show_version = false;
    app.add_flag("--version", show_version, "Print the tool version");
    app.add_option("--out", g.out_format, "Output format where a choice exists (simulate: jsonl|csv)");
    app.add_option("--store", g.store, "JSONL run log appended on success");
    app.add_flag("--no-store", g.no_store, "Do not append a run record");
    app.add_option("--seed", g.seed, "Seed override for simulate");
    app.add_option("--threads", g.threads, "Worker threads (speed only; results never change)");

    std::string classify_config;
    auto* classify_cmd = app.add_subcommand("classify", "Survival/extinction verdict as JSON");
    classify_cmd->add_option("config", classify_config, "Config JSON {N, L, spec}")->required();

    std::string exact_config;
    std::optional<std::int64_t> n_max;
    auto* exact_cmd = app.add_subcommand("exact", "CSV of a_n, its bounds and the survival product");
    exact_cmd->add_option("config", exact_config, "Config JSON {N, L, spec}")->required();
    exact_cmd->add_option("--n-max", n_max, "Last block index n");

    SimulateFlags sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo survival-to-horizon estimate");
    simulate_cmd->add_option("--config", sim.config, "Config JSON {N, L, spec, simulation}")->required();
    simulate_cmd->add_option("--trials", sim.trials, "Number of trials");
    simulate_cmd->add_option("--horizon", sim.horizon, "Horizon M");
    simulate_cmd->add_option("--profile", sim.profile, "Write the per-site activation profile CSV here");

    std::string sweep_config;
    std::optional<std::string> n_range;
    std::optional<std::string> l_range;
    auto* sweep_cmd = app.add_subcommand("sweep", "Phase table over an (N, L) grid as CSV");
    sweep_cmd->add_option("config", sweep_config, "Config JSON with a spec")->required();
    sweep_cmd->add_option("--N-range,--n-range", n_range, "lo:hi");
    sweep_cmd->add_option("--L-range,--l-range", l_range, "lo:hi");

    std::optional<std::string> verify_config;
    auto* verify_cmd = app.add_subcommand("verify", "Bound sandwich and DP-vs-enumeration checks");
    verify_cmd->add_option("config", verify_config, "Optional config JSON with a verify grid");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformedConfig;
    }

    if (show_version) {
        out << "frog " << kToolVersion << '\n';
        return kOk;
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return kMalformedConfig;
    }

    Completed done;
    std::string name;
    try {
        if (classify_cmd->parsed()) {
            name = "classify";
            done = cmd_classify(classify_config);
        } else if (exact_cmd->parsed()) {
            name = "exact";
            done = cmd_exact(exact_config, n_max);
        } else if (simulate_cmd->parsed()) {
            name = "simulate";
            done = cmd_simulate(sim, g);
        } else if (sweep_cmd->parsed()) {
            name = "sweep";
            done = cmd_sweep(sweep_config, n_range, l_range, g);
        } else {
            name = "verify";
            done = cmd_verify(verify_config, err);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformedConfig;
    } catch (const InvalidSpec& e) {
        err << "error: invalid spec: " << e.what() << '\n';
        return kInvalidSpec;
    } catch (const TooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidSpec;
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const OutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return kMalformedConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }

    out << done.payload;
    out.flush();
    if ((done.code == kOk || done.code == kNotDecisive) && !g.no_store && !g.store.empty()) {
        RunRecord rec;
        rec.timestamp = utc_timestamp();
        rec.subcommand = name;
        rec.config = done.config;
        rec.result = done.result;
        rec.seed = done.seed;
        try {
            append_run_record(g.store, rec);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kIoError;
        }
    }
    return done.code;
}

}  // namespace frog::cli
