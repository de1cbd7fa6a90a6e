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

#include "frog/classifier.hpp"

#include <cmath>

#include <omp.h>

#include "frog/errors.hpp"
#include "frog/exact.hpp"

namespace frog {

ProcessParams ProcessParams::make(std::int64_t N, std::int64_t L, SequenceSpec spec)
{
    if (N < 1) {
        throw ConfigError("N must be a positive integer");
    }
    if (L < 1) {
        throw ConfigError("L must be a positive integer");
    }
    return ProcessParams{N, L, std::move(spec)};
}

ProcessParams params_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const char* key : {"N", "L", "spec"}) {
        if (!j.contains(key)) {
            throw ConfigError(std::string("missing field '") + key + "'");
        }
    }
    if (!j.at("N").is_number_integer() || !j.at("L").is_number_integer()) {
        throw ConfigError("N and L must be integers");
    }
    return ProcessParams::make(j.at("N").get<std::int64_t>(), j.at("L").get<std::int64_t>(),
                               spec_from_json(j.at("spec")));
}

nlohmann::json to_json(const ProcessParams& p)
{
    return {{"N", p.N}, {"L", p.L}, {"spec", to_json(p.spec)}};
}

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::DiesAS:
        return "DiesAS";
    case Outcome::SurvivesWPP:
        return "SurvivesWPP";
    case Outcome::SurvivesForLargeN:
        return "SurvivesForLargeN";
    case Outcome::SurvivesForLargeNL:
        return "SurvivesForLargeNL";
    case Outcome::Boundary:
        return "Boundary";
    case Outcome::Unknown:
        break;
    }
    return "Unknown";
}

std::string to_string(SeriesDecision d)
{
    switch (d) {
    case SeriesDecision::Diverges:
        return "diverges";
    case SeriesDecision::Converges:
        return "converges";
    case SeriesDecision::Boundary:
        break;
    }
    return "boundary";
}

SeriesDecision series_decision(double power_exponent, std::int64_t log_exponent)
{
    const double gap = power_exponent - 1.0;
    if (std::abs(gap) <= kEdgeTolerance) {
        // sum 1/(n (log n)^F) diverges iff F <= 1
        return log_exponent <= 1 ? SeriesDecision::Diverges : SeriesDecision::Converges;
    }
    if (std::abs(gap) <= kBoundaryWindow) {
        return SeriesDecision::Boundary;
    }
    return gap < 0 ? SeriesDecision::Diverges : SeriesDecision::Converges;
}

ExponentSummary min_alignment_exponent(const SequenceSpec& spec, std::int64_t N, std::int64_t L)
{
    if (N < 1 || L < 1) {
        throw OutOfRange("min_alignment_exponent needs N >= 1 and L >= 1");
    }
    const auto k = spec.modulus();
    ExponentSummary out;
    bool any_boundary = false;
    bool any_divergent = false;
    for (std::int64_t r = 0; r < k; ++r) {
        SeriesExponent e;
        e.residue = r;
        for (std::int64_t j = 1; j <= L; ++j) {
            const auto& form = spec.residue_form((r + j) % k);
            const auto weight = N * f(j);
            if (const auto* p = std::get_if<PowerLaw>(&form)) {
                e.power_exponent += p->alpha * static_cast<double>(weight);
            } else if (std::holds_alternative<LogInverse>(form)) {
                e.log_exponent += weight;
            }
        }
        e.decision = series_decision(e.power_exponent, e.log_exponent);
        any_divergent = any_divergent || e.decision == SeriesDecision::Diverges;
        any_boundary = any_boundary || e.decision == SeriesDecision::Boundary;
        const bool smaller =
            r == 0 || e.power_exponent < out.min_power ||
            (e.power_exponent == out.min_power && e.log_exponent < out.log_at_min);
        if (smaller) {
            out.min_power = e.power_exponent;
            out.log_at_min = e.log_exponent;
            out.witness = r;
        }
        out.per_residue.push_back(e);
    }
    out.decision = any_divergent  ? SeriesDecision::Diverges
                   : any_boundary ? SeriesDecision::Boundary
                                  : SeriesDecision::Converges;
    return out;
}

SpecAnalysis analyze(const SequenceSpec& spec)
{
    return {m_of(spec), is_in_D1(spec), L0_L1(spec)};
}

namespace {

nlohmann::json exponent_json(const ExponentSummary& s)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : s.per_residue) {
        rows.push_back({{"residue", e.residue},
                        {"E", e.power_exponent},
                        {"F", e.log_exponent},
                        {"decision", to_string(e.decision)}});
    }
    return rows;
}

// Series test outcome at (N, L); nullopt when not decisive.
std::optional<Outcome> series_outcome(const SequenceSpec& spec, const ExponentSummary& s)
{
    if (s.decision == SeriesDecision::Diverges) {
        return Outcome::DiesAS;
    }
    // Overrides can only add terms to the series, so convergence of the
    // residue-form part says nothing.
    if (s.decision == SeriesDecision::Converges && spec.overrides().empty()) {
        return Outcome::SurvivesWPP;
    }
    return std::nullopt;
}

}  // namespace

Verdict classify(const ProcessParams& params, const ClassifyOptions& options)
{
    return classify(params, analyze(params.spec), options);
}

Verdict classify(const ProcessParams& params, const SpecAnalysis& analysis,
                 const ClassifyOptions& options)
{
    const auto& spec = params.spec;
    const auto N = params.N;
    const auto L = params.L;

    Verdict v;
    v.m = analysis.m;
    v.b = b(N, L);
    v.L0 = analysis.thresholds.L0;
    v.L1 = analysis.thresholds.L1;
    v.in_D1 = analysis.in_D1;
    v.exponents = min_alignment_exponent(spec, N, L);

    const bool in_D = !v.m.is_finite();
    const bool d1 = v.in_D1 == Tri::Yes;
    std::optional<Outcome> decided;

    auto fire = [&](std::string rule, std::string citation, std::optional<Outcome> outcome,
                    std::string note, nlohmann::json values) {
        TraceEntry e{std::move(rule), std::move(citation), outcome.has_value(), outcome,
                     std::move(note), std::move(values)};
        v.trace.push_back(std::move(e));
        if (outcome && !decided) {
            decided = outcome;
        }
    };
    auto done = [&] { return decided.has_value() && !options.exhaustive; };

    const nlohmann::json mb = {{"m", to_json(v.m)}, {"b", v.b}};
    if (!in_D && v.m <= v.b) {
        fire("R1", "Thm 1(b)", Outcome::SurvivesWPP, "summable power m <= b(N,L)", mb);
    }
    if (!done() && !in_D && d1 && v.m > v.b) {
        fire("R2", "Thm 1(a)", Outcome::DiesAS, "nonincreasing with m > b(N,L)", mb);
    }
    if (!done() && in_D && d1) {
        fire("R3", "Thm 2(a)", Outcome::DiesAS, "nonincreasing with m = inf", mb);
    }
    if (!done() && in_D && !v.L0.is_finite()) {
        fire("R4", "Thm 2(b)", Outcome::DiesAS,
             "every summable-power subsequence has unbounded gaps", {{"L0", "inf"}});
    }
    const nlohmann::json lvals = {{"L", L}, {"L0", to_json(v.L0)}, {"L1", to_json(v.L1)}};
    if (!done() && v.L0.is_finite() && v.L0 > L) {
        fire("R5", "Thm 3(a)", Outcome::DiesAS, "L < L0", lvals);
    }
    if (!done() && v.L1.is_finite() && v.L1 <= L) {
        fire("R6", "Thm 3(c)", Outcome::SurvivesWPP, "L >= L1", lvals);
    }

    std::optional<Outcome> series;
    if (!done()) {
        series = series_outcome(spec, v.exponents);
        nlohmann::json values = {{"min_E", v.exponents.min_power},
                                 {"F_at_min", v.exponents.log_at_min},
                                 {"witness_residue", v.exponents.witness},
                                 {"exponents", exponent_json(v.exponents)}};
        std::string note = "sum a_n " + to_string(v.exponents.decision);
        if (!series && !spec.overrides().empty()) {
            note += "; sparse overrides leave convergence undecided";
        }
        fire("R7", "series criterion: sum a_n = inf iff dies out", series, note, values);
    }

    if (!decided) {
        const bool in_window = v.L0.is_finite() && v.L0 <= L && (!v.L1.is_finite() || L < v.L1);
        if (in_window) {
            std::int64_t n0 = 0;
            for (std::int64_t n = 1; n <= options.n0_cap; ++n) {
                if (series_outcome(spec, min_alignment_exponent(spec, n, L)) == Outcome::SurvivesWPP) {
                    n0 = n;
                    break;
                }
            }
            if (n0 > 0) {
                v.large_n_threshold = ExtInt(n0);
                fire("R8", "Thm 3(b)", Outcome::SurvivesForLargeN,
                     "N0 from the series test (beyond the theorem's existence statement)",
                     {{"N0", n0}});
                v.outcome = Outcome::SurvivesForLargeN;
                return v;
            }
            fire("R8", "Thm 3(b)", std::nullopt, "cap reached without convergence",
                 {{"n0_cap", options.n0_cap}});
        }
        if (v.exponents.decision == SeriesDecision::Boundary) {
            v.trace.push_back({"fallback", "series criterion", false, Outcome::Boundary,
                               "minimal exponent within the unresolved window around 1",
                               {{"min_E", v.exponents.min_power}}});
            v.outcome = Outcome::Boundary;
        } else if (v.L0.is_finite()) {
            v.trace.push_back({"fallback", "Thm 2(c)", false, Outcome::SurvivesForLargeNL,
                               "a bounded-gap summable-power subsequence exists", lvals});
            v.outcome = Outcome::SurvivesForLargeNL;
        } else {
            v.trace.push_back({"fallback", "none", false, Outcome::Unknown, "no rule applies", {}});
            v.outcome = Outcome::Unknown;
        }
        return v;
    }
    v.outcome = *decided;
    return v;
}

ExtInt survival_threshold_N(const SequenceSpec& spec, std::int64_t L, std::int64_t cap)
{
    if (!spec.overrides().empty()) {
        return ExtInt::infinity();
    }
    for (std::int64_t n = 1; n <= cap; ++n) {
        const auto s = min_alignment_exponent(spec, n, L);
        if (s.decision == SeriesDecision::Converges) {
            return ExtInt(n);
        }
        // E scales linearly in N; no power-law factor means no hope.
        if (s.min_power == 0.0) {
            break;
        }
    }
    return ExtInt::infinity();
}

nlohmann::json to_json(const Verdict& v)
{
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& e : v.trace) {
        trace.push_back({{"rule", e.rule},
                         {"citation", e.citation},
                         {"decisive", e.decisive},
                         {"outcome", e.outcome ? nlohmann::json(to_string(*e.outcome)) : nlohmann::json()},
                         {"note", e.note},
                         {"values", e.values}});
    }
    nlohmann::json out = {
        {"outcome", to_string(v.outcome)},
        {"trace", trace},
        {"values",
         {{"m", to_json(v.m)},
          {"b", v.b},
          {"L0", to_json(v.L0)},
          {"L1", to_json(v.L1)},
          {"in_D1", to_string(v.in_D1)},
          {"min_exponent",
           {{"E", v.exponents.min_power},
            {"F", v.exponents.log_at_min},
            {"residue", v.exponents.witness},
            {"decision", to_string(v.exponents.decision)}}},
          {"exponents", exponent_json(v.exponents)}}},
    };
    if (v.outcome == Outcome::SurvivesForLargeN) {
        out["N0"] = to_json(v.large_n_threshold);
    }
    return out;
}

std::vector<SweepRow> sweep(const SequenceSpec& spec, std::int64_t n_lo, std::int64_t n_hi,
                            std::int64_t l_lo, std::int64_t l_hi, int threads)
{
    if (n_hi < n_lo || l_hi < l_lo) {
        return {};
    }
    if (n_lo < 1 || l_lo < 1) {
        throw ConfigError("sweep ranges must start at 1 or above");
    }
    const auto analysis = analyze(spec);
    const auto n_count = n_hi - n_lo + 1;
    const auto l_count = l_hi - l_lo + 1;
    const auto cells = n_count * l_count;
    std::vector<std::optional<SweepRow>> rows(cells);
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::int64_t c = 0; c < cells; ++c) {
        const auto N = n_lo + c / l_count;
        const auto L = l_lo + c % l_count;
        rows[c] = SweepRow{N, L, classify(ProcessParams{N, L, spec}, analysis)};
    }
    std::vector<SweepRow> out;
    out.reserve(cells);
    for (auto& r : rows) {
        out.push_back(std::move(*r));
    }
    return out;
}

}  // namespace frog
