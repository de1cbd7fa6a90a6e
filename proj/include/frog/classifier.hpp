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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frog/ext_int.hpp"
#include "frog/sequence.hpp"

namespace frog {

/// The triple (N, L, (q_n)) defining the process.
struct ProcessParams {
    std::int64_t N = 1;
    std::int64_t L = 1;
    SequenceSpec spec = SequenceSpec::single(ConstantForm{0.5});

    static ProcessParams make(std::int64_t N, std::int64_t L, SequenceSpec spec);
};

/// {"N": int, "L": int, "spec": {...}}
ProcessParams params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProcessParams& p);

enum class Outcome {
    DiesAS,
    SurvivesWPP,
    SurvivesForLargeN,
    SurvivesForLargeNL,
    Boundary,
    Unknown,
};

std::string to_string(Outcome o);

enum class SeriesDecision { Diverges, Converges, Boundary };

std::string to_string(SeriesDecision d);

/// Largest |E - 1| still reported as unresolved rather than decided.
inline constexpr double kBoundaryWindow = 1e-9;

/// Whether sum n^{-E} (log n)^{-F} diverges. E within kEdgeTolerance of 1
/// counts as exactly 1.
SeriesDecision series_decision(double power_exponent, std::int64_t log_exponent);

/// Exponents of prod_j q_{n+j}^{N f(j)} ~ n^{-E} (log n)^{-F} for blocks
/// starting at n = residue (mod k).
struct SeriesExponent {
    std::int64_t residue = 0;
    double power_exponent = 0;     // E_r
    std::int64_t log_exponent = 0;  // F_r
    SeriesDecision decision = SeriesDecision::Converges;
};

struct ExponentSummary {
    std::vector<SeriesExponent> per_residue;
    double min_power = 0;
    std::int64_t log_at_min = 0;
    std::int64_t witness = 0;
    SeriesDecision decision = SeriesDecision::Converges;
};

/// Per-alignment exponents from the residue forms. Overrides are ignored
/// here; classify() accounts for them.
ExponentSummary min_alignment_exponent(const SequenceSpec& spec, std::int64_t N, std::int64_t L);

/// Structural quantities that depend on the sequence only.
struct SpecAnalysis {
    ExtInt m;
    Tri in_D1 = Tri::Unknown;
    LifetimeThresholds thresholds;
};

SpecAnalysis analyze(const SequenceSpec& spec);

struct TraceEntry {
    std::string rule;
    std::string citation;
    bool decisive = false;
    std::optional<Outcome> outcome;
    std::string note;
    nlohmann::json values = nlohmann::json::object();
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    /// Minimal N0 for SurvivesForLargeN; infinity otherwise.
    ExtInt large_n_threshold;
    std::vector<TraceEntry> trace;

    ExtInt m;
    std::int64_t b = 0;
    ExtInt L0;
    ExtInt L1;
    Tri in_D1 = Tri::Unknown;
    ExponentSummary exponents;
};

struct ClassifyOptions {
    /// Keep evaluating after the first decisive rule and record every rule
    /// that fires. The outcome is still taken from the first one.
    bool exhaustive = false;
    std::int64_t n0_cap = 1000;
};

Verdict classify(const ProcessParams& params, const ClassifyOptions& options = {});
Verdict classify(const ProcessParams& params, const SpecAnalysis& analysis,
                 const ClassifyOptions& options = {});

/// Smallest N for which the series test reports convergence at lifetime L,
/// or infinity if none up to cap.
ExtInt survival_threshold_N(const SequenceSpec& spec, std::int64_t L, std::int64_t cap = 1000);

nlohmann::json to_json(const Verdict& v);

struct SweepRow {
    std::int64_t N = 0;
    std::int64_t L = 0;
    Verdict verdict;
};

/// Classifies every (N, L) in [n_lo, n_hi] x [l_lo, l_hi], rows ordered by
/// N then L. Empty ranges give no rows. threads <= 0 uses the OpenMP default.
std::vector<SweepRow> sweep(const SequenceSpec& spec, std::int64_t n_lo, std::int64_t n_hi,
                            std::int64_t l_lo, std::int64_t l_hi, int threads = 0);

}  // namespace frog
