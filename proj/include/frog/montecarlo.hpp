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
#include <vector>

#include <json.hpp>

#include "frog/classifier.hpp"

namespace frog {

/// Truncated simulation of the process on sites 1..horizon+L.
struct SimConfig {
    ProcessParams params;
    std::int64_t horizon = 100;  // M: survival means site M gets activated
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    double ci_level = 0.95;
    /// Upper bound on trials * (M + L) * N * L.
    double work_budget = 1e11;

    void validate() const;
};

/// Reads N, L, spec and the optional "simulation" block
/// {"horizon", "trials", "seed", "ci_level"}.
SimConfig sim_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimConfig& c);

/// Front of one trial: the activated set is always the interval
/// [1, front] because every range is an interval holding its own site.
/// Capped at M + L.
std::int64_t simulate_front(const ProcessParams& params, std::int64_t horizon, std::uint64_t seed,
                            std::uint32_t trial);

struct TrialClosure {
    std::int64_t max_site = 1;
    std::vector<std::int64_t> activated;  // sorted
};

/// Literal breadth-first closure: pop an active site, sample its N walks,
/// activate every untouched site of [1, M+L] they visit. Same random
/// streams as simulate_front; kept as the reference kernel.
TrialClosure simulate_trial(const ProcessParams& params, std::int64_t horizon, std::uint64_t seed,
                            std::uint32_t trial);

struct Interval {
    double lo = 0;
    double hi = 1;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::int64_t successes, std::int64_t n, double level);

struct SimResult {
    SimConfig config;
    std::vector<std::int64_t> max_site;           // per trial
    std::int64_t survived = 0;                    // trials reaching M
    double p_hat = 0;
    Interval ci;
    std::vector<std::int64_t> activation_counts;  // index i-1 for site i, i = 1..M
};

/// Trials run on OpenMP workers; threads only changes speed.
SimResult estimate_survival(const SimConfig& cfg, int threads = 0);

/// Single-threaded run over the breadth-first reference kernel.
SimResult estimate_survival_serial(const SimConfig& cfg);

/// Aggregate record: config echo, counts, estimate and interval.
nlohmann::json to_json(const SimResult& r);

struct ProfileRow {
    std::int64_t site = 0;
    double p_hat = 0;        // fraction of trials activating the site
    double half_width = 0;   // larger side of the Wilson interval
    std::optional<double> lower_bound;  // p_hat(E_L) * prod_{k=0}^{site-L-1} (1 - a_k)
};

std::vector<ProfileRow> activation_profile(const SimResult& r);
std::vector<ProfileRow> estimate_activation_profile(const SimConfig& cfg, int threads = 0);

}  // namespace frog
