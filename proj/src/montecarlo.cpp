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

#include "frog/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <omp.h>

#include "frog/errors.hpp"
#include "frog/exact.hpp"
#include "frog/philox.hpp"

namespace frog {

namespace {

constexpr std::int64_t kMaxAddressable = std::numeric_limits<std::uint32_t>::max();

std::vector<double> left_probabilities(const ProcessParams& params, std::int64_t horizon)
{
    const auto cap = horizon + params.L;
    std::vector<double> q(cap + 1, 0.0);
    for (std::int64_t i = 1; i <= cap; ++i) {
        q[i] = params.spec(i);
    }
    return q;
}

// Rightmost displacement of one walk.
std::int64_t walk_max(const WalkStream& stream, std::uint32_t site, std::uint32_t particle,
                      std::int64_t steps, double q)
{
    std::int64_t pos = 0;
    std::int64_t best = 0;
    for (std::int64_t s = 0; s < steps; s += 2) {
        const auto u = stream.pair(site, particle, static_cast<std::uint32_t>(s / 2));
        pos += u[0] < q ? -1 : 1;
        best = std::max(best, pos);
        if (s + 1 < steps) {
            pos += u[1] < q ? -1 : 1;
            best = std::max(best, pos);
        }
    }
    return best;
}

std::int64_t front_kernel(const std::vector<double>& q, std::int64_t N, std::int64_t L,
                          std::int64_t cap, const WalkStream& stream)
{
    std::int64_t front = 1;
    for (std::int64_t i = 1; i <= front; ++i) {
        for (std::int64_t p = 0; p < N; ++p) {
            const auto reach = i + walk_max(stream, static_cast<std::uint32_t>(i),
                                            static_cast<std::uint32_t>(p), L, q[i]);
            front = std::max(front, reach);
        }
        if (front >= cap) {
            return cap;
        }
    }
    return front;
}

TrialClosure closure_kernel(const std::vector<double>& q, std::int64_t N, std::int64_t L,
                            std::int64_t cap, const WalkStream& stream)
{
    std::vector<bool> active(cap + 1, false);
    std::deque<std::int64_t> queue{1};
    active[1] = true;
    TrialClosure out;
    while (!queue.empty()) {
        const auto i = queue.front();
        queue.pop_front();
        out.activated.push_back(i);
        out.max_site = std::max(out.max_site, i);
        for (std::int64_t p = 0; p < N; ++p) {
            std::int64_t pos = i;
            for (std::int64_t s = 0; s < L; ++s) {
                const auto u = stream.pair(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(p),
                                           static_cast<std::uint32_t>(s / 2));
                pos += u[s % 2] < q[i] ? -1 : 1;
                // Sites <= 0 hold no particles; sites past the cap are not tracked.
                if (pos >= 1 && pos <= cap && !active[pos]) {
                    active[pos] = true;
                    queue.push_back(pos);
                }
            }
        }
    }
    std::sort(out.activated.begin(), out.activated.end());
    return out;
}

SimResult aggregate(const SimConfig& cfg, std::vector<std::int64_t> fronts)
{
    SimResult r;
    r.config = cfg;
    const auto M = cfg.horizon;
    std::vector<std::int64_t> hist(M + 1, 0);
    for (auto front : fronts) {
        ++hist[std::min(front, M)];
        if (front >= M) {
            ++r.survived;
        }
    }
    r.activation_counts.assign(M, 0);
    std::int64_t running = 0;
    for (std::int64_t site = M; site >= 1; --site) {
        running += hist[site];
        r.activation_counts[site - 1] = running;
    }
    r.max_site = std::move(fronts);
    r.p_hat = static_cast<double>(r.survived) / static_cast<double>(cfg.trials);
    r.ci = wilson_interval(r.survived, cfg.trials, cfg.ci_level);
    return r;
}

}  // namespace

void SimConfig::validate() const
{
    if (horizon <= params.L) {
        throw ConfigError("horizon M must exceed L");
    }
    if (trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    if (!(ci_level > 0 && ci_level < 1)) {
        throw ConfigError("ci_level must lie in (0,1)");
    }
    if (trials > kMaxAddressable || horizon + params.L > kMaxAddressable ||
        params.N > kMaxAddressable || params.L > 2 * kMaxAddressable) {
        throw ResourceLimit("trial, site or particle index exceeds the 32-bit stream address");
    }
    const double work = static_cast<double>(trials) * static_cast<double>(horizon + params.L) *
                        static_cast<double>(params.N) * static_cast<double>(params.L);
    if (work > work_budget) {
        throw ResourceLimit("trials * (M + L) * N * L = " + std::to_string(work) +
                            " exceeds the work budget " + std::to_string(work_budget));
    }
}

SimConfig sim_config_from_json(const nlohmann::json& j)
{
    SimConfig c;
    c.params = params_from_json(j);
    if (j.contains("simulation")) {
        const auto& s = j.at("simulation");
        if (!s.is_object()) {
            throw ConfigError("simulation must be an object");
        }
        auto get_int = [&](const char* key, auto& dst) {
            if (s.contains(key)) {
                if (!s.at(key).is_number_integer()) {
                    throw ConfigError(std::string("simulation.") + key + " must be an integer");
                }
                dst = s.at(key).get<std::remove_reference_t<decltype(dst)>>();
            }
        };
        get_int("horizon", c.horizon);
        get_int("trials", c.trials);
        get_int("seed", c.seed);
        if (s.contains("ci_level")) {
            if (!s.at("ci_level").is_number()) {
                throw ConfigError("simulation.ci_level must be a number");
            }
            c.ci_level = s.at("ci_level").get<double>();
        }
    }
    return c;
}

nlohmann::json to_json(const SimConfig& c)
{
    auto j = to_json(c.params);
    j["simulation"] = {{"horizon", c.horizon},
                       {"trials", c.trials},
                       {"seed", c.seed},
                       {"ci_level", c.ci_level}};
    return j;
}

std::int64_t simulate_front(const ProcessParams& params, std::int64_t horizon, std::uint64_t seed,
                            std::uint32_t trial)
{
    const auto q = left_probabilities(params, horizon);
    return front_kernel(q, params.N, params.L, horizon + params.L, WalkStream(seed, trial));
}

TrialClosure simulate_trial(const ProcessParams& params, std::int64_t horizon, std::uint64_t seed,
                            std::uint32_t trial)
{
    const auto q = left_probabilities(params, horizon);
    return closure_kernel(q, params.N, params.L, horizon + params.L, WalkStream(seed, trial));
}

Interval wilson_interval(std::int64_t successes, std::int64_t n, double level)
{
    if (n < 1 || successes < 0 || successes > n) {
        throw OutOfRange("wilson_interval needs 0 <= successes <= n, n >= 1");
    }
    const boost::math::normal_distribution<double> normal;
    const double z = boost::math::quantile(normal, 1.0 - (1.0 - level) / 2.0);
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    // The closed endpoints at 0 and n are exact; rounding would leave ~1e-19.
    return {successes == 0 ? 0.0 : std::max(0.0, centre - half),
            successes == n ? 1.0 : std::min(1.0, centre + half)};
}

SimResult estimate_survival(const SimConfig& cfg, int threads)
{
    cfg.validate();
    const auto q = left_probabilities(cfg.params, cfg.horizon);
    const auto cap = cfg.horizon + cfg.params.L;
    const auto N = cfg.params.N;
    const auto L = cfg.params.L;
    std::vector<std::int64_t> fronts(cfg.trials, 0);
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        fronts[t] = front_kernel(q, N, L, cap, WalkStream(cfg.seed, static_cast<std::uint32_t>(t)));
    }
    return aggregate(cfg, std::move(fronts));
}

SimResult estimate_survival_serial(const SimConfig& cfg)
{
    cfg.validate();
    const auto q = left_probabilities(cfg.params, cfg.horizon);
    const auto cap = cfg.horizon + cfg.params.L;
    std::vector<std::int64_t> fronts(cfg.trials, 0);
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        fronts[t] = closure_kernel(q, cfg.params.N, cfg.params.L, cap,
                                   WalkStream(cfg.seed, static_cast<std::uint32_t>(t)))
                        .max_site;
    }
    return aggregate(cfg, std::move(fronts));
}

nlohmann::json to_json(const SimResult& r)
{
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = 0;
    double sum = 0;
    for (auto s : r.max_site) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        sum += static_cast<double>(s);
    }
    return {{"config", to_json(r.config)},
            {"survived", r.survived},
            {"trials", r.config.trials},
            {"p_hat", r.p_hat},
            {"ci", {{"level", r.config.ci_level}, {"lo", r.ci.lo}, {"hi", r.ci.hi}}},
            {"max_site", {{"min", lo}, {"max", hi}, {"mean", sum / static_cast<double>(r.max_site.size())}}}};
}

std::vector<ProfileRow> activation_profile(const SimResult& r)
{
    const auto& cfg = r.config;
    const auto M = cfg.horizon;
    const auto L = cfg.params.L;
    const auto trials = cfg.trials;
    std::vector<ProfileRow> rows;
    rows.reserve(M);
    const double p_EL = static_cast<double>(r.activation_counts[L - 1]) / static_cast<double>(trials);
    double running = p_EL;
    for (std::int64_t site = 1; site <= M; ++site) {
        ProfileRow row;
        row.site = site;
        const auto count = r.activation_counts[site - 1];
        row.p_hat = static_cast<double>(count) / static_cast<double>(trials);
        const auto ci = wilson_interval(count, trials, cfg.ci_level);
        row.half_width = std::max(row.p_hat - ci.lo, ci.hi - row.p_hat);
        if (site >= L + 1) {
            running *= 1.0 - a_n(cfg.params.spec, cfg.params.N, L, site - L - 1);
            row.lower_bound = running;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ProfileRow> estimate_activation_profile(const SimConfig& cfg, int threads)
{
    return activation_profile(estimate_survival(cfg, threads));
}

}  // namespace frog
