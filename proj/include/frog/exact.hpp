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

#include <algorithm>
#include <cstdint>
#include <vector>

#include "frog/errors.hpp"
#include "frog/sequence.hpp"

namespace frog {

/// A +-1 walk of exactly `steps` steps, stepping right with probability
/// p_right.
struct WalkLaw {
    double p_right = 0.5;
    std::int64_t steps = 1;
};

/// Guard for the 2^L path enumeration.
inline constexpr std::int64_t kMaxEnumerationSteps = 20;

/// Probability mass split produced by the absorbing-barrier recursion.
template <class Real>
struct ReachMass {
    Real reached{};   // mass absorbed at displacement >= d
    Real retained{};  // mass that never got there
};

/// Forward recursion over (time, displacement) with an absorbing barrier at
/// d. Displacements below d are tracked exactly; anything arriving at d is
/// moved to `reached`. `observe(t, mass)` is called after every step and
/// lets tests audit conservation.
template <class Real, class Observer>
ReachMass<Real> reach_recursion(const Real& p_right, std::int64_t steps, std::int64_t d,
                                Observer&& observe)
{
    ReachMass<Real> mass;
    if (d > steps) {
        mass.retained = Real(1);
        for (std::int64_t t = 1; t <= steps; ++t) {
            observe(t, mass);
        }
        return mass;
    }
    const Real p_left = Real(1) - p_right;
    // Slot s holds displacement s - steps, for displacements in [-steps, d-1].
    const std::int64_t width = steps + d;
    std::vector<Real> cur(width, Real(0));
    std::vector<Real> next(width, Real(0));
    cur[steps] = Real(1);
    std::int64_t lo = steps;
    std::int64_t hi = steps;
    for (std::int64_t t = 1; t <= steps; ++t) {
        std::fill(next.begin(), next.end(), Real(0));
        for (std::int64_t s = lo; s <= hi; ++s) {
            const Real& m = cur[s];
            if (m == Real(0)) {
                continue;
            }
            if (s + 1 == width) {
                mass.reached += m * p_right;
            } else {
                next[s + 1] += m * p_right;
            }
            next[s - 1] += m * p_left;
        }
        lo = lo - 1;
        hi = std::min(hi + 1, width - 1);
        std::swap(cur, next);
        mass.retained = Real(0);
        for (std::int64_t s = lo; s <= hi; ++s) {
            mass.retained += cur[s];
        }
        observe(t, mass);
    }
    return mass;
}

template <class Real>
ReachMass<Real> reach_recursion(const Real& p_right, std::int64_t steps, std::int64_t d)
{
    return reach_recursion(p_right, steps, d, [](std::int64_t, const ReachMass<Real>&) {});
}

/// floor((j+1)/2): left jumps a particle j sites into a block of length L
/// needs to stay short of the site just past the block.
std::int64_t f(std::int64_t j);

/// N * sum_{j=1}^{L} f(j), via the closed forms for odd and even L.
std::int64_t b(std::int64_t N, std::int64_t L);

/// P(running max of the walk reaches d within law.steps steps).
double reach_prob(const WalkLaw& law, std::int64_t d);

/// 1 - reach_prob, computed from the retained mass so tiny values keep
/// their relative precision.
double miss_prob(const WalkLaw& law, std::int64_t d);

/// Reference value by summing all 2^L step sequences.
double brute_force_reach(const WalkLaw& law, std::int64_t d);

/// P(i -/-> i + delta) for N independent particles at a site with left
/// probability q_i. delta < 0 mirrors the walk.
double not_visit_prob(double q_i, std::int64_t N, std::int64_t L, std::int64_t delta);

/// a_n = prod_{i=n+1}^{n+L} P(i -/-> n+L+1).
double a_n(const SequenceSpec& spec, std::int64_t N, std::int64_t L, std::int64_t n);

struct BoundRow {
    std::int64_t j = 0;       // position in the block
    double q = 0;             // q_{n+j}
    double lower = 0;         // q^{N f(j)}
    double prob = 0;          // P(n+j -/-> n+L+1)
    double upper = 0;         // 2^{NL} q^{N f(j)}, not clipped at 1
    double margin = 0;        // min(prob - lower, upper - prob), relative to prob
};

/// Relative slack allowed when comparing a probability with its bounds.
inline constexpr double kBoundTolerance = 1e-12;

/// Checks both bounds for a single position. Throws BoundViolation.
BoundRow check_position_bound(double q, std::int64_t N, std::int64_t L, std::int64_t j);

/// Row per block position j in [1, L] for block n.
std::vector<BoundRow> bound_check(const SequenceSpec& spec, std::int64_t N, std::int64_t L,
                                  std::int64_t n);

/// prod_{n=0}^{M-1} (1 - a_n).
double partial_survival_product(const SequenceSpec& spec, std::int64_t N, std::int64_t L,
                                std::int64_t M);

struct BlockRow {
    std::int64_t n = 0;
    double a_n = 0;
    double lower = 0;            // prod_j q^{N f(j)}
    double upper = 0;            // prod_j min(1, 2^{NL} q^{N f(j)})
    double partial_product = 0;  // prod_{k=0}^{n} (1 - a_k)
};

/// Rows n = 0..n_max in order.
std::vector<BlockRow> block_table(const SequenceSpec& spec, std::int64_t N, std::int64_t L,
                                  std::int64_t n_max);

}  // namespace frog
