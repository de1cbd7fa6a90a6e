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

#include "frog/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace frog {

namespace {

void check_law(const WalkLaw& law)
{
    if (!(law.p_right > 0 && law.p_right < 1)) {
        throw OutOfRange("p_right must lie in (0,1)");
    }
    if (law.steps < 1) {
        throw OutOfRange("walk needs at least one step");
    }
}

void check_target(std::int64_t d)
{
    if (d < 1) {
        throw OutOfRange("target displacement must be >= 1, got " + std::to_string(d));
    }
}

}  // namespace

std::int64_t f(std::int64_t j)
{
    if (j < 1) {
        throw OutOfRange("f(j) needs j >= 1, got " + std::to_string(j));
    }
    return (j + 1) / 2;
}

std::int64_t b(std::int64_t N, std::int64_t L)
{
    if (N < 1 || L < 1) {
        throw OutOfRange("b(N,L) needs N >= 1 and L >= 1");
    }
    if (L % 2 == 1) {
        const auto h = (L + 1) / 2;
        return N * h * h;
    }
    return N * (L * (L + 2) / 4);
}

double reach_prob(const WalkLaw& law, std::int64_t d)
{
    check_law(law);
    check_target(d);
    return reach_recursion(law.p_right, law.steps, d).reached;
}

double miss_prob(const WalkLaw& law, std::int64_t d)
{
    check_law(law);
    check_target(d);
    return reach_recursion(law.p_right, law.steps, d).retained;
}

double brute_force_reach(const WalkLaw& law, std::int64_t d)
{
    check_law(law);
    check_target(d);
    if (law.steps > kMaxEnumerationSteps) {
        throw TooLarge("path enumeration refused for L = " + std::to_string(law.steps) + " > " +
                       std::to_string(kMaxEnumerationSteps));
    }
    const auto L = law.steps;
    const double p = law.p_right;
    const double q = 1.0 - p;
    double total = 0.0;
    for (std::uint64_t path = 0; path < (std::uint64_t{1} << L); ++path) {
        std::int64_t pos = 0;
        std::int64_t rights = 0;
        bool hit = false;
        for (std::int64_t t = 0; t < L; ++t) {
            if (path >> t & 1) {
                ++pos;
                ++rights;
            } else {
                --pos;
            }
            hit = hit || pos >= d;
        }
        if (hit) {
            total += std::pow(p, static_cast<double>(rights)) *
                     std::pow(q, static_cast<double>(L - rights));
        }
    }
    return total;
}

double not_visit_prob(double q_i, std::int64_t N, std::int64_t L, std::int64_t delta)
{
    if (delta == 0) {
        throw OutOfRange("delta = 0: a site is always in its own range");
    }
    if (!(q_i > 0 && q_i < 1)) {
        throw OutOfRange("q_i must lie in (0,1)");
    }
    if (N < 1 || L < 1) {
        throw OutOfRange("not_visit_prob needs N >= 1 and L >= 1");
    }
    const auto d = delta > 0 ? delta : -delta;
    if (d > L) {
        return 1.0;
    }
    const WalkLaw law{delta > 0 ? 1.0 - q_i : q_i, L};
    return std::pow(miss_prob(law, d), static_cast<double>(N));
}

double a_n(const SequenceSpec& spec, std::int64_t N, std::int64_t L, std::int64_t n)
{
    if (n < 0) {
        throw OutOfRange("block index n must be >= 0");
    }
    const auto target = n + L + 1;
    double prod = 1.0;
    for (auto i = n + 1; i <= n + L; ++i) {
        prod *= not_visit_prob(spec(i), N, L, target - i);
    }
    return prod;
}

BoundRow check_position_bound(double q, std::int64_t N, std::int64_t L, std::int64_t j)
{
    if (j < 1 || j > L) {
        throw OutOfRange("block position j must lie in [1, L]");
    }
    BoundRow row;
    row.j = j;
    row.q = q;
    const double e = static_cast<double>(N * f(j));
    row.lower = std::pow(q, e);
    row.prob = not_visit_prob(q, N, L, L + 1 - j);
    row.upper = std::pow(2.0, static_cast<double>(N * L)) * row.lower;
    const double slack = kBoundTolerance * row.prob;
    if (row.prob + slack < row.lower || row.prob - slack > row.upper) {
        std::ostringstream os;
        os.precision(17);
        os << "bound violated at (q=" << q << ", N=" << N << ", L=" << L << ", j=" << j
           << "): lower=" << row.lower << " prob=" << row.prob << " upper=" << row.upper;
        throw BoundViolation(os.str());
    }
    row.margin = std::min(row.prob - row.lower, row.upper - row.prob) / row.prob;
    return row;
}

std::vector<BoundRow> bound_check(const SequenceSpec& spec, std::int64_t N, std::int64_t L,
                                  std::int64_t n)
{
    if (n < 0) {
        throw OutOfRange("block index n must be >= 0");
    }
    std::vector<BoundRow> rows;
    rows.reserve(L);
    for (std::int64_t j = 1; j <= L; ++j) {
        rows.push_back(check_position_bound(spec(n + j), N, L, j));
    }
    return rows;
}

double partial_survival_product(const SequenceSpec& spec, std::int64_t N, std::int64_t L,
                                std::int64_t M)
{
    if (M < 1) {
        throw OutOfRange("partial_survival_product needs M >= 1");
    }
    double prod = 1.0;
    for (std::int64_t n = 0; n < M; ++n) {
        prod *= 1.0 - a_n(spec, N, L, n);
    }
    return prod;
}

std::vector<BlockRow> block_table(const SequenceSpec& spec, std::int64_t N, std::int64_t L,
                                  std::int64_t n_max)
{
    std::vector<BlockRow> rows;
    if (n_max < 0) {
        return rows;
    }
    const double scale = std::pow(2.0, static_cast<double>(N * L));
    double running = 1.0;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        BlockRow row;
        row.n = n;
        row.lower = 1.0;
        row.upper = 1.0;
        for (std::int64_t j = 1; j <= L; ++j) {
            const double term = std::pow(spec(n + j), static_cast<double>(N * f(j)));
            row.lower *= term;
            row.upper *= std::min(1.0, scale * term);
        }
        row.a_n = a_n(spec, N, L, n);
        running *= 1.0 - row.a_n;
        row.partial_product = running;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace frog
