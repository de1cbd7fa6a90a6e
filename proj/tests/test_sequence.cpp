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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "frog/errors.hpp"
#include "frog/sequence.hpp"

using namespace frog;

namespace {

// q_{2k} = 1/k, q_{2k+1} = 1/log(k+2); q_1 and q_2 fixed by a prefix.
SequenceSpec interleaved_mod2()
{
    return SequenceSpec::make({PowerLaw{1.0, 1.0, 0}, LogInverse{1.0, 2}}, {}, {0.9, 0.9});
}

// q_{3n} = (n+1)^-alpha, q_{3n+1} = q_{3n+2} = 1/log(n+2)
SequenceSpec mod3_family(double alpha)
{
    return SequenceSpec::make({PowerLaw{1.0, alpha, 1}, LogInverse{1.0, 2}, LogInverse{1.0, 2}}, {},
                              {0.9, 0.9});
}

// q_n = 1/j at n = 2^j (j >= 2), 1/log(n+2) elsewhere.
SequenceSpec sparse_dyadic()
{
    return SequenceSpec::make({LogInverse{1.0, 2}}, {SparseOverride{{1, 2, 2}, PowerLaw{1.0, 1.0, 0}}});
}

PrimitiveForm random_form(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    switch (kind(rng)) {
    case 0:
        return PowerLaw{unit(rng), std::uniform_real_distribution<double>(0.1, 2.5)(rng), 1};
    case 1:
        return LogInverse{unit(rng), 3};
    default:
        return ConstantForm{unit(rng)};
    }
}

SequenceSpec random_spec(std::mt19937_64& rng)
{
    const auto k = std::uniform_int_distribution<int>(1, 6)(rng);
    std::vector<PrimitiveForm> forms;
    for (int r = 0; r < k; ++r) {
        forms.push_back(random_form(rng));
    }
    return SequenceSpec::make(forms);
}

}  // namespace

TEST_CASE("eval follows the block-counter convention")
{
    CHECK(eval(interleaved_mod2(), 4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval(interleaved_mod2(), 7) == doctest::Approx(1.0 / std::log(5.0)));
    CHECK(eval(interleaved_mod2(), 1) == 0.9);
    CHECK(eval(SequenceSpec::single(ConstantForm{0.5}), 17) == 0.5);
    const auto root = SequenceSpec::make({PowerLaw{1.0, 0.5, 0}}, {}, {0.99});
    CHECK(eval(root, 9) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval(root, 0), OutOfRange);
    CHECK_THROWS_AS(eval(root, -3), OutOfRange);
}

TEST_CASE("overrides take precedence on their geometric family")
{
    const auto s = sparse_dyadic();
    CHECK(eval(s, 4) == doctest::Approx(0.5));
    CHECK(eval(s, 8) == doctest::Approx(1.0 / 3.0));
    CHECK(eval(s, 1024) == doctest::Approx(0.1));
    CHECK(eval(s, 5) == doctest::Approx(1.0 / std::log(7.0)));
    CHECK(eval(s, 2) == doctest::Approx(1.0 / std::log(4.0)));  // j = 1 < j0

    GeometricFamily fam{3, 2, 1};
    CHECK(fam.exponent_of(6) == 1);
    CHECK(fam.exponent_of(48) == 4);
    CHECK_FALSE(fam.exponent_of(3).has_value());
    CHECK_FALSE(fam.exponent_of(18).has_value());
    CHECK(fam.members_up_to(30) == std::vector<std::int64_t>{6, 12, 24});
}

TEST_CASE("construction rejects values outside (0,1)")
{
    // c = 1, alpha = 1 at counter 1 gives q = 1.
    CHECK_THROWS_AS(SequenceSpec::single(PowerLaw{1.0, 1.0, 0}), InvalidSpec);
    CHECK_NOTHROW(SequenceSpec::single(PowerLaw{1.0, 1.0, 1}));
    // Residue 1 is evaluated at counter 0.
    CHECK_THROWS_AS(SequenceSpec::make({PowerLaw{0.5, 1.0, 1}, PowerLaw{1.0, 1.0, 0}}), InvalidSpec);
    // With modulus 2, q_1 = 1/log 2 on residue 1.
    CHECK_THROWS_AS(SequenceSpec::make({LogInverse{0.5, 2}, LogInverse{1.0, 2}}), InvalidSpec);
    CHECK_NOTHROW(SequenceSpec::single(LogInverse{1.0, 2}));
    CHECK_THROWS_AS(SequenceSpec::single(ConstantForm{1.0}), InvalidSpec);
    CHECK_THROWS_AS(SequenceSpec::single(ConstantForm{0.0}), InvalidSpec);
    CHECK_THROWS_AS(SequenceSpec::single(PowerLaw{-1.0, 1.0, 1}), InvalidSpec);
    CHECK_THROWS_AS(SequenceSpec::single(LogInverse{0.5, 1}), InvalidSpec);
    CHECK_THROWS_AS(SequenceSpec::make({ConstantForm{0.5}}, {}, {0.5, 1.2}), InvalidSpec);
    // A prefix can cover the invalid head.
    CHECK_NOTHROW(SequenceSpec::make({PowerLaw{1.0, 1.0, 0}}, {}, {0.5}));
    CHECK_THROWS_AS(SequenceSpec::make({}), ConfigError);
}

TEST_CASE("overlapping override families are rejected")
{
    CHECK_THROWS_AS(SequenceSpec::make({LogInverse{0.5, 2}},
                                       {SparseOverride{{1, 2, 2}, ConstantForm{0.1}},
                                        SparseOverride{{1, 4, 1}, ConstantForm{0.2}}}),
                    InvalidSpec);
    CHECK_NOTHROW(SequenceSpec::make({LogInverse{0.5, 2}},
                                     {SparseOverride{{1, 2, 2}, ConstantForm{0.1}},
                                      SparseOverride{{1, 3, 1}, ConstantForm{0.2}}}));
}

TEST_CASE("m_of uses the symbolic p-series rule")
{
    CHECK(m_of(SequenceSpec::single(PowerLaw{0.9, 0.5, 0})) == 3);
    CHECK(m_of(SequenceSpec::single(PowerLaw{0.5, 2.0, 1})) == 1);
    CHECK(m_of(SequenceSpec::single(PowerLaw{0.5, 1.0, 1})) == 2);  // M alpha = 1 diverges
    CHECK(m_of(SequenceSpec::single(PowerLaw{0.5, 1.0 / 3.0, 1})) == 4);
    CHECK(m_of(SequenceSpec::single(PowerLaw{0.5, 0.001, 1})) == 1001);
    CHECK(m_of(SequenceSpec::single(PowerLaw{0.5, 0.3, 1})) == 4);
    CHECK_FALSE(m_of(SequenceSpec::single(LogInverse{0.5, 2})).is_finite());
    CHECK_FALSE(m_of(SequenceSpec::single(ConstantForm{0.2})).is_finite());
    CHECK_FALSE(m_of(interleaved_mod2()).is_finite());
    CHECK_FALSE(m_of(sparse_dyadic()).is_finite());
    // Mixed summable powers: the slowest residue decides.
    CHECK(m_of(SequenceSpec::make({PowerLaw{0.5, 0.3, 1}, PowerLaw{0.5, 2.0, 1}})) == 4);
    // A finite-m override on a finite-m base combines both thresholds.
    CHECK(m_of(SequenceSpec::make({PowerLaw{0.5, 2.0, 1}}, {SparseOverride{{1, 2, 1}, PowerLaw{0.5, 0.25, 1}}})) == 5);
    // The coefficient never matters.
    CHECK(m_of(SequenceSpec::single(PowerLaw{0.01, 0.5, 1})) ==
          m_of(SequenceSpec::single(PowerLaw{0.99, 0.5, 1})));
}

TEST_CASE("is_in_D1")
{
    CHECK(is_in_D1(SequenceSpec::single(PowerLaw{0.9, 0.5, 1})) == Tri::Yes);
    CHECK(is_in_D1(SequenceSpec::single(LogInverse{1.0, 3})) == Tri::Yes);
    CHECK(is_in_D1(interleaved_mod2()) == Tri::No);
    CHECK(is_in_D1(mod3_family(0.5)) == Tri::No);
    // Identical residues: constant on blocks of length k, still nonincreasing.
    CHECK(is_in_D1(SequenceSpec::make({LogInverse{0.5, 2}, LogInverse{0.5, 2}, LogInverse{0.5, 2}})) ==
          Tri::Yes);
    // A rising prefix is a violation.
    CHECK(is_in_D1(SequenceSpec::make({ConstantForm{0.3}}, {}, {0.1})) == Tri::No);
    CHECK(is_in_D1(SequenceSpec::make({ConstantForm{0.3}}, {}, {0.5, 0.4})) == Tri::Yes);
    // Sparse overrides that undercut their neighbours.
    CHECK(is_in_D1(sparse_dyadic()) == Tri::No);
    // Different but interleaving-monotone forms: nothing provable, nothing found.
    CHECK(is_in_D1(SequenceSpec::make({ConstantForm{0.3}, ConstantForm{0.3}},
                                      {SparseOverride{{1, 2, 30}, ConstantForm{0.3}}})) == Tri::Unknown);
}

TEST_CASE("cyclic gaps")
{
    CHECK(cyclic_max_gap({0}, 1) == 1);
    CHECK(cyclic_max_gap({0}, 3) == 3);
    CHECK(cyclic_max_gap({0, 1}, 3) == 2);
    CHECK(cyclic_max_gap({1, 2}, 3) == 2);
    CHECK(cyclic_max_gap({0, 1, 2}, 3) == 1);
    CHECK(cyclic_max_gap({0, 3}, 6) == 3);
    CHECK(cyclic_max_gap({0, 1}, 6) == 5);
    CHECK_THROWS_AS(cyclic_max_gap({}, 3), OutOfRange);
}

TEST_CASE("L0 and L1 on the reference sequences")
{
    const auto t2 = L0_L1(interleaved_mod2());
    CHECK(t2.L0 == 2);
    CHECK(t2.L1 == 4);
    REQUIRE(t2.witnesses.size() == 2);
    CHECK(t2.witnesses[0].residues == std::vector<std::int64_t>{0});

    for (double alpha : {0.1, 0.5, 1.0, 2.0}) {
        const auto t3 = L0_L1(mod3_family(alpha));
        CHECK(t3.L0 == 3);
        CHECK(t3.L1 == ExtInt(3) * summability_exponent(PowerLaw{1.0, alpha, 1}));
    }

    const auto none = L0_L1(SequenceSpec::single(LogInverse{1.0, 3}));
    CHECK_FALSE(none.L0.is_finite());
    CHECK_FALSE(none.L1.is_finite());
    CHECK(none.witnesses.empty());

    CHECK_FALSE(L0_L1(sparse_dyadic()).L0.is_finite());

    // q_{3n} = q_{3n+1} = n^-alpha, q_{3n+2} = n^-beta with alpha = 0.3, beta = 2
    const auto fam2 = SequenceSpec::make({PowerLaw{0.9, 0.3, 1}, PowerLaw{0.9, 0.3, 1}, PowerLaw{0.9, 2.0, 1}});
    const auto t4 = L0_L1(fam2);
    CHECK(t4.L0 == 1);
    CHECK(t4.L1 == 3);  // residue 2 alone: gap 3, m 1
    CHECK(t4.witnesses[1].residues == std::vector<std::int64_t>{2});
}

TEST_CASE("overrides with divergent forms widen the gaps of residues they hit")
{
    // Powers of two are even for j >= 1: the constant override lands on residue 0 mod 2.
    const auto spec = SequenceSpec::make({PowerLaw{0.5, 1.0, 1}, LogInverse{0.5, 2}},
                                         {SparseOverride{{1, 2, 3}, ConstantForm{0.5}}});
    const auto a = analyze_subsequence(spec, {0});
    CHECK(a.in_Dc);
    CHECK(a.l_value == 4);
    // The same override with a summable form is simply kept.
    const auto kept = SequenceSpec::make({PowerLaw{0.5, 1.0, 1}, LogInverse{0.5, 2}},
                                         {SparseOverride{{1, 2, 3}, PowerLaw{0.5, 0.25, 1}}});
    const auto b = analyze_subsequence(kept, {0});
    CHECK(b.l_value == 2);
    CHECK(b.m_value == 5);
}

TEST_CASE("property: l_value matches a brute-force gap scan")
{
    std::mt19937_64 rng(20261019);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_spec(rng);
        const auto k = spec.modulus();
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<std::int64_t> residues;
            for (std::int64_t r = 0; r < k; ++r) {
                if (mask >> r & 1) {
                    residues.push_back(r);
                }
            }
            std::vector<std::int64_t> idx;
            for (std::int64_t n = k + 1; static_cast<std::int64_t>(idx.size()) < 10 * k; ++n) {
                if (mask >> (n % k) & 1) {
                    idx.push_back(n);
                }
            }
            std::int64_t brute = 0;
            for (std::size_t i = 1; i < idx.size(); ++i) {
                brute = std::max(brute, idx[i] - idx[i - 1]);
            }
            const auto a = analyze_subsequence(spec, residues);
            REQUIRE(a.l_value == brute);
            CHECK(a.l_value >= 1);
            CHECK(a.l_value <= k);
        }
    }
}

TEST_CASE("property: threshold relations")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto spec = random_spec(rng);
        const auto t = L0_L1(spec);
        const auto m = m_of(spec);
        CHECK(t.L1 >= t.L0);
        CHECK((t.L0 > 1) == !m.is_finite());
        if (is_in_D1(spec) == Tri::Yes) {
            CHECK(t.L1 == m);
            // Monotone case: every bounded-gap residue union needs at least m.
            for (std::uint32_t mask = 1; mask < (1u << spec.modulus()); ++mask) {
                std::vector<std::int64_t> residues;
                for (std::int64_t r = 0; r < spec.modulus(); ++r) {
                    if (mask >> r & 1) {
                        residues.push_back(r);
                    }
                }
                CHECK(analyze_subsequence(spec, residues).m_value >= m);
            }
        }
    }
}

TEST_CASE("JSON round trip is canonical and order independent")
{
    const auto j = nlohmann::json::parse(R"({
        "modulus": 3,
        "residues": [
            {"r": 2, "form": {"kind": "loginv", "c": 1.0, "offset": 3}},
            {"r": 0, "form": {"kind": "power", "c": 1.0, "alpha": 0.5, "offset": 1}},
            {"r": 1, "form": {"kind": "const", "q": 0.25}}
        ],
        "overrides": [
            {"a": 1, "b": 3, "j0": 2, "form": {"kind": "const", "q": 0.5}},
            {"a": 1, "b": 2, "j0": 3, "form": {"kind": "power", "alpha": 1, "offset": 1}}
        ]
    })");
    const auto spec = spec_from_json(j);
    CHECK(spec_from_json(to_json(spec)) == spec);
    CHECK(to_json(spec_from_json(to_json(spec))) == to_json(spec));
    CHECK(to_json(spec)["residues"][0]["r"] == 0);
    CHECK(to_json(spec)["overrides"][0]["b"] == 2);

    auto shuffled = j;
    std::swap(shuffled["residues"][0], shuffled["residues"][2]);
    std::swap(shuffled["overrides"][0], shuffled["overrides"][1]);
    CHECK(spec_from_json(shuffled) == spec);

    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_spec(rng);
        CHECK(spec_from_json(nlohmann::json::parse(to_json(s).dump())) == s);
    }
}

TEST_CASE("JSON schema errors versus invalid values")
{
    using nlohmann::json;
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"modulus": 0, "residues": []})")), ConfigError);
    CHECK_THROWS_AS(spec_from_json(json::parse(R"({"residues": []})")), ConfigError);
    CHECK_THROWS_AS(spec_from_json(json::parse(
                        R"({"modulus": 2, "residues": [{"r": 0, "form": {"kind": "const", "q": 0.5}}]})")),
                    ConfigError);
    CHECK_THROWS_AS(spec_from_json(json::parse(
                        R"({"modulus": 1, "residues": [{"r": 0, "form": {"kind": "gamma"}}]})")),
                    ConfigError);
    CHECK_THROWS_AS(spec_from_json(json::parse(
                        R"({"modulus": 1, "residues": [{"r": 0, "form": {"kind": "const", "q": 1.5}}]})")),
                    InvalidSpec);
    CHECK_THROWS_AS(spec_from_json(json::parse(
                        R"({"modulus": 1, "residues": [{"r": 0, "form": {"kind": "power", "alpha": 1}}]})")),
                    InvalidSpec);
}
