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
#include <variant>
#include <vector>

#include <json.hpp>

#include "frog/ext_int.hpp"

namespace frog {

/// q = c * (counter + offset)^(-alpha)
struct PowerLaw {
    double c = 1.0;
    double alpha = 1.0;
    std::int64_t offset = 0;
    bool operator==(const PowerLaw&) const = default;
};

/// q = c / log(counter + offset), offset >= 2
struct LogInverse {
    double c = 1.0;
    std::int64_t offset = 2;
    bool operator==(const LogInverse&) const = default;
};

struct ConstantForm {
    double q = 0.5;
    bool operator==(const ConstantForm&) const = default;
};

using PrimitiveForm = std::variant<PowerLaw, LogInverse, ConstantForm>;

/// Value of a primitive form at a counter value. No range checking.
double evaluate(const PrimitiveForm& form, std::int64_t counter);

/// Minimal M with sum form(n)^M < inf, decided from the form alone.
ExtInt summability_exponent(const PrimitiveForm& form);

/// Tolerance used when a product of real exponents is compared with 1.
inline constexpr double kEdgeTolerance = 1e-12;

/// Indices { a * b^j : j >= j0 }.
struct GeometricFamily {
    std::int64_t a = 1;
    std::int64_t b = 2;
    std::int64_t j0 = 0;

    /// Exponent j if n belongs to the family.
    std::optional<std::int64_t> exponent_of(std::int64_t n) const;
    /// Members not exceeding limit, in increasing order.
    std::vector<std::int64_t> members_up_to(std::int64_t limit) const;
    bool operator==(const GeometricFamily&) const = default;
};

/// Replaces q_n on a geometric index family by form(j), n = a * b^j.
/// Consecutive members are at least a(b-1)b^(j-1) apart, so the family has
/// unbounded gaps.
struct SparseOverride {
    GeometricFamily indices;
    PrimitiveForm form;
    bool operator==(const SparseOverride&) const = default;
};

/// Jump-probability sequence (q_n), n >= 1.
///
/// Residue r of modulus k carries a form evaluated on the block counter:
/// q_{k*c + r} = form_r(c). Overrides replace values on sparse geometric
/// families and a finite explicit prefix q_1..q_p takes precedence over
/// everything else. Construction rejects any description producing a value
/// outside (0,1): the head of the sequence is checked numerically and the
/// tail follows from every form being nonincreasing in its counter.
class SequenceSpec {
public:
    static constexpr std::int64_t kMaxModulus = 20;

    static SequenceSpec make(std::vector<PrimitiveForm> residue_forms,
                             std::vector<SparseOverride> overrides = {},
                             std::vector<double> prefix = {});
    static SequenceSpec single(PrimitiveForm form) { return make({form}); }

    /// q_n. Throws OutOfRange for n < 1.
    double operator()(std::int64_t n) const;

    std::int64_t modulus() const { return static_cast<std::int64_t>(forms_.size()); }
    const PrimitiveForm& residue_form(std::int64_t r) const { return forms_.at(r); }
    const std::vector<PrimitiveForm>& residue_forms() const { return forms_; }
    const std::vector<SparseOverride>& overrides() const { return overrides_; }
    const std::vector<double>& prefix() const { return prefix_; }

    bool operator==(const SequenceSpec&) const = default;

private:
    SequenceSpec() = default;
    void validate() const;

    std::vector<PrimitiveForm> forms_;
    std::vector<SparseOverride> overrides_;  // sorted canonically
    std::vector<double> prefix_;
};

/// q_n; same as spec(n).
inline double eval(const SequenceSpec& spec, std::int64_t n) { return spec(n); }

/// m((q_n)): smallest M with sum q_n^M finite, or infinity.
ExtInt m_of(const SequenceSpec& spec);

enum class Tri { Yes, No, Unknown };
std::string to_string(Tri t);

/// Number of indices scanned for a monotonicity violation.
inline constexpr std::int64_t kMonotoneScanHorizon = 1'000'000;

/// Membership in the nonincreasing sequences.
Tri is_in_D1(const SequenceSpec& spec);

/// Largest cyclic gap between consecutive selected residues mod k.
std::int64_t cyclic_max_gap(const std::vector<std::int64_t>& residues, std::int64_t modulus);

struct SubseqAnalysis {
    std::vector<std::int64_t> residues;  // sorted, nonempty
    ExtInt m_value;
    ExtInt l_value;
    bool in_Dc = false;
};

struct LifetimeThresholds {
    ExtInt L0;
    ExtInt L1;
    /// Minimisers for L0 and L1, in that order. Empty when both are infinite.
    std::vector<SubseqAnalysis> witnesses;
};

/// Analysis of the residue-union subsequence selected by `residues`.
SubseqAnalysis analyze_subsequence(const SequenceSpec& spec,
                                   const std::vector<std::int64_t>& residues);

/// L0 = min l over summable-power subsequences, L1 = min l*m over the same.
LifetimeThresholds L0_L1(const SequenceSpec& spec);

nlohmann::json to_json(const PrimitiveForm& form);
nlohmann::json to_json(const SequenceSpec& spec);
/// Throws ConfigError for structural problems and InvalidSpec for values
/// outside their domain.
SequenceSpec spec_from_json(const nlohmann::json& j);
PrimitiveForm form_from_json(const nlohmann::json& j);

}  // namespace frog
