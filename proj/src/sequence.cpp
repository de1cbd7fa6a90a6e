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

#include "frog/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "frog/errors.hpp"

namespace frog {

namespace {

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

bool mul_overflows(std::int64_t a, std::int64_t b)
{
    return a != 0 && b > kInt64Max / a;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string describe(const PrimitiveForm& form)
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const PowerLaw& p) {
                       os << "power(c=" << p.c << ", alpha=" << p.alpha << ", offset=" << p.offset
                          << ")";
                   },
                   [&](const LogInverse& l) { os << "loginv(c=" << l.c << ", offset=" << l.offset << ")"; },
                   [&](const ConstantForm& k) { os << "const(q=" << k.q << ")"; },
               },
               form);
    return os.str();
}

void check_form_parameters(const PrimitiveForm& form)
{
    std::visit(overloaded{
                   [](const PowerLaw& p) {
                       if (!(std::isfinite(p.c) && p.c > 0)) {
                           throw InvalidSpec("power form needs a positive coefficient c");
                       }
                       if (!(std::isfinite(p.alpha) && p.alpha > 0 && p.alpha <= 64)) {
                           throw InvalidSpec("power form needs an exponent alpha in (0, 64]");
                       }
                       if (p.offset < 0) {
                           throw InvalidSpec("power form offset must be nonnegative");
                       }
                   },
                   [](const LogInverse& l) {
                       if (!(std::isfinite(l.c) && l.c > 0)) {
                           throw InvalidSpec("loginv form needs a positive coefficient c");
                       }
                       if (l.offset < 2) {
                           throw InvalidSpec("loginv form offset must be at least 2");
                       }
                   },
                   [](const ConstantForm& k) {
                       if (!(k.q > 0 && k.q < 1)) {
                           throw InvalidSpec("const form needs q in (0,1)");
                       }
                   },
               },
               form);
}

bool in_open_unit(double v)
{
    return std::isfinite(v) && v > 0 && v < 1;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod)
{
    if (mod == 1) {
        return 0;
    }
    std::int64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) {
            result = result * base % mod;
        }
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

// Residues mod k attained by a*b^j for infinitely many j. b^j mod k is
// eventually periodic with preperiod below 64 and period at most k.
std::vector<std::int64_t> recurring_residues(const GeometricFamily& fam, std::int64_t k)
{
    std::set<std::int64_t> hit;
    const std::int64_t start = fam.j0 + 64;
    for (std::int64_t j = start; j < start + 2 * k; ++j) {
        hit.insert((fam.a % k) * mod_pow(fam.b, j, k) % k);
    }
    return {hit.begin(), hit.end()};
}

}  // namespace

double evaluate(const PrimitiveForm& form, std::int64_t counter)
{
    return std::visit(overloaded{
                          [&](const PowerLaw& p) {
                              const auto base = counter + p.offset;
                              if (base <= 0) {
                                  return std::numeric_limits<double>::infinity();
                              }
                              return p.c * std::pow(static_cast<double>(base), -p.alpha);
                          },
                          [&](const LogInverse& l) {
                              const auto base = counter + l.offset;
                              if (base <= 1) {
                                  return std::numeric_limits<double>::infinity();
                              }
                              return l.c / std::log(static_cast<double>(base));
                          },
                          [](const ConstantForm& k) { return k.q; },
                      },
                      form);
}

ExtInt summability_exponent(const PrimitiveForm& form)
{
    if (const auto* p = std::get_if<PowerLaw>(&form)) {
        // Smallest M with M*alpha > 1; M*alpha == 1 is the harmonic edge.
        auto converges = [&](std::int64_t m) {
            return static_cast<double>(m) * p->alpha > 1.0 + kEdgeTolerance;
        };
        auto m = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(1.0 / p->alpha)));
        while (!converges(m)) {
            ++m;
        }
        while (m > 1 && converges(m - 1)) {
            --m;
        }
        return ExtInt(m);
    }
    return ExtInt::infinity();
}

std::optional<std::int64_t> GeometricFamily::exponent_of(std::int64_t n) const
{
    if (n < a || n % a != 0) {
        return std::nullopt;
    }
    std::int64_t rest = n / a;
    std::int64_t j = 0;
    while (rest % b == 0) {
        rest /= b;
        ++j;
    }
    if (rest != 1 || j < j0) {
        return std::nullopt;
    }
    return j;
}

std::vector<std::int64_t> GeometricFamily::members_up_to(std::int64_t limit) const
{
    std::vector<std::int64_t> out;
    std::int64_t v = a;
    for (std::int64_t j = 0; j < j0; ++j) {
        if (mul_overflows(v, b)) {
            return out;
        }
        v *= b;
    }
    while (v <= limit) {
        out.push_back(v);
        if (mul_overflows(v, b)) {
            break;
        }
        v *= b;
    }
    return out;
}

SequenceSpec SequenceSpec::make(std::vector<PrimitiveForm> residue_forms,
                                std::vector<SparseOverride> overrides,
                                std::vector<double> prefix)
{
    if (residue_forms.empty()) {
        throw ConfigError("modulus must be a positive integer");
    }
    if (static_cast<std::int64_t>(residue_forms.size()) > kMaxModulus) {
        throw ConfigError("modulus above " + std::to_string(kMaxModulus) + " is not supported");
    }
    for (const auto& f : residue_forms) {
        check_form_parameters(f);
    }
    for (const auto& o : overrides) {
        check_form_parameters(o.form);
        if (o.indices.a < 1 || o.indices.b < 2 || o.indices.j0 < 0) {
            throw InvalidSpec("override family needs a >= 1, b >= 2, j0 >= 0");
        }
        if (o.indices.members_up_to(kInt64Max).empty()) {
            throw InvalidSpec("override family starts beyond the 64-bit index range");
        }
    }
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        const auto mi = overrides[i].indices.members_up_to(kInt64Max);
        const std::set<std::int64_t> seen(mi.begin(), mi.end());
        for (std::size_t k = i + 1; k < overrides.size(); ++k) {
            for (auto n : overrides[k].indices.members_up_to(kInt64Max)) {
                if (seen.count(n)) {
                    throw InvalidSpec("override families overlap at index " + std::to_string(n));
                }
            }
        }
    }
    for (double v : prefix) {
        if (!in_open_unit(v)) {
            throw InvalidSpec("prefix values must lie in (0,1)");
        }
    }
    std::sort(overrides.begin(), overrides.end(), [](const auto& x, const auto& y) {
        return std::tie(x.indices.a, x.indices.b, x.indices.j0) <
               std::tie(y.indices.a, y.indices.b, y.indices.j0);
    });

    SequenceSpec spec;
    spec.forms_ = std::move(residue_forms);
    spec.overrides_ = std::move(overrides);
    spec.prefix_ = std::move(prefix);
    spec.validate();
    return spec;
}

void SequenceSpec::validate() const
{
    const auto k = modulus();
    const auto p = static_cast<std::int64_t>(prefix_.size());
    auto is_override_index = [&](std::int64_t n) {
        return std::any_of(overrides_.begin(), overrides_.end(),
                           [&](const auto& o) { return o.indices.exponent_of(n).has_value(); });
    };

    // Head: every value up to a few periods past the prefix.
    for (std::int64_t n = 1; n <= p + 3 * k + 2; ++n) {
        const double v = (*this)(n);
        if (!in_open_unit(v)) {
            std::ostringstream os;
            os << "q_" << n << " = " << v << " lies outside (0,1)";
            throw InvalidSpec(os.str());
        }
    }
    // Tail: each form is nonincreasing in its counter, so its first value
    // actually in use bounds all later ones.
    for (std::int64_t r = 0; r < k; ++r) {
        std::int64_t c = (r == 0) ? 1 : 0;
        while (k * c + r <= p || is_override_index(k * c + r)) {
            ++c;
        }
        const double v = evaluate(forms_[r], c);
        if (!in_open_unit(v)) {
            std::ostringstream os;
            os << "residue " << r << " form " << describe(forms_[r]) << " gives " << v
               << " at index " << k * c + r;
            throw InvalidSpec(os.str());
        }
    }
    for (const auto& o : overrides_) {
        std::int64_t j = o.indices.j0;
        std::int64_t n = o.indices.members_up_to(kInt64Max).front();
        while (n <= p && !mul_overflows(n, o.indices.b)) {
            n *= o.indices.b;
            ++j;
        }
        const double v = evaluate(o.form, j);
        if (!in_open_unit(v)) {
            std::ostringstream os;
            os << "override form " << describe(o.form) << " gives " << v << " at index " << n;
            throw InvalidSpec(os.str());
        }
    }
}

double SequenceSpec::operator()(std::int64_t n) const
{
    if (n < 1) {
        throw OutOfRange("sequence index must be >= 1, got " + std::to_string(n));
    }
    if (n <= static_cast<std::int64_t>(prefix_.size())) {
        return prefix_[n - 1];
    }
    for (const auto& o : overrides_) {
        if (auto j = o.indices.exponent_of(n)) {
            return std::max(evaluate(o.form, *j), std::numeric_limits<double>::denorm_min());
        }
    }
    const auto k = modulus();
    return std::max(evaluate(forms_[n % k], n / k), std::numeric_limits<double>::denorm_min());
}

ExtInt m_of(const SequenceSpec& spec)
{
    ExtInt m(1);
    for (const auto& f : spec.residue_forms()) {
        m = max(m, summability_exponent(f));
    }
    // Overrides sit on geometric families: their own series sum_j form(j)^M
    // must converge as well.
    for (const auto& o : spec.overrides()) {
        m = max(m, summability_exponent(o.form));
    }
    return m;
}

std::string to_string(Tri t)
{
    switch (t) {
    case Tri::Yes:
        return "yes";
    case Tri::No:
        return "no";
    case Tri::Unknown:
        break;
    }
    return "unknown";
}

Tri is_in_D1(const SequenceSpec& spec)
{
    const auto& prefix = spec.prefix();
    for (std::size_t i = 1; i < prefix.size(); ++i) {
        if (prefix[i] > prefix[i - 1]) {
            return Tri::No;
        }
    }
    if (!prefix.empty()) {
        const auto p = static_cast<std::int64_t>(prefix.size());
        if (spec(p + 1) > spec(p)) {
            return Tri::No;
        }
    }

    const auto& forms = spec.residue_forms();
    const bool identical =
        std::all_of(forms.begin(), forms.end(), [&](const auto& f) { return f == forms.front(); });
    if (identical && spec.overrides().empty()) {
        return Tri::Yes;
    }

    double prev = spec(1);
    for (std::int64_t n = 2; n <= kMonotoneScanHorizon; ++n) {
        const double cur = spec(n);
        if (cur > prev) {
            return Tri::No;
        }
        prev = cur;
    }
    return Tri::Unknown;
}

std::int64_t cyclic_max_gap(const std::vector<std::int64_t>& residues, std::int64_t modulus)
{
    if (residues.empty()) {
        throw OutOfRange("residue subset must be nonempty");
    }
    std::int64_t gap = residues.front() + modulus - residues.back();
    for (std::size_t i = 1; i < residues.size(); ++i) {
        gap = std::max(gap, residues[i] - residues[i - 1]);
    }
    return gap;
}

SubseqAnalysis analyze_subsequence(const SequenceSpec& spec, const std::vector<std::int64_t>& residues)
{
    const auto k = spec.modulus();
    SubseqAnalysis out;
    out.residues = residues;
    std::sort(out.residues.begin(), out.residues.end());
    out.residues.erase(std::unique(out.residues.begin(), out.residues.end()), out.residues.end());
    if (out.residues.empty() || out.residues.front() < 0 || out.residues.back() >= k) {
        throw OutOfRange("residue subset must be a nonempty subset of 0..k-1");
    }

    ExtInt m(1);
    for (auto r : out.residues) {
        m = max(m, summability_exponent(spec.residue_form(r)));
    }
    std::int64_t l = cyclic_max_gap(out.residues, k);

    const auto& sel = out.residues;
    auto gap_around = [&](std::size_t idx) {
        const std::size_t n = sel.size();
        const auto prev = sel[(idx + n - 1) % n];
        const auto next = sel[(idx + 1) % n];
        auto fwd = [&](std::int64_t from, std::int64_t to) { return ((to - from) % k + k - 1) % k + 1; };
        return fwd(prev, sel[idx]) + fwd(sel[idx], next);
    };
    for (const auto& o : spec.overrides()) {
        const auto hit = recurring_residues(o.indices, k);
        const auto m_o = summability_exponent(o.form);
        for (std::size_t idx = 0; idx < sel.size(); ++idx) {
            if (!std::binary_search(hit.begin(), hit.end(), sel[idx])) {
                continue;
            }
            if (m_o.is_finite()) {
                // Keep the override indices; they only raise the exponent.
                m = max(m, m_o);
            } else {
                // Drop them; each removal merges two neighbouring gaps.
                l = std::max(l, gap_around(idx));
            }
        }
    }
    out.m_value = m;
    out.l_value = ExtInt(l);
    out.in_Dc = m.is_finite();
    return out;
}

LifetimeThresholds L0_L1(const SequenceSpec& spec)
{
    const auto k = spec.modulus();
    LifetimeThresholds out;
    std::optional<SubseqAnalysis> best_l;
    std::optional<SubseqAnalysis> best_lm;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<std::int64_t> residues;
        for (std::int64_t r = 0; r < k; ++r) {
            if (mask & (1u << r)) {
                residues.push_back(r);
            }
        }
        auto a = analyze_subsequence(spec, residues);
        if (!a.in_Dc) {
            continue;
        }
        auto better = [](const ExtInt& v, const std::vector<std::int64_t>& res,
                         const std::optional<SubseqAnalysis>& cur, auto key) {
            return !cur || v < key(*cur) || (v == key(*cur) && res < cur->residues);
        };
        auto l_key = [](const SubseqAnalysis& s) { return s.l_value; };
        auto lm_key = [](const SubseqAnalysis& s) { return s.l_value * s.m_value; };
        if (better(l_key(a), a.residues, best_l, l_key)) {
            best_l = a;
        }
        if (better(lm_key(a), a.residues, best_lm, lm_key)) {
            best_lm = a;
        }
    }
    if (best_l) {
        out.L0 = best_l->l_value;
        out.L1 = best_lm->l_value * best_lm->m_value;
        out.witnesses = {*best_l, *best_lm};
    }
    return out;
}

nlohmann::json to_json(const PrimitiveForm& form)
{
    return std::visit(overloaded{
                          [](const PowerLaw& p) {
                              return nlohmann::json{
                                  {"kind", "power"}, {"c", p.c}, {"alpha", p.alpha}, {"offset", p.offset}};
                          },
                          [](const LogInverse& l) {
                              return nlohmann::json{{"kind", "loginv"}, {"c", l.c}, {"offset", l.offset}};
                          },
                          [](const ConstantForm& k) { return nlohmann::json{{"kind", "const"}, {"q", k.q}}; },
                      },
                      form);
}

nlohmann::json to_json(const SequenceSpec& spec)
{
    nlohmann::json residues = nlohmann::json::array();
    for (std::int64_t r = 0; r < spec.modulus(); ++r) {
        residues.push_back({{"r", r}, {"form", to_json(spec.residue_form(r))}});
    }
    nlohmann::json overrides = nlohmann::json::array();
    for (const auto& o : spec.overrides()) {
        overrides.push_back({{"a", o.indices.a},
                             {"b", o.indices.b},
                             {"j0", o.indices.j0},
                             {"form", to_json(o.form)}});
    }
    return {{"modulus", spec.modulus()},
            {"residues", residues},
            {"overrides", overrides},
            {"prefix", spec.prefix()}};
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const nlohmann::json& j, const char* key, std::optional<double> fallback = {})
{
    if (!j.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(std::string("missing field '") + key + "'");
    }
    if (!j.at(key).is_number()) {
        throw ConfigError(std::string("field '") + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

std::int64_t integer(const nlohmann::json& j, const char* key, std::optional<std::int64_t> fallback = {})
{
    if (!j.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(std::string("missing field '") + key + "'");
    }
    if (!j.at(key).is_number_integer()) {
        throw ConfigError(std::string("field '") + key + "' must be an integer");
    }
    return j.at(key).get<std::int64_t>();
}

}  // namespace

PrimitiveForm form_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw ConfigError("form must be an object");
    }
    const auto& kind = require(j, "kind");
    if (!kind.is_string()) {
        throw ConfigError("form kind must be a string");
    }
    const auto name = kind.get<std::string>();
    if (name == "power") {
        return PowerLaw{number(j, "c", 1.0), number(j, "alpha"), integer(j, "offset", 0)};
    }
    if (name == "loginv") {
        return LogInverse{number(j, "c", 1.0), integer(j, "offset", 2)};
    }
    if (name == "const") {
        return ConstantForm{number(j, "q")};
    }
    throw ConfigError("unknown form kind '" + name + "'");
}

SequenceSpec spec_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw ConfigError("sequence spec must be an object");
    }
    const auto k = integer(j, "modulus");
    if (k < 1) {
        throw ConfigError("modulus must be a positive integer");
    }
    if (k > SequenceSpec::kMaxModulus) {
        throw ConfigError("modulus above " + std::to_string(SequenceSpec::kMaxModulus) +
                          " is not supported");
    }
    const auto& residues = require(j, "residues");
    if (!residues.is_array()) {
        throw ConfigError("residues must be an array");
    }
    std::vector<std::optional<PrimitiveForm>> slots(k);
    for (const auto& entry : residues) {
        const auto r = integer(entry, "r");
        if (r < 0 || r >= k) {
            throw ConfigError("residue " + std::to_string(r) + " outside 0..modulus-1");
        }
        if (slots[r]) {
            throw ConfigError("residue " + std::to_string(r) + " listed twice");
        }
        slots[r] = form_from_json(require(entry, "form"));
    }
    std::vector<PrimitiveForm> forms;
    for (std::int64_t r = 0; r < k; ++r) {
        if (!slots[r]) {
            throw ConfigError("residue " + std::to_string(r) + " has no form");
        }
        forms.push_back(*slots[r]);
    }

    std::vector<SparseOverride> overrides;
    if (j.contains("overrides")) {
        if (!j.at("overrides").is_array()) {
            throw ConfigError("overrides must be an array");
        }
        for (const auto& o : j.at("overrides")) {
            overrides.push_back({{integer(o, "a", 1), integer(o, "b"), integer(o, "j0", 0)},
                                 form_from_json(require(o, "form"))});
        }
    }
    std::vector<double> prefix;
    if (j.contains("prefix")) {
        if (!j.at("prefix").is_array()) {
            throw ConfigError("prefix must be an array of numbers");
        }
        for (const auto& v : j.at("prefix")) {
            if (!v.is_number()) {
                throw ConfigError("prefix must be an array of numbers");
            }
            prefix.push_back(v.get<double>());
        }
    }
    return SequenceSpec::make(std::move(forms), std::move(overrides), std::move(prefix));
}

}  // namespace frog
