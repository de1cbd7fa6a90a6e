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

#include <compare>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace frog {

/// Positive integer or +infinity.
class ExtInt {
public:
    constexpr ExtInt() = default;
    constexpr explicit ExtInt(std::int64_t v) : value_(v), finite_(true) {}
    static constexpr ExtInt infinity() { return ExtInt(); }

    constexpr bool is_finite() const { return finite_; }
    constexpr std::int64_t value() const { return value_; }

    constexpr bool operator==(const ExtInt& o) const
    {
        return finite_ == o.finite_ && (!finite_ || value_ == o.value_);
    }
    constexpr std::strong_ordering operator<=>(const ExtInt& o) const
    {
        if (finite_ != o.finite_) {
            return finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (!finite_) {
            return std::strong_ordering::equal;
        }
        return value_ <=> o.value_;
    }
    constexpr bool operator==(std::int64_t v) const { return finite_ && value_ == v; }
    constexpr std::strong_ordering operator<=>(std::int64_t v) const { return *this <=> ExtInt(v); }

    friend constexpr ExtInt operator*(const ExtInt& a, const ExtInt& b)
    {
        if (!a.finite_ || !b.finite_) {
            return infinity();
        }
        return ExtInt(a.value_ * b.value_);
    }

    std::string to_string() const { return finite_ ? std::to_string(value_) : "inf"; }

private:
    std::int64_t value_ = 0;
    bool finite_ = false;
};

constexpr ExtInt max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }
constexpr ExtInt min(const ExtInt& a, const ExtInt& b) { return b < a ? b : a; }

/// Finite values as JSON integers, infinity as the string "inf".
inline nlohmann::json to_json(const ExtInt& v)
{
    return v.is_finite() ? nlohmann::json(v.value()) : nlohmann::json("inf");
}

}  // namespace frog
