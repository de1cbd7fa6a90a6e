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

namespace frog {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunRecord {
    std::string timestamp;  // UTC, ISO 8601
    std::string subcommand;
    nlohmann::json config;
    nlohmann::json result;
    std::string version = kToolVersion;
    std::optional<std::uint64_t> seed;
};

std::string utc_timestamp();

nlohmann::json to_json(const RunRecord& r);

/// Appends one JSON line with a single write(2) on an O_APPEND descriptor
/// under an exclusive flock. Throws std::runtime_error on I/O failure.
void append_run_record(const std::string& path, const RunRecord& record);

/// Every record in a JSONL store, in file order.
std::vector<nlohmann::json> read_run_records(const std::string& path);

}  // namespace frog
