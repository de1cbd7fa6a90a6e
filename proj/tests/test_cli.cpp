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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frog/cli.hpp"
#include "frog/run_store.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name)
{
    const char* dir = std::getenv("FROG_CONFIG_DIR");
    REQUIRE(dir != nullptr);
    return (fs::path(dir) / name).string();
}

struct Scratch {
    fs::path dir;
    Scratch()
    {
        dir = fs::temp_directory_path() / ("frog-cli-" + std::to_string(std::rand()) + "-" +
                                           std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path(name)) << text;
        return path(name);
    }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "frog");
    std::ostringstream out;
    std::ostringstream err;
    const int code = frog::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        v.push_back(l);
    }
    return v;
}

}  // namespace

TEST_CASE("classify: verdicts and exit codes")
{
    Scratch s;
    const auto store = s.path("runs.jsonl");
    auto r = run({"--store", store, "classify", fixture("loginverse.json")});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    auto j = json::parse(r.out);
    CHECK(j["outcome"] == "DiesAS");
    bool cites = false;
    for (const auto& e : j["trace"]) {
        cites = cites || e["citation"] == "Thm 2(a)";
    }
    CHECK(cites);

    r = run({"--store", store, "classify", fixture("power_half.json")});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["outcome"] == "SurvivesWPP");

    r = run({"--store", store, "classify", fixture("sparse_dyadic.json")});
    CHECK(json::parse(r.out)["outcome"] == "DiesAS");

    CHECK(run({"--store", store, "classify", fixture("invalid_modulus0.json")}).code == 1);
    CHECK(run({"--store", store, "classify", fixture("invalid_q_above_one.json")}).code == 2);
    CHECK(run({"--store", store, "classify", s.write("broken.json", "{ not json")}).code == 1);
    CHECK(run({"--store", store, "classify", s.path("missing.json")}).code == 1);
    CHECK(run({"--store", store, "frobnicate"}).code == 1);

    // Only the three successful runs were logged.
    const auto records = frog::read_run_records(store);
    CHECK(records.size() == 3);
    CHECK(records[0]["subcommand"] == "classify");
    CHECK(records[0]["version"] == frog::kToolVersion);
}

TEST_CASE("classify: undecided verdicts exit 3 and are still logged")
{
    Scratch s;
    const auto cfg = s.write("fallback.json", R"({
        "N": 3, "L": 2,
        "spec": {
            "modulus": 2,
            "residues": [
                {"r": 0, "form": {"kind": "power", "c": 0.5, "alpha": 1, "offset": 1}},
                {"r": 1, "form": {"kind": "loginv", "c": 0.5, "offset": 2}}
            ],
            "overrides": [{"a": 1, "b": 3, "j0": 2, "form": {"kind": "loginv", "c": 0.5, "offset": 3}}]
        }
    })");
    const auto r = run({"--store", s.path("runs.jsonl"), "classify", cfg});
    CHECK(r.code == 3);
    CHECK(json::parse(r.out)["outcome"] == "SurvivesForLargeNL");
    CHECK(frog::read_run_records(s.path("runs.jsonl")).size() == 1);
}

TEST_CASE("exact: table rows")
{
    Scratch s;
    const auto r = run({"--no-store", "exact", fixture("inverse_square_L1.json"), "--n-max", "9"});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == "n,a_n,lower,upper,partial_product");
    CHECK(rows[1].rfind("0,0.25,", 0) == 0);
}

TEST_CASE("sweep: ordering, ranges and the empty grid")
{
    Scratch s;
    const auto store = s.path("runs.jsonl");
    auto r = run({"--store", store, "sweep", fixture("interleaved_mod2.json")});
    REQUIRE(r.code == 0);
    auto rows = lines(r.out);
    REQUIRE(rows.size() == 65);
    CHECK(rows[0] == "N,L,outcome,m,b,L0,L1,min_exponent,log_exponent_at_min");
    CHECK(rows[2].rfind("1,2,DiesAS,inf,2,2,4,", 0) == 0);
    CHECK(rows[10].rfind("2,2,SurvivesWPP,", 0) == 0);

    r = run({"--store", store, "sweep", fixture("interleaved_mod2.json"), "--N-range", "2:3", "--L-range",
             "3:3"});
    CHECK(lines(r.out).size() == 3);

    r = run({"--store", store, "sweep", fixture("interleaved_mod2.json"), "--N-range", "5:4"});
    CHECK(r.code == 0);
    CHECK(r.out == "N,L,outcome,m,b,L0,L1,min_exponent,log_exponent_at_min\n");

    const auto threaded = run({"--no-store", "--threads", "3", "sweep", fixture("interleaved_mod2.json")});
    const auto single = run({"--no-store", "--threads", "1", "sweep", fixture("interleaved_mod2.json")});
    CHECK(threaded.out == single.out);
    CHECK(frog::read_run_records(store).size() == 3);
    CHECK(run({"--no-store", "sweep", fixture("interleaved_mod2.json"), "--N-range", "x"}).code == 1);
}

TEST_CASE("sweep: mod-3 family with alpha = 1e-3 dies on the whole grid")
{
    const auto r = run({"--no-store", "sweep", fixture("mod3_small_alpha.json")});
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 1 + 8 * 12);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].find(",DiesAS,") != std::string::npos);
    }
}

TEST_CASE("simulate: JSONL, CSV, profile and thread independence")
{
    Scratch s;
    const auto cfg = fixture("loginverse.json");
    const auto a = run({"--no-store", "--threads", "1", "simulate", "--config", cfg, "--trials", "2000"});
    const auto b = run({"--no-store", "--threads", "4", "simulate", "--config", cfg, "--trials", "2000"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err.empty());
    const auto rec = json::parse(a.out);
    CHECK(rec["trials"] == 2000);
    CHECK(rec["config"]["simulation"]["seed"] == 1);

    const auto reseeded =
        run({"--no-store", "--seed", "99", "simulate", "--config", cfg, "--trials", "2000"});
    CHECK(json::parse(reseeded.out)["config"]["simulation"]["seed"] == 99);

    const auto csv = run({"--no-store", "--out", "csv", "simulate", "--config", cfg, "--trials", "100"});
    CHECK(lines(csv.out).size() == 2);
    CHECK(run({"--no-store", "--out", "xml", "simulate", "--config", cfg}).code == 1);

    const auto prof = s.path("profile.csv");
    CHECK(run({"--no-store", "simulate", "--config", cfg, "--trials", "500", "--profile", prof}).code == 0);
    std::ifstream in(prof);
    std::string header;
    std::getline(in, header);
    CHECK(header == "site,p_hat_Ei,lower_bound_curve,ci_half_width");
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("1,1,,", 0) == 0);

    CHECK(run({"--no-store", "simulate", "--config", cfg, "--trials", "100000000", "--horizon", "100000"})
              .code == 5);
    CHECK(run({"--no-store", "simulate", "--config", cfg, "--horizon", "2"}).code == 1);
    CHECK(run({"--no-store", "simulate", "--config", cfg, "--trials", "10", "--profile",
               s.path("no/such/dir/p.csv")})
              .code == 6);

    const auto store = s.path("runs.jsonl");
    run({"--store", store, "simulate", "--config", cfg, "--trials", "300"});
    run({"--store", store, "simulate", "--config", cfg, "--trials", "300"});
    const auto records = frog::read_run_records(store);
    REQUIRE(records.size() == 2);
    CHECK(records[0]["result"] == records[1]["result"]);
    CHECK(records[0]["seed"] == 1);
}

TEST_CASE("verify: default grid, oracle grid and refusal")
{
    auto r = run({"--no-store", "verify"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    auto rep = json::parse(r.out);
    CHECK(rep["pass"] == true);
    CHECK(rep["bound_tuples"].get<int>() >= 500);

    r = run({"--no-store", "verify", fixture("verify_oracle_L12.json")});
    CHECK(r.code == 0);
    rep = json::parse(r.out);
    CHECK(rep["oracle_max_abs_diff"].get<double>() <= 1e-12);
    CHECK(rep["oracle_cases"] == 78);

    r = run({"--no-store", "verify", fixture("verify_oracle_L25.json")});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());

    r = run({"--no-store", "verify", fixture("interleaved_mod2.json")});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["block_tuples"] == 42);

    Scratch s;
    CHECK(run({"--no-store", "verify", s.write("bad.json", R"({"verify": {"bounds": {"q": [1.5]}}})")}).code == 1);
}

TEST_CASE("global flags")
{
    const auto r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out == std::string("frog ") + frog::kToolVersion + "\n");
    CHECK(run({}).code == 1);
    Scratch s;
    CHECK(run({"--store", s.path("missing/dir/runs.jsonl"), "classify", fixture("loginverse.json")}).code == 6);
}
