// Copyright 2026 The pcurv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pcurv/cli.hpp"
#include "pcurv/harness.hpp"

using namespace pcurv;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pcurv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(PCURV_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("golden reports") {
  CHECK(cli({"compute", "pseudo-pencil", "--p", "3"}).out == golden("compute_pseudo_pencil_p3.txt"));
  CHECK(cli({"compute", "pseudo-pencil", "--p", "2", "--format", "json"}).out ==
        golden("compute_pseudo_pencil_p2.json"));
  auto v = cli({"verify", "pseudo-pencil"});
  CHECK(v.code == kExitPass);
  CHECK(v.out == golden("verify_pseudo_pencil.txt"));
  CHECK(cli({"verify", "pseudo-pencil", "--format", "json"}).out == golden("verify_pseudo_pencil.json"));
  auto q = cli({"verify", "qkz", "--p", "3", "--ell", "7", "--samples", "20", "--seed", "1"});
  CHECK(q.code == kExitPass);
  CHECK(q.out == golden("verify_qkz_p3_ell7.txt"));
}

TEST_CASE("compute prints C_i for KZ at a fixed hbar") {
  auto r = cli({"compute", "kz", "--p", "5", "--reps", "1,1", "--hbar", "2"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("C_1:") != std::string::npos);
  CHECK(r.out.find("C_2:") != std::string::npos);
  // Symbolic hbar gives a nonzero C.
  auto s = cli({"compute", "kz", "--p", "5", "--format", "json"});
  auto j = nlohmann::json::parse(s.out);
  CHECK(j["matrices"].size() == 4);
  CHECK(j["matrices"][0]["rows"].size() == 4);
  CHECK(j["matrices"][0]["rows"][0][0].get<std::string>() != "0");
}

TEST_CASE("exit codes") {
  auto bad = cli({"compute", "kz", "--p", "2"});
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("p odd prime") != std::string::npos);
  CHECK(cli({"verify", "kz", "--p", "9"}).code == kExitConfig);
  CHECK(cli({"verify", "no-such-model"}).code == kExitConfig);
  CHECK(cli({"verify", "qkz", "--p", "5", "--ell", "7"}).code == kExitConfig);
  CHECK(cli({"verify", "gaudin-sn", "--n", "3", "--p", "3"}).code == kExitConfig);
  CHECK(cli({"verify", "dunkl-a1", "--reps", "1,1"}).code == kExitConfig);
  CHECK(cli({"compute", "kz", "--set", "nothere=1"}).code == kExitConfig);
  CHECK(cli({"compute", "kz", "--set", "hbar"}).code == kExitConfig);
  CHECK(cli({"suite", "bogus"}).code == kExitConfig);
  CHECK(cli({"verify", "kz", "--strategy", "magic"}).code == kExitConfig);
  CHECK(cli({}).code == kExitConfig);
  CHECK(cli({"--help"}).code == kExitPass);
  // Four distinct points do not exist in F_3: every draw is a pole.
  auto deg = cli({"verify", "kz", "--p", "3", "--reps", "1,1,1,1", "--samples", "2"});
  CHECK(deg.code == kExitDegenerate);
}

TEST_CASE("empty verify is a valid report") {
  auto r = cli({"verify", "kz", "--p", "5", "--samples", "0", "--format", "json"});
  CHECK(r.code == kExitPass);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["runs"][0]["records"].empty());
  CHECK(j["summary"]["verdict"] == "pass");
}

TEST_CASE("verify reports are reproducible and seed-sensitive") {
  std::vector<std::string> args{"verify", "kz", "--p", "7", "--reps", "1,1,1", "--samples", "6", "--format", "json"};
  auto a = cli(args), b = cli(args);
  CHECK(a.code == kExitPass);
  CHECK(a.out == b.out);
  args.push_back("--seed");
  args.push_back("2");
  CHECK(cli(args).out != a.out);
  auto j = nlohmann::json::parse(a.out);
  for (const auto& rec : j["runs"][0]["records"]) {
    CHECK(rec["verdict"] == "pass");
    CHECK(rec["point"].contains("x1"));
  }
}

TEST_CASE("both strategies and multiple primes") {
  for (const char* s : {"symbolic", "sampled"}) {
    auto r = cli({"verify", "dunkl-a1", "--p", "5,7", "--samples", "3", "--strategy", s, "--format", "json"});
    CHECK(r.code == kExitPass);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["runs"].size() == 2);
  }
}

TEST_CASE("remaining models through the harness") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"verify", "casimir-irregular", "--p", "5", "--samples", "3"},
           {"verify", "gaudin-sn", "--n", "3", "--p", "7"},
           {"verify", "cm-identity", "--n", "3", "--p", "7", "--samples", "3"},
           {"verify", "toda-a1", "--samples", "3"},
           {"verify", "qkz-additive", "--samples", "3"},
           {"verify", "kz-irregular", "--p", "5", "--samples", "3"}}) {
    CHECK(cli(args).code == kExitPass);
  }
  CHECK(cli({"compute", "qkz", "--p", "3", "--set", "q=1"}).code == kExitPass);
  CHECK(cli({"compute", "cm-identity", "--p", "7"}).code == kExitPass);
  CHECK(cli({"models"}).out.find("qkz") != std::string::npos);
}

TEST_CASE("suite quick") {
  auto r = cli({"suite", "quick", "--format", "json"});
  CHECK(r.code == kExitPass);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["criteria"].size() == 3);
  CHECK(j["criteria"][0]["id"] == "AC-1");
  CHECK(j["criteria"][2]["id"] == "AC-6");
}
