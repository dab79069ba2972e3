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

#include "pcurv/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcurv/acceptance.hpp"
#include "pcurv/harness.hpp"
#include "pcurv/models.hpp"

namespace pcurv {

namespace {

struct Flags {
  std::string model;
  std::vector<std::uint32_t> primes;
  std::uint32_t ell = 0;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  std::vector<unsigned> reps;
  std::size_t n = 0;
  std::string strategy = "auto";
  std::string format = "text";
  std::vector<std::string> sets;
  std::optional<std::uint32_t> hbar;
  std::string profile;
};

HarnessConfig to_config(const Flags& f) {
  HarnessConfig c;
  c.model = f.model;
  c.primes = f.primes;
  c.ell = f.ell;
  c.samples = f.samples;
  c.seed = f.seed;
  c.reps = f.reps;
  c.n = f.n;
  c.strategy = parse_strategy(f.strategy);
  if (f.hbar) c.assignments.push_back({"hbar", *f.hbar});
  for (const auto& s : f.sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects name=value, got '" + s + "'");
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(s.substr(eq + 1), &used);
      if (used != s.size() - eq - 1) throw std::invalid_argument(s);
      c.assignments.push_back({s.substr(0, eq), static_cast<std::uint32_t>(v % (1ul << 31))});
    } catch (const std::logic_error&) {
      throw ConfigError("--set value must be a non-negative integer, got '" + s + "'");
    }
  }
  return c;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("model", f.model, "Model id; see `pcurv models`")->required();
  cmd->add_option("--p", f.primes, "Prime(s), comma separated; default: the model's pinned primes")
      ->delimiter(',');
  cmd->add_option("--ell", f.ell, "Field size for qkz; p must divide ell - 1");
  cmd->add_option("--reps", f.reps, "sl2 highest weights m_1,...,m_r")->delimiter(',');
  cmd->add_option("--n", f.n, "Group size for gaudin-sn and cm-identity (2 or 3)");
  cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"text", "json"}));
}

int emit_suite(const Flags& f, std::ostream& out) {
  using ojson = nlohmann::ordered_json;
  auto ids = suite_profile(f.profile);
  ojson j;
  j["tool"] = kToolName;
  j["version"] = tool_version();
  j["command"] = "suite";
  j["profile"] = f.profile;
  j["seed"] = f.seed;
  j["criteria"] = ojson::array();
  std::size_t passed = 0;
  std::ostringstream text;
  text << "tool: " << kToolName << " " << tool_version() << "\ncommand: suite\nprofile: " << f.profile
       << "\nseed: " << f.seed << "\n";
  for (const auto& entry : acceptance_matrix()) {
    if (std::find(ids.begin(), ids.end(), entry.id) == ids.end()) continue;
    AcOutcome o = run_acceptance(entry, f.seed);
    passed += o.pass;
    j["criteria"].push_back(
        {{"id", entry.id}, {"title", entry.title}, {"verdict", o.pass ? "pass" : "fail"}, {"detail", o.detail}});
    text << "criterion " << entry.id << ": " << (o.pass ? "pass" : "fail") << "\n  title: " << entry.title
         << "\n  detail: " << o.detail << "\n";
  }
  const bool all = passed == ids.size();
  j["summary"] = {{"passed", passed}, {"failed", ids.size() - passed}, {"verdict", all ? "pass" : "fail"}};
  text << "summary: passed=" << passed << " failed=" << ids.size() - passed << " verdict=" << (all ? "pass" : "fail")
       << "\n";
  out << (f.format == "json" ? j.dump(2) + "\n" : text.str());
  return all ? kExitPass : kExitFail;
}

int emit_models(std::ostream& out) {
  for (const auto& m : model_registry()) {
    out << m.id << "\n  " << m.summary << "\n  primes: " << m.prime_constraint << "; pinned";
    for (std::size_t i = 0; i < m.pinned_primes.size(); ++i) out << (i ? "," : " ") << m.pinned_primes[i];
    out << "\n";
  }
  return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-curvature computation and verification over finite fields", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + tool_version());
  app.require_subcommand(1);
  Flags f;

  auto* compute = app.add_subcommand("compute", "Print the p-curvature matrices and the comparison target");
  add_common(compute, f);
  compute->add_option("--hbar", f.hbar, "Shorthand for --set hbar=VALUE");
  compute->add_option("--set", f.sets, "Substitute a variable: name=value (repeatable)");

  auto* verify = app.add_subcommand("verify", "Check isospectrality on seeded samples and emit a report");
  add_common(verify, f);
  verify->add_option("--samples", f.samples, "Samples per prime");
  verify->add_option("--seed", f.seed, "Sample seed");
  verify->add_option("--strategy", f.strategy, "Pencil check strategy")
      ->check(CLI::IsMember({"auto", "symbolic", "sampled"}));

  auto* suite = app.add_subcommand("suite", "Run the acceptance matrix");
  suite->add_option("profile", f.profile, "quick or full")->required();
  suite->add_option("--seed", f.seed, "Sample seed");
  suite->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"text", "json"}));

  auto* models = app.add_subcommand("models", "List registered models and their prime constraints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (models->parsed()) return emit_models(out);
    if (suite->parsed()) return emit_suite(f, out);
    HarnessConfig config = to_config(f);
    if (compute->parsed()) {
      auto r = compute_model(config);
      out << (f.format == "json" ? render_json(r) : render_text(r));
      return kExitPass;
    }
    auto r = verify_model(config);
    out << (f.format == "json" ? render_json(r) : render_text(r));
    return r.exit_code();
  } catch (const std::invalid_argument& e) {
    // ConfigError, unknown profiles and model preconditions.
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace pcurv
