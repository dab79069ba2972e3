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

#include "pcurv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "pcurv/connection.hpp"
#include "pcurv/difference.hpp"
#include "pcurv/models.hpp"

namespace pcurv {

#ifndef PCURV_VERSION
#define PCURV_VERSION "0.0.0"
#endif

const char* tool_version() { return PCURV_VERSION; }

namespace {

bool is_sl2_model(const std::string& id) {
  return id == "kz" || id == "kz-irregular" || id == "casimir-irregular";
}
bool is_group_model(const std::string& id) { return id == "gaudin-sn" || id == "cm-identity"; }

const std::map<std::uint32_t, std::uint32_t>& pinned_ell() {
  static const std::map<std::uint32_t, std::uint32_t> m = {{3, 7}, {5, 11}, {7, 29}};
  return m;
}

[[noreturn]] void prime_error(const ModelInfo& info, const std::string& what) {
  throw ConfigError("model " + info.id + " requires " + info.prime_constraint + " (" + what + ")");
}

std::string join_uints(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string fmt_bound(double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", b);
  return buf;
}
double round4(double b) { return std::round(b * 1e4) / 1e4; }

std::vector<std::string> charpoly_strings(const RatMatrix& M) {
  return serialize_charpoly(M.ring(), char_poly(M));
}

// Runs body(point, record) for each sample on fresh draws of `vars` from
// [lo, modulus), resampling while body raises PoleError.
void sample_loop(RunReport& run, const Context& ctx, const HarnessConfig& c, const std::vector<int>& vars,
                 Fp lo, const std::function<void(const Assignment&, SampleRecord&)>& body) {
  run.samples.resize(c.samples);
  parallel_for(c.samples, [&](std::size_t k) {
    auto rng = sample_rng(c.seed, ctx.p(), k);
    SampleRecord& rec = run.samples[k];
    rec.index = k;
    for (;;) {
      Assignment point;
      for (int v : vars) point.push_back({v, draw_residue(rng, ctx.p(), lo)});
      try {
        body(point, rec);
        rec.point.clear();
        for (const auto& [v, val] : point) rec.point.push_back({ctx.name(v), val});
        return;
      } catch (const PoleError&) {
        if (++rec.resamples >= kMaxResamples) {
          rec.note = "resampling budget exhausted";
          return;
        }
      }
    }
  });
  for (const auto& r : run.samples) run.degenerate = run.degenerate || r.resamples >= kMaxResamples;
}

void record_symbolic(SampleRecord& rec, bool pass, const RatMatrix& lhs, const RatMatrix& rhs) {
  rec.pass = pass;
  rec.strategy = strategy_name(Strategy::kSymbolic);
  if (!pass) {
    rec.lhs_charpoly = charpoly_strings(lhs);
    rec.rhs_charpoly = charpoly_strings(rhs);
  }
}

std::optional<DiffModel> diff_model(const Context& ctx, const HarnessConfig& c) {
  if (c.model == "kz") return kz_pencil(ctx, c.reps);
  if (c.model == "kz-irregular") return irregular_kz(ctx, c.reps);
  if (c.model == "casimir-irregular") return irregular_casimir_sl2(ctx, c.reps);
  if (c.model == "dunkl-a1") return dunkl_irregular_a1(ctx, 1);
  if (c.model == "toda-a1") return toda_rank1(ctx);
  if (c.model == "pseudo-pencil") return pseudo_pencil_example(ctx);
  return std::nullopt;
}

RatMatrix curvature(const ConnectionFamily& conn, std::size_t i, const Assignment& fixed) {
  return conn.frame() == Frame::kTorus ? torus_p_curvature(conn, i, fixed) : p_curvature(conn, i, fixed);
}

RunReport verify_at(const HarnessConfig& c, std::uint32_t p) {
  RunReport run;
  run.p = p;
  if (c.model == "qkz") {
    run.ell = c.ell ? c.ell : default_ell(p);
    Context ctx(run.ell);
    auto m = qkz_model(ctx, p);
    const int q = ctx.find("q"), t = ctx.find("t");
    sample_loop(run, ctx, c, {q, t}, 0, [&](const Assignment& pt, SampleRecord& rec) {
      auto B = evaluate(m.conn.B(0), pt);
      auto conn = ShiftConnection::multiplicative(ctx, {"z"}, {B}, m.conn.multiplier(), p);
      auto C = p_curvature_multiplicative(conn, 0);
      auto T = evaluate(m.target, pt);
      record_symbolic(rec, isospectral(C, T), C, T);
    });
    return run;
  }
  Context ctx(p);
  if (c.model == "qkz-additive") {
    auto m = qkz_additive_model(ctx);
    const int s = ctx.find("s"), t = ctx.find("t");
    sample_loop(run, ctx, c, {s, t}, 0, [&](const Assignment& pt, SampleRecord& rec) {
      auto conn = ShiftConnection::additive(ctx, {"u"}, {evaluate(m.conn.B(0), pt)});
      auto C = p_curvature_additive(conn, 0);
      auto T = evaluate(m.target, pt);
      record_symbolic(rec, isospectral(C, T), C, T);
    });
    return run;
  }
  if (c.model == "gaudin-sn") {
    auto G = gaudin_operators(ctx, c.n);
    auto M = gaudin_slots(ctx, c.n);
    bool commuting = true;
    for (std::size_t i = 0; i < M.size(); ++i)
      for (std::size_t j = i + 1; j < M.size(); ++j) commuting = commuting && commutator(M[i], M[j]).is_zero();
    for (std::size_t i = 0; i < G.size(); ++i)
      for (std::size_t j = i + 1; j < G.size(); ++j) commuting = commuting && commutator(G[i], G[j]).is_zero();
    run.checks.push_back({"operators_commute", commuting ? "true" : "false", commuting});
    if (c.n == 2) {
      auto x = ctx.poly_var("x1") - ctx.poly_var("x2");
      auto y = (ctx.poly_var("lambda1") - ctx.poly_var("lambda2")).scale(ctx.field().inv(2));
      auto cc = ctx.poly_var("c");
      RatRing R{&ctx};
      CharPoly<RatRing> expect{-(RatFunc(y * y) + RatFunc(cc * cc) * RatFunc::inv_linear(x, 2)), R.zero(),
                               R.one()};
      bool ok = charpoly_equal(R, char_poly(G[0]), expect);
      run.checks.push_back({"charpoly_closed_form", ok ? "true" : "false", ok});
    }
    return run;
  }
  if (c.model == "cm-identity") {
    auto D = cm_operator_identity(ctx, c.n);
    if (c.n == 2) {
      bool zero = std::all_of(D.begin(), D.end(), [](const RatMatrix& d) { return d.is_zero(); });
      run.checks.push_back({"defects_zero", zero ? "true" : "false", zero});
      return run;
    }
    bool nil = std::all_of(D.begin(), D.end(), [](const RatMatrix& d) { return is_nilpotent(d); });
    run.checks.push_back({"defects_nilpotent_symbolic", nil ? "true" : "false", nil});
    std::vector<int> vars;
    for (int v = 0; v < ctx.nvars(); ++v) vars.push_back(v);
    sample_loop(run, ctx, c, vars, 0, [&](const Assignment& pt, SampleRecord& rec) {
      std::vector<PolyMatrix> vals;
      for (const auto& d : D) vals.push_back(evaluate_poly(d, pt));
      rec.pass = std::all_of(vals.begin(), vals.end(), [](const PolyMatrix& m) { return is_nilpotent(m); });
      rec.strategy = strategy_name(Strategy::kSymbolic);
      if (!rec.pass) rec.note = "defect not nilpotent";
    });
    return run;
  }
  auto m = diff_model(ctx, c);
  if (c.model == "pseudo-pencil") {
    auto C = p_curvature(m->conn, 0);
    bool match = C == pseudo_pencil_closed_form(ctx);
    bool triv = trivializable_at_zero_test(C, ctx.find("s"));
    run.checks.push_back({"closed_form_match", match ? "true" : "false", match});
    run.checks.push_back({"trivializable_at_zero", triv ? "true" : "false", !triv});
    return run;
  }
  VerifyPlan plan;
  plan.samples = c.samples;
  plan.seed = c.seed;
  plan.strategy = c.strategy;
  auto rep = verify_isospectrality(m->conn, m->target, plan);
  run.samples = std::move(rep.samples);
  run.degenerate = rep.degenerate;
  return run;
}

NamedMatrix named(const std::string& name, const RatMatrix& M) {
  NamedMatrix out{name, {}};
  for (std::size_t i = 0; i < M.size(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < M.size(); ++j) row.push_back(M(i, j).to_string(false));
    out.rows.push_back(std::move(row));
  }
  return out;
}

Assignment resolve_assignments(const Context& ctx, const HarnessConfig& c) {
  Assignment a;
  for (const auto& [name, val] : c.assignments) {
    int v = ctx.find(name);
    if (v < 0) throw ConfigError("model " + c.model + " has no variable '" + name + "'");
    a.push_back({v, val % ctx.p()});
  }
  return a;
}

RatMatrix at_point(const RatMatrix& M, const Assignment& a) {
  try {
    return a.empty() ? M : normalize(evaluate(M, a));
  } catch (const PoleError&) {
    throw ConfigError("assignment lies on a pole");
  }
}

}  // namespace

std::uint32_t default_ell(std::uint32_t p) {
  auto it = pinned_ell().find(p);
  if (it != pinned_ell().end()) return it->second;
  for (std::uint32_t ell = p + 1;; ell += p) {
    if (is_prime(ell)) return ell;
  }
}

HarnessConfig resolve_config(const HarnessConfig& in) {
  HarnessConfig c = in;
  const ModelInfo* info = find_model(c.model);
  if (!info) {
    std::string known;
    for (const auto& m : model_registry()) known += (known.empty() ? "" : ", ") + m.id;
    throw ConfigError("unknown model '" + c.model + "'; known models: " + known);
  }
  if (c.primes.empty()) c.primes = info->pinned_primes;
  if (!is_sl2_model(c.model) && !c.reps.empty()) throw ConfigError("--reps applies to kz, kz-irregular, casimir-irregular");
  if (is_sl2_model(c.model)) {
    if (c.reps.empty()) c.reps = {1, 1};
    if (c.model != "casimir-irregular" && c.reps.size() < 2) throw ConfigError("model " + c.model + " needs at least two points");
    if (std::any_of(c.reps.begin(), c.reps.end(), [](unsigned m) { return m == 0 || m > 8; }))
      throw ConfigError("--reps entries must lie in 1..8");
  }
  if (!is_group_model(c.model) && c.n != 0) throw ConfigError("--n applies to gaudin-sn and cm-identity");
  if (is_group_model(c.model)) {
    if (c.n == 0) c.n = 2;
    if (c.n != 2 && c.n != 3) throw ConfigError("--n must be 2 or 3");
  }
  if (c.model != "qkz" && c.ell != 0) throw ConfigError("--ell applies to qkz only");
  for (std::uint32_t p : c.primes) {
    if (!is_prime(p) || p > kMaxPrime) prime_error(*info, std::to_string(p) + " is not a prime <= " + std::to_string(kMaxPrime));
    if (p == 2 && c.model != "pseudo-pencil") prime_error(*info, "p = 2 is excluded");
    if (c.model == "gaudin-sn" && c.n % p == 0) prime_error(*info, "p divides n");
    if (c.model == "qkz") {
      std::uint32_t ell = c.ell ? c.ell : default_ell(p);
      if (!is_prime(ell) || ell > (1u << 30)) throw ConfigError("--ell must be a prime below 2^30");
      if ((ell - 1) % p) prime_error(*info, "p = " + std::to_string(p) + " does not divide ell - 1 = " + std::to_string(ell - 1));
    }
  }
  if (c.samples > 100000) throw ConfigError("--samples is capped at 100000");
  return c;
}

std::size_t RunReport::passed() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.pass;
  for (const auto& k : checks) n += k.pass;
  return n;
}
std::size_t RunReport::failed() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += !s.pass && s.resamples < kMaxResamples;
  for (const auto& k : checks) n += !k.pass;
  return n;
}
std::size_t VerificationReport::passed() const {
  std::size_t n = 0;
  for (const auto& r : runs) n += r.passed();
  return n;
}
std::size_t VerificationReport::failed() const {
  std::size_t n = 0;
  for (const auto& r : runs) n += r.failed();
  return n;
}
bool VerificationReport::degenerate() const {
  return std::any_of(runs.begin(), runs.end(), [](const RunReport& r) { return r.degenerate; });
}
int VerificationReport::exit_code() const {
  if (failed()) return kExitFail;
  if (degenerate()) return kExitDegenerate;
  return kExitPass;
}

VerificationReport verify_model(const HarnessConfig& config) {
  VerificationReport r;
  r.config = resolve_config(config);
  if (!r.config.assignments.empty()) throw ConfigError("variable assignments apply to compute only");
  // Primes run in order; parallelism lives inside each run.
  for (std::uint32_t p : r.config.primes) r.runs.push_back(verify_at(r.config, p));
  return r;
}

ComputeResult compute_model(const HarnessConfig& config) {
  ComputeResult out;
  out.config = resolve_config(config);
  const HarnessConfig& c = out.config;
  out.p = c.primes.front();
  if (c.model == "qkz") {
    out.ell = c.ell ? c.ell : default_ell(out.p);
    Context ctx(out.ell);
    auto m = qkz_model(ctx, out.p);
    auto a = resolve_assignments(ctx, c);
    out.matrices.push_back(named("C", at_point(p_curvature_multiplicative(m.conn, 0), a)));
    out.matrices.push_back(named("target", at_point(m.target, a)));
    return out;
  }
  Context ctx(out.p);
  if (c.model == "qkz-additive") {
    auto m = qkz_additive_model(ctx);
    auto a = resolve_assignments(ctx, c);
    out.matrices.push_back(named("C", at_point(p_curvature_additive(m.conn, 0), a)));
    out.matrices.push_back(named("target", at_point(m.target, a)));
    return out;
  }
  if (c.model == "gaudin-sn") {
    auto G = gaudin_operators(ctx, c.n);
    auto a = resolve_assignments(ctx, c);
    for (std::size_t i = 0; i < G.size(); ++i) out.matrices.push_back(named("G_" + std::to_string(i + 1), at_point(G[i], a)));
    return out;
  }
  if (c.model == "cm-identity") {
    auto D = cm_operator_identity(ctx, c.n);
    auto a = resolve_assignments(ctx, c);
    for (std::size_t k = 0; k < D.size(); ++k) out.matrices.push_back(named("D_" + std::to_string(k + 1), at_point(D[k], a)));
    return out;
  }
  auto m = diff_model(ctx, c);
  auto a = resolve_assignments(ctx, c);
  for (std::size_t i = 0; i < m->conn.rank(); ++i) {
    Assignment fixed;
    for (const auto& kv : a) {
      if (kv.first != m->conn.coord(i)) fixed.push_back(kv);
    }
    RatMatrix C;
    try {
      C = curvature(m->conn, i, fixed);
    } catch (const PoleError&) {
      throw ConfigError("assignment lies on a pole");
    }
    out.matrices.push_back(named("C_" + std::to_string(i + 1), at_point(C, a)));
  }
  const char* tname = c.model == "pseudo-pencil" ? "closed_form_" : "target_";
  for (std::size_t i = 0; i < m->target.size(); ++i)
    out.matrices.push_back(named(tname + std::to_string(i + 1), at_point(m->target[i], a)));
  return out;
}

// ---------------------------------------------------------------- rendering

namespace {

using ojson = nlohmann::ordered_json;

void header_json(ojson& j, const char* command, const HarnessConfig& c) {
  j["tool"] = kToolName;
  j["version"] = tool_version();
  j["command"] = command;
  j["model"] = c.model;
  j["primes"] = c.primes;
  if (!c.reps.empty()) j["reps"] = c.reps;
  if (c.n) j["n"] = c.n;
}

void header_text(std::ostringstream& os, const char* command, const HarnessConfig& c) {
  os << "tool: " << kToolName << " " << tool_version() << "\n";
  os << "command: " << command << "\n";
  os << "model: " << c.model << "\n";
  os << "primes: ";
  for (std::size_t i = 0; i < c.primes.size(); ++i) os << (i ? "," : "") << c.primes[i];
  os << "\n";
  if (!c.reps.empty()) os << "reps: " << join_uints(c.reps) << "\n";
  if (c.n) os << "n: " << c.n << "\n";
}

const char* verdict(const SampleRecord& s) {
  if (s.resamples >= kMaxResamples) return "degenerate";
  return s.pass ? "pass" : "fail";
}

const char* overall(int code) {
  switch (code) {
    case kExitPass: return "pass";
    case kExitFail: return "fail";
    default: return "degenerate";
  }
}

void list_text(std::ostringstream& os, const char* indent, const char* key, const std::vector<std::string>& v) {
  os << indent << key << ":\n";
  for (const auto& s : v) os << indent << "  - " << s << "\n";
}

}  // namespace

std::string render_json(const VerificationReport& r) {
  ojson j;
  header_json(j, "verify", r.config);
  j["seed"] = r.config.seed;
  j["samples"] = r.config.samples;
  j["strategy"] = strategy_name(r.config.strategy);
  j["runs"] = ojson::array();
  for (const auto& run : r.runs) {
    ojson jr;
    jr["p"] = run.p;
    if (run.ell) jr["ell"] = run.ell;
    jr["checks"] = ojson::array();
    for (const auto& k : run.checks)
      jr["checks"].push_back({{"name", k.name}, {"value", k.value}, {"verdict", k.pass ? "pass" : "fail"}});
    jr["records"] = ojson::array();
    for (const auto& s : run.samples) {
      ojson js;
      js["index"] = s.index;
      js["verdict"] = verdict(s);
      ojson pt = ojson::object();
      for (const auto& [name, val] : s.point) pt[name] = val;
      js["point"] = pt;
      js["resamples"] = s.resamples;
      js["strategy"] = s.strategy;
      js["u_samples"] = s.u_samples;
      js["log2_failure_bound"] = round4(s.log2_failure_bound);
      if (!s.lhs_charpoly.empty()) {
        js["lhs_charpoly"] = s.lhs_charpoly;
        js["rhs_charpoly"] = s.rhs_charpoly;
      }
      if (!s.note.empty()) js["note"] = s.note;
      jr["records"].push_back(std::move(js));
    }
    jr["summary"] = {{"passed", run.passed()}, {"failed", run.failed()}, {"degenerate", run.degenerate}};
    j["runs"].push_back(std::move(jr));
  }
  j["summary"] = {{"passed", r.passed()},
                  {"failed", r.failed()},
                  {"degenerate", r.degenerate()},
                  {"verdict", overall(r.exit_code())}};
  return j.dump(2) + "\n";
}

std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  header_text(os, "verify", r.config);
  os << "seed: " << r.config.seed << "\n";
  os << "samples: " << r.config.samples << "\n";
  os << "strategy: " << strategy_name(r.config.strategy) << "\n";
  for (const auto& run : r.runs) {
    os << "run:\n";
    os << "  p: " << run.p << "\n";
    if (run.ell) os << "  ell: " << run.ell << "\n";
    for (const auto& k : run.checks)
      os << "  check " << k.name << ": " << k.value << " [" << (k.pass ? "pass" : "fail") << "]\n";
    for (const auto& s : run.samples) {
      os << "  record " << s.index << ": " << verdict(s);
      for (std::size_t i = 0; i < s.point.size(); ++i)
        os << (i ? "," : " point=") << s.point[i].first << "=" << s.point[i].second;
      os << " resamples=" << s.resamples;
      if (!s.strategy.empty()) os << " strategy=" << s.strategy;
      if (s.u_samples) os << " u_samples=" << s.u_samples << " log2_bound=" << fmt_bound(s.log2_failure_bound);
      os << "\n";
      if (!s.note.empty()) os << "    note: " << s.note << "\n";
      if (!s.lhs_charpoly.empty()) {
        list_text(os, "    ", "lhs_charpoly", s.lhs_charpoly);
        list_text(os, "    ", "rhs_charpoly", s.rhs_charpoly);
      }
    }
    os << "  summary: passed=" << run.passed() << " failed=" << run.failed()
       << " degenerate=" << (run.degenerate ? "true" : "false") << "\n";
  }
  os << "summary: passed=" << r.passed() << " failed=" << r.failed()
     << " degenerate=" << (r.degenerate() ? "true" : "false") << " verdict=" << overall(r.exit_code()) << "\n";
  return os.str();
}

std::string render_json(const ComputeResult& r) {
  ojson j;
  header_json(j, "compute", r.config);
  j["p"] = r.p;
  if (r.ell) j["ell"] = r.ell;
  ojson a = ojson::object();
  for (const auto& [name, val] : r.config.assignments) a[name] = val;
  j["assignments"] = a;
  j["matrices"] = ojson::array();
  for (const auto& m : r.matrices) j["matrices"].push_back({{"name", m.name}, {"rows", m.rows}});
  return j.dump(2) + "\n";
}

std::string render_text(const ComputeResult& r) {
  std::ostringstream os;
  header_text(os, "compute", r.config);
  os << "p: " << r.p << "\n";
  if (r.ell) os << "ell: " << r.ell << "\n";
  for (const auto& [name, val] : r.config.assignments) os << "set " << name << " = " << val << "\n";
  for (const auto& m : r.matrices) {
    os << m.name << ":\n";
    for (const auto& row : m.rows) {
      os << "  [";
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j];
      os << "]\n";
    }
  }
  return os.str();
}

}  // namespace pcurv
