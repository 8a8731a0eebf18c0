// Copyright 2026 The homexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>

#include "homexpr/circuit.hpp"
#include "homexpr/design.hpp"
#include "homexpr/errors.hpp"
#include "homexpr/expressibility.hpp"
#include "homexpr/haar.hpp"
#include "homexpr/io.hpp"
#include "homexpr/parallel.hpp"
#include "homexpr/stats.hpp"
#include "homexpr/symmetry.hpp"
#include "homexpr/version.hpp"

namespace homexpr::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

// A flag value that cannot be used. The message always starts with the flag.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& flag, const std::string& why)
      : std::runtime_error(flag + ": " + why) {}
};

// --------------------------------------------------------------------------
// Flag resolution.

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t value) {
  if (flag->count() > 0) return value;
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view text(env);
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(kSeedEnv, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return seed;
}

struct ResolvedCircuit {
  CircuitAnsatz ansatz;
  Json spec;  // builtin name, or the full circuit description
};

ResolvedCircuit resolve_circuit(const std::string& value) {
  try {
    return {builtin_circuit(value), value};
  } catch (const InvalidArgument&) {
    // not a builtin; try the filesystem
  }
  if (!fs::is_regular_file(value)) {
    throw ConfigError("--circuit", "'" + value + "' is neither a builtin circuit nor a file");
  }
  try {
    CircuitAnsatz ansatz = io::circuit_from_json(io::read_json_file(value));
    Json spec = io::circuit_to_json(ansatz);
    return {std::move(ansatz), std::move(spec)};
  } catch (const GuardError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("--circuit", e.what());
  }
}

struct ResolvedGroup {
  SymmetryGroup group;
  Json spec;
};

ResolvedGroup resolve_group(const std::string& value, int dim) {
  try {
    if (!fs::is_regular_file(value)) return {builtin_group(value, dim), value};
    SymmetryGroup group = io::group_from_json(io::read_json_file(value));
    if (group.dim() != dim) {
      throw ConfigError("--group", "group acts on dimension " + std::to_string(group.dim()) +
                                       " but the problem has dimension " + std::to_string(dim));
    }
    Json spec = io::group_to_json(group);
    return {std::move(group), std::move(spec)};
  } catch (const GuardError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("--group", e.what());
  }
}

StateEnsemble resolve_ensemble(const std::string& path) {
  try {
    return io::ensemble_from_json(io::read_json_file(path));
  } catch (const GuardError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("--ensemble", e.what());
  }
}

void require_positive(const char* flag, std::uint64_t v) {
  if (v == 0) throw ConfigError(flag, "must be positive");
}

// --------------------------------------------------------------------------
// Output plumbing.

Json make_manifest(const std::string& command, Json config, std::uint64_t seed,
                   const std::vector<fs::path>& outputs) {
  Json names = Json::array();
  for (const auto& p : outputs) names.push_back(p.filename().string());
  return {{"command", command},
          {"config", std::move(config)},
          {"seed", seed},
          {"version", kVersion},
          {"outputs", std::move(names)}};
}

void write_json(const fs::path& path, const Json& doc) {
  try {
    io::write_text_file(path, doc.dump(2) + "\n");
  } catch (const Error& e) {
    throw ConfigError("--out", e.what());
  }
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Wall time never reaches a result file; it would break byte-identity.
void report_time(std::ostream& err, const std::string& command, const Stopwatch& watch) {
  err << command << ": finished in " << fixed(watch.seconds(), 2) << " s\n";
}

// --------------------------------------------------------------------------
// expressibility

struct ExpressibilityArgs {
  std::string circuit;
  std::string group = "identity";
  std::uint64_t haar_samples = ExpressibilityConfig{}.haar_samples;
  std::uint64_t theta_samples = ExpressibilityConfig{}.theta_samples;
  int refine_iters = ExpressibilityConfig{}.refine_iters;
  double refine_shrink = ExpressibilityConfig{}.refine_shrink;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  CLI::Option* seed_opt = nullptr;
};

int cmd_expressibility(const ExpressibilityArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch watch;
  const std::uint64_t seed = resolve_seed(a.seed_opt, a.seed);
  const ResolvedCircuit circuit = resolve_circuit(a.circuit);
  const ResolvedGroup group = resolve_group(a.group, circuit.ansatz.dim());
  require_positive("--haar-samples", a.haar_samples);
  require_positive("--theta-samples", a.theta_samples);
  if (a.refine_iters < 0) throw ConfigError("--refine-iters", "must be non-negative");
  if (!(a.refine_shrink > 0.0 && a.refine_shrink < 1.0)) {
    throw ConfigError("--refine-shrink", "must lie strictly between 0 and 1");
  }

  ExpressibilityConfig cfg;
  cfg.haar_samples = a.haar_samples;
  cfg.theta_samples = a.theta_samples;
  cfg.refine_iters = a.refine_iters;
  cfg.refine_shrink = a.refine_shrink;
  cfg.seed = seed;
  cfg.threads = a.threads;

  ExpressibilityReport report;
  try {
    report = estimate_expressibility(circuit.ansatz, group.group, cfg);
  } catch (const GuardError& e) {
    throw GuardError(std::string("--haar-samples/--theta-samples: ") + e.what());
  }

  out << "E[" << circuit.ansatz.label() << " | " << group.group.label()
      << "] = " << fixed(report.estimate) << " +/- " << fixed(report.std_error) << "\n";

  if (!a.out.empty()) {
    Json doc = io::report_to_json(report);
    const Json config = {{"circuit", circuit.spec},
                         {"group", group.spec},
                         {"haar-samples", a.haar_samples},
                         {"theta-samples", a.theta_samples},
                         {"refine-iters", a.refine_iters},
                         {"refine-shrink", a.refine_shrink}};
    doc["manifest"] = make_manifest("expressibility", config, seed, {a.out});
    write_json(a.out, doc);
  }
  report_time(err, "expressibility", watch);
  return kExitOk;
}

// --------------------------------------------------------------------------
// sim-expr

struct SimExprArgs {
  std::string circuit;
  std::uint64_t pairs = 5000;
  int bins = 75;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  CLI::Option* seed_opt = nullptr;
};

int cmd_sim_expr(const SimExprArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch watch;
  const std::uint64_t seed = resolve_seed(a.seed_opt, a.seed);
  const ResolvedCircuit circuit = resolve_circuit(a.circuit);
  require_positive("--pairs", a.pairs);
  if (a.bins < 2) throw ConfigError("--bins", "must be at least 2");

  const SimExpressibility result =
      sim_expressibility_detailed(circuit.ansatz, a.pairs, a.bins, RandomSource(seed, 0), a.threads);
  out << "KL[" << circuit.ansatz.label() << "] = " << fixed(result.kl) << "\n";

  if (!a.out.empty()) {
    const fs::path csv = a.out;
    try {
      io::write_text_file(csv, io::histogram_to_csv(result.histogram));
    } catch (const Error& e) {
      throw ConfigError("--out", e.what());
    }
    // CSV has no room for metadata, so the manifest travels beside it.
    const Json config = {{"circuit", circuit.spec}, {"pairs", a.pairs}, {"bins", a.bins}};
    Json manifest = make_manifest("sim-expr", config, seed, {csv});
    manifest["kl"] = result.kl;
    write_json(csv.string() + ".manifest.json", manifest);
  }
  report_time(err, "sim-expr", watch);
  return kExitOk;
}

// --------------------------------------------------------------------------
// design-check

struct DesignCheckArgs {
  std::string ensemble;
  std::string group = "identity";
  std::string policy = "canonical";
  int t = 2;
  double epsilon = 0.05;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  CLI::Option* seed_opt = nullptr;
};

RepresentativePolicy resolve_policy(const std::string& name, const StateEnsemble& ens) {
  if (name == "canonical") return RepresentativePolicy::canonical();
  if (name == "uniform-orbit") return RepresentativePolicy::uniform_orbit();
  if (name == "ensemble-matched") return RepresentativePolicy::ensemble_matched(ens);
  throw ConfigError("--policy", "unknown policy '" + name +
                                    "' (canonical, uniform-orbit, ensemble-matched)");
}

int cmd_design_check(const DesignCheckArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch watch;
  const std::uint64_t seed = resolve_seed(a.seed_opt, a.seed);
  const StateEnsemble ens = resolve_ensemble(a.ensemble);
  const ResolvedGroup group = resolve_group(a.group, ens.dim());
  const RepresentativePolicy policy = resolve_policy(a.policy, ens);
  if (a.t < 1) throw ConfigError("--t", "must be at least 1");
  if (!(a.epsilon > 0.0)) throw ConfigError("--epsilon", "must be positive");
  require_positive("--samples", a.samples);

  DesignCheckResult result;
  double fp = 0.0;
  try {
    result = design_check(ens, group.group, policy, a.t, a.epsilon, a.samples,
                          RandomSource(seed, 0), a.threads);
    fp = frame_potential(ens, a.t);
  } catch (const GuardError& e) {
    throw GuardError(std::string("--t: ") + e.what());
  }
  const double haar_fp = 1.0 / binomial(ens.dim() + a.t - 1, a.t);

  out << "distance        = " << fixed(result.distance) << "\n"
      << "mc_error        = " << fixed(result.mc_error) << "\n"
      << "epsilon         = " << fixed(a.epsilon) << "\n"
      << "frame_potential = " << fixed(fp, 12) << " (Haar " << fixed(haar_fp, 12) << ")\n"
      << (result.pass ? "PASS" : "FAIL") << "\n";

  if (!a.out.empty()) {
    const Json config = {{"ensemble", io::ensemble_to_json(ens)},
                         {"group", group.spec},
                         {"policy", a.policy},
                         {"t", a.t},
                         {"epsilon", a.epsilon},
                         {"samples", a.samples}};
    Json doc = {{"distance", result.distance},
                {"mc_error", result.mc_error},
                {"pass", result.pass},
                {"frame_potential", fp},
                {"haar_frame_potential", haar_fp}};
    doc["manifest"] = make_manifest("design-check", config, seed, {a.out});
    write_json(a.out, doc);
  }
  report_time(err, "design-check", watch);
  return result.pass ? kExitOk : kExitFail;
}

// --------------------------------------------------------------------------
// haar-test

struct HaarTestArgs {
  int dim = 4;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  CLI::Option* seed_opt = nullptr;
};

struct Diagnostic {
  std::string name;
  double statistic;
  double expected;
  double tolerance;
  bool pass;
};

std::vector<Diagnostic> haar_diagnostics(int d, std::uint64_t n, std::uint64_t seed,
                                         unsigned threads) {
  const RandomSource base(seed, 0);
  RandomSource w_stream(seed, 1);
  const UnitaryMatrix w = sample_haar_unitary(d, w_stream);

  std::vector<double> x(n), f(n), y(n), phase(n);
  parallel_for(n, threads, [&](std::size_t i) {
    RandomSource s = base.substream(i);
    const UnitaryMatrix u = sample_haar_unitary(d, s);
    const UnitaryMatrix v = sample_haar_unitary(d, s);
    x[i] = std::norm(u.matrix()(0, 0));
    Complex overlap{0.0, 0.0};
    for (int r = 0; r < d; ++r) overlap += std::conj(u.matrix()(r, 0)) * v.matrix()(r, 0);
    f[i] = std::norm(overlap);
    Complex wu{0.0, 0.0};
    for (int r = 0; r < d; ++r) wu += w.matrix()(0, r) * u.matrix()(r, 0);
    y[i] = std::norm(wu);
    double p = std::arg(u.matrix()(0, 0)) / (2.0 * std::numbers::pi);
    phase[i] = p < 0.0 ? p + 1.0 : p;
  });

  const double root_n = std::sqrt(static_cast<double>(n));
  const double ks_tol = std::max(0.01, 1.95 / root_n);
  std::vector<Diagnostic> out;

  if (d == 1) {
    const double ks = ks_statistic(phase, [](double p) { return std::clamp(p, 0.0, 1.0); });
    out.push_back({"phase-uniformity KS", ks, 0.0, ks_tol, ks < ks_tol});
    return out;
  }

  const MeanEstimate mx = mean_estimate(x);
  const double sd = std::sqrt((d - 1.0) / (static_cast<double>(d) * d * (d + 1.0)));
  const double moment_tol = std::max(0.01, 5.0 * sd / root_n);
  out.push_back({"E|U00|^2", mx.mean, 1.0 / d, moment_tol, std::abs(mx.mean - 1.0 / d) <= moment_tol});

  const auto law = [d](double v) { return haar_fidelity_cdf(v, d); };
  const double ks = ks_statistic(f, law);
  out.push_back({"fidelity KS", ks, 0.0, ks_tol, ks < ks_tol});

  std::vector<double> shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = y[i] - x[i];
  const MeanEstimate ms = mean_estimate(shift);
  const double shift_tol = 3.0 * ms.std_error + 1e-12;
  out.push_back({"left-invariance shift", ms.mean, 0.0, shift_tol, std::abs(ms.mean) <= shift_tol});
  const double ks_w = ks_statistic(y, law);
  out.push_back({"left-invariance KS", ks_w, 0.0, ks_tol, ks_w < ks_tol});
  return out;
}

int cmd_haar_test(const HaarTestArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch watch;
  const std::uint64_t seed = resolve_seed(a.seed_opt, a.seed);
  if (a.dim < 1) throw ConfigError("--dim", "must be positive");
  require_positive("--samples", a.samples);
  if (a.dim > kMaxUnitaryDim) {
    throw GuardError("--dim: " + std::to_string(a.dim) + " exceeds the limit of " +
                     std::to_string(kMaxUnitaryDim));
  }

  const std::vector<Diagnostic> diags = haar_diagnostics(a.dim, a.samples, seed, a.threads);
  bool pass = true;
  Json rows = Json::array();
  for (const auto& dg : diags) {
    pass = pass && dg.pass;
    out << std::left << std::setw(24) << dg.name << std::right << fixed(dg.statistic)
        << "  expected " << fixed(dg.expected) << "  tol " << fixed(dg.tolerance) << "  "
        << (dg.pass ? "PASS" : "FAIL") << "\n";
    rows.push_back({{"name", dg.name},
                    {"statistic", dg.statistic},
                    {"expected", dg.expected},
                    {"tolerance", dg.tolerance},
                    {"pass", dg.pass}});
  }
  out << (pass ? "PASS" : "FAIL") << "\n";

  if (!a.out.empty()) {
    Json doc = {{"diagnostics", std::move(rows)}, {"pass", pass}};
    doc["manifest"] =
        make_manifest("haar-test", {{"dim", a.dim}, {"samples", a.samples}}, seed, {a.out});
    write_json(a.out, doc);
  }
  report_time(err, "haar-test", watch);
  return pass ? kExitOk : kExitFail;
}

// --------------------------------------------------------------------------
// reproduce-paper-table

struct TableArgs {
  std::uint64_t haar_samples = ExpressibilityConfig{}.haar_samples;
  std::uint64_t theta_samples = ExpressibilityConfig{}.theta_samples;
  int refine_iters = ExpressibilityConfig{}.refine_iters;
  double refine_shrink = ExpressibilityConfig{}.refine_shrink;
  std::uint64_t pairs = 5000;
  int bins = 75;
  std::uint64_t seed = 7;
  unsigned threads = 1;
  std::string out;
};

int cmd_reproduce_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch watch;
  require_positive("--haar-samples", a.haar_samples);
  require_positive("--theta-samples", a.theta_samples);
  require_positive("--pairs", a.pairs);
  if (a.refine_iters < 0) throw ConfigError("--refine-iters", "must be non-negative");
  if (!(a.refine_shrink > 0.0 && a.refine_shrink < 1.0)) {
    throw ConfigError("--refine-shrink", "must lie strictly between 0 and 1");
  }
  if (a.bins < 2) throw ConfigError("--bins", "must be at least 2");

  ExpressibilityConfig cfg;
  cfg.haar_samples = a.haar_samples;
  cfg.theta_samples = a.theta_samples;
  cfg.refine_iters = a.refine_iters;
  cfg.refine_shrink = a.refine_shrink;
  cfg.seed = a.seed;
  cfg.threads = a.threads;

  Json rows = Json::array();
  out << std::left << std::setw(18) << "circuit" << std::setw(26) << "E[U(4)/{I,SWAP}]"
      << "KL (" << a.bins << " bins, " << a.pairs << " pairs)\n";
  for (const char* name : {"paper-circuit-1", "paper-circuit-2"}) {
    const CircuitAnsatz ansatz = builtin_circuit(name);
    const SymmetryGroup swap = builtin_group("swap-2q", ansatz.dim());
    const ExpressibilityReport r = estimate_expressibility(ansatz, swap, cfg);
    const double kl = sim_expressibility_detailed(ansatz, a.pairs, a.bins,
                                                  RandomSource(a.seed, 0), a.threads)
                          .kl;
    out << std::left << std::setw(18) << name << std::setw(26)
        << (fixed(r.estimate, 4) + " +/- " + fixed(r.std_error, 4)) << fixed(kl, 4) << "\n";
    rows.push_back({{"circuit", name},
                    {"estimate", r.estimate},
                    {"std_error", r.std_error},
                    {"kl", kl}});
  }

  if (!a.out.empty()) {
    Json doc = {{"rows", std::move(rows)}};
    const Json config = {{"haar-samples", a.haar_samples}, {"theta-samples", a.theta_samples},
                         {"refine-iters", a.refine_iters}, {"refine-shrink", a.refine_shrink},
                         {"pairs", a.pairs},               {"bins", a.bins}};
    doc["manifest"] = make_manifest("reproduce-paper-table", config, a.seed, {a.out});
    write_json(a.out, doc);
  }
  report_time(err, "reproduce-paper-table", watch);
  return kExitOk;
}

// --------------------------------------------------------------------------
// --verify-manifest

std::optional<std::string> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

fs::path fresh_temp_dir() {
  std::random_device rd;
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::ostringstream name;
    name << "homexpr-verify-" << std::hex << rd() << rd();
    const fs::path dir = fs::temp_directory_path() / name.str();
    if (fs::create_directory(dir)) return dir;
  }
  throw ConfigError("--verify-manifest", "cannot create a scratch directory");
}

int verify_manifest(const fs::path& file, std::ostream& out, std::ostream& err) {
  Json doc;
  try {
    doc = io::read_json_file(file);
  } catch (const Error& e) {
    throw ConfigError("--verify-manifest", e.what());
  }
  const Json* m = nullptr;
  if (doc.is_object() && doc.contains("manifest")) {
    m = &doc["manifest"];
  } else if (doc.is_object() && doc.contains("command")) {
    m = &doc;
  }
  if (m == nullptr || !m->is_object()) {
    throw ConfigError("--verify-manifest", "'" + file.string() + "' carries no manifest");
  }
  const Json& manifest = *m;
  if (!manifest.contains("command") || !manifest["command"].is_string() ||
      !manifest.contains("config") || !manifest["config"].is_object() ||
      !manifest.contains("seed") || !manifest["seed"].is_number_unsigned() ||
      !manifest.contains("outputs") || !manifest["outputs"].is_array() ||
      manifest["outputs"].empty()) {
    throw ConfigError("--verify-manifest", "manifest is missing command, config, seed or outputs");
  }
  if (manifest.value("version", std::string()) != kVersion) {
    err << "warning: manifest written by version " << manifest.value("version", std::string("?"))
        << ", running " << kVersion << "\n";
  }

  const fs::path scratch = fresh_temp_dir();
  struct Cleanup {
    fs::path dir;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  } cleanup{scratch};

  std::vector<std::string> args{manifest["command"].get<std::string>()};
  for (const auto& [key, value] : manifest["config"].items()) {
    args.push_back("--" + key);
    if (value.is_structured()) {
      const fs::path side = scratch / ("config-" + key + ".json");
      io::write_text_file(side, value.dump());
      args.push_back(side.string());
    } else if (value.is_string()) {
      args.push_back(value.get<std::string>());
    } else {
      args.push_back(value.dump());
    }
  }
  args.push_back("--seed");
  args.push_back(std::to_string(manifest["seed"].get<std::uint64_t>()));
  const std::string primary = manifest["outputs"][0].get<std::string>();
  args.push_back("--out");
  args.push_back((scratch / primary).string());

  std::ostringstream sink;
  const int code = run(args, sink, err);
  if (code != kExitOk && code != kExitFail) {
    err << "verify: re-run exited with code " << code << "\n";
    return code;
  }

  std::set<std::string> names{file.filename().string()};
  for (const auto& o : manifest["outputs"]) names.insert(o.get<std::string>());
  const fs::path dir = file.parent_path().empty() ? fs::path(".") : file.parent_path();
  bool all_match = true;
  for (const auto& name : names) {
    const auto original = slurp(dir / name);
    const auto rerun = slurp(scratch / name);
    const bool match = original && rerun && *original == *rerun;
    all_match = all_match && match;
    out << name << ": " << (match ? "MATCH" : (original ? "MISMATCH" : "MISSING")) << "\n";
  }
  out << (all_match ? "manifest verified" : "manifest NOT reproduced") << "\n";
  return all_match ? kExitOk : kExitFail;
}

// --------------------------------------------------------------------------

void add_seed(CLI::App* sub, std::uint64_t& seed, CLI::Option*& opt) {
  opt = sub->add_option("--seed", seed,
                        std::string("Master seed (default: $") + kSeedEnv + " or 0)");
}

void add_threads(CLI::App* sub, unsigned& threads) {
  sub->add_option("--threads", threads, "Worker threads, 0 = all cores; never changes results")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"homexpr: Haar sampling on U(d)/H, homogeneous-space designs and "
               "symmetry-aware expressibility"};
  app.name("homexpr");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string verify_path;
  app.add_option("--verify-manifest", verify_path,
                 "Re-run the command recorded in FILE and compare outputs byte for byte");

  ExpressibilityArgs ex;
  auto* ex_cmd = app.add_subcommand("expressibility", "Estimate the quotient expressibility");
  ex_cmd->add_option("--circuit", ex.circuit, "Builtin circuit name or JSON file")->required();
  ex_cmd->add_option("--group", ex.group, "identity | swap-2q | pauli-x@<q> | JSON file")
      ->capture_default_str();
  ex_cmd->add_option("--haar-samples", ex.haar_samples, "Haar targets M")->capture_default_str();
  ex_cmd->add_option("--theta-samples", ex.theta_samples, "Parameter draws N per target")
      ->capture_default_str();
  ex_cmd->add_option("--refine-iters", ex.refine_iters, "Coordinate refinement passes")
      ->capture_default_str();
  ex_cmd->add_option("--refine-shrink", ex.refine_shrink, "Window shrink per pass")
      ->capture_default_str();
  add_seed(ex_cmd, ex.seed, ex.seed_opt);
  add_threads(ex_cmd, ex.threads);
  ex_cmd->add_option("--out", ex.out, "Report JSON path");

  SimExprArgs se;
  auto* se_cmd = app.add_subcommand("sim-expr", "KL expressibility against the Haar fidelity law");
  se_cmd->add_option("--circuit", se.circuit, "Builtin circuit name or JSON file")->required();
  se_cmd->add_option("--pairs", se.pairs, "Fidelity pairs")->capture_default_str();
  se_cmd->add_option("--bins", se.bins, "Histogram bins (>= 2)")->capture_default_str();
  add_seed(se_cmd, se.seed, se.seed_opt);
  add_threads(se_cmd, se.threads);
  se_cmd->add_option("--out", se.out, "Histogram CSV path (manifest goes to <out>.manifest.json)");

  DesignCheckArgs dc;
  auto* dc_cmd = app.add_subcommand("design-check", "Test an ensemble as a quotient t-design");
  dc_cmd->add_option("--ensemble", dc.ensemble, "Ensemble JSON file")->required();
  dc_cmd->add_option("--group", dc.group, "identity | swap-2q | pauli-x@<q> | JSON file")
      ->capture_default_str();
  dc_cmd->add_option("--policy", dc.policy, "canonical | uniform-orbit | ensemble-matched")
      ->capture_default_str();
  dc_cmd->add_option("--t", dc.t, "Moment order")->capture_default_str();
  dc_cmd->add_option("--epsilon", dc.epsilon, "Accepted operator-norm distance")
      ->capture_default_str();
  dc_cmd->add_option("--samples", dc.samples, "Monte Carlo samples")->capture_default_str();
  add_seed(dc_cmd, dc.seed, dc.seed_opt);
  add_threads(dc_cmd, dc.threads);
  dc_cmd->add_option("--out", dc.out, "Result JSON path");

  HaarTestArgs ht;
  auto* ht_cmd = app.add_subcommand("haar-test", "Statistical self-test of the Haar sampler");
  ht_cmd->add_option("--dim", ht.dim, "Unitary dimension")->capture_default_str();
  ht_cmd->add_option("--samples", ht.samples, "Number of samples")->capture_default_str();
  add_seed(ht_cmd, ht.seed, ht.seed_opt);
  add_threads(ht_cmd, ht.threads);
  ht_cmd->add_option("--out", ht.out, "Result JSON path");

  TableArgs tb;
  auto* tb_cmd = app.add_subcommand(
      "reproduce-paper-table", "Both reference circuits under both metrics at pinned seeds");
  tb_cmd->add_option("--haar-samples", tb.haar_samples, "Haar targets M")->capture_default_str();
  tb_cmd->add_option("--theta-samples", tb.theta_samples, "Parameter draws N per target")
      ->capture_default_str();
  tb_cmd->add_option("--refine-iters", tb.refine_iters, "Coordinate refinement passes")
      ->capture_default_str();
  tb_cmd->add_option("--refine-shrink", tb.refine_shrink, "Window shrink per pass")
      ->capture_default_str();
  tb_cmd->add_option("--pairs", tb.pairs, "Fidelity pairs for the KL column")->capture_default_str();
  tb_cmd->add_option("--bins", tb.bins, "Histogram bins for the KL column")->capture_default_str();
  tb_cmd->add_option("--seed", tb.seed, "Pinned seed")->capture_default_str();
  add_threads(tb_cmd, tb.threads);
  tb_cmd->add_option("--out", tb.out, "Table JSON path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitConfig;
  }

  try {
    if (!verify_path.empty()) {
      if (!app.get_subcommands().empty()) {
        throw ConfigError("--verify-manifest", "cannot be combined with a subcommand");
      }
      return verify_manifest(verify_path, out, err);
    }
    if (app.got_subcommand(ex_cmd)) return cmd_expressibility(ex, out, err);
    if (app.got_subcommand(se_cmd)) return cmd_sim_expr(se, out, err);
    if (app.got_subcommand(dc_cmd)) return cmd_design_check(dc, out, err);
    if (app.got_subcommand(ht_cmd)) return cmd_haar_test(ht, out, err);
    if (app.got_subcommand(tb_cmd)) return cmd_reproduce_table(tb, out, err);
    err << "error: a subcommand or --verify-manifest is required\n\n" << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GuardError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitGuard;
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace homexpr::cli
