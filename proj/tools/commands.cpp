#include "commands.hpp"

#include "lindgeo/acceptance.hpp"
#include "lindgeo/channel.hpp"
#include "lindgeo/dissipator.hpp"
#include "lindgeo/errors.hpp"
#include "lindgeo/parallel.hpp"
#include "lindgeo/singlet_optimizer.hpp"
#include "lindgeo/steady_state.hpp"
#include "lindgeo/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#ifndef LINDGEO_BUILD_DESCRIBE
#define LINDGEO_BUILD_DESCRIBE "unknown"
#endif

namespace lindgeo::cli {
namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& flag) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(value))
    throw UsageError("malformed number '" + text + "' for " + flag);
  return value;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) values.push_back(parse_number(item, flag));
  if (values.empty() || (!text.empty() && text.back() == ','))
    throw UsageError("malformed numeric list '" + text + "' for " + flag);
  return values;
}

Triple parse_triple(const std::string& text, const std::string& flag) {
  auto v = parse_list(text, flag);
  if (v.size() != 3) throw UsageError(flag + " expects three comma-separated numbers, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

json triple_json(const Triple& t) { return json::array({t[0], t[1], t[2]}); }

json coherence_json(const TwoQubitCoherence& c) {
  json a = json::array();
  for (int m = 0; m < 15; ++m) a.push_back(c.c(m));
  return a;
}

json hamiltonian_json(const Hamiltonian15& h) {
  json o = json::object();
  for (int m = 0; m < 15; ++m) o[Hamiltonian15::label(m)] = h.d(m);
  return o;
}

json matrix_json(const Eigen::Matrix2cd& a) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back(json::array({a(i, j).real(), a(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Hamiltonian15 read_hamiltonian(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read Hamiltonian file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("Hamiltonian file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("Hamiltonian file must hold an object of label: number pairs");
  std::map<std::string, double> coefficients;
  for (auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw UsageError("Hamiltonian coefficient '" + key + "' is not a number");
    coefficients[key] = value.get<double>();
  }
  try {
    return Hamiltonian15::from_labels(coefficients);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

// Everything a command produces: the data document plus the run record.
struct Report {
  std::string body;
  json config = json::object();
  std::optional<std::uint64_t> seed;
  int exit_code = kOk;
};

struct Common {
  std::string output;
  std::string format;
  unsigned threads = 0;
};

json run_record(const std::string& command, const Report& r, unsigned threads, double seconds) {
  json meta;
  meta["tool"] = "lindgeo";
  meta["version"] = kVersion;
  meta["build"] = LINDGEO_BUILD_DESCRIBE;
  meta["command"] = command;
  meta["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  meta["config"] = r.config;
  meta["threads"] = threads == 0 ? default_threads() : threads;
  meta["wall_time_s"] = seconds;
  return meta;
}

json data_meta(const std::string& command, const Report& r) {
  json meta;
  meta["tool"] = "lindgeo";
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  meta["config"] = r.config;
  return meta;
}

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string csv() const {
    std::string out;
    append_row(out, columns_);
    for (const auto& r : rows_) append_row(out, r);
    return out;
  }

  // Cells that parse as numbers are emitted as JSON numbers.
  json to_json() const {
    json rows = json::array();
    for (const auto& r : rows_) {
      json row = json::array();
      for (const auto& cell : r) {
        double v = 0.0;
        auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec == std::errc() && res.ptr == cell.data() + cell.size())
          row.push_back(v);
        else
          row.push_back(cell);
      }
      rows.push_back(row);
    }
    return json{{"columns", columns_}, {"rows", rows}};
  }

 private:
  static void append_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void finish_table(Report& r, const Table& t, const Common& c, const std::string& command) {
  if (c.format == "json") {
    json doc;
    doc["meta"] = data_meta(command, r);
    auto data = t.to_json();
    doc["columns"] = data["columns"];
    doc["rows"] = data["rows"];
    r.body = doc.dump(2) + "\n";
  } else {
    r.body = t.csv();
  }
}

// Text reports list "key: value" lines; JSON reports nest the same fields.
void finish_record(Report& r, const json& result, const Common& c, const std::string& command) {
  if (c.format == "json") {
    json doc;
    doc["meta"] = data_meta(command, r);
    doc["result"] = result;
    r.body = doc.dump(2) + "\n";
    return;
  }
  std::string out;
  std::function<void(const std::string&, const json&)> emit = [&](const std::string& key, const json& v) {
    if (v.is_object()) {
      for (auto& [k, sub] : v.items()) emit(key.empty() ? k : key + "." + k, sub);
    } else if (v.is_number_float()) {
      out += key + ": " + number(v.get<double>()) + "\n";
    } else if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].is_number_float() ? number(v[i].get<double>()) : v[i].dump();
      }
      out += key + ": [" + s + "]\n";
    } else if (v.is_string()) {
      out += key + ": " + v.get<std::string>() + "\n";
    } else {
      out += key + ": " + v.dump() + "\n";
    }
  };
  emit("", result);
  out += "version: " + std::string(kVersion) + "\n";
  if (r.seed) out += "seed: " + std::to_string(*r.seed) + "\n";
  r.body = out;
}

// --- dissipator ------------------------------------------------------------

struct DissipatorArgs {
  std::string q = "0,0,0";
  std::string t = "0,0,0";
  double tau = 1.0;
};

CanonicalDissipator read_dissipator(const DissipatorArgs& a) {
  return {parse_triple(a.q, "--q"), parse_triple(a.t, "--t")};
}

json verdict_json(const LindbladVerdict& v) {
  return json{{"verdict", v.valid ? (v.boundary ? "boundary" : "valid") : (v.boundary ? "boundary" : "invalid")},
              {"valid", v.valid},
              {"boundary", v.boundary},
              {"q_min", v.q_min},
              {"margin", v.margin},
              {"ellipsoid", v.ellipsoid}};
}

Report dissipator_check(const DissipatorArgs& a, const Common& c) {
  Report r;
  auto d = read_dissipator(a);
  r.config = {{"q", triple_json(d.q)}, {"t", triple_json(d.t)}};
  auto verdict = is_lindblad(d);
  auto spec = gks_spectrum(d);
  auto cls = classify(d);
  json result = verdict_json(verdict);
  result["spectrum"] = json{{"eigenvalues", triple_json(spec.eigenvalues)},
                            {"charpoly", json::array({spec.charpoly[0], spec.charpoly[1], spec.charpoly[2],
                                                      spec.charpoly[3]})},
                            {"A", spec.A},
                            {"B", spec.B},
                            {"C", spec.C},
                            {"Q", spec.Q},
                            {"t2", spec.t2},
                            {"rank", spec.rank}};
  result["class"] = json{{"tag", to_string(cls.tag)}, {"gks_rank", cls.gks_rank}, {"unital", cls.unital}};
  json ops = json::array();
  if (verdict.admissible())
    for (const auto& L : extract_lindblad_operators(d)) ops.push_back(matrix_json(L));
  result["lindblad_operators"] = ops;
  finish_record(r, result, c, "dissipator check");
  if (!verdict.admissible()) r.exit_code = kDomainError;
  return r;
}

// --- channel ---------------------------------------------------------------

json channel_json(const DiagonalChannel& ch) {
  auto cpm = cpm_membership(ch);
  return json{{"lambda", triple_json(ch.lambda)},
              {"v", triple_json(ch.v)},
              {"cpm", cpm.cpm},
              {"min_choi_eigenvalue", cpm.min_choi_eigenvalue},
              {"in_tetrahedron", in_tetrahedron(ch.lambda)},
              {"in_lindblad_set", in_lindblad_set(ch)}};
}

Report channel_from_generator(const DissipatorArgs& a, const Common& c) {
  Report r;
  auto d = read_dissipator(a);
  r.config = {{"q", triple_json(d.q)}, {"t", triple_json(d.t)}, {"tau", a.tau}};
  auto verdict = is_lindblad(d);
  json result = channel_json(generator_to_channel(d, a.tau));
  result["generator"] = verdict_json(verdict);
  finish_record(r, result, c, "channel from-generator");
  if (!verdict.admissible()) r.exit_code = kDomainError;
  return r;
}

struct ChannelArgs {
  std::string lambda = "1,1,1";
  std::string v = "0,0,0";
  double tau = 1.0;
};

Report channel_to_generator(const ChannelArgs& a, const Common& c) {
  Report r;
  DiagonalChannel ch{parse_triple(a.lambda, "--lambda"), parse_triple(a.v, "--v")};
  r.config = {{"lambda", triple_json(ch.lambda)}, {"v", triple_json(ch.v)}, {"tau", a.tau}};
  auto rec = channel_to_generator(ch, a.tau);
  json result = verdict_json(rec.verdict);
  result["q"] = triple_json(rec.dissipator.q);
  result["t"] = triple_json(rec.dissipator.t);
  finish_record(r, result, c, "channel to-generator");
  if (!rec.verdict.admissible()) r.exit_code = kDomainError;
  return r;
}

// --- geometry --------------------------------------------------------------

struct SurfaceArgs {
  int grid = 48;
  std::optional<double> slice;
  std::string v = "0,0,0";
};

Report geometry_surface(const SurfaceArgs& a, SurfaceKind kind, const Common& c, const std::string& command) {
  Report r;
  SurfaceConfig cfg;
  cfg.kind = kind;
  cfg.grid = a.grid;
  cfg.slice_lambda3 = a.slice;
  if (kind == SurfaceKind::NonUnital) cfg.v = parse_triple(a.v, "--v");
  r.config = {{"grid", cfg.grid}, {"v", triple_json(cfg.v)},
              {"slice_lambda3", cfg.slice_lambda3 ? json(*cfg.slice_lambda3) : json(nullptr)}};
  Table t({"lambda1", "lambda2", "lambda3", "v1", "v2", "v3", "set"});
  for (const auto& p : sample_set_surfaces(cfg))
    t.add({number(p.lambda[0]), number(p.lambda[1]), number(p.lambda[2]), number(p.v[0]), number(p.v[1]),
           number(p.v[2]), p.set_tag});
  finish_table(r, t, c, command);
  return r;
}

struct ShiftBallArgs {
  std::string anchor = "0.5,0.5,0.5";
  std::optional<std::string> direction;
  int directions = 200;
};

// Fibonacci lattice on the unit sphere.
std::vector<Triple> sphere_directions(int n) {
  std::vector<Triple> dirs;
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    dirs.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
  }
  return dirs;
}

Report geometry_shift_ball(const ShiftBallArgs& a, const Common& c) {
  Report r;
  Triple anchor = parse_triple(a.anchor, "--anchor");
  std::vector<Triple> dirs;
  if (a.direction) {
    dirs.push_back(parse_triple(*a.direction, "--direction"));
    if (dirs[0][0] == 0.0 && dirs[0][1] == 0.0 && dirs[0][2] == 0.0) throw UsageError("--direction must be nonzero");
  } else {
    if (a.directions < 1) throw UsageError("--directions must be positive");
    dirs = sphere_directions(a.directions);
  }
  r.config = {{"anchor", triple_json(anchor)}, {"directions", static_cast<int>(dirs.size())}};
  std::vector<ShiftBallSample> samples(dirs.size());
  parallel_for(dirs.size(), c.threads, [&](std::size_t i) { samples[i] = shift_ball_sample(anchor, dirs[i]); });
  Table t({"u1", "u2", "u3", "s_lindblad", "s_cpm"});
  for (const auto& s : samples)
    t.add({number(s.direction[0]), number(s.direction[1]), number(s.direction[2]), number(s.s_max_lindblad),
           number(s.s_max_cpm)});
  finish_table(r, t, c, "geometry shift-ball");
  return r;
}

struct VolumeArgs {
  std::string region = "ratio-full";
  std::uint64_t samples = 10000000;
  std::uint64_t seed = 1;
};

Report geometry_volume(const VolumeArgs& a, const Common& c) {
  Report r;
  VolumeRegion region;
  try {
    region = volume_region_from_string(a.region);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  r.seed = a.seed;
  r.config = {{"region", to_string(region)}, {"samples", a.samples}};
  auto est = estimate_volume_fraction(region, a.samples, a.seed, c.threads);
  json result{{"region", to_string(region)},
              {"fraction", est.fraction},
              {"standard_error", est.standard_error},
              {"samples", est.samples},
              {"denominator", est.denominator}};
  finish_record(r, result, c, "geometry volume");
  return r;
}

// --- steady ----------------------------------------------------------------

struct SteadyArgs {
  DissipatorArgs dissipator;
  std::string hamiltonian;
};

Report steady_solve(const SteadyArgs& a, const Common& c) {
  Report r;
  SteadyProblem p;
  p.dissipator = read_dissipator(a.dissipator);
  if (!a.hamiltonian.empty()) p.hamiltonian = read_hamiltonian(a.hamiltonian);
  r.config = {{"q", triple_json(p.dissipator.q)},
              {"t", triple_json(p.dissipator.t)},
              {"hamiltonian", hamiltonian_json(p.hamiltonian)}};
  auto sol = steady_state(p);
  json result{{"coherence", coherence_json(sol.c)},
              {"F", singlet_fraction(sol.c)},
              {"purity", sol.c.purity()},
              {"min_eigenvalue", min_eigenvalue(sol.c.density())},
              {"unique", sol.unique},
              {"kernel_dim", sol.kernel_dim},
              {"residual", sol.residual}};
  finish_record(r, result, c, "steady solve");
  return r;
}

// --- optimize --------------------------------------------------------------

struct OptimizeArgs {
  int starts = 64;
  std::uint64_t seed = 1;
};

OptimizerOptions optimizer_options(const OptimizeArgs& a, const Common& c) {
  if (a.starts < 1) throw UsageError("--starts must be positive");
  return {a.starts, a.seed, c.threads};
}

json result_json(const OptimizationResult& res) {
  const auto& dg = res.diagnostics;
  json out{{"F", res.F}, {"q2", res.q2}, {"coherence", coherence_json(res.state)}};
  out["hamiltonian"] = res.hamiltonian ? hamiltonian_json(*res.hamiltonian) : json(nullptr);
  out["diagnostics"] = json{{"starts", dg.starts},
                            {"converged", dg.converged},
                            {"moment_residual", dg.best_residual},
                            {"kernel_residual", dg.kernel_residual},
                            {"kernel_dim", dg.kernel_dim},
                            {"min_eigenvalue", dg.min_eigenvalue},
                            {"lindblad_residual", dg.lindblad_residual}};
  return out;
}

struct FmaxArgs {
  OptimizeArgs opt;
  double q2 = 0.999;
  double q1 = 0.0;
};

Report optimize_fmax(const FmaxArgs& a, const Common& c) {
  Report r;
  auto opts = optimizer_options(a.opt, c);
  r.seed = a.opt.seed;
  r.config = {{"q1", a.q1}, {"q2", a.q2}, {"starts", a.opt.starts}};
  auto res = optimize_restricted(a.q2, opts, a.q1);
  json result = result_json(res);
  auto s = RestrictedState::from_coherence(res.state);
  auto k = restricted_kernel_residuals(s, a.q2, 1.0 / a.q2);
  result["kernel_conditions"] = json{{"first", k.first},
                                     {"xx_component", k.xx_component},
                                     {"second", k.second},
                                     {"third", k.third},
                                     {"degenerate", k.degenerate}};
  finish_record(r, result, c, "optimize fmax");
  return r;
}

struct CurveArgs {
  OptimizeArgs opt;
  std::string q2 = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,0.99,0.999,0.9999";
  bool extrapolate = false;
};

Report optimize_curve(const CurveArgs& a, const Common& c) {
  Report r;
  auto opts = optimizer_options(a.opt, c);
  auto grid = parse_list(a.q2, "--q2");
  r.seed = a.opt.seed;
  r.config = {{"q2", grid}, {"starts", a.opt.starts}, {"extrapolate", a.extrapolate}};
  Table t({"q2", "F"});
  for (double q2 : grid) t.add({number(q2), number(optimize_restricted(q2, opts).F)});
  if (a.extrapolate) t.add({number(1.0), number(extrapolate_restricted(opts).at_one)});
  finish_table(r, t, c, "optimize curve");
  return r;
}

struct NormSweepArgs {
  OptimizeArgs opt;
  std::string norms = "0,0.02,0.05,0.1,0.2";
};

Report optimize_norm_sweep(const NormSweepArgs& a, const Common& c) {
  Report r;
  auto opts = optimizer_options(a.opt, c);
  auto norms = parse_list(a.norms, "--norms");
  r.seed = a.opt.seed;
  r.config = {{"norms", norms}, {"starts", a.opt.starts}};
  Table t({"norm2", "F_C12", "F_C123"});
  for (const auto& p : norm_sweep(norms, opts)) t.add({number(p.norm2), number(p.f_c12), number(p.f_c123)});
  finish_table(r, t, c, "optimize norm-sweep");
  return r;
}

struct SmallShiftArgs {
  OptimizeArgs opt;
  std::string q = "1,1,1";
  std::string t1 = "0.2,0.1,0.05,0";
};

Report optimize_small_shift(const SmallShiftArgs& a, const Common& c) {
  Report r;
  auto opts = optimizer_options(a.opt, c);
  Triple q = parse_triple(a.q, "--q");
  auto t1 = parse_list(a.t1, "--t1");
  r.seed = a.opt.seed;
  r.config = {{"q", triple_json(q)}, {"t1", t1}, {"starts", a.opt.starts}};
  Table t({"t1", "F"});
  for (const auto& row : small_shift_experiment(q, t1, opts)) t.add({number(row.t1), number(row.F)});
  finish_table(r, t, c, "optimize small-shift");
  return r;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::vector<int> only;
  std::uint64_t seed = AcceptanceOptions{}.seed;
};

int verify(const VerifyArgs& a, const Common& c) {
  AcceptanceOptions opts;
  opts.seed = a.seed;
  opts.threads = c.threads;
  for (int id : a.only)
    if (id < 1 || id > kCriterionCount)
      throw UsageError("criterion ids run from 1 to " + std::to_string(kCriterionCount));
  opts.only = a.only;
  auto results = run_acceptance(opts, [](const CriterionResult& res) { std::cout << format_result(res) << std::flush; });
  int passed = 0, gating_failures = 0;
  for (const auto& res : results) {
    if (res.passed) ++passed;
    else if (res.gating) ++gating_failures;
  }
  std::cout << passed << " of " << results.size() << " criteria passed, " << gating_failures
            << " gating failure(s)\n";
  return all_gating_passed(results) ? kOk : kDomainError;
}

// --- plumbing --------------------------------------------------------------

void write_report(const Report& r, const Common& c, const std::string& command, double seconds) {
  json record = run_record(command, r, c.threads, seconds);
  if (c.output.empty() || c.output == "-") {
    std::cout << r.body << std::flush;
    if (c.format != "text") std::cerr << record.dump() << "\n";
    return;
  }
  std::ofstream out(c.output, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write output file " + c.output);
  out << r.body;
  std::ofstream meta(c.output + ".meta.json", std::ios::binary | std::ios::trunc);
  if (!meta) throw UsageError("cannot write metadata file " + c.output + ".meta.json");
  meta << record.dump(2) << "\n";
  if (!out || !meta) throw UsageError("failed writing " + c.output);
}

struct Leaf {
  CLI::App* app;
  std::string command;
  std::function<Report()> run;
  Common* common;
};

void add_output(CLI::App* app, Common& c, bool dataset) {
  app->add_option("-o,--output", c.output, "Write to this file (and a .meta.json sidecar) instead of stdout");
  if (dataset) {
    c.format = "csv";
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  } else {
    c.format = "text";
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app->add_flag_callback("--json", [&c] { c.format = "json"; }, "Shorthand for --format json");
  }
}

void add_dissipator(CLI::App* app, DissipatorArgs& a) {
  app->add_option("--q", a.q, "Rates q1,q2,q3");
  app->add_option("--t", a.t, "Shift t1,t2,t3");
}

void add_optimizer(CLI::App* app, OptimizeArgs& a) {
  app->add_option("--starts", a.starts, "Multistart count");
  app->add_option("--seed", a.seed, "Random seed");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Geometry of one-qubit Lindblad dissipators and steady-state singlet fractions", "lindgeo"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: LINDGEO_THREADS or hardware concurrency)");

  std::vector<Leaf> leaves;
  std::vector<std::unique_ptr<Common>> commons;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, bool dataset,
                  const std::string& command) {
    auto* sub = parent->add_subcommand(name, help);
    commons.push_back(std::make_unique<Common>());
    add_output(sub, *commons.back(), dataset);
    leaves.push_back({sub, command, {}, commons.back().get()});
    return &leaves.back();
  };
  leaves.reserve(32);

  // dissipator
  auto* dis = app.add_subcommand("dissipator", "Canonical dissipator checks")->require_subcommand(1);
  DissipatorArgs check_args;
  {
    auto* l = leaf(dis, "check", "Lindblad verdict, GKS spectrum, class and Lindblad operators", false,
                   "dissipator check");
    add_dissipator(l->app, check_args);
    l->run = [&, c = l->common] { return dissipator_check(check_args, *c); };
  }

  // channel
  auto* chan = app.add_subcommand("channel", "Channels generated by canonical dissipators")->require_subcommand(1);
  DissipatorArgs fg_args;
  {
    auto* l = leaf(chan, "from-generator", "exp(tau L) as a diagonal channel", false, "channel from-generator");
    add_dissipator(l->app, fg_args);
    l->app->add_option("--tau", fg_args.tau, "Time");
    l->run = [&, c = l->common] { return channel_from_generator(fg_args, *c); };
  }
  ChannelArgs tg_args;
  {
    auto* l = leaf(chan, "to-generator", "Recover (q, t) from a diagonal channel", false, "channel to-generator");
    l->app->add_option("--lambda", tg_args.lambda, "Contractions lambda1,lambda2,lambda3");
    l->app->add_option("--v", tg_args.v, "Shift v1,v2,v3");
    l->app->add_option("--tau", tg_args.tau, "Time");
    l->run = [&, c = l->common] { return channel_to_generator(tg_args, *c); };
  }

  // geometry
  auto* geo = app.add_subcommand("geometry", "Channel-set geometry")->require_subcommand(1);
  SurfaceArgs unital_args, nonunital_args;
  {
    auto* l = leaf(geo, "unital-set", "Boundary points of the unital Lindblad set and the tetrahedron", true,
                   "geometry unital-set");
    l->app->add_option("--grid", unital_args.grid, "Grid points per axis");
    l->app->add_option("--slice-lambda3", unital_args.slice, "Restrict to a lambda3 cross-section");
    l->run = [&, c = l->common] { return geometry_surface(unital_args, SurfaceKind::Unital, *c, "geometry unital-set"); };
  }
  {
    auto* l = leaf(geo, "nonunital-set", "Boundary points of the Lindblad and CPM sets at fixed shift", true,
                   "geometry nonunital-set");
    l->app->add_option("--v", nonunital_args.v, "Channel shift v1,v2,v3");
    l->app->add_option("--grid", nonunital_args.grid, "Grid points per axis");
    l->app->add_option("--slice-lambda3", nonunital_args.slice, "Restrict to a lambda3 cross-section");
    l->run = [&, c = l->common] {
      return geometry_surface(nonunital_args, SurfaceKind::NonUnital, *c, "geometry nonunital-set");
    };
  }
  ShiftBallArgs ball_args;
  {
    auto* l = leaf(geo, "shift-ball", "Maximal shifts around a unital anchor", true, "geometry shift-ball");
    l->app->add_option("--anchor", ball_args.anchor, "Anchor lambda1,lambda2,lambda3");
    l->app->add_option("--direction", ball_args.direction, "Single direction u1,u2,u3");
    l->app->add_option("--directions", ball_args.directions, "Number of Fibonacci-lattice directions");
    l->run = [&, c = l->common] { return geometry_shift_ball(ball_args, *c); };
  }
  VolumeArgs vol_args;
  {
    auto* l = leaf(geo, "volume", "Monte-Carlo volume fractions", false, "geometry volume");
    l->app->add_option("--region", vol_args.region, "lindblad-octant-abs, ratio-octant1 or ratio-full");
    l->app->add_option("--samples", vol_args.samples, "Number of samples (at least 10000)");
    l->app->add_option("--seed", vol_args.seed, "Random seed");
    l->run = [&, c = l->common] { return geometry_volume(vol_args, *c); };
  }

  // steady
  auto* steady = app.add_subcommand("steady", "Two-qubit steady states")->require_subcommand(1);
  SteadyArgs steady_args;
  {
    auto* l = leaf(steady, "solve", "Steady state for a dissipator on qubit 1 and a Hamiltonian", false,
                   "steady solve");
    add_dissipator(l->app, steady_args.dissipator);
    l->app->add_option("--hamiltonian", steady_args.hamiltonian, "JSON file mapping labels such as \"xx\" to reals");
    l->run = [&, c = l->common] { return steady_solve(steady_args, *c); };
  }

  // optimize
  auto* opt = app.add_subcommand("optimize", "Maximal steady-state singlet fraction")->require_subcommand(1);
  FmaxArgs fmax_args;
  {
    auto* l = leaf(opt, "fmax", "Optimum over restricted states at q = (q1, q2, 1/q2), t = (1, 0, 0)", false,
                   "optimize fmax");
    add_optimizer(l->app, fmax_args.opt);
    l->app->add_option("--q2", fmax_args.q2, "Rate q2 in (0, 1)");
    l->app->add_option("--q1", fmax_args.q1, "Rate q1 >= 0");
    l->run = [&, c = l->common] { return optimize_fmax(fmax_args, *c); };
  }
  CurveArgs curve_args;
  {
    auto* l = leaf(opt, "curve", "F against q2", true, "optimize curve");
    add_optimizer(l->app, curve_args.opt);
    l->app->add_option("--q2", curve_args.q2, "Comma-separated q2 grid");
    l->app->add_flag("--extrapolate", curve_args.extrapolate, "Append the quadratic extrapolation to q2 = 1");
    l->run = [&, c = l->common] { return optimize_curve(curve_args, *c); };
  }
  NormSweepArgs sweep_args;
  {
    auto* l = leaf(opt, "norm-sweep", "F against the norm of the off-pattern coherences", true,
                   "optimize norm-sweep");
    add_optimizer(l->app, sweep_args.opt);
    l->app->add_option("--norms", sweep_args.norms, "Comma-separated norm-squared grid");
    l->run = [&, c = l->common] { return optimize_norm_sweep(sweep_args, *c); };
  }
  SmallShiftArgs shift_args;
  {
    auto* l = leaf(opt, "small-shift", "sup over H of F as the shift t1 shrinks", true, "optimize small-shift");
    add_optimizer(l->app, shift_args.opt);
    l->app->add_option("--q", shift_args.q, "Rates q1,q2,q3");
    l->app->add_option("--t1", shift_args.t1, "Comma-separated t1 values");
    l->run = [&, c = l->common] { return optimize_small_shift(shift_args, *c); };
  }

  // verify
  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  ver->add_option("--only", verify_args.only, "Criterion ids to run")->delimiter(',');
  ver->add_option("--seed", verify_args.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (ver->parsed()) {
      Common c;
      c.threads = threads;
      return verify(verify_args, c);
    }
    for (auto& l : leaves) {
      if (!l.app->parsed()) continue;
      l.common->threads = threads;
      auto start = std::chrono::steady_clock::now();
      Report r = l.run();
      double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_report(r, *l.common, l.command, seconds);
      return r.exit_code;
    }
    std::cerr << app.help();
    return kUsageError;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace lindgeo::cli
