#include "app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "grs/errors.hpp"
#include "grs/io.hpp"
#include "grs/meridian_solvers.hpp"

namespace grs::app {
namespace {

struct Globals {
  double tol = kDefaultTol;
  std::optional<double> fd_step;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 7;
};

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Input: return kInputError;
    case ErrorCategory::Kernel: return kKernelError;
    case ErrorCategory::Solver: return kSolverFailure;
    case ErrorCategory::Verification: return kVerificationFailure;
  }
  return kInputError;
}

std::string fmt(double x) { return io::format_real(x); }

Interval to_interval(const std::vector<double>& r, const char* name) {
  if (r.size() != 2 || !(r[1] > r[0])) throw InvalidArgument(std::string(name) + " must be lo,hi with lo < hi");
  return {r[0], r[1]};
}

std::vector<double> linspace(Interval r, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = i + 1 == n ? r.hi : r.lo + r.length() * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

/// Runs `body` on the --out file, or on `out` when no file was requested.
void with_output(const Globals& g, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (g.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw InvalidArgument("cannot open '" + g.out + "' for writing");
  body(file);
  if (!file) throw InvalidArgument("failed writing '" + g.out + "'");
}

// --- surface specification --------------------------------------------------

struct SurfaceOptions {
  std::string kind = "first";
  double alpha = 1, beta = 1;
  std::string preset;
  std::string meridian_file;
  double a = 1, b = 0, c = 1, A = 0.25, C = 0;
  int eps = 1;
  std::vector<double> u_range, v_range;
  std::size_t nu = 10, nv = 10;
  CLI::Option* kind_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
};

void add_kind_speed_options(CLI::App* sub, SurfaceOptions& o) {
  o.kind_opt = sub->add_option("--kind", o.kind, "first | second")->capture_default_str();
  o.alpha_opt = sub->add_option("--alpha", o.alpha, "circular rotation speed")->capture_default_str();
  o.beta_opt = sub->add_option("--beta", o.beta, "hyperbolic rotation speed")->capture_default_str();
}

void add_surface_options(CLI::App* sub, SurfaceOptions& o) {
  add_kind_speed_options(sub, o);
  sub->add_option("--preset", o.preset, "line | power-law | circle | hyperbolic | minimal | example1 | example2");
  sub->add_option("--meridian", o.meridian_file, "sampled meridian file written by 'generate'");
  sub->add_option("--a", o.a, "line slope / profile radius")->capture_default_str();
  sub->add_option("--b", o.b, "line offset")->capture_default_str();
  sub->add_option("--c", o.c, "power-law coefficient")->capture_default_str();
  sub->add_option("--A", o.A, "minimal meridian constant A")->capture_default_str();
  sub->add_option("--C", o.C, "minimal meridian phase C")->capture_default_str();
  sub->add_option("--eps", o.eps, "minimal meridian branch, +1 or -1")->capture_default_str();
  sub->add_option("--u-range", o.u_range, "lo,hi (meridian parameter)")->delimiter(',')->expected(2);
  sub->add_option("--v-range", o.v_range, "lo,hi (rotation parameter), default 0,2pi")->delimiter(',')->expected(2);
  sub->add_option("--nu", o.nu, "grid points along u")->capture_default_str();
  sub->add_option("--nv", o.nv, "grid points along v")->capture_default_str();
}

Interval default_minimal_f_range(SurfaceKind kind, double alpha, double A) {
  if (kind == SurfaceKind::FirstType) {
    const double r = std::sqrt(A) / alpha;
    return {1.2 * r, 4.0 * r};
  }
  return {0.5, 2.0};
}

Interval example1_u_range(double alpha, double beta) { return {0.05, 0.9 * std::atan(alpha / beta)}; }
constexpr Interval kExample2URange{0.1, 2.0};

struct BuiltSurface {
  RotationalSurface surface;
  Interval u_range;
};

SurfaceKind forced_kind(const SurfaceOptions& o, SurfaceKind expected) {
  if (o.kind_opt && o.kind_opt->count() > 0 && parse_kind(o.kind) != expected) {
    throw InvalidArgument(std::string("preset requires --kind ") + to_string(expected));
  }
  return expected;
}

BuiltSurface build_surface(const SurfaceOptions& o) {
  if (!o.meridian_file.empty() && !o.preset.empty()) throw InvalidArgument("give either --preset or --meridian");
  std::optional<Interval> u_range;
  if (!o.u_range.empty()) u_range = to_interval(o.u_range, "--u-range");

  if (!o.meridian_file.empty()) {
    std::ifstream in(o.meridian_file);
    if (!in) throw InvalidArgument("cannot open meridian file '" + o.meridian_file + "'");
    const io::MeridianFile file = io::read_meridian_file(in);
    const auto pick = [&](CLI::Option* opt, const std::string& key, const std::string& value) {
      return (opt && opt->count() > 0) ? value : io::header_value(file.header, key, value);
    };
    const SurfaceKind kind = parse_kind(pick(o.kind_opt, "kind", o.kind));
    const double alpha = std::stod(pick(o.alpha_opt, "alpha", fmt(o.alpha)));
    const double beta = std::stod(pick(o.beta_opt, "beta", fmt(o.beta)));
    MeridianCurve m = sampled_meridian(file.samples);
    if (u_range) m = m.restricted(*u_range);
    const Interval J = m.domain();
    return {RotationalSurface(kind, alpha, beta, std::move(m)), J};
  }

  const SurfaceKind kind = parse_kind(o.kind);
  const auto need_range = [&]() -> Interval {
    if (!u_range) throw InvalidArgument("preset '" + o.preset + "' needs --u-range");
    return *u_range;
  };
  if (o.preset == "line") {
    const Interval J = need_range();
    return {RotationalSurface(kind, o.alpha, o.beta, presets::line(o.a, o.b, J)), J};
  }
  if (o.preset == "power-law") {
    const Interval J = need_range();
    return {RotationalSurface(kind, o.alpha, o.beta, presets::power_law(o.c, o.alpha, o.beta, J)), J};
  }
  if (o.preset == "circle") {
    const Interval J = need_range();
    return {RotationalSurface(kind, o.alpha, o.beta, presets::circle_profile(o.a, J)), J};
  }
  if (o.preset == "hyperbolic") {
    const Interval J = need_range();
    return {RotationalSurface(kind, o.alpha, o.beta, presets::hyperbolic_profile(o.a, J)), J};
  }
  if (o.preset == "minimal") {
    const Interval f_range = u_range.value_or(default_minimal_f_range(kind, o.alpha, o.A));
    MeridianCurve m = minimal_meridian(kind, o.alpha, o.beta, o.A, o.C, o.eps, f_range);
    const Interval J = m.domain();
    return {RotationalSurface(kind, o.alpha, o.beta, std::move(m)), J};
  }
  if (o.preset == "example1") {
    const SurfaceKind k = forced_kind(o, SurfaceKind::FirstType);
    const Interval J = u_range.value_or(example1_u_range(o.alpha, o.beta));
    return {RotationalSurface(k, o.alpha, o.beta, presets::circle_profile(o.a, J)), J};
  }
  if (o.preset == "example2") {
    const SurfaceKind k = forced_kind(o, SurfaceKind::SecondType);
    const Interval J = u_range.value_or(kExample2URange);
    return {RotationalSurface(k, o.alpha, o.beta, presets::hyperbolic_profile(o.a, J)), J};
  }
  if (o.preset.empty()) throw InvalidArgument("a surface needs --preset or --meridian");
  throw InvalidArgument("unknown preset '" + o.preset + "'");
}

struct Grid {
  std::vector<double> u, v;
};

Grid build_grid(const SurfaceOptions& o, const BuiltSurface& b) {
  if (o.nu < 2 || o.nv < 2) throw InvalidArgument("grid counts must be at least 2");
  const Interval vr = o.v_range.empty() ? kDefaultAngleRange : to_interval(o.v_range, "--v-range");
  const Interval J = b.surface.meridian().domain();
  if (b.u_range.lo < J.lo || b.u_range.hi > J.hi) throw DomainViolation("u-range leaves the meridian interval");
  Grid g{linspace(b.u_range, o.nu), linspace(vr, o.nv)};
  for (const double u : g.u) b.surface.admissible_jet(u);
  return g;
}

SurfacePatch make_patch(const Globals& g, const RotationalSurface& s, const Grid& grid) {
  SurfacePatch p = as_patch(s, {grid.v.front(), grid.v.back()});
  if (g.fd_step) {
    if (!(*g.fd_step > 0)) throw InvalidArgument("--fd-step must be positive");
    p = p.with_mode(FiniteDifference{*g.fd_step, 10.0 * *g.fd_step});
  }
  return p;
}

KernelOptions kernel_options(const Globals& g) {
  if (!(g.tol > 0)) throw InvalidArgument("--tol must be positive");
  KernelOptions k;
  k.tol = g.tol;
  k.principal_tol = std::max(k.principal_tol, g.tol);
  return k;
}

/// Kernel errors rethrown with the grid point in the message.
InvariantReport report_at(const SurfacePatch& p, double u, double v, const KernelOptions& opts) {
  try {
    return invariants(p, u, v, opts);
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::Kernel) throw;
    throw Error(ErrorCategory::Kernel, std::string(e.what()) + " [grid point u = " + fmt(u) + ", v = " + fmt(v) + "]");
  }
}

// --- invariants -------------------------------------------------------------

const std::vector<std::string> kInvariantColumns = {
    "u",     "v",      "E",      "F",   "G",      "L",      "M",          "N",       "k",           "kappa",
    "K",     "normH",  "epsilon", "gamma1", "gamma2", "nu1",  "nu2",       "lambda",  "mu",          "beta1",
    "beta2", "point_class", "delta_k", "delta_kappa", "delta_K"};

int cmd_invariants(const Globals& g, const SurfaceOptions& o, std::ostream& out) {
  const io::Format format = io::parse_format(g.format);
  const BuiltSurface b = build_surface(o);
  const Grid grid = build_grid(o, b);
  const SurfacePatch patch = make_patch(g, b.surface, grid);
  const KernelOptions opts = kernel_options(g);
  const double sgn = kappa_orientation_sign(b.surface.kind());
  const double nan = std::nan("");

  io::Table table{kInvariantColumns, {}};
  for (const double u : grid.u) {
    const CurvatureInvariants closed = closed_invariants_kKkappa(b.surface, u);
    for (const double v : grid.v) {
      const InvariantReport r = report_at(patch, u, v, opts);
      const FrameInvariants f = r.frame8.value_or(FrameInvariants{nan, nan, nan, nan, nan, nan, nan, nan});
      table.add_row({u, v, r.first.E, r.first.F, r.first.G, r.second.L, r.second.M, r.second.N, r.k, r.kappa, r.K,
                     r.normH, static_cast<long long>(r.epsilon), f.gamma1, f.gamma2, f.nu1, f.nu2, f.lambda, f.mu,
                     f.beta1, f.beta2, std::string(to_string(r.point_class)), std::abs(closed.k - r.k),
                     std::abs(closed.kappa - sgn * r.kappa), std::abs(closed.K - r.K)});
    }
  }
  with_output(g, out, [&](std::ostream& os) { io::write_table(os, table, format); });
  return kSuccess;
}

// --- export-mesh ------------------------------------------------------------

int cmd_export_mesh(const Globals& g, const SurfaceOptions& o, int axis, std::ostream& out) {
  if (axis < 1 || axis > 4) throw InvalidArgument("--axis must be 1, 2, 3 or 4, got " + std::to_string(axis));
  const BuiltSurface b = build_surface(o);
  const Grid grid = build_grid(o, b);
  const SurfacePatch patch = make_patch(g, b.surface, grid);
  const KernelOptions opts = kernel_options(g);

  io::Mesh mesh;
  mesh.drop_axis = axis;
  for (const double u : grid.u) {
    for (const double v : grid.v) {
      const Vec4 z = embed(b.surface, u, v);
      mesh.vertices4.push_back({z(0), z(1), z(2), z(3)});
      const InvariantReport r = report_at(patch, u, v, opts);
      mesh.k.push_back(r.k);
      mesh.kappa.push_back(r.kappa);
      mesh.K.push_back(r.K);
      mesh.point_class.emplace_back(to_string(r.point_class));
    }
  }
  mesh.faces = io::grid_faces(grid.u.size(), grid.v.size());
  with_output(g, out, [&](std::ostream& os) { io::write_mesh_json(os, mesh); });
  return kSuccess;
}

// --- generate ---------------------------------------------------------------

struct Stats {
  double max = 0, mean = 0;
  std::size_t count = 0;
};

template <typename Fn>
Stats abs_stats(const std::vector<double>& xs, Fn&& value) {
  Stats s;
  for (const double x : xs) {
    const double r = std::abs(value(x));
    s.max = std::max(s.max, r);
    s.mean += r;
    ++s.count;
  }
  if (s.count) s.mean /= static_cast<double>(s.count);
  return s;
}

/// Report lines are written to the meridian file header and to stdout.
struct Report {
  io::Header lines;
  void add(const std::string& k, const std::string& v) { lines.emplace_back(k, v); }
  void add(const std::string& k, double v) { add(k, fmt(v)); }
};

void print_report(std::ostream& os, const Report& r, io::Format format) {
  if (format == io::Format::Csv) {
    for (const auto& [k, v] : r.lines) os << k << ": " << v << '\n';
    return;
  }
  os << "{\n";
  for (std::size_t i = 0; i < r.lines.size(); ++i) {
    os << "  " << io::quote_json(r.lines[i].first) << ": " << io::quote_json(r.lines[i].second)
       << (i + 1 < r.lines.size() ? ",\n" : "\n");
  }
  os << "}\n";
}

MeridianSamples sample_curve(const MeridianCurve& m, std::size_t count) {
  MeridianSamples s;
  std::vector<double> g, gp;
  for (const double u : m.sample_parameters(count)) {
    const MeridianJet j = m(u);
    s.u.push_back(u);
    s.f.push_back(j.f);
    s.fp.push_back(j.fp);
    g.push_back(j.g);
    gp.push_back(j.gp);
  }
  s.g = std::move(g);
  s.gp = std::move(gp);
  return s;
}

/// Samples `m` on `count` nodes, refining (2n - 1 nodes) until the file
/// would pass the resolution check of a sampled meridian.
MeridianSamples resolved_samples(const MeridianCurve& m, std::size_t count, Report& report) {
  constexpr std::size_t kMaxNodes = 200'001;
  MeridianSamples s = sample_curve(m, std::max<std::size_t>(count, 8));
  double est = resolution_estimate(s);
  while (est > kResolutionTol && s.u.size() < kMaxNodes) {
    s = sample_curve(m, 2 * s.u.size() - 1);
    est = resolution_estimate(s);
  }
  report.add("samples", std::to_string(s.u.size()));
  report.add("resolution_estimate", est);
  return s;
}

io::Header surface_header(const RotationalSurface& s, const std::string& family) {
  io::Header h{{"kind", to_string(s.kind())}, {"alpha", fmt(s.alpha())}, {"beta", fmt(s.beta())}, {"family", family}};
  if (const auto* tag = std::get_if<PresetTag>(&s.meridian().provenance())) {
    for (const auto& [name, value] : tag->params) h.emplace_back("param_" + name, fmt(value));
  }
  return h;
}

/// Writes the sample file (header + report + samples) and, when the file
/// goes to --out, the report to stdout.
void emit(const Globals& g, std::ostream& out, io::Header header, const Report& report,
          const MeridianSamples& samples) {
  const io::Format format = io::parse_format(g.format);
  for (const auto& line : report.lines) header.push_back(line);
  with_output(g, out, [&](std::ostream& os) { io::write_meridian_file(os, {header, samples}); });
  if (!g.out.empty()) print_report(out, report, format);
}

struct PresetFamilyOptions {
  SurfaceOptions surface;
  std::size_t samples = 201;
  std::string parabolic_case = "power-law";
};

std::vector<double> full_chart_v() { return linspace(kDefaultAngleRange, 20); }

double membership_max(const RotationalSurface& s, Interval J, double target) {
  long double worst = 0;
  for (const double u : linspace(J, 20)) {
    for (const double v : full_chart_v()) {
      const auto z = embed_as<long double>(s, u, v);
      worst = std::max(worst, std::abs(inner(z, z) - static_cast<long double>(target)));
    }
  }
  return static_cast<double>(worst);
}

double kernel_kappa_max(const Globals& g, const RotationalSurface& s, Interval J) {
  const SurfacePatch patch = as_patch(s);
  double worst = 0;
  for (const double u : linspace(J, 20)) {
    for (const double v : full_chart_v()) worst = std::max(worst, std::abs(report_at(patch, u, v, kernel_options(g)).kappa));
  }
  return worst;
}

int cmd_generate_minimal(const Globals& g, const PresetFamilyOptions& p, std::ostream& out) {
  SurfaceOptions o = p.surface;
  o.preset = "minimal";
  const BuiltSurface b = build_surface(o);
  const std::vector<double> us = b.surface.meridian().sample_parameters(p.samples);
  Report r;
  r.add("f_range", fmt(b.u_range.lo) + "," + fmt(b.u_range.hi));
  const Stats res = abs_stats(us, [&](double u) { return residual_minimal(b.surface, u); });
  r.add("residual", "residual_minimal");
  r.add("max_abs_residual", res.max);
  r.add("mean_abs_residual", res.mean);
  const Stats nu = abs_stats(us, [&](double u) {
    const FrameInvariants f = closed_invariants_frame8(b.surface, u);
    return f.nu1 + f.nu2;
  });
  r.add("max_abs_nu1_plus_nu2", nu.max);
  const ConservationResult c = conservation_check(b.surface, us);
  r.add("conservation_spread", c.max_spread);
  r.add("recovered_A", c.recovered_A);
  r.add("speed_relation_residual", minimal_speed_relation_residual(b.surface, o.A, us));
  const MeridianSamples samples = resolved_samples(b.surface.meridian(), p.samples, r);
  emit(g, out, surface_header(b.surface, "minimal"), r, samples);
  return kSuccess;
}

int cmd_generate_parabolic(const Globals& g, const PresetFamilyOptions& p, std::ostream& out) {
  const SurfaceOptions& o = p.surface;
  const SurfaceKind kind = parse_kind(o.kind);
  const ParabolicCase which = parse_parabolic_case(p.parabolic_case);
  const Interval J = o.u_range.empty() ? Interval{1.0, 2.0} : to_interval(o.u_range, "--u-range");
  const RotationalSurface s(kind, o.alpha, o.beta,
                            parabolic_meridian(kind, which, o.alpha, o.beta, ParabolicParams{o.a, o.b, o.c}, J));
  const std::vector<double> us = s.meridian().sample_parameters(p.samples);
  Report r;
  r.add("case", to_string(which));
  r.add("residual", "k");
  const Stats k = abs_stats(us, [&](double u) { return closed_invariants_kKkappa(s, u).k; });
  r.add("max_abs_residual", k.max);
  r.add("mean_abs_residual", k.mean);
  const SurfacePatch patch = as_patch(s);
  double kernel_k = 0, min_kappa = INFINITY, min_K = INFINITY;
  for (const double u : us) {
    const InvariantReport rep = report_at(patch, u, 0.5, kernel_options(g));
    kernel_k = std::max(kernel_k, std::abs(rep.k));
    min_kappa = std::min(min_kappa, std::abs(rep.kappa));
    min_K = std::min(min_K, std::abs(rep.K));
  }
  r.add("kernel_max_abs_k", kernel_k);
  r.add("kernel_min_abs_kappa", min_kappa);
  r.add("kernel_min_abs_K", min_K);
  const MeridianSamples samples = resolved_samples(s.meridian(), p.samples, r);
  emit(g, out, surface_header(s, "parabolic"), r, samples);
  return kSuccess;
}

int cmd_generate_example(const Globals& g, const PresetFamilyOptions& p, bool first, std::ostream& out) {
  SurfaceOptions o = p.surface;
  o.preset = first ? "example1" : "example2";
  const BuiltSurface b = build_surface(o);
  const std::vector<double> us = b.surface.meridian().sample_parameters(p.samples);
  Report r;
  r.add("residual", "residual_flat_normal");
  const Stats res = abs_stats(us, [&](double u) { return residual_flat_normal(b.surface, u); });
  r.add("max_abs_residual", res.max);
  r.add("mean_abs_residual", res.mean);
  const double target = (first ? 1.0 : -1.0) * o.a * o.a;
  r.add("quadric", first ? "<z,z> = a^2" : "<z,z> = -a^2");
  r.add("membership_max_abs", membership_max(b.surface, b.u_range, target));
  r.add("kernel_max_abs_kappa", kernel_kappa_max(g, b.surface, b.u_range));
  const MeridianSamples samples = resolved_samples(b.surface.meridian(), p.samples, r);
  emit(g, out, surface_header(b.surface, o.preset), r, samples);
  return kSuccess;
}

struct OdeOptions {
  SurfaceOptions surface;
  double u0 = 0, f0 = 0, fp0 = 0, u_end = 0;
  ode::Control step;
  double guard_tol = 1e-6;
  std::size_t max_steps = 1'000'000;
};

void add_ode_options(CLI::App* sub, OdeOptions& o) {
  add_kind_speed_options(sub, o.surface);
  sub->add_option("--u0", o.u0, "initial u")->required();
  sub->add_option("--f0", o.f0, "initial f")->required();
  sub->add_option("--fp0", o.fp0, "initial f'")->required();
  sub->add_option("--u-end", o.u_end, "integrate towards this u")->required();
  sub->add_option("--h-init", o.step.h_init)->capture_default_str();
  sub->add_option("--h-min", o.step.h_min)->capture_default_str();
  sub->add_option("--h-max", o.step.h_max)->capture_default_str();
  sub->add_option("--rel-tol", o.step.rel_tol)->capture_default_str();
  sub->add_option("--abs-tol", o.step.abs_tol)->capture_default_str();
  sub->add_option("--guard-tol", o.guard_tol, "singularity guard on the denominators")->capture_default_str();
  sub->add_option("--max-steps", o.max_steps)->capture_default_str();
}

int cmd_generate_ode(const Globals& g, const OdeOptions& o, OdeTarget target, std::ostream& out) {
  OdeProblem p{parse_kind(o.surface.kind),
               target,
               o.surface.alpha,
               o.surface.beta,
               o.u0,
               o.f0,
               o.fp0,
               o.u_end >= o.u0 ? Direction::Increasing : Direction::Decreasing,
               o.step,
               StopConditions{o.u_end, o.guard_tol, o.max_steps}};
  p.step.max_steps = o.max_steps;
  const SolvedMeridian sol = solve_ode(p);

  Report r;
  r.add("status", sol.completed() ? "ok" : "failed");
  r.add("termination", to_string(sol.termination));
  if (!sol.detail.empty()) r.add("termination_detail", sol.detail);
  r.add("nodes", std::to_string(sol.u.size()));
  r.add("accepted_steps", std::to_string(sol.stats.accepted));
  r.add("rejected_steps", std::to_string(sol.stats.rejected));
  r.add("u_final", sol.u.back());
  r.add("f_final", sol.f.back());
  r.add("residual", target == OdeTarget::Flat ? "residual_flat" : "residual_flat_normal");

  int code = sol.completed() ? kSuccess : kSolverFailure;
  std::string residual_error;
  try {
    const RotationalSurface s = sol.surface();
    std::vector<double> interior(sol.u.begin() + 1, sol.u.end() - 1);
    const Stats res = abs_stats(interior, [&](double u) { return defining_residual(target, s, u); });
    r.add("resolution_estimate", resolution_estimate(sol.samples()));
    r.add("max_abs_residual", res.max);
    r.add("mean_abs_residual", res.mean);
  } catch (const Error& e) {
    residual_error = e.what();
    r.add("max_abs_residual", "unavailable (" + residual_error + ")");
    if (code == kSuccess) code = exit_code(e.category());
  }

  const SurfaceKind kind = p.kind;
  io::Header header{{"kind", to_string(kind)},
                    {"alpha", fmt(p.alpha)},
                    {"beta", fmt(p.beta)},
                    {"family", to_string(target)},
                    {"chart", "g=u"},
                    {"param_u0", fmt(p.u0)},
                    {"param_f0", fmt(p.f0)},
                    {"param_fp0", fmt(p.fp0)},
                    {"param_u_end", fmt(p.stop.u_end)}};
  emit(g, out, header, r, sol.samples());
  return code;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const Globals& g, const std::string& scope, std::ostream& out) {
  const std::vector<CheckResult> checks = run_verify(scope, g.seed);
  print_checks(out, checks);
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
  out << (failed ? "FAILED " : "ALL PASSED ") << checks.size() - static_cast<std::size_t>(failed) << "/"
      << checks.size() << '\n';
  return failed ? kVerificationFailure : kSuccess;
}

}  // namespace

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.module << "  " << c.name << "  worst=" << fmt(c.worst)
       << " limit=" << fmt(c.limit);
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << '\n';
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of spacelike surfaces in Minkowski 4-space and general rotational surfaces", "grs"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "degeneracy tolerance of the kernel")->capture_default_str();
  app.add_option("--fd-step", g.fd_step, "use finite differences with this first-derivative step");
  app.add_option("--format", g.format, "csv | json")->capture_default_str();
  app.add_option("--out", g.out, "output file (default: stdout)");
  app.add_option("--seed", g.seed, "seed of the verify suite")->capture_default_str();

  SurfaceOptions inv_opts;
  CLI::App* inv = app.add_subcommand("invariants", "invariant sweep over a (u,v) grid");
  add_surface_options(inv, inv_opts);

  SurfaceOptions mesh_opts;
  int axis = 4;
  CLI::App* mesh = app.add_subcommand("export-mesh", "quad mesh with invariant channels as JSON");
  add_surface_options(mesh, mesh_opts);
  mesh->add_option("--axis", axis, "coordinate dropped by the projection (1-4)")->capture_default_str();

  std::string scope = "all";
  CLI::App* verify = app.add_subcommand("verify", "property suite");
  verify->add_option("scope", scope, "all | minkowski_core | surface_kernel | rotational_surfaces | "
                                     "meridian_solvers | cli_runner")
      ->capture_default_str();

  CLI::App* gen = app.add_subcommand("generate", "meridian generators");
  gen->require_subcommand(1);
  PresetFamilyOptions minimal_opts, parabolic_opts, ex1_opts, ex2_opts;
  ex2_opts.surface.kind = "second";

  CLI::App* gmin = gen->add_subcommand("minimal", "closed-form minimal meridian g(f)");
  add_kind_speed_options(gmin, minimal_opts.surface);
  gmin->add_option("--A", minimal_opts.surface.A)->capture_default_str();
  gmin->add_option("--C", minimal_opts.surface.C)->capture_default_str();
  gmin->add_option("--eps", minimal_opts.surface.eps, "+1 or -1")->capture_default_str();
  gmin->add_option("--f-range", minimal_opts.surface.u_range, "lo,hi")->delimiter(',')->expected(2);
  gmin->add_option("--samples", minimal_opts.samples, "Minimum node count; doubled until the file passes the resolution check")
      ->capture_default_str();

  CLI::App* gpar = gen->add_subcommand("parabolic", "meridians of the parabolic classification");
  add_kind_speed_options(gpar, parabolic_opts.surface);
  gpar->add_option("--case", parabolic_opts.parabolic_case, "developable | ruled | power-law")->capture_default_str();
  gpar->add_option("--a", parabolic_opts.surface.a)->capture_default_str();
  gpar->add_option("--b", parabolic_opts.surface.b)->capture_default_str();
  gpar->add_option("--c", parabolic_opts.surface.c)->capture_default_str();
  gpar->add_option("--u-range", parabolic_opts.surface.u_range, "lo,hi (default 1,2)")->delimiter(',')->expected(2);
  gpar->add_option("--samples", parabolic_opts.samples, "Minimum node count; doubled until the file passes the resolution check")
      ->capture_default_str();

  CLI::App* gex1 = gen->add_subcommand("example1", "circle meridian on the de Sitter space");
  CLI::App* gex2 = gen->add_subcommand("example2", "hyperbola meridian on the hyperbolic sphere");
  for (auto [sub, opts] : {std::pair{gex1, &ex1_opts}, std::pair{gex2, &ex2_opts}}) {
    add_kind_speed_options(sub, opts->surface);
    sub->add_option("--a", opts->surface.a)->capture_default_str();
    sub->add_option("--u-range", opts->surface.u_range, "lo,hi")->delimiter(',')->expected(2);
    sub->add_option("--samples", opts->samples, "Minimum node count; doubled until the file passes the resolution check")
      ->capture_default_str();
  }

  OdeOptions flat_opts, normal_opts;
  CLI::App* gflat = gen->add_subcommand("flat", "integrate the flatness ODE (meridian f(u), g = u)");
  add_ode_options(gflat, flat_opts);
  CLI::App* gnormal = gen->add_subcommand("flat-normal", "integrate the flat-normal-connection ODE");
  add_ode_options(gnormal, normal_opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (inv->parsed()) return cmd_invariants(g, inv_opts, out);
    if (mesh->parsed()) return cmd_export_mesh(g, mesh_opts, axis, out);
    if (verify->parsed()) return cmd_verify(g, scope, out);
    if (gmin->parsed()) return cmd_generate_minimal(g, minimal_opts, out);
    if (gpar->parsed()) return cmd_generate_parabolic(g, parabolic_opts, out);
    if (gex1->parsed()) return cmd_generate_example(g, ex1_opts, true, out);
    if (gex2->parsed()) return cmd_generate_example(g, ex2_opts, false, out);
    if (gflat->parsed()) return cmd_generate_ode(g, flat_opts, OdeTarget::Flat, out);
    if (gnormal->parsed()) return cmd_generate_ode(g, normal_opts, OdeTarget::FlatNormal, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::invalid_argument& e) {
    err << "error: invalid number (" << e.what() << ")\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace grs::app
