// Property suite behind `grs verify`. Every check reports its worst residual
// so a passing run still documents the margins.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "app.hpp"
#include "grs/errors.hpp"
#include "grs/io.hpp"
#include "grs/meridian_solvers.hpp"

namespace grs::app {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

class Suite {
 public:
  explicit Suite(std::string module) : module_(std::move(module)) {}

  void check(const std::string& name, double worst, double limit, const std::string& note = "") {
    results_.push_back({module_, name, std::isfinite(worst) && worst <= limit, worst, limit, note});
  }
  /// For statistics that must stay above a bound.
  void check_at_least(const std::string& name, double value, double bound, const std::string& note = "") {
    results_.push_back({module_, name, std::isfinite(value) && value >= bound, value, bound, note});
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string module_;
  std::vector<CheckResult> results_;
};

Vec4 random_vec(Rng& rng) {
  return Vec4(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
}

// --- random rotational surface samples ---------------------------------------

struct Sample {
  std::string preset;
  RotationalSurface surface;
  double u, v;
};

/// One admissible (surface, u, v) drawn from the preset library; rejection
/// sampling keeps E and G away from zero.
std::optional<Sample> draw(Rng& rng, SurfaceKind kind, int preset) {
  const double alpha = uniform(rng, 0.5, 2.0), beta = uniform(rng, 0.5, 2.0);
  const bool first = kind == SurfaceKind::FirstType;
  std::optional<MeridianCurve> m;
  std::string name;
  switch (preset) {
    case 0:
      name = "line";
      m = presets::line(first ? uniform(rng, 0.2, 1.0) : uniform(rng, -0.8, 0.8), uniform(rng, -0.5, 0.5),
                        {0.5, 2.0});
      break;
    case 1:
      name = "power-law";
      m = presets::power_law(uniform(rng, 0.3, 1.5), alpha, beta, {0.5, 2.0});
      break;
    case 2:
      name = "circle";
      m = first ? presets::circle_profile(uniform(rng, 0.5, 2.0), {0.05, std::atan(alpha / beta) - 0.05})
                : presets::circle_profile(uniform(rng, 0.5, 2.0), {std::numbers::pi / 4 + 0.05, 3 * std::numbers::pi / 4 - 0.05});
      break;
    case 3:
      name = "hyperbolic";
      m = presets::hyperbolic_profile(uniform(rng, 0.5, 2.0), {0.1, 2.0});
      break;
    default: {
      name = "minimal";
      const double A = uniform(rng, 0.1, 1.0);
      m = minimal_meridian(kind, alpha, beta, A, uniform(rng, -1.0, 1.0), uniform(rng, 0, 1) < 0.5 ? -1 : 1,
                           first ? Interval{1.2 * std::sqrt(A) / alpha, 4.0 * std::sqrt(A) / alpha}
                                 : Interval{0.5, 2.0});
    }
  }
  RotationalSurface s(kind, alpha, beta, *m);
  const Interval J = s.meridian().domain();
  for (int attempt = 0; attempt < 50; ++attempt) {
    const double u = uniform(rng, J.lo, J.hi);
    if (s.is_admissible(u, 1e-2)) return Sample{name, s, u, uniform(rng, 0.0, 1.0)};
  }
  return std::nullopt;
}

std::vector<Sample> draw_samples(Rng& rng, std::size_t count) {
  std::vector<Sample> out;
  std::size_t i = 0;
  while (out.size() < count) {
    const SurfaceKind kind = (i % 2 == 0) ? SurfaceKind::FirstType : SurfaceKind::SecondType;
    const int preset = static_cast<int>((i / 2) % 5);
    ++i;
    if (auto s = draw(rng, kind, preset)) out.push_back(std::move(*s));
  }
  return out;
}

// --- generated families -------------------------------------------------------

struct Generated {
  std::string name;
  RotationalSurface surface;
};

OdeProblem ode_problem(SurfaceKind kind, OdeTarget target, double alpha, double beta, double u0, double f0,
                       double fp0, double u_end) {
  return OdeProblem{kind, target, alpha, beta, u0, f0, fp0, Direction::Increasing, {}, StopConditions{u_end}};
}

std::vector<OdeProblem> generic_ode_problems() {
  return {ode_problem(SurfaceKind::FirstType, OdeTarget::Flat, 2, 1, 0.2, 1, 0.1, 1.5),
          ode_problem(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1.5, 1, 0.3, 1, 0.2, 1.0),
          ode_problem(SurfaceKind::SecondType, OdeTarget::Flat, 1, 1.5, 0.5, 1, 1.5, 1.5),
          ode_problem(SurfaceKind::SecondType, OdeTarget::FlatNormal, 1, 1.5, 0.5, 1, 1.5, 1.5)};
}

std::vector<Generated> generated_surfaces() {
  std::vector<Generated> out;
  const auto F = SurfaceKind::FirstType;
  const auto S = SurfaceKind::SecondType;
  out.push_back({"parabolic developable", RotationalSurface(F, 2, 1, parabolic_meridian(F, ParabolicCase::DevelopableRuled, 2, 1, {0.5, 0, 0}, {0.5, 2}))});
  out.push_back({"parabolic ruled", RotationalSurface(F, 2, 1, parabolic_meridian(F, ParabolicCase::NonDevelopableRuled, 2, 1, {0.5, 0.3, 0}, {0.5, 2}))});
  out.push_back({"parabolic power-law", RotationalSurface(F, 2, 1, parabolic_meridian(F, ParabolicCase::PowerLaw, 2, 1, {0, 0, 1}, {1, 2}))});
  out.push_back({"parabolic ruled (second)", RotationalSurface(S, 1, 1, parabolic_meridian(S, ParabolicCase::NonDevelopableRuled, 1, 1, {0.5, 0.3, 0}, {0.5, 2}))});
  out.push_back({"example1", RotationalSurface(F, 1, 1, presets::circle_profile(1, {0.05, 0.75}))});
  out.push_back({"example2", RotationalSurface(S, 1, 1, presets::hyperbolic_profile(1, {0.1, 2}))});
  for (const OdeProblem& p : generic_ode_problems()) {
    out.push_back({std::string(to_string(p.kind)) + " " + to_string(p.target) + " ode", solve_ode(p).surface()});
  }
  return out;
}

// --- modules ------------------------------------------------------------------

std::vector<CheckResult> verify_minkowski(std::uint64_t seed) {
  Suite s("minkowski_core");
  Rng rng(seed);
  double bilinear = 0, alternating = 0, gram = 0;
  std::size_t frames = 0;
  for (int i = 0; i < 200; ++i) {
    const Vec4 a = random_vec(rng), b = random_vec(rng), w = random_vec(rng);
    const double x = uniform(rng, -2, 2), y = uniform(rng, -2, 2);
    bilinear = std::max(bilinear, std::abs(inner(Vec4(x * a + y * b), w) - (x * inner(a, w) + y * inner(b, w))));
    const Vec4 c = random_vec(rng), d = random_vec(rng);
    alternating = std::max(alternating, std::abs(orientation_det(a, b, c, d) + orientation_det(b, a, c, d)));
    alternating = std::max(alternating, std::abs(orientation_det(a, b, c, d) + orientation_det(a, d, c, b)));

    // Spacelike planes: small time components keep the Gram condition.
    Vec4 t1 = random_vec(rng), t2 = random_vec(rng);
    t1(3) *= 0.3;
    t2(3) *= 0.3;
    try {
      const NormalFrame<double> nf = normal_frame(t1, t2);
      const std::array<Vec4, 4> basis{t1, t2, nf.n1, nf.n2};
      for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
          if (p < 2 && q < 2) continue;
          const double target = (p == q) ? (p == 2 ? 1.0 : -1.0) : 0.0;
          gram = std::max(gram, std::abs(inner(basis[p], basis[q]) - target));
        }
      }
      if (!(orientation_det(t1, t2, nf.n1, nf.n2) > 0)) gram = INFINITY;
      ++frames;
    } catch (const DegenerateTangentPlane&) {
    }
  }
  s.check("bilinearity of inner", bilinear, 1e-14);
  s.check("orientation_det alternating", alternating, 0.0, "exact");
  s.check("normal frame Gram block diag(1,-1)", gram, 1e-10, std::to_string(frames) + " frames");
  return s.take();
}

std::vector<CheckResult> verify_surface_kernel(std::uint64_t seed) {
  Suite s("surface_kernel");
  Rng rng(seed + 1);
  const std::vector<Sample> samples = draw_samples(rng, 60);
  double k_rel = 0, kappa_rel = 0, K_rel = 0, h_rel = 0;
  std::size_t used = 0;
  for (const Sample& smp : samples) {
    const InvariantReport r = invariants(as_patch(smp.surface), smp.u, smp.v);
    if (!r.frame8 || r.epsilon == 0) continue;
    const FrameInvariants& f = *r.frame8;
    ++used;
    k_rel = std::max(k_rel, rel_err(r.k, -4 * f.nu1 * f.nu2 * f.mu * f.mu));
    kappa_rel = std::max(kappa_rel, rel_err(std::abs(r.kappa), std::abs((f.nu1 - f.nu2) * f.mu)));
    K_rel = std::max(K_rel, rel_err(r.K, r.epsilon * (f.nu1 * f.nu2 - f.lambda * f.lambda + f.mu * f.mu)));
    h_rel = std::max(h_rel, rel_err(r.normH, std::abs(f.nu1 + f.nu2) / 2));
  }
  const std::string note = std::to_string(used) + " points with frame";
  s.check("k = -4 nu1 nu2 mu^2", k_rel, 1e-6, note);
  s.check("|kappa| = |(nu1 - nu2) mu|", kappa_rel, 1e-6, note);
  s.check("K = eps (nu1 nu2 - lambda^2 + mu^2)", K_rel, 1e-6, note);
  s.check("normH = |nu1 + nu2| / 2", h_rel, 1e-6, note);

  // Sign of kappa against (nu1 - nu2) mu along one connected sweep.
  {
    const RotationalSurface surf(SurfaceKind::FirstType, 1.3, 0.8, presets::power_law(0.7, 1.3, 0.8, {0.8, 2.0}));
    const SurfacePatch patch = as_patch(surf);
    int sign = 0;
    double mixed = 0;
    for (const double u : surf.meridian().sample_parameters(25)) {
      const InvariantReport r = invariants(patch, u, 0.3);
      const double prod = r.kappa * (r.frame8->nu1 - r.frame8->nu2) * r.frame8->mu;
      const int sg = prod > 0 ? 1 : -1;
      if (sign == 0) sign = sg;
      if (sg != sign) mixed += 1;
    }
    s.check("kappa sign consistent along sweep", mixed, 0.0, "count of sign changes");
  }

  // Finite differences converge at second order.
  {
    double worst_order = INFINITY;
    for (const Sample& smp : draw_samples(rng, 10)) {
      const SurfacePatch exact = as_patch(smp.surface);
      const auto err_at = [&](double h) {
        const SurfacePatch fd = exact.with_mode(FiniteDifference{h, h});
        const FirstForm a1 = first_form(exact, smp.u, smp.v), b1 = first_form(fd, smp.u, smp.v);
        const SecondForm a2 = second_form(exact, smp.u, smp.v), b2 = second_form(fd, smp.u, smp.v);
        return std::max({std::abs(a1.E - b1.E), std::abs(a1.F - b1.F), std::abs(a1.G - b1.G),
                         std::abs(a2.L - b2.L), std::abs(a2.M - b2.M), std::abs(a2.N - b2.N)});
      };
      const double e1 = err_at(1e-2), e2 = err_at(5e-3);
      if (e1 < 1e-12) continue;
      worst_order = std::min(worst_order, std::log2(e1 / e2));
    }
    s.check_at_least("finite-difference order (h = 1e-2 vs 5e-3)", worst_order, 1.9);
  }

  // A first-type circle consists of hyperbolic points.
  {
    const RotationalSurface surf(SurfaceKind::FirstType, 1, 1, presets::circle_profile(1, {0.05, 0.75}));
    const SurfacePatch patch = as_patch(surf);
    double max_k = -INFINITY;
    int misclassified = 0;
    for (const double u : surf.meridian().sample_parameters(10)) {
      for (int j = 0; j < 10; ++j) {
        const InvariantReport r = invariants(patch, u, 0.1 * j);
        max_k = std::max(max_k, r.k);
        if (r.point_class != PointClass::Hyperbolic) ++misclassified;
      }
    }
    s.check("hyperbolic sweep: max k < 0", max_k, -1e-12);
    s.check("hyperbolic sweep: misclassified points", misclassified, 0.0);
  }
  return s.take();
}

std::vector<CheckResult> verify_rotational(std::uint64_t seed) {
  Suite s("rotational_surfaces");
  Rng rng(seed + 2);
  const std::vector<Sample> samples = draw_samples(rng, 100);
  double k = 0, kappa = 0, K = 0, normH = 0, first = 0, chen = 0;
  int wrong_eps = 0;
  for (const Sample& smp : samples) {
    const InvariantReport r = invariants(as_patch(smp.surface), smp.u, smp.v);
    const CurvatureInvariants c = closed_invariants_kKkappa(smp.surface, smp.u);
    const FrameInvariants f = closed_invariants_frame8(smp.surface, smp.u);
    const FirstForm ff = closed_first_form(smp.surface, smp.u);
    k = std::max(k, rel_err(c.k, r.k));
    kappa = std::max(kappa, rel_err(c.kappa, kappa_orientation_sign(smp.surface.kind()) * r.kappa));
    K = std::max(K, rel_err(c.K, r.K));
    normH = std::max(normH, rel_err(r.normH, std::abs(f.nu1 + f.nu2) / 2));
    first = std::max({first, std::abs(ff.E - r.first.E), std::abs(r.first.F), std::abs(ff.G - r.first.G)});
    if (!r.is_minimal_point) {
      if (r.frame8) chen = std::max(chen, allied_mean_curvature_magnitude(r));
      const int expected = smp.surface.kind() == SurfaceKind::FirstType ? 1 : -1;
      if (r.epsilon != expected) ++wrong_eps;
    }
  }
  s.check("dual path k", k, 1e-8, "100 samples");
  s.check("dual path kappa", kappa, 1e-8, "100 samples");
  s.check("dual path K", K, 1e-8, "100 samples");
  s.check("first form E, F, G", first, 1e-12);
  s.check("normH = |nu1 + nu2| / 2 (closed)", normH, 1e-8);
  s.check("Chen property: allied magnitude", chen, 1e-10);
  s.check("eps = +1 first type, -1 second type", wrong_eps, 0.0, "count of mismatches");

  double M = 0;
  for (const Generated& g : generated_surfaces()) {
    const SurfacePatch patch = as_patch(g.surface);
    for (const double u : g.surface.meridian().sample_parameters(20)) {
      for (int j = 0; j < 20; ++j) M = std::max(M, std::abs(second_form(patch, u, 0.05 * j).M));
    }
  }
  s.check("principal parameters: |M| on 20x20 grids", M, 1e-10);
  return s.take();
}

std::vector<CheckResult> verify_meridian_solvers(std::uint64_t seed) {
  Suite s("meridian_solvers");
  Rng rng(seed + 3);
  double res_min = 0, spread = 0, recovered = 0, speed = 0, kernel_min = 0;
  for (int i = 0; i < 6; ++i) {
    const SurfaceKind kind = i % 2 == 0 ? SurfaceKind::FirstType : SurfaceKind::SecondType;
    const double alpha = uniform(rng, 0.5, 2), beta = uniform(rng, 0.5, 2), A = uniform(rng, 0.1, 1);
    const Interval fr = kind == SurfaceKind::FirstType ? Interval{1.2 * std::sqrt(A) / alpha, 4 * std::sqrt(A) / alpha}
                                                        : Interval{0.5, 2.0};
    const RotationalSurface surf(kind, alpha, beta,
                                 minimal_meridian(kind, alpha, beta, A, uniform(rng, -1, 1), i % 3 == 0 ? -1 : 1, fr));
    const std::vector<double> us = surf.meridian().sample_parameters(50);
    for (const double u : us) res_min = std::max(res_min, std::abs(residual_minimal(surf, u)));
    const ConservationResult c = conservation_check(surf, us);
    spread = std::max(spread, c.max_spread);
    recovered = std::max(recovered, std::abs(c.recovered_A - A) / A);
    speed = std::max(speed, minimal_speed_relation_residual(surf, A, us));
    const SurfacePatch patch = as_patch(surf);
    for (std::size_t j = 0; j < us.size(); j += 10) {
      const InvariantReport r = invariants(patch, us[j], 0.4);
      kernel_min = std::max(kernel_min, std::abs(r.kappa * r.kappa - r.k));
    }
  }
  s.check("minimal: |residual_minimal| (50 samples)", res_min, 1e-8);
  s.check("minimal: kernel |kappa^2 - k|", kernel_min, 1e-8);
  s.check("minimal: conservation spread", spread, 1e-6);
  s.check("minimal: recovered A (relative)", recovered, 1e-6);
  s.check("minimal: unit-speed first-order system", speed, 1e-7);

  double par = 0, par_nonzero = INFINITY;
  for (const Generated& g : generated_surfaces()) {
    if (g.name.rfind("parabolic", 0) != 0) continue;
    for (const double u : g.surface.meridian().sample_parameters(20)) {
      const CurvatureInvariants c = closed_invariants_kKkappa(g.surface, u);
      par = std::max(par, std::abs(c.k));
      if (g.name != "parabolic developable") par_nonzero = std::min(par_nonzero, std::abs(c.kappa));
    }
  }
  s.check("parabolic: |k|", par, 1e-10);
  s.check_at_least("parabolic (ii)/(iii): min |kappa|", par_nonzero, 1e-4);

  // Example trajectories against the analytic profiles.
  {
    const SolvedMeridian e1 = solve_ode(ode_problem(SurfaceKind::FirstType, OdeTarget::FlatNormal, 1, 1,
                                                    std::sin(0.5), std::cos(0.5), -std::tan(0.5), 0.7));
    const SolvedMeridian e2 = solve_ode(ode_problem(SurfaceKind::SecondType, OdeTarget::FlatNormal, 1, 1,
                                                    std::cosh(0.5), std::sinh(0.5), 1 / std::tanh(0.5), 3.0));
    double dev = 0;
    for (std::size_t i = 0; i < e1.u.size(); ++i) dev = std::max(dev, std::abs(e1.f[i] - std::sqrt(1 - e1.u[i] * e1.u[i])));
    for (std::size_t i = 0; i < e2.u.size(); ++i) dev = std::max(dev, std::abs(e2.f[i] - std::sqrt(e2.u[i] * e2.u[i] - 1)));
    s.check("ode: example trajectories vs analytic", (e1.completed() && e2.completed()) ? dev : INFINITY, 1e-6);
  }

  double defining = 0, halving = 0, nu_eq = 0;
  for (const OdeProblem& p : generic_ode_problems()) {
    const SolvedMeridian sol = solve_ode(p);
    if (!sol.completed()) {
      defining = INFINITY;
      continue;
    }
    const RotationalSurface surf = sol.surface();
    for (std::size_t i = 1; i + 1 < sol.u.size(); ++i) {
      defining = std::max(defining, std::abs(defining_residual(p.target, surf, sol.u[i])));
      if (p.target == OdeTarget::FlatNormal && i % 25 == 0) {
        const FrameInvariants f = closed_invariants_frame8(surf, sol.u[i]);
        nu_eq = std::max(nu_eq, rel_err(f.nu1, f.nu2));
      }
    }
    // A loose h_max so that rel_tol, not the step cap, sets the steps.
    OdeProblem loose = p;
    loose.step.h_max = 0.25;
    OdeProblem tight = loose;
    tight.step.rel_tol /= 2;
    const SolvedMeridian a = solve_ode(loose), b = solve_ode(tight);
    halving = std::max(halving, (a.completed() && b.completed())
                                    ? std::abs(b.f.back() - a.f.back()) / (10 * p.step.rel_tol)
                                    : INFINITY);
  }
  s.check("ode: defining residuals at interior nodes", defining, 1e-6);
  s.check("ode: rel_tol halving shift / (10 rel_tol)", halving, 1.0);
  s.check("ode: flat-normal nu1 = nu2", nu_eq, 1e-6);

  double speed_diag = 0;
  speed_diag = std::max(speed_diag, normalized_speed_residual(presets::circle_profile(1, {0, 1}), SurfaceKind::FirstType));
  speed_diag = std::max(speed_diag, normalized_speed_residual(presets::hyperbolic_profile(1, {0, 1}), SurfaceKind::SecondType));
  s.check("unit-speed presets", speed_diag, 1e-14);
  return s.take();
}

std::vector<CheckResult> verify_cli(std::uint64_t) {
  Suite s("cli_runner");
  const std::vector<std::string> inv = {"invariants", "--preset", "example1", "--nu", "6", "--nv", "6"};
  std::ostringstream a, b, e;
  const int ca = run(inv, a, e), cb = run(inv, b, e);
  s.check("deterministic invariants output", (ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty()) ? 0 : 1, 0);

  std::ostringstream m1, m2;
  const std::vector<std::string> mesh = {"export-mesh", "--preset", "example2", "--nu", "10", "--nv", "10"};
  const int cm = run(mesh, m1, e);
  const int cm2 = run(mesh, m2, e);
  const std::string js = m1.str();
  const auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = js.find(needle); p != std::string::npos; p = js.find(needle, p + 1)) ++n;
    return n;
  };
  // 100 vertex rows in vertices4 and vertices3 and 81 faces share the "[" prefix.
  const bool mesh_ok = cm == 0 && cm2 == 0 && js == m2.str() && count("\"hyperbolic\"") + count("\"elliptic\"") +
                                                                       count("\"parabolic\"") == 100;
  s.check("mesh export: 100 vertex classes, deterministic", mesh_ok ? 0 : 1, 0);

  std::ostringstream bad;
  const int code = run({"export-mesh", "--preset", "example2", "--axis", "5"}, bad, e);
  s.check("invalid projection axis exits 2", code == kInputError ? 0 : 1, 0);
  return s.take();
}

}  // namespace

std::vector<CheckResult> run_verify(const std::string& scope, std::uint64_t seed) {
  const std::vector<std::pair<std::string, std::function<std::vector<CheckResult>(std::uint64_t)>>> modules = {
      {"minkowski_core", verify_minkowski},
      {"surface_kernel", verify_surface_kernel},
      {"rotational_surfaces", verify_rotational},
      {"meridian_solvers", verify_meridian_solvers},
      {"cli_runner", verify_cli}};
  std::vector<CheckResult> out;
  bool found = false;
  for (const auto& [name, fn] : modules) {
    if (scope != "all" && scope != name) continue;
    found = true;
    for (auto& c : fn(seed)) out.push_back(std::move(c));
  }
  if (!found) throw InvalidArgument("unknown verify scope '" + scope + "'");
  return out;
}

}  // namespace grs::app
