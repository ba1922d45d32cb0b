#include "grs/meridian_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace grs {

namespace {

double kind_sign(SurfaceKind kind) { return kind == SurfaceKind::FirstType ? 1.0 : -1.0; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

// --- minimal ----------------------------------------------------------------

MeridianCurve minimal_meridian(SurfaceKind kind, double alpha, double beta, double A, double C, int sign_eps,
                               Interval f_range) {
  if (!(alpha > 0) || !(beta > 0)) throw InvalidArgument("alpha and beta must be positive");
  if (!(A > 0)) throw InvalidArgument("the constant A must be positive");
  if (sign_eps != 1 && sign_eps != -1) throw InvalidArgument("sign_eps must be +1 or -1");
  if (!(f_range.hi > f_range.lo)) throw InvalidArgument("empty f-range");

  // Admissible f: |f| > r, where r = sqrt(A)/alpha (first type) or 0
  // (second type). Endpoints on the excluded set are pulled in by a relative
  // margin so that g' stays finite.
  const double s = kind_sign(kind);
  const double r = kind == SurfaceKind::FirstType ? std::sqrt(A) / alpha : 0.0;
  const double margin = 1e-6 * std::max(1.0, r);
  Interval positive{std::max(f_range.lo, r + margin), f_range.hi};
  Interval negative{f_range.lo, std::min(f_range.hi, -r - margin)};
  const bool has_pos = positive.hi > positive.lo;
  const bool has_neg = negative.hi > negative.lo;
  if (!has_pos && !has_neg) {
    throw EmptyDomain("no f in [" + fmt(f_range.lo) + ", " + fmt(f_range.hi) +
                      "] satisfies alpha^2 f^2 " + (s > 0 ? "> A" : "> 0"));
  }
  const Interval domain = !has_neg ? positive : !has_pos ? negative
                          : (positive.length() >= negative.length() ? positive : negative);

  const double root_A = std::sqrt(A);
  const double eps = sign_eps;
  MeridianCurve::Evaluator eval = [=](double f) {
    const double R = std::sqrt(alpha * alpha * f * f - s * A);
    const double phase = eps * (beta / alpha) * std::log(std::abs(alpha * f + R)) + C;
    const double sn = std::sin(phase), cs = std::cos(phase);
    // d(phase)/df = eps beta / R and dR/df = alpha^2 f / R.
    const double dphase = eps * beta / R;
    const double dR = alpha * alpha * f / R;
    MeridianJet j;
    j.f = f;
    j.fp = 1.0;
    j.fpp = 0.0;
    j.g = root_A / beta * sn;
    j.gp = eps * root_A * cs / R;
    j.gpp = eps * root_A * (-sn * dphase / R - cs * dR / (R * R));
    return j;
  };
  return MeridianCurve(std::move(eval), domain,
                       PresetTag{"minimal",
                                 {{"alpha", alpha}, {"beta", beta}, {"A", A}, {"C", C}, {"eps", eps}}});
}

double minimal_speed_relation_residual(const RotationalSurface& surf, double A, std::span<const double> params) {
  const double s = kind_sign(surf.kind());
  const double a2 = surf.alpha() * surf.alpha();
  const double b2 = surf.beta() * surf.beta();
  double worst = 0;
  for (const double u : params) {
    const MeridianJet m = surf.admissible_jet(u);
    const double speed2 = m.fp * m.fp + s * m.gp * m.gp;
    const double G = a2 * m.f * m.f - s * b2 * m.g * m.g;
    const double fs2 = m.fp * m.fp / speed2;
    const double gs2 = m.gp * m.gp / speed2;
    worst = std::max({worst, std::abs(fs2 - (a2 * m.f * m.f - s * A) / G), std::abs(gs2 - (A - b2 * m.g * m.g) / G)});
  }
  return worst;
}

ConservationResult conservation_check(const RotationalSurface& surf, std::span<const double> u_samples,
                                      double minimal_tol) {
  if (u_samples.empty()) throw InvalidArgument("conservation check needs samples");
  ConservationResult out;
  out.c_squared.reserve(u_samples.size());
  for (const double u : u_samples) {
    const double res = residual_minimal(surf, u);
    if (!(std::abs(res) <= minimal_tol)) {
      throw NotMinimal("residual_minimal = " + fmt(res) + " at u = " + fmt(u));
    }
    const FrameInvariants fi = closed_invariants_frame8(surf, u);
    const double G = closed_first_form(surf, u).G;
    out.c_squared.push_back(G * G * (fi.mu * fi.mu + fi.nu1 * fi.nu1));
  }
  const auto [lo, hi] = std::minmax_element(out.c_squared.begin(), out.c_squared.end());
  const double mean =
      std::accumulate(out.c_squared.begin(), out.c_squared.end(), 0.0) / static_cast<double>(out.c_squared.size());
  out.max_spread = (*hi - *lo) / std::abs(mean);
  out.recovered_A = mean / (surf.alpha() * surf.alpha() + surf.beta() * surf.beta());
  return out;
}

// --- parabolic --------------------------------------------------------------

ParabolicCase parse_parabolic_case(const std::string& text) {
  if (text == "developable" || text == "developable-ruled") return ParabolicCase::DevelopableRuled;
  if (text == "ruled" || text == "non-developable-ruled") return ParabolicCase::NonDevelopableRuled;
  if (text == "power-law") return ParabolicCase::PowerLaw;
  throw InvalidArgument("unknown parabolic case '" + text + "'");
}

const char* to_string(ParabolicCase c) {
  switch (c) {
    case ParabolicCase::DevelopableRuled: return "developable";
    case ParabolicCase::NonDevelopableRuled: return "ruled";
    case ParabolicCase::PowerLaw: return "power-law";
  }
  return "unknown";
}

MeridianCurve parabolic_meridian(SurfaceKind kind, ParabolicCase which, double alpha, double beta,
                                 ParabolicParams params, Interval u_range) {
  std::optional<MeridianCurve> m;
  switch (which) {
    case ParabolicCase::DevelopableRuled:
      if (params.a == 0) throw InvalidArgument("developable ruled case needs a != 0");
      m = presets::line(params.a, 0.0, u_range);
      break;
    case ParabolicCase::NonDevelopableRuled:
      if (params.a == 0 || params.b == 0) throw InvalidArgument("non-developable ruled case needs a, b != 0");
      m = presets::line(params.a, params.b, u_range);
      break;
    case ParabolicCase::PowerLaw:
      if (params.c == 0) throw InvalidArgument("power-law case needs c != 0");
      m = presets::power_law(params.c, alpha, beta, u_range);
      break;
  }
  const RotationalSurface surf(kind, alpha, beta, *m);
  for (const double u : m->sample_parameters(401)) surf.admissible_jet(u);
  return *m;
}

// --- ODE families -----------------------------------------------------------

const char* to_string(OdeTarget t) { return t == OdeTarget::Flat ? "flat" : "flat-normal"; }

const char* to_string(Termination t) {
  switch (t) {
    case Termination::DomainBoundary: return "domain-boundary";
    case Termination::Singularity: return "singularity";
    case Termination::StepUnderflow: return "step-underflow";
    case Termination::MaxSteps: return "max-steps";
  }
  return "unknown";
}

void SolvedMeridian::require_completed() const {
  const std::string where = "u = " + fmt(u.empty() ? problem.u0 : u.back());
  switch (termination) {
    case Termination::DomainBoundary: return;
    case Termination::Singularity: throw SingularityReached(detail + " at " + where);
    case Termination::StepUnderflow: throw StepUnderflow("step size fell below h_min at " + where);
    case Termination::MaxSteps: throw MaxSteps("step limit reached at " + where);
  }
}

MeridianSamples SolvedMeridian::samples() const { return MeridianSamples{u, f, fp, std::nullopt, std::nullopt}; }

MeridianCurve SolvedMeridian::to_meridian(double max_interpolation_error) const {
  return sampled_meridian(samples(), max_interpolation_error);
}

RotationalSurface SolvedMeridian::surface(double max_interpolation_error) const {
  return RotationalSurface(problem.kind, problem.alpha, problem.beta, to_meridian(max_interpolation_error));
}

namespace {

/// Right-hand side in the substituted variable phi: arctan f' for the first
/// type, ln|(1+f')/(1-f')| for the second. State = (f, phi).
class MeridianOde {
 public:
  explicit MeridianOde(const OdeProblem& p)
      : p_(p), a2_(p.alpha * p.alpha), b2_(p.beta * p.beta), first_(p.kind == SurfaceKind::FirstType),
        steep_(std::abs(p.fp0) > 1.0) {}

  double slope(double phi) const {
    if (first_) return std::tan(phi);
    // |f'| > 1 lives on the coth branch, |f'| < 1 on the tanh branch.
    return steep_ ? 1.0 / std::tanh(0.5 * phi) : std::tanh(0.5 * phi);
  }

  double substituted(double w) const {
    if (first_) return std::atan(w);
    return std::log(std::abs((1.0 + w) / (1.0 - w)));
  }

  std::optional<Eigen::Vector2d> operator()(double u, const Eigen::Vector2d& y) {
    const double f = y[0];
    const double phi = y[1];
    const double guard = p_.stop.guard_tol;
    double w;
    if (first_) {
      if (std::abs(std::cos(phi)) < guard) return fail("cos(arctan f') (f' unbounded in the chart g = u)");
      w = std::tan(phi);
    } else {
      const double t = std::tanh(0.5 * phi);
      if (steep_ && std::abs(t) < guard) return fail("tanh(rho/2) (f' unbounded in the chart g = u)");
      w = steep_ ? 1.0 / t : t;
      if (w * w - 1.0 < guard) return fail("f'^2 - 1 (the |f'| = 1 barrier)");
    }
    const double G = first_ ? a2_ * f * f - b2_ * u * u : a2_ * f * f + b2_ * u * u;
    // One-sided: a smooth solution can cross G = 0 between stages.
    if (G < guard) {
      return fail(first_ ? "alpha^2 f^2 - beta^2 u^2" : "alpha^2 f^2 + beta^2 u^2");
    }
    const double D = a2_ * f + b2_ * u * w;
    double dphi;
    if (p_.target == OdeTarget::Flat) {
      if (std::abs(D) < guard) return fail("alpha^2 f + beta^2 u f'");
      const double q = u * w - f;
      dphi = (first_ ? 1.0 : -2.0) * a2_ * b2_ * q * q / (G * D);
    } else {
      dphi = first_ ? -D / G : 2.0 * D / G;
    }
    if (!std::isfinite(dphi) || !std::isfinite(w)) return fail("non-finite right-hand side");
    last_failure_.clear();
    return Eigen::Vector2d(w, dphi);
  }

  const std::string& last_failure() const { return last_failure_; }

 private:
  std::optional<Eigen::Vector2d> fail(const char* what) {
    last_failure_ = std::string(what) + " below the singularity guard";
    return std::nullopt;
  }

  const OdeProblem& p_;
  double a2_, b2_;
  bool first_, steep_;
  std::string last_failure_;
};

void validate(const OdeProblem& p) {
  if (!(p.alpha > 0) || !(p.beta > 0)) throw InvalidArgument("alpha and beta must be positive");
  const double span = p.stop.u_end - p.u0;
  if (span == 0) throw InvalidArgument("u_end equals u0");
  if ((p.direction == Direction::Increasing) != (span > 0)) {
    throw InvalidArgument("u_end lies on the wrong side of u0 for the requested direction");
  }
  if (!(p.step.rel_tol > 0) || !(p.step.abs_tol > 0) || !(p.step.h_init > 0) || !(p.step.h_min > 0) ||
      !(p.step.h_max > 0)) {
    throw InvalidArgument("step controls must be positive");
  }

  const double a2 = p.alpha * p.alpha, b2 = p.beta * p.beta;
  const double guard = p.stop.guard_tol;
  const bool first = p.kind == SurfaceKind::FirstType;
  const double G = first ? a2 * p.f0 * p.f0 - b2 * p.u0 * p.u0 : a2 * p.f0 * p.f0 + b2 * p.u0 * p.u0;
  if (!(G > guard)) {
    throw DomainViolation(std::string("initial point violates ") +
                          (first ? "alpha^2 f^2 - beta^2 u^2 > 0" : "alpha^2 f^2 + beta^2 u^2 > 0") +
                          " (value " + fmt(G) + ")");
  }
  if (!first && !(p.fp0 * p.fp0 - 1.0 > guard)) {
    throw DomainViolation("second-type meridian f = f(u), g = u needs f'^2 - 1 > 0 (f'0 = " + fmt(p.fp0) + ")");
  }
  if (p.target == OdeTarget::Flat && !(std::abs(a2 * p.f0 + b2 * p.u0 * p.fp0) > guard)) {
    throw DomainViolation("initial point has alpha^2 f + beta^2 u f' = 0");
  }
}

}  // namespace

SolvedMeridian solve_ode(const OdeProblem& problem) {
  validate(problem);
  MeridianOde rhs(problem);

  SolvedMeridian out;
  out.problem = problem;
  auto observer = [&](double u, const Eigen::Vector2d& y) {
    out.u.push_back(u);
    out.f.push_back(y[0]);
    out.fp.push_back(rhs.slope(y[1]));
  };
  ode::Control control = problem.step;
  control.max_steps = problem.stop.max_steps;
  const Eigen::Vector2d y0(problem.f0, rhs.substituted(problem.fp0));
  const ode::Status status =
      ode::integrate<Eigen::Vector2d>(std::ref(rhs), problem.u0, y0, problem.stop.u_end, control, observer, &out.stats);
  switch (status) {
    case ode::Status::Reached: out.termination = Termination::DomainBoundary; break;
    case ode::Status::Guard:
      out.termination = Termination::Singularity;
      out.detail = rhs.last_failure();
      break;
    case ode::Status::StepUnderflow: out.termination = Termination::StepUnderflow; break;
    case ode::Status::MaxSteps: out.termination = Termination::MaxSteps; break;
  }
  return out;
}

double defining_residual(OdeTarget target, const RotationalSurface& s, double u) {
  return target == OdeTarget::Flat ? residual_flat(s, u) : residual_flat_normal(s, u);
}

// --- diagnostics ------------------------------------------------------------

double normalized_speed_residual(const MeridianCurve& m, SurfaceKind kind, std::size_t count) {
  const double s = kind_sign(kind);
  double worst = 0;
  for (const double u : m.sample_parameters(count)) {
    const MeridianJet j = m(u);
    worst = std::max(worst, std::abs(j.fp * j.fp + s * j.gp * j.gp - 1.0));
  }
  return worst;
}

}  // namespace grs
