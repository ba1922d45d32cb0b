#include "grs/rotational_surface.hpp"

#include <cmath>
#include <sstream>

namespace grs {

const char* to_string(SurfaceKind kind) { return kind == SurfaceKind::FirstType ? "first" : "second"; }

SurfaceKind parse_kind(const std::string& text) {
  if (text == "first" || text == "1") return SurfaceKind::FirstType;
  if (text == "second" || text == "2") return SurfaceKind::SecondType;
  throw InvalidArgument("surface kind must be 'first' or 'second', got '" + text + "'");
}

RotationalSurface::RotationalSurface(SurfaceKind kind, double alpha, double beta, MeridianCurve meridian)
    : kind_(kind), alpha_(alpha), beta_(beta), meridian_(std::move(meridian)) {
  if (!(alpha > 0) || !(beta > 0)) throw InvalidArgument("rotation speeds alpha and beta must be positive");
}

namespace {

/// Quantities shared by all closed forms. s = +1 for the first type and -1
/// for the second.
struct ClosedTerms {
  double s;
  double E;   // f'^2 + s g'^2
  double G;   // alpha^2 f^2 - s beta^2 g^2
  double A;   // g f' - f g'
  double B;   // g' f'' - f' g''
  double C;   // alpha^2 f g' + beta^2 g f'
  double ab;  // alpha beta
};

ClosedTerms closed_terms(const RotationalSurface& surf, const MeridianJet& m) {
  const double s = surf.kind() == SurfaceKind::FirstType ? 1.0 : -1.0;
  const double a2 = surf.alpha() * surf.alpha();
  const double b2 = surf.beta() * surf.beta();
  return {s,
          m.fp * m.fp + s * m.gp * m.gp,
          a2 * m.f * m.f - s * b2 * m.g * m.g,
          m.g * m.fp - m.f * m.gp,
          m.gp * m.fpp - m.fp * m.gpp,
          a2 * m.f * m.gp + b2 * m.g * m.fp,
          surf.alpha() * surf.beta()};
}

std::string describe(double u) {
  std::ostringstream os;
  os.precision(17);
  os << "u = " << u;
  return os.str();
}

MeridianJet meridian_in_domain(const RotationalSurface& s, double u) {
  if (!s.meridian().domain().contains(u)) {
    throw DomainViolation("meridian parameter outside its interval at " + describe(u));
  }
  return s.meridian()(u);
}

void require_nonzero(double value, const char* what, double u) {
  if (!std::isfinite(value) || std::abs(value) < 1e-14) {
    throw SingularConfiguration(std::string(what) + " vanishes at " + describe(u));
  }
}

}  // namespace

MeridianJet RotationalSurface::admissible_jet(double u, double margin) const {
  const MeridianJet m = meridian_in_domain(*this, u);
  const ClosedTerms t = closed_terms(*this, m);
  const bool first = kind_ == SurfaceKind::FirstType;
  // First type: E = f'^2 + g'^2 > 0 and G = alpha^2 f^2 - beta^2 g^2 > 0.
  // Second type: E = f'^2 - g'^2 > 0 and G = alpha^2 f^2 + beta^2 g^2 > 0.
  if (!(t.E > margin) || !(t.G > margin)) {
    std::ostringstream os;
    os << (first ? "first" : "second") << "-type spacelike condition fails at " << describe(u)
       << " (f'^2 " << (first ? "+" : "-") << " g'^2 = " << t.E << ", alpha^2 f^2 " << (first ? "-" : "+")
       << " beta^2 g^2 = " << t.G << ")";
    throw DomainViolation(os.str());
  }
  return m;
}

bool RotationalSurface::is_admissible(double u, double margin) const {
  try {
    admissible_jet(u, margin);
    return true;
  } catch (const DomainViolation&) {
    return false;
  }
}

SurfaceJet surface_jet(const RotationalSurface& s, double u, double v) {
  const MeridianJet m = s.meridian()(u);
  const double a = s.alpha(), b = s.beta();
  const double c = std::cos(a * v), sn = std::sin(a * v);
  const double ch = std::cosh(b * v), sh = std::sinh(b * v);
  // Slots 3 and 4 carry (cosh, sinh) for the first type and (sinh, cosh)
  // for the second; p is the function in slot 3, q in slot 4, and their
  // v-derivatives swap them.
  const bool first = s.kind() == SurfaceKind::FirstType;
  const double p = first ? ch : sh;
  const double q = first ? sh : ch;

  SurfaceJet j;
  j.z << m.f * c, m.f * sn, m.g * p, m.g * q;
  j.zu << m.fp * c, m.fp * sn, m.gp * p, m.gp * q;
  j.zuu << m.fpp * c, m.fpp * sn, m.gpp * p, m.gpp * q;
  j.zv << -a * m.f * sn, a * m.f * c, b * m.g * q, b * m.g * p;
  j.zuv << -a * m.fp * sn, a * m.fp * c, b * m.gp * q, b * m.gp * p;
  j.zvv << -a * a * m.f * c, -a * a * m.f * sn, b * b * m.g * p, b * b * m.g * q;
  return j;
}

Vec4 embed(const RotationalSurface& s, double u, double v) {
  s.admissible_jet(u);
  return surface_jet(s, u, v).z;
}

SurfacePatch as_patch(const RotationalSurface& s, Interval v_range) {
  const Interval J = s.meridian().domain();
  return SurfacePatch::analytic([s](double u, double v) { return surface_jet(s, u, v); },
                                ParameterDomain{J.lo, J.hi, v_range.lo, v_range.hi});
}

FirstForm closed_first_form(const RotationalSurface& s, double u) {
  const ClosedTerms t = closed_terms(s, s.admissible_jet(u));
  return {t.E, 0.0, t.G, std::sqrt(t.E * t.G)};
}

CurvatureInvariants closed_invariants_kKkappa(const RotationalSurface& s, double u) {
  const ClosedTerms t = closed_terms(s, s.admissible_jet(u));
  const double ab2 = t.ab * t.ab;
  const double E2G2 = t.E * t.E * t.G * t.G;
  CurvatureInvariants out;
  out.k = 4.0 * ab2 * t.A * t.A * t.B * t.C / (E2G2 * t.E * t.G);
  out.kappa = t.ab * t.A * (t.G * t.B + t.E * t.C) / E2G2;
  out.K = t.s * (ab2 * t.E * t.A * t.A - t.G * t.C * t.B) / E2G2;
  return out;
}

FrameInvariants closed_invariants_frame8(const RotationalSurface& s, double u) {
  const MeridianJet m = s.admissible_jet(u);
  const ClosedTerms t = closed_terms(s, m);
  const double a2 = s.alpha() * s.alpha();
  const double b2 = s.beta() * s.beta();
  const double rootE = std::sqrt(t.E);
  const double den = rootE * t.G;
  FrameInvariants out;
  out.gamma1 = 0.0;
  out.gamma2 = -(a2 * m.f * m.fp - t.s * b2 * m.g * m.gp) / den;
  out.nu1 = t.B / (t.E * rootE);
  out.nu2 = -t.C / den;
  out.lambda = 0.0;
  out.mu = t.s * t.ab * t.A / den;
  out.beta1 = 0.0;
  out.beta2 = t.ab * (t.s * m.f * m.fp + m.g * m.gp) / den;
  return out;
}

int kappa_orientation_sign(SurfaceKind kind) { return kind == SurfaceKind::FirstType ? -1 : 1; }

double residual_flat(const RotationalSurface& s, double u) {
  const ClosedTerms t = closed_terms(s, meridian_in_domain(s, u));
  require_nonzero(t.E, "f'^2 +- g'^2", u);
  require_nonzero(t.G, "alpha^2 f^2 -+ beta^2 g^2", u);
  return t.ab * t.ab * t.E * t.A * t.A - t.G * t.C * t.B;
}

double residual_flat_normal(const RotationalSurface& s, double u) {
  const ClosedTerms t = closed_terms(s, meridian_in_domain(s, u));
  require_nonzero(t.E, "f'^2 +- g'^2", u);
  require_nonzero(t.G, "alpha^2 f^2 -+ beta^2 g^2", u);
  return t.B / t.E + t.C / t.G;
}

double residual_minimal(const RotationalSurface& s, double u) {
  const ClosedTerms t = closed_terms(s, meridian_in_domain(s, u));
  require_nonzero(t.E, "f'^2 +- g'^2", u);
  require_nonzero(t.G, "alpha^2 f^2 -+ beta^2 g^2", u);
  return t.B / t.E - t.C / t.G;
}

}  // namespace grs
