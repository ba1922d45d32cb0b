#pragma once

// General rotational surfaces of first and second type in R^4_1:
//
//   first:  z = (f cos av, f sin av, g cosh bv, g sinh bv)
//   second: z = (f cos av, f sin av, g sinh bv, g cosh bv)
//
// with rotation speeds a = alpha, b = beta, together with the closed-form
// expressions of their invariants and the characterizing equations of the
// flat, flat-normal-connection and minimal classes.

#include <numbers>
#include <string>

#include "grs/meridian.hpp"
#include "grs/surface_kernel.hpp"

namespace grs {

enum class SurfaceKind { FirstType, SecondType };

const char* to_string(SurfaceKind kind);
SurfaceKind parse_kind(const std::string& text);  // "first" | "second"

class RotationalSurface {
 public:
  /// Throws InvalidArgument unless alpha, beta > 0.
  RotationalSurface(SurfaceKind kind, double alpha, double beta, MeridianCurve meridian);

  SurfaceKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const MeridianCurve& meridian() const { return meridian_; }

  /// Meridian jet at u; throws DomainViolation when u is outside J or the
  /// type's spacelike conditions fail there (strictly, or by `margin`).
  MeridianJet admissible_jet(double u, double margin = 0.0) const;

  bool is_admissible(double u, double margin = 0.0) const;

 private:
  SurfaceKind kind_;
  double alpha_, beta_;
  MeridianCurve meridian_;
};

/// Throws DomainViolation off the admissible domain.
Vec4 embed(const RotationalSurface& s, double u, double v);

/// embed() with the rotation factors and coordinates evaluated in Scalar,
/// e.g. long double for quadric-membership checks far out in v.
template <typename Scalar>
SpacetimeVector<Scalar> embed_as(const RotationalSurface& s, double u, double v) {
  const MeridianJet m = s.admissible_jet(u);
  const Scalar f = m.f, g = m.g;
  const Scalar av = Scalar(s.alpha()) * Scalar(v);
  const Scalar bv = Scalar(s.beta()) * Scalar(v);
  using std::cos, std::sin, std::cosh, std::sinh;
  const Scalar p = s.kind() == SurfaceKind::FirstType ? cosh(bv) : sinh(bv);
  const Scalar q = s.kind() == SurfaceKind::FirstType ? sinh(bv) : cosh(bv);
  SpacetimeVector<Scalar> z;
  z << f * cos(av), f * sin(av), g * p, g * q;
  return z;
}

/// Position and chain-rule partials; does not check admissibility.
SurfaceJet surface_jet(const RotationalSurface& s, double u, double v);

inline constexpr Interval kDefaultAngleRange{0.0, 2.0 * std::numbers::pi};

/// Analytic-mode patch over J x v_range. (u,v) are principal parameters.
SurfacePatch as_patch(const RotationalSurface& s, Interval v_range = kDefaultAngleRange);

struct CurvatureInvariants {
  double k, kappa, K;
};

/// k, kappa, K from their closed rational expressions in f, g and derivatives.
CurvatureInvariants closed_invariants_kKkappa(const RotationalSurface& s, double u);

/// The eight frame invariants from their closed-form expressions; gamma1,
/// lambda and beta1 are identically zero.
FrameInvariants closed_invariants_frame8(const RotationalSurface& s, double u);

/// Sign relating the closed-form kappa to the kappa of the kernel, whose normal
/// frame makes {z_u, z_v, n1, n2} positively oriented:
/// closed kappa = kappa_orientation_sign(kind) * kernel kappa.
int kappa_orientation_sign(SurfaceKind kind);

/// Left side minus right side of the flat (K = 0) characterization.
double residual_flat(const RotationalSurface& s, double u);

/// Left side minus right side of the flat-normal-connection characterization.
double residual_flat_normal(const RotationalSurface& s, double u);

/// Left side minus right side of the minimality characterization.
double residual_minimal(const RotationalSurface& s, double u);

/// E and G of the first fundamental form from the meridian alone.
FirstForm closed_first_form(const RotationalSurface& s, double u);

}  // namespace grs
