#pragma once

// Numerical invariants of a spacelike surface z(u,v) in R^4_1: fundamental
// forms, the invariants k and kappa, Gauss curvature, the mean curvature
// vector, point classification and, in principal parameters, the eight
// invariants of the geometric frame {x, y, b, l}.

#include <functional>
#include <optional>
#include <variant>

#include "grs/minkowski.hpp"

namespace grs {

/// Position and partial derivatives up to second order at one (u,v).
struct SurfaceJet {
  Vec4 z, zu, zv, zuu, zuv, zvv;
};

struct ParameterDomain {
  double u_min, u_max, v_min, v_max;

  bool contains(double u, double v) const {
    return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
  }
};

struct AnalyticDerivatives {};

/// Central differences of z. First partials use `first_step`, second
/// partials `second_step` (the larger step keeps h^-2 cancellation in check).
struct FiniteDifference {
  double first_step = 1e-5;
  double second_step = 1e-4;
};

using DerivativeMode = std::variant<AnalyticDerivatives, FiniteDifference>;

class SurfacePatch {
 public:
  using Embedding = std::function<Vec4(double, double)>;
  using JetFunction = std::function<SurfaceJet(double, double)>;

  /// Patch whose partials come from the supplied jet evaluator.
  static SurfacePatch analytic(JetFunction jet, ParameterDomain domain);

  /// Patch whose partials are central differences of `z`.
  static SurfacePatch finite_difference(Embedding z, ParameterDomain domain,
                                        FiniteDifference steps = {});

  /// The same embedding evaluated in another derivative mode.
  SurfacePatch with_mode(DerivativeMode mode) const;

  const ParameterDomain& domain() const { return domain_; }
  const DerivativeMode& mode() const { return mode_; }

  Vec4 z(double u, double v) const { return embedding_(u, v); }

  /// Evaluates anywhere the embedding is defined; stencils of points near
  /// the boundary may leave the rectangle.
  SurfaceJet jet(double u, double v) const;

  /// As `jet`, but throws DomainViolation outside the parameter rectangle.
  SurfaceJet checked_jet(double u, double v) const;

 private:
  SurfacePatch(Embedding z, JetFunction jet, ParameterDomain domain, DerivativeMode mode);

  SurfaceJet difference_jet(double u, double v, const FiniteDifference& steps) const;

  Embedding embedding_;
  JetFunction analytic_jet_;  // empty for patches built from z alone
  ParameterDomain domain_;
  DerivativeMode mode_;
};

struct FirstForm {
  double E, F, G, W;
};

struct SecondForm {
  double c111, c121, c221;  // <z_ij, n1>
  double c112, c122, c222;  // <z_ij, n2>
  double L, M, N;
};

enum class PointClass { Elliptic, Parabolic, Hyperbolic };

const char* to_string(PointClass c);

/// The invariants of the geometric frame field {x, y, b, l}.
struct FrameInvariants {
  double gamma1, gamma2, nu1, nu2, lambda, mu, beta1, beta2;
};

struct InvariantReport {
  FirstForm first;
  SecondForm second;
  double k, kappa, K;
  Vec4 H;
  double normH;
  int epsilon;  // sign <H,H>; 0 when |<H,H>| <= tol
  PointClass point_class;
  bool is_flat_point;
  bool is_minimal_point;
  std::optional<FrameInvariants> frame8;
};

struct KernelOptions {
  double tol = kDefaultTol;
  /// Step of the central differences of the frame field b along u and v.
  double frame_step = 1e-4;
  /// Tolerance on |F| and |M| for the principal-parameter test.
  double principal_tol = 1e-10;
};

FirstForm first_form(const SurfaceJet& jet);
FirstForm first_form(const SurfacePatch& patch, double u, double v);

SecondForm second_form(const SurfaceJet& jet, double tol = kDefaultTol);
SecondForm second_form(const SurfacePatch& patch, double u, double v, double tol = kDefaultTol);

/// Second fundamental tensor on the coordinate fields, sigma(z_i, z_j), the
/// normal component of z_ij.
struct CoordinateSecondTensor {
  NormalFrame<double> normals;
  Vec4 s11, s12, s22;
};

CoordinateSecondTensor second_tensor(const SurfaceJet& jet, double tol = kDefaultTol);

/// Everything except frame8, which `invariants` fills when the point is in
/// principal parameters with non-null, non-zero H.
InvariantReport pointwise_invariants(const SurfaceJet& jet, double tol = kDefaultTol);

InvariantReport invariants(const SurfacePatch& patch, double u, double v,
                           const KernelOptions& options = {});

/// Throws NotPrincipalParameters, MinimalPoint or LightlikeMeanCurvature when
/// the frame {x, y, b, l} is undefined at (u,v).
FrameInvariants frame_invariants(const SurfacePatch& patch, double u, double v,
                                 const KernelOptions& options = {});

/// |a(H)| = |lambda| sqrt(kappa^2 - k) / 2. Requires report.frame8.
double allied_mean_curvature_magnitude(const InvariantReport& report);

}  // namespace grs
