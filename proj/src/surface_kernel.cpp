#include "grs/surface_kernel.hpp"

#include <cmath>
#include <sstream>

namespace grs {

namespace {

std::string at(double u, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "(u, v) = (" << u << ", " << v << ")";
  return os.str();
}

/// sigma on the orthonormal tangent pair x = z_u/sqrt(E),
/// y = (z_v - (F/E) z_u)/|.|, and H = (sigma(x,x) + sigma(y,y))/2.
struct OrthonormalSecondTensor {
  Vec4 xx, xy, yy, H;
};

OrthonormalSecondTensor orthonormal_tensor(const FirstForm& ff, const CoordinateSecondTensor& st) {
  const double r = ff.F / ff.E;
  OrthonormalSecondTensor out;
  out.xx = st.s11 / ff.E;
  out.xy = (st.s12 - r * st.s11) / ff.W;
  out.yy = (ff.E / (ff.W * ff.W)) * (st.s22 - 2.0 * r * st.s12 + r * r * st.s11);
  out.H = 0.5 * (out.xx + out.yy);
  return out;
}

/// Unit normal b along H at a point; the causal character is checked by the
/// caller at the base point.
Vec4 mean_curvature_direction(const SurfaceJet& jet, double tol) {
  const FirstForm ff = first_form(jet);
  const Vec4 H = orthonormal_tensor(ff, second_tensor(jet, tol)).H;
  return H / std::sqrt(std::abs(inner(H, H)));
}

}  // namespace

// --- SurfacePatch -----------------------------------------------------------

SurfacePatch::SurfacePatch(Embedding z, JetFunction jet, ParameterDomain domain, DerivativeMode mode)
    : embedding_(std::move(z)), analytic_jet_(std::move(jet)), domain_(domain), mode_(mode) {}

SurfacePatch SurfacePatch::analytic(JetFunction jet, ParameterDomain domain) {
  Embedding z = [jet](double u, double v) { return jet(u, v).z; };
  return SurfacePatch(std::move(z), std::move(jet), domain, AnalyticDerivatives{});
}

SurfacePatch SurfacePatch::finite_difference(Embedding z, ParameterDomain domain, FiniteDifference steps) {
  if (!(steps.first_step > 0) || !(steps.second_step > 0)) {
    throw InvalidArgument("finite-difference steps must be positive");
  }
  return SurfacePatch(std::move(z), {}, domain, steps);
}

SurfacePatch SurfacePatch::with_mode(DerivativeMode mode) const {
  if (std::holds_alternative<AnalyticDerivatives>(mode) && !analytic_jet_) {
    throw InvalidArgument("patch was built without analytic partials");
  }
  return SurfacePatch(embedding_, analytic_jet_, domain_, mode);
}

SurfaceJet SurfacePatch::jet(double u, double v) const {
  if (const auto* steps = std::get_if<FiniteDifference>(&mode_)) return difference_jet(u, v, *steps);
  return analytic_jet_(u, v);
}

SurfaceJet SurfacePatch::checked_jet(double u, double v) const {
  if (!domain_.contains(u, v)) throw DomainViolation("point outside the parameter domain at " + at(u, v));
  return jet(u, v);
}

SurfaceJet SurfacePatch::difference_jet(double u, double v, const FiniteDifference& steps) const {
  const auto& z = embedding_;
  const double h = steps.first_step;
  const double s = steps.second_step;
  SurfaceJet j;
  j.z = z(u, v);
  j.zu = (z(u + h, v) - z(u - h, v)) / (2.0 * h);
  j.zv = (z(u, v + h) - z(u, v - h)) / (2.0 * h);
  j.zuu = (z(u + s, v) - 2.0 * j.z + z(u - s, v)) / (s * s);
  j.zvv = (z(u, v + s) - 2.0 * j.z + z(u, v - s)) / (s * s);
  j.zuv = (z(u + s, v + s) - z(u + s, v - s) - z(u - s, v + s) + z(u - s, v - s)) / (4.0 * s * s);
  return j;
}

// --- forms ------------------------------------------------------------------

FirstForm first_form(const SurfaceJet& jet) {
  const double E = inner(jet.zu, jet.zu);
  const double F = inner(jet.zu, jet.zv);
  const double G = inner(jet.zv, jet.zv);
  const double det = E * G - F * F;
  if (!(E > 0) || !(det > 0)) {
    std::ostringstream os;
    os << "induced metric is not positive definite (E = " << E << ", EG - F^2 = " << det << ")";
    throw NotSpacelike(os.str());
  }
  return {E, F, G, std::sqrt(det)};
}

FirstForm first_form(const SurfacePatch& patch, double u, double v) {
  try {
    return first_form(patch.checked_jet(u, v));
  } catch (const NotSpacelike& e) {
    throw NotSpacelike(std::string(e.what()) + " at " + at(u, v));
  }
}

namespace {

// The frame is built in extended precision: for strongly boosted tangent
// planes the projection cancels large components.
NormalFrame<double> tangent_normal_frame(const SurfaceJet& jet, double tol) {
  using Wide = long double;
  const auto nf = normal_frame<Wide>(jet.zu.cast<Wide>(), jet.zv.cast<Wide>(), static_cast<Wide>(tol));
  return {nf.n1.cast<double>(), nf.n2.cast<double>()};
}

}  // namespace

CoordinateSecondTensor second_tensor(const SurfaceJet& jet, double tol) {
  CoordinateSecondTensor st;
  st.normals = tangent_normal_frame(jet, tol);
  const Vec4& n1 = st.normals.n1;
  const Vec4& n2 = st.normals.n2;
  // Normal part of z_ij: <z_ij,n1> n1 - <z_ij,n2> n2, since <n2,n2> = -1.
  const auto normal_part = [&](const Vec4& w) -> Vec4 { return inner(w, n1) * n1 - inner(w, n2) * n2; };
  st.s11 = normal_part(jet.zuu);
  st.s12 = normal_part(jet.zuv);
  st.s22 = normal_part(jet.zvv);
  return st;
}

namespace {

SecondForm second_form(const SurfaceJet& jet, const FirstForm& ff, const NormalFrame<double>& nf) {
  SecondForm s;
  s.c111 = inner(jet.zuu, nf.n1);
  s.c121 = inner(jet.zuv, nf.n1);
  s.c221 = inner(jet.zvv, nf.n1);
  s.c112 = inner(jet.zuu, nf.n2);
  s.c122 = inner(jet.zuv, nf.n2);
  s.c222 = inner(jet.zvv, nf.n2);
  s.L = (2.0 / ff.W) * (s.c111 * s.c122 - s.c121 * s.c112);
  s.M = (1.0 / ff.W) * (s.c111 * s.c222 - s.c221 * s.c112);
  s.N = (2.0 / ff.W) * (s.c121 * s.c222 - s.c221 * s.c122);
  return s;
}

}  // namespace

SecondForm second_form(const SurfaceJet& jet, double tol) {
  const FirstForm ff = first_form(jet);
  return second_form(jet, ff, tangent_normal_frame(jet, tol));
}

SecondForm second_form(const SurfacePatch& patch, double u, double v, double tol) {
  return second_form(patch.checked_jet(u, v), tol);
}

// --- invariants -------------------------------------------------------------

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Elliptic: return "elliptic";
    case PointClass::Parabolic: return "parabolic";
    case PointClass::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

InvariantReport pointwise_invariants(const SurfaceJet& jet, double tol) {
  InvariantReport r;
  r.first = first_form(jet);
  const CoordinateSecondTensor st = second_tensor(jet, tol);
  r.second = second_form(jet, r.first, st.normals);

  const auto& [E, F, G, W] = r.first;
  const double L = r.second.L, M = r.second.M, N = r.second.N;
  const double det = W * W;
  r.k = (L * N - M * M) / det;
  r.kappa = (E * N + G * L - 2.0 * F * M) / (2.0 * det);

  // Gauss equation in a flat ambient space.
  const OrthonormalSecondTensor sigma = orthonormal_tensor(r.first, st);
  r.K = inner(sigma.xx, sigma.yy) - inner(sigma.xy, sigma.xy);
  r.H = sigma.H;
  const double hh = inner(r.H, r.H);
  r.normH = std::sqrt(std::abs(hh));
  r.epsilon = hh > tol ? 1 : (hh < -tol ? -1 : 0);

  r.point_class = std::abs(r.k) <= tol ? PointClass::Parabolic
                  : r.k > 0            ? PointClass::Elliptic
                                       : PointClass::Hyperbolic;
  r.is_flat_point = std::max({std::abs(L), std::abs(M), std::abs(N)}) <= tol;
  r.is_minimal_point = r.H.cwiseAbs().maxCoeff() <= tol;
  return r;
}

namespace {

FrameInvariants frame_invariants_from(const SurfacePatch& patch, double u, double v, const SurfaceJet& jet,
                                      const InvariantReport& rep, const KernelOptions& opt) {
  const auto& ff = rep.first;
  const double scale_F = std::max(1.0, std::sqrt(ff.E * ff.G));
  const double scale_M = std::max({1.0, std::abs(rep.second.L), std::abs(rep.second.N)});
  if (std::abs(ff.F) > opt.principal_tol * scale_F || std::abs(rep.second.M) > opt.principal_tol * scale_M) {
    std::ostringstream os;
    os << "F = " << ff.F << ", M = " << rep.second.M << " at " << at(u, v);
    throw NotPrincipalParameters(os.str());
  }
  if (rep.is_minimal_point) throw MinimalPoint("H = 0 at " + at(u, v));
  const double hh = inner(rep.H, rep.H);
  if (std::abs(hh) <= opt.tol * rep.H.squaredNorm()) {
    throw LightlikeMeanCurvature("<H,H> = " + std::to_string(hh) + " at " + at(u, v));
  }

  const double sqrtE = std::sqrt(ff.E);
  const double sqrtG = std::sqrt(ff.G);
  const Vec4 x = jet.zu / sqrtE;
  const Vec4 y = jet.zv / sqrtG;
  const Vec4 b = rep.H / std::sqrt(std::abs(hh));

  // l spans the normal complement of b: for b = a1 n1 + a2 n2 it is
  // a2 n1 + a1 n2, with <l,l> = -<b,b>.
  const CoordinateSecondTensor st = second_tensor(jet, opt.tol);
  const double a1 = inner(b, st.normals.n1);
  const double a2 = -inner(b, st.normals.n2);
  Vec4 l = a2 * st.normals.n1 + a1 * st.normals.n2;
  l /= std::sqrt(std::abs(inner(l, l)));
  if (orientation_det(x, y, b, l) < 0) l = -l;

  // Ambient derivatives of the tangent fields projected on the normals equal
  // sigma exactly, so nu1, nu2, lambda, mu need no differencing.
  const OrthonormalSecondTensor sigma = orthonormal_tensor(ff, st);
  FrameInvariants out;
  out.nu1 = inner(sigma.xx, b);
  out.nu2 = inner(sigma.yy, b);
  out.lambda = inner(sigma.xy, b);
  out.mu = inner(sigma.xy, l);

  // gamma1 = -y(ln sqrt E), gamma2 = -x(ln sqrt G) with E_v = 2<z_u,z_uv>,
  // G_u = 2<z_v,z_uv>.
  const double Ev = 2.0 * inner(jet.zu, jet.zuv);
  const double Gu = 2.0 * inner(jet.zv, jet.zuv);
  out.gamma1 = -Ev / (2.0 * ff.E * sqrtG);
  out.gamma2 = -Gu / (2.0 * ff.G * sqrtE);

  const double h = opt.frame_step;
  const Vec4 bu = (mean_curvature_direction(patch.jet(u + h, v), opt.tol) -
                   mean_curvature_direction(patch.jet(u - h, v), opt.tol)) / (2.0 * h);
  const Vec4 bv = (mean_curvature_direction(patch.jet(u, v + h), opt.tol) -
                   mean_curvature_direction(patch.jet(u, v - h), opt.tol)) / (2.0 * h);
  out.beta1 = inner(bu, l) / sqrtE;
  out.beta2 = inner(bv, l) / sqrtG;
  return out;
}

}  // namespace

FrameInvariants frame_invariants(const SurfacePatch& patch, double u, double v, const KernelOptions& options) {
  const SurfaceJet jet = patch.checked_jet(u, v);
  const InvariantReport rep = pointwise_invariants(jet, options.tol);
  return frame_invariants_from(patch, u, v, jet, rep, options);
}

InvariantReport invariants(const SurfacePatch& patch, double u, double v, const KernelOptions& options) {
  const SurfaceJet jet = patch.checked_jet(u, v);
  InvariantReport rep = pointwise_invariants(jet, options.tol);
  try {
    rep.frame8 = frame_invariants_from(patch, u, v, jet, rep, options);
  } catch (const NotPrincipalParameters&) {
  } catch (const MinimalPoint&) {
  } catch (const LightlikeMeanCurvature&) {
  }
  return rep;
}

double allied_mean_curvature_magnitude(const InvariantReport& report) {
  if (!report.frame8) throw InvalidArgument("allied mean curvature needs the frame invariants");
  const double d = report.kappa * report.kappa - report.k;
  return std::abs(report.frame8->lambda) * std::sqrt(std::max(d, 0.0)) / 2.0;
}

}  // namespace grs
