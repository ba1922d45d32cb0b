#include "grs/meridian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "grs/errors.hpp"
#include "grs/spline.hpp"

namespace grs {

MeridianCurve::MeridianCurve(Evaluator eval, Interval domain, MeridianProvenance provenance)
    : eval_(std::move(eval)), domain_(domain), provenance_(std::move(provenance)) {
  if (!(domain_.hi > domain_.lo)) throw InvalidArgument("meridian domain must have positive length");
}

std::string MeridianCurve::family() const {
  if (const auto* p = std::get_if<PresetTag>(&provenance_)) return p->name;
  return "sampled";
}

MeridianCurve MeridianCurve::restricted(Interval sub) const {
  if (!(sub.lo >= domain_.lo && sub.hi <= domain_.hi)) {
    throw DomainViolation("sub-interval leaves the meridian domain");
  }
  return MeridianCurve(eval_, sub, provenance_);
}

std::vector<double> MeridianCurve::sample_parameters(std::size_t count) const {
  if (count < 2) throw InvalidArgument("need at least two sample parameters");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = domain_.lo + domain_.length() * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = domain_.hi;
  return out;
}

namespace presets {

MeridianCurve line(double a, double b, Interval domain) {
  return MeridianCurve([a, b](double u) { return MeridianJet{u, 1.0, 0.0, a * u + b, a, 0.0}; }, domain,
                       PresetTag{"line", {{"a", a}, {"b", b}}});
}

MeridianCurve power_law(double c, double alpha, double beta, Interval domain) {
  if (!(domain.lo > 0)) throw DomainViolation("power-law meridian needs u > 0");
  const double p = -(beta * beta) / (alpha * alpha);
  return MeridianCurve(
      [c, p](double u) {
        const double g = c * std::pow(u, p);
        return MeridianJet{u, 1.0, 0.0, g, p * g / u, p * (p - 1.0) * g / (u * u)};
      },
      domain, PresetTag{"power-law", {{"c", c}, {"exponent", p}}});
}

MeridianCurve circle_profile(double a, Interval domain) {
  return MeridianCurve(
      [a](double u) {
        const double c = std::cos(u), s = std::sin(u);
        return MeridianJet{a * c, -a * s, -a * c, a * s, a * c, -a * s};
      },
      domain, PresetTag{"circle", {{"a", a}}});
}

MeridianCurve hyperbolic_profile(double a, Interval domain) {
  return MeridianCurve(
      [a](double u) {
        const double c = std::cosh(u), s = std::sinh(u);
        return MeridianJet{a * s, a * c, a * s, a * c, a * s, a * c};
      },
      domain, PresetTag{"hyperbolic", {{"a", a}}});
}

}  // namespace presets

namespace {

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void sort_by_parameter(MeridianSamples& s) {
  std::vector<std::size_t> order(s.u.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.u[a] < s.u[b]; });
  const auto permute = [&](std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[i] = v[order[i]];
    v = std::move(out);
  };
  permute(s.u);
  permute(s.f);
  permute(s.fp);
  if (s.g) permute(*s.g);
  if (s.gp) permute(*s.gp);
}

void validate(const MeridianSamples& s) {
  const std::size_t n = s.u.size();
  if (s.f.size() != n || s.fp.size() != n) throw InvalidArgument("meridian sample columns differ in length");
  if (s.g.has_value() != s.gp.has_value()) throw InvalidArgument("g and gprime must be given together");
  if (s.g && (s.g->size() != n || s.gp->size() != n)) {
    throw InvalidArgument("meridian sample columns differ in length");
  }
  if (n < 8) throw InvalidArgument("a sampled meridian needs at least 8 nodes");
}

/// Error estimate of the spline derivative through (u, d) at the dropped
/// nodes. The error is O(h^3), so halving the node set multiplies it by ~8.
double derivative_error_estimate(const Eigen::VectorXd& u, const Eigen::VectorXd& d) {
  const Eigen::Index n = u.size();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; i += 2) keep.push_back(i);
  if (keep.back() != n - 1) keep.push_back(n - 1);
  Eigen::VectorXd uc(static_cast<Eigen::Index>(keep.size())), dc(uc.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    uc[static_cast<Eigen::Index>(i)] = u[keep[i]];
    dc[static_cast<Eigen::Index>(i)] = d[keep[i]];
  }
  const CubicSpline fine(u, d);
  const CubicSpline coarse(uc, dc);
  double worst = 0;
  for (Eigen::Index i = 1; i < n - 1; i += 2) {
    worst = std::max(worst, std::abs(fine.derivative(u[i]) - coarse.derivative(u[i])));
  }
  return worst / 7.0;
}

}  // namespace

double resolution_estimate(const MeridianSamples& input) {
  MeridianSamples s = input;
  validate(s);
  sort_by_parameter(s);
  double est = derivative_error_estimate(to_eigen(s.u), to_eigen(s.fp));
  if (s.gp) est = std::max(est, derivative_error_estimate(to_eigen(s.u), to_eigen(*s.gp)));
  return est;
}

MeridianCurve sampled_meridian(MeridianSamples samples, double max_error) {
  validate(samples);
  sort_by_parameter(samples);
  const double est = resolution_estimate(samples);
  if (!(est <= max_error)) {
    throw InsufficientResolution("interpolated second derivative error estimate " + std::to_string(est) +
                                 " exceeds " + std::to_string(max_error));
  }

  const Eigen::VectorXd u = to_eigen(samples.u);
  const bool graph = !samples.g.has_value();
  auto f = std::make_shared<const CubicHermite>(u, to_eigen(samples.f), to_eigen(samples.fp));
  auto fp = std::make_shared<const CubicSpline>(u, to_eigen(samples.fp));
  std::shared_ptr<const CubicHermite> g;
  std::shared_ptr<const CubicSpline> gp;
  if (!graph) {
    g = std::make_shared<const CubicHermite>(u, to_eigen(*samples.g), to_eigen(*samples.gp));
    gp = std::make_shared<const CubicSpline>(u, to_eigen(*samples.gp));
  }

  // Nodal slopes are reproduced exactly rather than through the spline's
  // round-off.
  auto nodes = std::make_shared<const MeridianSamples>(samples);
  MeridianCurve::Evaluator eval = [f, fp, g, gp, nodes](double t) {
    MeridianJet j{};
    j.f = f->value(t);
    j.fp = fp->value(t);
    j.fpp = fp->derivative(t);
    if (g) {
      j.g = g->value(t);
      j.gp = gp->value(t);
      j.gpp = gp->derivative(t);
    } else {
      j.g = t;
      j.gp = 1.0;
      j.gpp = 0.0;
    }
    const auto it = std::lower_bound(nodes->u.begin(), nodes->u.end(), t);
    if (it != nodes->u.end() && *it == t) {
      const auto i = static_cast<std::size_t>(it - nodes->u.begin());
      j.f = nodes->f[i];
      j.fp = nodes->fp[i];
      if (nodes->g) {
        j.g = (*nodes->g)[i];
        j.gp = (*nodes->gp)[i];
      }
    }
    return j;
  };
  const Interval domain{samples.u.front(), samples.u.back()};
  return MeridianCurve(std::move(eval), domain, SampledTag{samples.u.size(), 3, graph});
}

}  // namespace grs
