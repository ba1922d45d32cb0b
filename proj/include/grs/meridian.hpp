#pragma once

// Meridian (profile) curves u -> (f(u), g(u)) of general rotational surfaces.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace grs {

struct MeridianJet {
  double f, fp, fpp;
  double g, gp, gpp;
};

struct Interval {
  double lo, hi;

  bool contains(double t) const { return t >= lo && t <= hi; }
  double length() const { return hi - lo; }
};

struct PresetTag {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
};

struct SampledTag {
  std::size_t nodes;
  int spline_order;
  bool graph_chart;  // g(u) = u, only f was sampled
};

using MeridianProvenance = std::variant<PresetTag, SampledTag>;

class MeridianCurve {
 public:
  using Evaluator = std::function<MeridianJet(double)>;

  MeridianCurve(Evaluator eval, Interval domain, MeridianProvenance provenance);

  MeridianJet operator()(double u) const { return eval_(u); }

  const Interval& domain() const { return domain_; }
  const MeridianProvenance& provenance() const { return provenance_; }
  bool is_sampled() const { return std::holds_alternative<SampledTag>(provenance_); }

  /// Human-readable family name ("line", "circle", "sampled", ...).
  std::string family() const;

  /// The same curve on a sub-interval.
  MeridianCurve restricted(Interval sub) const;

  /// `count` equally spaced parameters covering the domain, endpoints included.
  std::vector<double> sample_parameters(std::size_t count) const;

 private:
  Evaluator eval_;
  Interval domain_;
  MeridianProvenance provenance_;
};

/// Closed-form meridians. Domains are given by the caller; regularity
/// (f'^2 + g'^2 > 0) is the caller's concern for the rotational surface.
namespace presets {

/// f = u, g = a u + b.
MeridianCurve line(double a, double b, Interval domain);

/// f = u, g = c u^(-beta^2/alpha^2); requires domain.lo > 0.
MeridianCurve power_law(double c, double alpha, double beta, Interval domain);

/// f = a cos u, g = a sin u.
MeridianCurve circle_profile(double a, Interval domain);

/// f = a sinh u, g = a cosh u.
MeridianCurve hyperbolic_profile(double a, Interval domain);

}  // namespace presets

/// Nodes of a sampled meridian. Without g columns the curve is the graph
/// chart f = f(u), g = u.
struct MeridianSamples {
  std::vector<double> u, f, fp;
  std::optional<std::vector<double>> g, gp;
};

inline constexpr double kResolutionTol = 1e-6;

/// Estimated error of the interpolated second derivatives, from comparing
/// the interpolant on all nodes with the one on every other node.
double resolution_estimate(const MeridianSamples& samples);

/// Cubic Hermite interpolation of (f, f') for f, with f' and f'' taken from
/// the not-a-knot spline through the nodal f' values (and likewise for g).
/// Nodes are reproduced exactly. Throws InsufficientResolution when
/// `resolution_estimate` exceeds `max_error`.
MeridianCurve sampled_meridian(MeridianSamples samples, double max_error = kResolutionTol);

}  // namespace grs
