#pragma once

// Meridians realizing the special classes of general rotational surfaces:
// closed-form minimal and parabolic meridians, and numerically integrated
// flat and flat-normal-connection meridians in the graph chart g = u.

#include <span>
#include <string>
#include <vector>

#include "grs/meridian.hpp"
#include "grs/ode.hpp"
#include "grs/rotational_surface.hpp"

namespace grs {

// --- minimal ----------------------------------------------------------------

/// Minimal meridian as a graph over f:
///   g(f) = sqrt(A)/beta sin(eps (beta/alpha) ln|alpha f + sqrt(alpha^2 f^2 - s A)| + C)
/// with s = +1 (first type) or -1 (second type). The meridian parameter is
/// f itself. `f_range` is clipped to the admissible set (alpha^2 f^2 > A for
/// the first type, f != 0 for the second); EmptyDomain when nothing remains.
MeridianCurve minimal_meridian(SurfaceKind kind, double alpha, double beta, double A, double C, int sign_eps,
                               Interval f_range);

/// Largest deviation, over the given parameters, of the unit-speed tangent
/// of a minimal meridian from the first-order system
///   f_s^2 = (alpha^2 f^2 - s A) / G,  g_s^2 = (A - beta^2 g^2) / G.
double minimal_speed_relation_residual(const RotationalSurface& s, double A, std::span<const double> params);

struct ConservationResult {
  std::vector<double> c_squared;  // G^2 (mu^2 + nu1^2) per sample
  double max_spread;              // (max - min) / mean
  double recovered_A;             // mean c^2 / (alpha^2 + beta^2)
};

/// Evaluates the conserved quantity of minimal surfaces at each sample.
/// Throws NotMinimal when |residual_minimal| > minimal_tol at a sample.
ConservationResult conservation_check(const RotationalSurface& s, std::span<const double> u_samples,
                                      double minimal_tol = 1e-8);

// --- parabolic --------------------------------------------------------------

enum class ParabolicCase { DevelopableRuled, NonDevelopableRuled, PowerLaw };

ParabolicCase parse_parabolic_case(const std::string& text);
const char* to_string(ParabolicCase c);

struct ParabolicParams {
  double a = 0;  // slope (ruled cases)
  double b = 0;  // offset (non-developable ruled case)
  double c = 0;  // power-law coefficient
};

/// f = u with g = a u, a u + b, or c u^(-beta^2/alpha^2). Throws
/// InvalidArgument for zero parameters and DomainViolation when the kind's
/// spacelike conditions fail somewhere on `u_range`.
MeridianCurve parabolic_meridian(SurfaceKind kind, ParabolicCase which, double alpha, double beta,
                                 ParabolicParams params, Interval u_range);

// --- ODE families -----------------------------------------------------------

enum class OdeTarget { Flat, FlatNormal };
enum class Direction { Increasing, Decreasing };

const char* to_string(OdeTarget t);

struct StopConditions {
  double u_end;
  double guard_tol = 1e-6;
  std::size_t max_steps = 1'000'000;
};

/// Initial-value problem for a meridian f = f(u), g = u.
struct OdeProblem {
  SurfaceKind kind;
  OdeTarget target;
  double alpha, beta;
  double u0, f0, fp0;
  Direction direction;
  ode::Control step;
  StopConditions stop;
};

enum class Termination { DomainBoundary, Singularity, StepUnderflow, MaxSteps };

const char* to_string(Termination t);

struct SolvedMeridian {
  OdeProblem problem;
  std::vector<double> u, f, fp;  // in integration order
  Termination termination;
  std::string detail;            // which guard stopped the integration
  ode::Statistics stats;

  bool completed() const { return termination == Termination::DomainBoundary; }

  /// Throws SingularityReached, StepUnderflow or MaxSteps unless completed.
  void require_completed() const;

  MeridianSamples samples() const;
  MeridianCurve to_meridian(double max_interpolation_error = kResolutionTol) const;
  RotationalSurface surface(double max_interpolation_error = kResolutionTol) const;
};

/// Integrates the flat or flat-normal ODE in the substituted variable
/// arctan f' (first type) or ln|(1+f')/(1-f')| (second type).
/// Throws DomainViolation for initial data outside the open domain and
/// InvalidArgument for inconsistent stop conditions. Guard, step-size and
/// step-count terminations are reported in the result, not thrown.
SolvedMeridian solve_ode(const OdeProblem& problem);

/// Defining residual of the problem's target on a surface.
double defining_residual(OdeTarget target, const RotationalSurface& s, double u);

// --- diagnostics ------------------------------------------------------------

/// max |f'^2 + g'^2 - 1| (first type) or |f'^2 - g'^2 - 1| (second type)
/// over `count` equally spaced parameters of the meridian.
double normalized_speed_residual(const MeridianCurve& m, SurfaceKind kind, std::size_t count = 201);

}  // namespace grs
