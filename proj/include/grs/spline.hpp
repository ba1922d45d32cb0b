#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace grs {

/// Interpolating cubic spline with not-a-knot end conditions. Needs at least
/// four strictly increasing nodes; evaluation outside the nodes extends the
/// end polynomials.
class CubicSpline {
 public:
  CubicSpline(Eigen::VectorXd x, Eigen::VectorXd y);

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

  const Eigen::VectorXd& nodes() const { return x_; }

 private:
  std::size_t segment(double t) const;

  Eigen::VectorXd x_, y_, m_;  // m_: second derivatives at the nodes
};

/// Piecewise cubic Hermite interpolant of values and slopes.
class CubicHermite {
 public:
  CubicHermite(Eigen::VectorXd x, Eigen::VectorXd y, Eigen::VectorXd dy);

  double value(double t) const;

 private:
  Eigen::VectorXd x_, y_, dy_;
};

/// Index i with x[i] <= t < x[i+1], clamped to the first and last segments.
std::size_t locate_segment(const Eigen::VectorXd& x, double t);

}  // namespace grs
