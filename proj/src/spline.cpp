#include "grs/spline.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <vector>

#include "grs/errors.hpp"

namespace grs {

namespace {

void check_nodes(const Eigen::VectorXd& x, std::size_t minimum) {
  if (static_cast<std::size_t>(x.size()) < minimum) {
    throw InvalidArgument("interpolation needs at least " + std::to_string(minimum) + " nodes");
  }
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw InvalidArgument("interpolation nodes must be strictly increasing");
  }
}

}  // namespace

std::size_t locate_segment(const Eigen::VectorXd& x, double t) {
  const auto* begin = x.data();
  const auto* end = x.data() + x.size();
  const auto* it = std::upper_bound(begin, end, t);
  const auto i = static_cast<std::ptrdiff_t>(it - begin) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, x.size() - 2));
}

CubicSpline::CubicSpline(Eigen::VectorXd x, Eigen::VectorXd y) : x_(std::move(x)), y_(std::move(y)) {
  check_nodes(x_, 4);
  if (y_.size() != x_.size()) throw InvalidArgument("spline value count differs from node count");

  const Eigen::Index n = x_.size();
  const Eigen::VectorXd h = x_.tail(n - 1) - x_.head(n - 1);

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(3 * n));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  // Third derivative continuous across x[1] and x[n-2].
  entries.emplace_back(0, 0, h[1]);
  entries.emplace_back(0, 1, -(h[0] + h[1]));
  entries.emplace_back(0, 2, h[0]);
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    entries.emplace_back(i, i - 1, h[i - 1]);
    entries.emplace_back(i, i, 2.0 * (h[i - 1] + h[i]));
    entries.emplace_back(i, i + 1, h[i]);
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  entries.emplace_back(n - 1, n - 3, h[n - 2]);
  entries.emplace_back(n - 1, n - 2, -(h[n - 3] + h[n - 2]));
  entries.emplace_back(n - 1, n - 1, h[n - 3]);

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw InvalidArgument("spline system is singular");
  m_ = lu.solve(rhs);
}

std::size_t CubicSpline::segment(double t) const { return locate_segment(x_, t); }

double CubicSpline::value(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - t;
  const double b = t - x_[i];
  return m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * b * b * b / (6.0 * h) +
         (y_[i] / h - m_[i] * h / 6.0) * a + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * b;
}

double CubicSpline::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - t;
  const double b = t - x_[i];
  return -m_[i] * a * a / (2.0 * h) + m_[i + 1] * b * b / (2.0 * h) + (y_[i + 1] - y_[i]) / h -
         (m_[i + 1] - m_[i]) * h / 6.0;
}

double CubicSpline::second_derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  return (m_[i] * (x_[i + 1] - t) + m_[i + 1] * (t - x_[i])) / h;
}

CubicHermite::CubicHermite(Eigen::VectorXd x, Eigen::VectorXd y, Eigen::VectorXd dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
  check_nodes(x_, 2);
  if (y_.size() != x_.size() || dy_.size() != x_.size()) {
    throw InvalidArgument("Hermite data length differs from node count");
  }
}

double CubicHermite::value(double t) const {
  const std::size_t i = locate_segment(x_, t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * dy_[i] + (-2 * s3 + 3 * s2) * y_[i + 1] +
         (s3 - s2) * h * dy_[i + 1];
}

}  // namespace grs
