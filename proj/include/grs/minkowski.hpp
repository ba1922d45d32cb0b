#pragma once

// Linear algebra of Minkowski 4-space R^4_1: the signature (3,1) inner
// product diag(+1,+1,+1,-1), causal classification, orientation, and
// pseudo-orthonormal normal frames of spacelike 2-planes.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "grs/errors.hpp"

namespace grs {

template <typename Scalar>
using SpacetimeVector = Eigen::Matrix<Scalar, 4, 1>;

using Vec4 = SpacetimeVector<double>;

inline constexpr double kDefaultTol = 1e-10;

template <typename Scalar = double>
SpacetimeVector<Scalar> basis_vector(int index) {
  return SpacetimeVector<Scalar>::Unit(index - 1);
}

/// Indefinite inner product u1 v1 + u2 v2 + u3 v3 - u4 v4.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& a,
                                const Eigen::MatrixBase<DerivedB>& b) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedA, 4);
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedB, 4);
  return a.template head<3>().dot(b.template head<3>()) - a(3) * b(3);
}

template <typename Derived>
typename Derived::Scalar squared_norm(const Eigen::MatrixBase<Derived>& v) {
  return inner(v, v);
}

enum class CausalClass { Spacelike, Timelike, Lightlike, Zero };

template <typename Derived>
CausalClass causal_class(const Eigen::MatrixBase<Derived>& v,
                         typename Derived::Scalar tol = kDefaultTol) {
  using std::abs;
  if (v.cwiseAbs().maxCoeff() <= tol) return CausalClass::Zero;
  const auto q = inner(v, v);
  if (q > tol) return CausalClass::Spacelike;
  if (q < -tol) return CausalClass::Timelike;
  return CausalClass::Lightlike;
}

/// Determinant of the matrix whose columns are a, b, c, d in the fixed
/// frame Oe1e2e3e4. Positive iff the quadruple is positively oriented.
///
/// The columns are evaluated in a canonical (lexicographic) order and the
/// permutation sign applied afterwards, so swapping two arguments negates
/// the result bit for bit.
template <typename Scalar>
Scalar orientation_det(const SpacetimeVector<Scalar>& a,
                       const SpacetimeVector<Scalar>& b,
                       const SpacetimeVector<Scalar>& c,
                       const SpacetimeVector<Scalar>& d) {
  const std::array<const SpacetimeVector<Scalar>*, 4> cols{&a, &b, &c, &d};
  std::array<int, 4> order{0, 1, 2, 3};
  const auto less = [&](int i, int j) {
    const auto& x = *cols[static_cast<std::size_t>(i)];
    const auto& y = *cols[static_cast<std::size_t>(j)];
    return std::lexicographical_compare(x.data(), x.data() + 4, y.data(), y.data() + 4);
  };
  std::sort(order.begin(), order.end(), less);
  int inversions = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (order[i] > order[j]) ++inversions;
    }
    if (i > 0 && !less(order[i - 1], order[i])) return Scalar(0);  // repeated column
  }
  Eigen::Matrix<Scalar, 4, 4> m;
  m << *cols[static_cast<std::size_t>(order[0])], *cols[static_cast<std::size_t>(order[1])],
      *cols[static_cast<std::size_t>(order[2])], *cols[static_cast<std::size_t>(order[3])];
  const Scalar det = m.determinant();
  return inversions % 2 == 0 ? det : -det;
}

template <typename Scalar>
struct NormalFrame {
  SpacetimeVector<Scalar> n1;  // <n1,n1> = +1
  SpacetimeVector<Scalar> n2;  // <n2,n2> = -1
};

/// Pseudo-orthonormal normal frame {n1, n2} of the spacelike plane
/// span{t1, t2}, with {t1, t2, n1, n2} positively oriented.
///
/// The coordinate axes are projected onto the orthogonal complement in the
/// order e3, e4, e2, e1. At each stage the first candidate whose |<p,p>| is
/// within a factor of four of the best remaining candidate is taken, so
/// nearly dependent projections are skipped and the result is reproducible.
template <typename Scalar>
NormalFrame<Scalar> normal_frame(const SpacetimeVector<Scalar>& t1,
                                 const SpacetimeVector<Scalar>& t2,
                                 Scalar tol = Scalar(kDefaultTol)) {
  using std::abs;
  using std::sqrt;
  using Vec = SpacetimeVector<Scalar>;

  const Scalar g11 = inner(t1, t1);
  const Scalar g12 = inner(t1, t2);
  const Scalar g22 = inner(t2, t2);
  const Scalar gram = g11 * g22 - g12 * g12;
  if (!(g11 > tol) || !(gram > tol)) {
    throw DegenerateTangentPlane("tangent vectors do not span a spacelike plane (<t1,t1> = " +
                                 std::to_string(static_cast<double>(g11)) + ", Gram determinant = " +
                                 std::to_string(static_cast<double>(gram)) + ")");
  }

  const auto project = [&](const Vec& e) -> Vec {
    // Solve the 2x2 Gram system for the tangential component.
    const Scalar r1 = inner(t1, e);
    const Scalar r2 = inner(t2, e);
    const Scalar a = (g22 * r1 - g12 * r2) / gram;
    const Scalar b = (g11 * r2 - g12 * r1) / gram;
    return e - a * t1 - b * t2;
  };

  std::array<Vec, 4> candidates;
  constexpr std::array<int, 4> kOrder = {3, 4, 2, 1};
  for (std::size_t i = 0; i < kOrder.size(); ++i) candidates[i] = project(basis_vector<Scalar>(kOrder[i]));

  std::array<bool, 4> used{};
  std::optional<Vec> first;
  std::optional<Vec> second;
  for (int stage = 0; stage < 2; ++stage) {
    std::array<Vec, 4> reduced;
    std::array<Scalar, 4> weight{};
    Scalar best = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      reduced[i] = candidates[i];
      if (first) reduced[i] -= (inner(reduced[i], *first) / inner(*first, *first)) * *first;
      weight[i] = abs(inner(reduced[i], reduced[i]));
      best = std::max(best, weight[i]);
    }
    if (!(best > tol)) {
      throw LightlikeNormalDirection("no projected axis has a non-null normal component");
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i] || weight[i] < Scalar(0.25) * best) continue;
      used[i] = true;
      (stage == 0 ? first : second) = reduced[i];
      break;
    }
  }

  const Scalar q1 = inner(*first, *first);
  const Scalar q2 = inner(*second, *second);
  if (q1 * q2 >= 0) {
    throw LightlikeNormalDirection("normal plane does not have signature (1,1)");
  }
  Vec n1 = q1 > 0 ? *first : *second;
  Vec n2 = q1 > 0 ? *second : *first;
  n1 /= sqrt(inner(n1, n1));
  n2 /= sqrt(-inner(n2, n2));
  if (orientation_det(t1, t2, n1, n2) < 0) n2 = -n2;
  return {n1, n2};
}

inline const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Zero: return "zero";
  }
  return "unknown";
}

}  // namespace grs
