#include <doctest.h>

#include <cmath>

#include "grs/minkowski.hpp"

using namespace grs;

namespace {

Vec4 v4(double a, double b, double c, double d) { return Vec4(a, b, c, d); }

}  // namespace

TEST_SUITE("minkowski_core") {
  TEST_CASE("inner product signature") {
    CHECK(inner(basis_vector<double>(1), basis_vector<double>(1)) == 1.0);
    CHECK(inner(basis_vector<double>(4), basis_vector<double>(4)) == -1.0);
    CHECK(inner(v4(1, 0, 0, 1), v4(1, 0, 0, 1)) == 0.0);
    CHECK(inner(v4(1, 2, 3, 4), v4(5, 6, 7, 8)) == doctest::Approx(5 + 12 + 21 - 32));
    CHECK(squared_norm(v4(1, 2, 3, 4)) == doctest::Approx(1 + 4 + 9 - 16));
  }

  TEST_CASE("inner is symmetric and bilinear") {
    const Vec4 a = v4(0.3, -1.2, 0.7, 2.0), b = v4(1.1, 0.4, -0.5, 0.9), w = v4(-0.2, 0.8, 1.5, -0.6);
    CHECK(inner(a, b) == inner(b, a));
    const double lhs = inner(Vec4(2.5 * a - 1.5 * b), w);
    CHECK(lhs == doctest::Approx(2.5 * inner(a, w) - 1.5 * inner(b, w)).epsilon(1e-14));
  }

  TEST_CASE("inner works on other scalar types") {
    const SpacetimeVector<long double> x(1.0L, 2.0L, 0.0L, 3.0L);
    CHECK(inner(x, x) == -4.0L);
  }

  TEST_CASE("causal classes") {
    CHECK(causal_class(basis_vector<double>(2)) == CausalClass::Spacelike);
    CHECK(causal_class(basis_vector<double>(4)) == CausalClass::Timelike);
    CHECK(causal_class(v4(3, 0, 0, 3)) == CausalClass::Lightlike);
    CHECK(causal_class(v4(0, 0, 0, 0)) == CausalClass::Zero);
    CHECK(causal_class(v4(1e-12, 0, 0, 0)) == CausalClass::Zero);
    CHECK(causal_class(v4(1e-3, 0, 0, 0)) == CausalClass::Spacelike);
    CHECK(causal_class(v4(0.05, 0, 0, 0), 1e-2) == CausalClass::Lightlike);
    CHECK(causal_class(v4(1e-3, 0, 0, 0), 1e-2) == CausalClass::Zero);
    CHECK(std::string(to_string(CausalClass::Lightlike)) == "lightlike");
  }

  TEST_CASE("orientation determinant") {
    const Vec4 e1 = basis_vector<double>(1), e2 = basis_vector<double>(2), e3 = basis_vector<double>(3),
               e4 = basis_vector<double>(4);
    CHECK(orientation_det(e1, e2, e3, e4) == 1.0);
    CHECK(orientation_det(e2, e1, e3, e4) == -1.0);
    CHECK(orientation_det(Vec4(2 * e1), e2, e3, e4) == 2.0);
    CHECK(orientation_det(e1, e1, e3, e4) == 0.0);
  }

  TEST_CASE("orientation determinant alternates exactly") {
    const Vec4 a = v4(0.31, -0.72, 0.15, 0.94), b = v4(-0.43, 0.28, 0.66, -0.19), c = v4(0.57, 0.11, -0.83, 0.24),
               d = v4(0.05, 0.91, 0.37, -0.62);
    const double det = orientation_det(a, b, c, d);
    CHECK(det != 0.0);
    CHECK(orientation_det(b, a, c, d) == -det);
    CHECK(orientation_det(a, c, b, d) == -det);
    CHECK(orientation_det(d, b, c, a) == -det);
    CHECK(orientation_det(a, b, d, c) == -det);
    CHECK(orientation_det(b, c, a, d) == det);
  }

  TEST_CASE("normal frame of the coordinate plane") {
    const auto nf = normal_frame(basis_vector<double>(1), basis_vector<double>(2));
    CHECK((nf.n1 - basis_vector<double>(3)).norm() == doctest::Approx(0).epsilon(1e-15));
    CHECK((nf.n2 - basis_vector<double>(4)).norm() == doctest::Approx(0).epsilon(1e-15));
  }

  TEST_CASE("normal frame of a tilted plane satisfies the six conditions") {
    const Vec4 t1 = basis_vector<double>(1);
    Vec4 t2 = v4(0, 1, 0, 0.5);
    t2 /= std::sqrt(inner(t2, t2));
    const auto nf = normal_frame(t1, t2);
    CHECK(std::abs(inner(nf.n1, nf.n1) - 1) < 1e-12);
    CHECK(std::abs(inner(nf.n2, nf.n2) + 1) < 1e-12);
    CHECK(std::abs(inner(nf.n1, nf.n2)) < 1e-12);
    for (const Vec4& t : {t1, t2}) {
      CHECK(std::abs(inner(nf.n1, t)) < 1e-12);
      CHECK(std::abs(inner(nf.n2, t)) < 1e-12);
    }
    CHECK(orientation_det(t1, t2, nf.n1, nf.n2) > 0);
  }

  TEST_CASE("normal frame Gram matrix for boosted tangents") {
    // Tangents of a strongly boosted plane: components grow like cosh(3).
    const double ch = std::cosh(3.0), sh = std::sinh(3.0);
    const Vec4 t1 = v4(0.6, 0.8, 0, 0);
    const Vec4 t2 = v4(-0.8, 0.6, 0.7 * sh, 0.7 * ch) / 1.0;
    const auto nf = normal_frame(t1, t2);
    CHECK(std::abs(inner(nf.n1, nf.n1) - 1) < 1e-10);
    CHECK(std::abs(inner(nf.n2, nf.n2) + 1) < 1e-10);
    CHECK(std::abs(inner(nf.n1, t2)) < 1e-10);
    CHECK(std::abs(inner(nf.n2, t2)) < 1e-10);
    CHECK(orientation_det(t1, t2, nf.n1, nf.n2) > 0);
  }

  TEST_CASE("normal frame errors") {
    const Vec4 e1 = basis_vector<double>(1);
    // Gram determinant 1 - (1 - 1e-11) below the default tolerance.
    const Vec4 nearly_null = v4(0, 1, 0, std::sqrt(1 - 1e-11));
    CHECK_THROWS_AS(normal_frame(e1, nearly_null), DegenerateTangentPlane);
    CHECK_THROWS_AS(normal_frame(e1, Vec4(2 * e1)), DegenerateTangentPlane);
    CHECK_THROWS_AS(normal_frame(basis_vector<double>(4), e1), DegenerateTangentPlane);
  }
}
