#include <doctest.h>

#include <cmath>

#include "grs/meridian_solvers.hpp"
#include "grs/rotational_surface.hpp"

using namespace grs;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

MeridianCurve affine_meridian() {
  return MeridianCurve([](double u) { return MeridianJet{2 * u, 2, 0, u, 1, 0}; }, {0.5, 1.5}, PresetTag{"test", {}});
}

}  // namespace

TEST_SUITE("rotational_surfaces") {
  TEST_CASE("construction and kinds") {
    CHECK(parse_kind("first") == SurfaceKind::FirstType);
    CHECK(parse_kind("second") == SurfaceKind::SecondType);
    CHECK(std::string(to_string(SurfaceKind::SecondType)) == "second");
    CHECK_THROWS_AS(parse_kind("third"), InvalidArgument);
    CHECK_THROWS_AS(RotationalSurface(SurfaceKind::FirstType, 0, 1, affine_meridian()), InvalidArgument);
    CHECK_THROWS_AS(RotationalSurface(SurfaceKind::FirstType, 1, -1, affine_meridian()), InvalidArgument);
    CHECK(kappa_orientation_sign(SurfaceKind::FirstType) == -1);
    CHECK(kappa_orientation_sign(SurfaceKind::SecondType) == 1);
  }

  TEST_CASE("embedding coordinates") {
    const RotationalSurface s1(SurfaceKind::FirstType, 1.3, 0.7, affine_meridian());
    const RotationalSurface s2(SurfaceKind::SecondType, 1.3, 0.7, affine_meridian());
    const double u = 1.0, v = 0.4;
    const Vec4 z1 = embed(s1, u, v), z2 = embed(s2, u, v);
    CHECK(z1[0] == doctest::Approx(2 * std::cos(1.3 * v)));
    CHECK(z1[1] == doctest::Approx(2 * std::sin(1.3 * v)));
    CHECK(z1[2] == doctest::Approx(std::cosh(0.7 * v)));
    CHECK(z1[3] == doctest::Approx(std::sinh(0.7 * v)));
    CHECK(z2[2] == doctest::Approx(std::sinh(0.7 * v)));
    CHECK(z2[3] == doctest::Approx(std::cosh(0.7 * v)));
    const auto wide = embed_as<long double>(s2, u, v);
    CHECK(std::abs(static_cast<double>(wide[3]) - z2[3]) < 1e-15);
  }

  TEST_CASE("circle and hyperbolic meridians lie on pseudo-spheres") {
    const RotationalSurface s1(SurfaceKind::FirstType, 1, 1, presets::circle_profile(1.5, {0.05, 0.75}));
    const RotationalSurface s2(SurfaceKind::SecondType, 1, 1, presets::hyperbolic_profile(0.8, {0.1, 2}));
    for (const double u : {0.1, 0.4, 0.7}) {
      for (const double v : {0.0, 1.0, 3.0}) {
        const auto z = embed_as<long double>(s1, u, v);
        CHECK(std::abs(static_cast<double>(inner(z, z)) - 2.25) < 1e-12);
      }
    }
    for (const double u : {0.2, 1.0, 1.9}) {
      const Vec4 z = embed(s2, u, 0.6);
      CHECK(inner(z, z) == doctest::Approx(-0.64).epsilon(1e-12));
    }
  }

  TEST_CASE("admissibility") {
    // First type needs alpha f > beta |g|: the circle with alpha = beta stops at u = pi/4.
    const RotationalSurface s(SurfaceKind::FirstType, 1, 1, presets::circle_profile(1, {0.05, 1.2}));
    CHECK(s.is_admissible(0.5));
    CHECK_FALSE(s.is_admissible(0.9));
    CHECK_THROWS_AS(embed(s, 0.9, 0.0), DomainViolation);
    CHECK_THROWS_AS(embed(s, 1.5, 0.0), DomainViolation);
    // Second type needs |f'| > |g'|.
    const RotationalSurface s2(SurfaceKind::SecondType, 1, 1,
                               MeridianCurve([](double u) { return MeridianJet{u, 1, 0, u * u, 2 * u, 2}; },
                                             {0.1, 1.0}, PresetTag{"test", {}}));
    CHECK(s2.is_admissible(0.4));
    CHECK_FALSE(s2.is_admissible(0.6));
  }

  TEST_CASE("first fundamental form by hand") {
    const double a = 1.3, b = 0.7;
    const RotationalSurface s2(SurfaceKind::SecondType, a, b, affine_meridian());
    // f = 2u, g = u at u = 1: E = f'^2 - g'^2, G = a^2 f^2 + b^2 g^2.
    const FirstForm c2 = closed_first_form(s2, 1.0);
    CHECK(c2.E == doctest::Approx(3.0));
    CHECK(c2.G == doctest::Approx(4 * a * a + b * b));
    const FirstForm k2 = first_form(as_patch(s2), 1.0, 0.8);
    CHECK(k2.E == doctest::Approx(3.0));
    CHECK(std::abs(k2.F) < 1e-14);
    CHECK(k2.G == doctest::Approx(4 * a * a + b * b));
    const RotationalSurface s1(SurfaceKind::FirstType, a, b, affine_meridian());
    const FirstForm c1 = closed_first_form(s1, 1.0);
    CHECK(c1.E == doctest::Approx(5.0));
    CHECK(c1.G == doctest::Approx(4 * a * a - b * b));
  }

  TEST_CASE("surface jet matches central differences of the embedding") {
    const RotationalSurface s(SurfaceKind::SecondType, 1.3, 0.7, presets::circle_profile(1.2, {1.0, 2.0}));
    const double u = 1.4, v = 0.6, h = 1e-4;
    const SurfaceJet j = surface_jet(s, u, v);
    const auto z = [&](double a, double b) { return embed(s, a, b); };
    CHECK((j.z - z(u, v)).norm() == 0.0);
    CHECK((j.zu - (z(u + h, v) - z(u - h, v)) / (2 * h)).norm() < 1e-7);
    CHECK((j.zv - (z(u, v + h) - z(u, v - h)) / (2 * h)).norm() < 1e-7);
    CHECK((j.zuu - (z(u + h, v) - 2 * z(u, v) + z(u - h, v)) / (h * h)).norm() < 1e-5);
    CHECK((j.zvv - (z(u, v + h) - 2 * z(u, v) + z(u, v - h)) / (h * h)).norm() < 1e-5);
    CHECK((j.zuv - (z(u + h, v + h) - z(u + h, v - h) - z(u - h, v + h) + z(u - h, v - h)) / (4 * h * h)).norm() <
          1e-5);
  }

  TEST_CASE("closed invariants agree with the kernel") {
    const std::vector<RotationalSurface> surfaces = {
        RotationalSurface(SurfaceKind::FirstType, 1, 1, presets::circle_profile(1, {0.05, 0.75})),
        RotationalSurface(SurfaceKind::FirstType, 1.4, 0.9, presets::power_law(0.6, 1.4, 0.9, {0.7, 2.0})),
        RotationalSurface(SurfaceKind::SecondType, 1.3, 0.7, presets::circle_profile(1.2, {1.0, 2.0})),
        RotationalSurface(SurfaceKind::SecondType, 1, 1, presets::hyperbolic_profile(0.8, {0.1, 2})),
        RotationalSurface(SurfaceKind::SecondType, 1.3, 0.7, affine_meridian()),
    };
    for (const auto& s : surfaces) {
      const Interval J = s.meridian().domain();
      for (const double t : {0.2, 0.5, 0.8}) {
        const double u = J.lo + t * J.length();
        const InvariantReport r = invariants(as_patch(s), u, 0.45);
        const CurvatureInvariants c = closed_invariants_kKkappa(s, u);
        CHECK(rel(r.k, c.k) < 1e-8);
        CHECK(rel(r.K, c.K) < 1e-8);
        CHECK(rel(kappa_orientation_sign(s.kind()) * r.kappa, c.kappa) < 1e-8);
      }
    }
  }

  TEST_CASE("closed frame invariants satisfy the structure relations") {
    const RotationalSurface s(SurfaceKind::SecondType, 1.3, 0.7, presets::circle_profile(1.2, {1.0, 2.0}));
    const double u = 1.5;
    const FrameInvariants f = closed_invariants_frame8(s, u);
    const CurvatureInvariants c = closed_invariants_kKkappa(s, u);
    CHECK(f.gamma1 == 0.0);
    CHECK(f.lambda == 0.0);
    CHECK(f.beta1 == 0.0);
    CHECK(rel(c.k, -4 * f.nu1 * f.nu2 * f.mu * f.mu) < 1e-10);
    CHECK(rel(std::abs(c.kappa), std::abs((f.nu1 - f.nu2) * f.mu)) < 1e-10);
    CHECK(rel(c.K, -(f.nu1 * f.nu2 + f.mu * f.mu)) < 1e-10);
  }

  TEST_CASE("characterizing residuals") {
    // The cone g = a f is flat, the first-type circle has flat normal connection.
    const RotationalSurface cone(SurfaceKind::FirstType, 1, 0.6, presets::line(0.8, 0.0, {0.5, 2.0}));
    const RotationalSurface circle(SurfaceKind::FirstType, 1, 1, presets::circle_profile(1, {0.05, 0.75}));
    const RotationalSurface minimal(SurfaceKind::FirstType, 1, 1,
                                    minimal_meridian(SurfaceKind::FirstType, 1, 1, 0.25, 0, 1, {0.6, 2}));
    for (const double t : {0.1, 0.5, 0.9}) {
      CHECK(std::abs(residual_flat(cone, 0.5 + 1.5 * t)) < 1e-12);
      CHECK(std::abs(residual_flat_normal(circle, 0.05 + 0.7 * t)) < 1e-12);
      const Interval J = minimal.meridian().domain();
      CHECK(std::abs(residual_minimal(minimal, J.lo + t * J.length())) < 1e-10);
    }
    CHECK(std::abs(residual_minimal(circle, 0.4)) > 1e-3);
    CHECK(std::abs(residual_flat_normal(minimal, minimal.meridian().domain().lo + 0.3)) > 1e-6);
  }

  TEST_CASE("mean curvature causal character by kind") {
    const RotationalSurface s1(SurfaceKind::FirstType, 1.4, 0.9, presets::power_law(0.6, 1.4, 0.9, {0.7, 2.0}));
    const RotationalSurface s2(SurfaceKind::SecondType, 1.3, 0.7, presets::circle_profile(1.2, {1.0, 2.0}));
    CHECK(invariants(as_patch(s1), 1.2, 0.3).epsilon == 1);
    CHECK(invariants(as_patch(s2), 1.2, 0.3).epsilon == -1);
  }
}
