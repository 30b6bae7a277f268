#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "holonomic/error.hpp"
#include "holonomic/holonomic_space.hpp"
#include "holonomic/spaceform.hpp"
#include "oracles.hpp"

namespace holonomic {
namespace {

using testing::kPi;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected holonomic::Error";
  return ErrorCode::kInvalidInput;
}

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

// 257 angles with step 2π/256: a closed cyclic subgroup of SO(2).
const HolonomicSpace& sphere_fiber() {
  static const HolonomicSpace s = build_fiber_holonomic_space(1.0, 257);
  return s;
}

TEST(HolonomicSpace, TrivialDistanceIsEuclidean) {
  const HolonomicSpace s = HolonomicSpace::trivial(3);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vector u = testing::random_vector(rng, 3, 5.0);
    const Vector v = testing::random_vector(rng, 3, 5.0);
    EXPECT_EQ(holonomic_distance(s, u, v), (u - v).norm());
  }
}

TEST(HolonomicSpace, DimensionMismatchIsInvalidInput) {
  EXPECT_EQ(code_of([] { holonomic_distance(sphere_fiber(), Vector::Zero(3), Vector::Zero(2)); }),
            ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { holonomic_distance(sphere_fiber(), vec2(NAN, 0), vec2(0, 0)); }),
            ErrorCode::kInvalidInput);
}

TEST(HolonomicSpace, RecoverNorm) {
  std::mt19937_64 rng(12);
  const HolonomicSpace cx = counterexample_space(1e-6, 10.0);
  EXPECT_EQ(recover_norm(sphere_fiber(), vec2(0, 0)), 0.0);
  for (int i = 0; i < 200; ++i) {
    const Vector v = testing::random_vector(rng, 2, 20.0);
    EXPECT_NEAR(recover_norm(sphere_fiber(), v), v.norm(), 1e-12 * v.norm());
    const Vector w = testing::random_vector(rng, 4, 20.0);
    EXPECT_NEAR(recover_norm(cx, w), w.norm(), 1e-12 * w.norm());
  }
}

TEST(HolonomicSpace, RaysFromOriginAreGeodesics) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> len(0.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    Vector e = testing::random_vector(rng, 2, 1.0);
    e.normalize();
    const double s = len(rng), t = len(rng);
    EXPECT_NEAR(holonomic_distance(sphere_fiber(), s * e, t * e), std::abs(s - t), 1e-12 * std::max(1.0, s + t));
  }
}

TEST(HolonomicSpace, AntipodalPairTakesRotationShortcut) {
  const HolonomicSpace fine = build_fiber_holonomic_space(1.0, 4097);
  const double d = holonomic_distance(fine, vec2(10, 0), vec2(-10, 0));
  EXPECT_LT(d, kPi * std::sqrt(3.0) + 1e-12);
  // A discrete sample can only overestimate the continuous infimum.
  EXPECT_GE(d, testing::kAntipodalTenDistance - 1e-12);
  EXPECT_LT(d, testing::kAntipodalTenDistance + 1e-3);
}

TEST(HolonomicSpace, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 rng(14);
  const HolonomicSpace& s = sphere_fiber();
  double worst_triangle = 0.0, worst_symmetry = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vector u = testing::random_vector(rng, 2, 8.0);
    const Vector v = testing::random_vector(rng, 2, 8.0);
    const Vector w = testing::random_vector(rng, 2, 8.0);
    const double uv = holonomic_distance(s, u, v);
    const double vw = holonomic_distance(s, v, w);
    const double uw = holonomic_distance(s, u, w);
    worst_triangle = std::min(worst_triangle, uv + vw - uw);
    worst_symmetry = std::max(worst_symmetry, std::abs(uv - holonomic_distance(s, v, u)));
    ASSERT_LE(uv, (u - v).norm() + 1e-12);
    if (i < 100) EXPECT_EQ(holonomic_distance(s, u, u), 0.0);
  }
  EXPECT_GE(worst_triangle, -1e-9);
  EXPECT_LE(worst_symmetry, 1e-10);
}

TEST(HolonomicSpace, LocalIsometryInsideHolonomyRadius) {
  const HolonomicSpace& s = sphere_fiber();
  const double rho = holonomy_radius_origin(s).value.value();
  std::mt19937_64 rng(15);
  for (int i = 0; i < 2000; ++i) {
    const Vector v = testing::random_in_ball(rng, 2, rho);
    const Vector w = testing::random_in_ball(rng, 2, rho);
    EXPECT_NEAR(holonomic_distance(s, v, w), (v - w).norm(), 1e-10);
  }
}

TEST(HolonomicSpace, TrivialGroupHasInfiniteRadii) {
  for (Eigen::Index n : {1, 2, 4}) {
    const HolonomicSpace s = HolonomicSpace::trivial(n);
    EXPECT_TRUE(s.is_trivial());
    EXPECT_TRUE(holonomy_radius_origin(s).value.is_infinite());
    EXPECT_TRUE(convexity_radius(s).value.is_infinite());
  }
  // Converse at sample scale: a nontrivial group has a finite radius.
  EXPECT_FALSE(sphere_fiber().is_trivial());
  EXPECT_TRUE(holonomy_radius_origin(sphere_fiber()).value.is_finite());
  EXPECT_TRUE(convexity_radius(sphere_fiber()).value.is_finite());
  EXPECT_TRUE(holonomy_radius_origin(counterexample_space(1e-3, 1.0)).value.is_finite());
}

TEST(HolonomicSpace, ConvexityRadiusDominatesHolonomyRadiusPerElement) {
  for (const auto& e : sphere_fiber().discretize()) {
    if (e.element.is_identity()) continue;
    const double n = operator_norm(Matrix::Identity(2, 2) - e.element.matrix());
    EXPECT_GE(e.L / n, e.L / std::sqrt(2.0 * n) - 1e-15);
  }
  for (const auto& e : counterexample_space(1e-4, 20.0).discretize(1024)) {
    if (e.element.is_identity()) continue;
    const double n = operator_norm(Matrix::Identity(4, 4) - e.element.matrix());
    EXPECT_GE(e.L / n, e.L / std::sqrt(2.0 * n) - 1e-15);
  }
  EXPECT_GE(convexity_radius(sphere_fiber()).value, holonomy_radius_origin(sphere_fiber()).value);
}

TEST(HolonomicSpace, DisplacementBoundedByNormInsideConvexityRadius) {
  const HolonomicSpace& s = sphere_fiber();
  const double cvx = convexity_radius(s).value.value();
  std::mt19937_64 rng(16);
  for (int i = 0; i < 200; ++i) {
    const Vector u = testing::random_in_ball(rng, 2, cvx);
    for (const auto& e : s.sample().entries()) {
      ASSERT_LE((u - e.element.apply(u)).norm(), e.L + 1e-12);
    }
  }
}

TEST(HolonomicSpace, SphereFiberRadiiAgainstOracle) {
  const HolonomicSpace fine = build_fiber_holonomic_space(1.0, 10001);
  const RadiusResult rho = holonomy_radius_origin(fine);
  EXPECT_GE(rho.value.value(), testing::kSphereHolRad - 1e-12);
  EXPECT_LT(rho.value.value(), testing::kSphereHolRad + 1e-6);
  const RadiusResult cvx = convexity_radius(fine);
  EXPECT_GE(cvx.value.value(), testing::kSphereCvxRad - 1e-12);
  EXPECT_LT(cvx.value.value(), testing::kSphereCvxRad + 1e-6);
  ASSERT_TRUE(rho.argmin_index);
  EXPECT_FALSE(rho.argmin_param);
}

TEST(Counterexample, ElementsAndNorms) {
  const HolonomicSpace s = counterexample_space(1e-6, 100.0);
  const auto& fam = s.family();
  EXPECT_TRUE(GroupElement(fam.element(0.0)).is_identity());
  EXPECT_EQ(fam.norm(0.0), 0.0);
  const Matrix a = fam.element(2 * kPi);
  EXPECT_FALSE(GroupElement(a).is_identity());
  const double expected = 2.0 * std::abs(std::sin(std::numbers::sqrt2 * kPi));
  EXPECT_NEAR(operator_norm(Matrix::Identity(4, 4) - a), expected, 1e-12);
  EXPECT_NEAR(expected, 1.92781, 1e-5);
  EXPECT_NEAR(testing::reference_spectral_norm(Matrix::Identity(4, 4) - a), expected, 1e-12);
}

TEST(Counterexample, RadiiReproduceTheDegeneration) {
  const HolonomicSpace s = counterexample_space(1e-6, 100.0);
  const RadiusResult cvx = convexity_radius(s);
  EXPECT_GE(cvx.value.value(), 1.0 / std::numbers::sqrt2 - 1e-9);
  EXPECT_LE(cvx.value.value(), 0.70720);

  const RadiusResult rho = holonomy_radius_origin(s);
  EXPECT_TRUE(rho.at_puncture);
  EXPECT_LT(rho.value.value(), 1e-3);

  // Direct evaluation of the holonomy ratio shrinks like √t.
  auto ratio = [&](double t) {
    const double n = operator_norm(Matrix::Identity(4, 4) - s.family().element(t));
    return t / std::sqrt(2.0 * n);
  };
  EXPECT_NEAR(ratio(1e-4), 0.005946, 1e-6);
  EXPECT_LT(ratio(1e-5), ratio(1e-4));
  EXPECT_LT(ratio(1e-6), ratio(1e-5));
}

TEST(Counterexample, InvalidRangeRejected) {
  EXPECT_EQ(code_of([] { counterexample_space(0.0, 1.0); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { counterexample_space(2.0, 1.0); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { counterexample_space(1e-3, INFINITY); }), ErrorCode::kInvalidInput);
}

TEST(Counterexample, ResolveRecoversParameters) {
  const HolonomicSpace s = counterexample_space(1e-6, 50.0);
  for (double t : {-37.2, -1.0, 0.25, 3.0, 12.5}) {
    const auto L = s.resolve(s.family().element(t));
    ASSERT_TRUE(L) << t;
    EXPECT_NEAR(*L, std::abs(t), 1e-9);
  }
  EXPECT_FALSE(s.resolve(block_rotation({0.3, 0.3})));
  EXPECT_EQ(*s.resolve(Matrix::Identity(4, 4)), 0.0);
}

TEST(OneParamFamily, RejectsBrokenFamilies) {
  OneParamFamily f;
  f.lo = -1.0;
  f.hi = 1.0;
  f.element = [](double t) { return planar_rotation(t); };
  f.norm = [](double t) { return t > 0 ? t : -2.0 * t; };
  EXPECT_EQ(code_of([&] { HolonomicSpace s(f); }), ErrorCode::kInvalidInput);
  f.norm = [](double t) { return std::abs(t) + 1.0; };
  EXPECT_EQ(code_of([&] { HolonomicSpace s(f); }), ErrorCode::kInvalidInput);
  f.norm = [](double t) { return std::abs(t); };
  f.element = [](double t) { return planar_rotation(t + 0.1); };
  EXPECT_EQ(code_of([&] { HolonomicSpace s(f); }), ErrorCode::kInvalidInput);
}

TEST(OneParamFamily, DiscretizationPassesGroupNormChecksWhereClosed) {
  OneParamFamily f;
  f.lo = -kPi;
  f.hi = kPi;
  f.element = [](double t) { return planar_rotation(t); };
  f.norm = [](double t) { return spaceform_length_norm(1.0, t); };
  f.puncture = 0.0;
  const HolonomicSpace s(f);
  const auto entries = s.discretize(257);
  EXPECT_TRUE(entries.front().element.is_identity());
  const ValidationReport r = validate_group_norm(NormedGroupSample(2, entries));
  EXPECT_TRUE(r.valid());
  // The family route agrees with the closed-form distance on the same group.
  EXPECT_NEAR(holonomic_distance(s, vec2(10, 0), vec2(-10, 0)), testing::kAntipodalTenDistance, 1e-9);
}

TEST(LipschitzGap, SphereFiber) {
  const HolonomicSpace& s = sphere_fiber();
  const Matrix id = Matrix::Identity(2, 2);
  EXPECT_NEAR(lipschitz_gap(s, id, id), 0.0, 1e-15);
  const double rho = holonomy_radius_origin(s).value.value();
  EXPECT_NEAR(lipschitz_gap(s, id, planar_rotation(kPi)), kPi * std::sqrt(3.0) / rho - 2.0, 1e-12);
  EXPECT_GE(lipschitz_gap(s, id, planar_rotation(kPi)), 0.0);
  for (const auto& a : s.sample().entries()) {
    for (std::size_t j = 0; j < s.sample().size(); j += 7) {
      const auto& b = s.sample()[j];
      ASSERT_GE(lipschitz_gap(s, a.element.matrix(), b.element.matrix()), -1e-9);
      ASSERT_GE(convexity_lipschitz_gap(s, a.element.matrix(), b.element.matrix()), -1e-9);
    }
  }
  EXPECT_EQ(code_of([&] { lipschitz_gap(s, id, planar_rotation(0.001)); }), ErrorCode::kElementNotInSample);
}

TEST(LipschitzGap, CounterexampleHasDegenerateHolonomyRadius) {
  const HolonomicSpace s = counterexample_space(1e-6, 100.0);
  const Matrix id = Matrix::Identity(4, 4);
  const Matrix b = s.family().element(0.5);
  EXPECT_EQ(code_of([&] { lipschitz_gap(s, id, b); }), ErrorCode::kDegenerateRadius);
  EXPECT_EQ(to_string(ErrorCode::kDegenerateRadius), "divide-by-zero-radius");
  for (double t : {1e-5, 1e-3, 0.1, 1.0, 4.0, 33.0, 45.0}) {
    EXPECT_GE(convexity_lipschitz_gap(s, id, s.family().element(t)), -1e-9) << t;
    EXPECT_GE(convexity_lipschitz_gap(s, s.family().element(-t), s.family().element(t)), -1e-9) << t;
  }
}

}  // namespace
}  // namespace holonomic
