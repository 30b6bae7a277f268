#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "holonomic/error.hpp"
#include "holonomic/group.hpp"
#include "oracles.hpp"

namespace holonomic {
namespace {

using testing::kPi;

NormedGroupSample rotation_sample(const std::vector<double>& angles) {
  std::vector<SampleEntry> entries;
  for (double t : angles) entries.push_back({GroupElement::rotation(t), std::abs(t)});
  return NormedGroupSample(2, std::move(entries));
}

NormedGroupSample quarter_turns() { return rotation_sample({0.0, kPi / 2, -kPi / 2, kPi}); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected holonomic::Error";
  return ErrorCode::kInvalidInput;
}

TEST(GroupElement, RejectsNonOrthogonalMatrices) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 1e-6;
  EXPECT_EQ(code_of([&] { GroupElement a(m); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([&] { GroupElement a(Matrix::Identity(2, 3)); }), ErrorCode::kInvalidInput);
}

TEST(GroupElement, PreservesNorms) {
  std::mt19937_64 rng(3);
  for (Eigen::Index n : {2, 3, 5}) {
    const GroupElement a(testing::random_orthogonal(rng, n));
    for (int i = 0; i < 50; ++i) {
      const Vector v = testing::random_vector(rng, n, 10.0);
      EXPECT_NEAR(a.apply(v).norm(), v.norm(), 1e-10 * v.norm());
    }
  }
}

TEST(GroupElement, InverseIsTranspose) {
  const GroupElement a = GroupElement::rotation(0.7);
  EXPECT_TRUE((a * a.inverse()).is_identity());
  EXPECT_TRUE(a.inverse().approx_equal(GroupElement::rotation(-0.7)));
}

TEST(ValidateGroupNorm, IdentityOnlySample) {
  const NormedGroupSample s(3, {{GroupElement::identity(3), 0.0}});
  const ValidationReport r = validate_group_norm(s);
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.unchecked_pairs, 0u);
  EXPECT_EQ(r.checked_pairs, 1u);
}

TEST(ValidateGroupNorm, QuarterTurnsWithAbsoluteAngle) {
  const ValidationReport r = validate_group_norm(quarter_turns());
  EXPECT_TRUE(r.valid());
  // C₄ is closed, so all 16 pairs are checked.
  EXPECT_EQ(r.checked_pairs, 16u);
  EXPECT_EQ(r.unchecked_pairs, 0u);

  // Enumeration oracle: L of every product against |θ₁| + |θ₂| with the
  // product angle reduced to the sample's representative.
  const std::vector<double> angles{0.0, kPi / 2, -kPi / 2, kPi};
  for (double a : angles) {
    for (double b : angles) {
      double sum = std::remainder(a + b, 2 * kPi);
      if (std::abs(std::abs(sum) - kPi) < 1e-12) sum = kPi;
      EXPECT_LE(std::abs(sum), std::abs(a) + std::abs(b) + 1e-12);
    }
  }
}

TEST(ValidateGroupNorm, ReportsNonDegeneracyViolation) {
  std::vector<SampleEntry> e{{GroupElement::identity(2), 0.0}, {GroupElement::rotation(kPi), 0.0}};
  const ValidationReport r = validate_group_norm(NormedGroupSample(2, e));
  ASSERT_FALSE(r.valid());
  bool seen = false;
  for (const auto& v : r.violations) seen = seen || (v.kind == AxiomKind::kNonDegeneracy && v.first == 1);
  EXPECT_TRUE(seen);
}

TEST(ValidateGroupNorm, ReportsSymmetryAndPositivityViolations) {
  std::vector<SampleEntry> e{{GroupElement::identity(2), 0.0},
                             {GroupElement::rotation(0.5), 0.5},
                             {GroupElement::rotation(-0.5), 0.7},
                             {GroupElement::rotation(1.0), -1.0},
                             {GroupElement::rotation(-1.0), -1.0}};
  const ValidationReport r = validate_group_norm(NormedGroupSample(2, e));
  int symmetry = 0, positivity = 0;
  for (const auto& v : r.violations) {
    symmetry += v.kind == AxiomKind::kSymmetry;
    positivity += v.kind == AxiomKind::kPositivity;
  }
  EXPECT_EQ(symmetry, 2);
  EXPECT_EQ(positivity, 2);
}

TEST(ValidateGroupNorm, ReportsSubadditivityViolation) {
  // L(θ) = θ² is not subadditive: L(π/2 + π/2) = π² > 2(π/2)².
  std::vector<SampleEntry> e;
  for (double t : {0.0, kPi / 2, -kPi / 2, kPi}) e.push_back({GroupElement::rotation(t), t * t});
  const ValidationReport r = validate_group_norm(NormedGroupSample(2, e));
  bool seen = false;
  for (const auto& v : r.violations) seen = seen || v.kind == AxiomKind::kSubadditivity;
  EXPECT_TRUE(seen);
}

TEST(ValidateGroupNorm, MissingProductsAreUncheckedNotViolations) {
  const ValidationReport r = validate_group_norm(rotation_sample({0.0, 0.3, -0.3}));
  EXPECT_TRUE(r.valid());
  EXPECT_EQ(r.checked_pairs, 7u);  // id·x, x·id, 0.3·(−0.3), (−0.3)·0.3
  EXPECT_EQ(r.unchecked_pairs, 2u);
}

TEST(ValidateGroupNorm, UniformAngleGridHasNoViolations) {
  std::vector<double> angles;
  const int n = 129;
  for (int i = 0; i < n; ++i) angles.push_back(kPi * (2.0 * i - (n - 1)) / (n - 1));
  const ValidationReport r = validate_group_norm(rotation_sample(angles));
  EXPECT_TRUE(r.valid()) << r.violations.size() << " violations";
  EXPECT_GT(r.checked_pairs, static_cast<std::size_t>(n * n / 2));
}

TEST(LeftInvariantDistance, Examples) {
  const NormedGroupSample s = quarter_turns();
  const auto a = GroupElement::rotation(kPi / 2);
  const auto b = GroupElement::rotation(kPi);
  EXPECT_EQ(left_invariant_distance(s, a, a), 0.0);
  EXPECT_NEAR(left_invariant_distance(s, a, b), kPi / 2, 1e-15);
}

TEST(LeftInvariantDistance, SymmetricAndLeftInvariantOnSample) {
  const NormedGroupSample s = quarter_turns();
  for (const auto& a : s.entries()) {
    for (const auto& b : s.entries()) {
      const double dab = left_invariant_distance(s, a.element, b.element);
      EXPECT_NEAR(dab, left_invariant_distance(s, b.element, a.element), 1e-12);
      for (const auto& c : s.entries()) {
        EXPECT_NEAR(left_invariant_distance(s, c.element * a.element, c.element * b.element), dab, 1e-12);
      }
    }
  }
}

TEST(LeftInvariantDistance, MissingQuotientThrows) {
  const NormedGroupSample s = quarter_turns();
  EXPECT_EQ(code_of([&] {
              left_invariant_distance(s, GroupElement::identity(2), GroupElement::rotation(0.1));
            }),
            ErrorCode::kElementNotInSample);
}

TEST(ComposeNorm, IdentityFunctionLeavesSampleUnchanged) {
  const NormedGroupSample s = quarter_turns();
  const NormedGroupSample t = compose_norm_with_subadditive(s, [](double x) { return x; });
  ASSERT_EQ(t.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(t[i].L, s[i].L);
}

TEST(ComposeNorm, SquareRootKeepsValidity) {
  const NormedGroupSample t =
      compose_norm_with_subadditive(quarter_turns(), [](double x) { return std::sqrt(x); });
  const auto k = t.find(GroupElement::rotation(kPi));
  ASSERT_TRUE(k);
  EXPECT_NEAR(t[*k].L, std::sqrt(kPi), 1e-15);
  EXPECT_TRUE(validate_group_norm(t).valid());
}

TEST(ComposeNorm, TruncationKeepsValidityAndBound) {
  std::vector<double> angles;
  for (int i = 0; i < 33; ++i) angles.push_back(kPi * (2.0 * i - 32) / 32);
  const NormedGroupSample s = rotation_sample(angles);
  ASSERT_TRUE(validate_group_norm(s).valid());
  const NormedGroupSample t = compose_norm_with_subadditive(s, [](double x) { return std::min(x, 1.0); });
  for (const auto& e : t.entries()) EXPECT_LE(e.L, 1.0);
  EXPECT_TRUE(validate_group_norm(t).valid());
}

TEST(ComposeNorm, RejectsNonzeroAtOriginAndDecreasingFunctions) {
  EXPECT_EQ(code_of([] { compose_norm_with_subadditive(quarter_turns(), [](double x) { return x + 1.0; }); }),
            ErrorCode::kInvalidFunction);
  EXPECT_EQ(code_of([] {
              compose_norm_with_subadditive(quarter_turns(), [](double x) { return x * (3.0 - x); });
            }),
            ErrorCode::kInvalidFunction);
}

}  // namespace
}  // namespace holonomic
