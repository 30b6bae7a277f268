#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holonomic/linalg.hpp"

namespace holonomic {

inline constexpr double kOrthogonalityTolerance = 1e-10;
/// Max-entry distance under which two group elements are the same element.
inline constexpr double kIdentityTolerance = 1e-9;

/// A norm-preserving linear isometry of ℝⁿ, stored as an orthogonal matrix.
class GroupElement {
 public:
  /// Throws kInvalidInput unless `matrix` is square, finite and orthogonal to
  /// within kOrthogonalityTolerance (max-entry norm of MᵀM − I).
  explicit GroupElement(Matrix matrix, std::string label = {});

  static GroupElement identity(Eigen::Index n);
  static GroupElement rotation(double theta);

  Eigen::Index dimension() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  const std::string& label() const noexcept { return label_; }

  GroupElement inverse() const;
  Vector apply(const Vector& v) const;

  bool approx_equal(const GroupElement& other, double tol = kIdentityTolerance) const;
  bool is_identity(double tol = kIdentityTolerance) const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

 private:
  struct Unchecked {};
  GroupElement(Unchecked, Matrix matrix, std::string label);

  Matrix matrix_;
  std::string label_;
};

struct SampleEntry {
  GroupElement element;
  double L = 0.0;
};

/// Finite stand-in for a group with a group-norm: elements paired with their
/// L-values. Construction only checks structure; the group-norm axioms are
/// checked by validate_group_norm so that broken samples can be reported.
class NormedGroupSample {
 public:
  NormedGroupSample(Eigen::Index dimension, std::vector<SampleEntry> entries);

  Eigen::Index dimension() const noexcept { return dimension_; }
  const std::vector<SampleEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const SampleEntry& operator[](std::size_t i) const { return entries_[i]; }

  bool contains_identity() const noexcept { return identity_index_.has_value(); }
  std::optional<std::size_t> identity_index() const noexcept { return identity_index_; }

  /// Index of the first entry whose element matches `m` within `tol`.
  std::optional<std::size_t> find(const Matrix& m, double tol = kIdentityTolerance) const;
  std::optional<std::size_t> find(const GroupElement& a, double tol = kIdentityTolerance) const {
    return find(a.matrix(), tol);
  }

  bool is_trivial() const noexcept;

 private:
  Eigen::Index dimension_;
  std::vector<SampleEntry> entries_;
  // Entry indices sorted by matrix(0, 0): a lookup only needs to inspect the
  // window of keys within tol of the query.
  std::vector<std::size_t> order_;
  std::vector<double> keys_;
  std::optional<std::size_t> identity_index_;
};

enum class AxiomKind { kPositivity, kNonDegeneracy, kSymmetry, kSubadditivity };

std::string_view to_string(AxiomKind kind) noexcept;

struct AxiomViolation {
  AxiomKind kind;
  std::size_t first = 0;
  std::optional<std::size_t> second;
  // How far the axiom is broken (e.g. L(ab) − L(a) − L(b) for subadditivity).
  double amount = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  std::size_t checked_pairs = 0;
  // Pairs whose product is not in the sample. Never counted as violations.
  std::size_t unchecked_pairs = 0;

  bool valid() const noexcept { return violations.empty(); }
};

ValidationReport validate_group_norm(const NormedGroupSample& sample, double tol = 1e-9);

/// d(a, b) = L(a⁻¹b). Throws kElementNotInSample when a⁻¹b is not sampled.
double left_invariant_distance(const NormedGroupSample& sample, const GroupElement& a,
                               const GroupElement& b);

/// New sample with L' = f(L). f must vanish at 0 and be nondecreasing on the
/// sample's L-values; violations of either throw kInvalidFunction.
NormedGroupSample compose_norm_with_subadditive(const NormedGroupSample& sample,
                                                const std::function<double(double)>& f);

}  // namespace holonomic
