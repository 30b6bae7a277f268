#include "holonomic/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "holonomic/error.hpp"

namespace holonomic {

GroupElement::GroupElement(Matrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::kInvalidInput, "group element must be a nonempty square matrix");
  }
  if (!all_finite(matrix_)) throw Error(ErrorCode::kInvalidInput, "group element has non-finite entries");
  const Matrix gram = matrix_.transpose() * matrix_;
  const double dev = max_entry_distance(gram, Matrix::Identity(matrix_.rows(), matrix_.cols()));
  if (dev > kOrthogonalityTolerance) {
    std::ostringstream os;
    os << "group element is not orthogonal (|MᵀM - I|_max = " << dev << ")";
    throw Error(ErrorCode::kInvalidInput, os.str());
  }
}

GroupElement::GroupElement(Unchecked, Matrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {}

GroupElement GroupElement::identity(Eigen::Index n) {
  if (n <= 0) throw Error(ErrorCode::kInvalidInput, "identity of non-positive dimension");
  return GroupElement(Unchecked{}, Matrix::Identity(n, n), "id");
}

GroupElement GroupElement::rotation(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::kInvalidInput, "rotation angle must be finite");
  return GroupElement(Unchecked{}, planar_rotation(theta), {});
}

GroupElement GroupElement::inverse() const {
  return GroupElement(Unchecked{}, matrix_.transpose(), label_.empty() ? label_ : label_ + "^-1");
}

Vector GroupElement::apply(const Vector& v) const {
  if (v.size() != dimension()) throw Error(ErrorCode::kInvalidInput, "vector/element dimension mismatch");
  return matrix_ * v;
}

bool GroupElement::approx_equal(const GroupElement& other, double tol) const {
  return dimension() == other.dimension() && max_entry_distance(matrix_, other.matrix_) <= tol;
}

bool GroupElement::is_identity(double tol) const {
  return max_entry_distance(matrix_, Matrix::Identity(dimension(), dimension())) <= tol;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.dimension() != b.dimension()) throw Error(ErrorCode::kInvalidInput, "composition dimension mismatch");
  return GroupElement(GroupElement::Unchecked{}, a.matrix_ * b.matrix_, {});
}

NormedGroupSample::NormedGroupSample(Eigen::Index dimension, std::vector<SampleEntry> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  if (dimension_ <= 0) throw Error(ErrorCode::kInvalidInput, "sample dimension must be positive");
  for (const auto& e : entries_) {
    if (e.element.dimension() != dimension_) {
      throw Error(ErrorCode::kInvalidInput, "sample entry dimension does not match sample dimension");
    }
    if (!std::isfinite(e.L)) throw Error(ErrorCode::kInvalidInput, "sample entry has non-finite L value");
  }
  order_.resize(entries_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t i, std::size_t j) {
    return entries_[i].element.matrix()(0, 0) < entries_[j].element.matrix()(0, 0);
  });
  keys_.reserve(order_.size());
  for (std::size_t i : order_) keys_.push_back(entries_[i].element.matrix()(0, 0));

  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].element.is_identity()) {
      identity_index_ = i;
      break;
    }
  }
}

std::optional<std::size_t> NormedGroupSample::find(const Matrix& m, double tol) const {
  if (m.rows() != dimension_ || m.cols() != dimension_) return std::nullopt;
  const double key = m(0, 0);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key - tol);
  std::optional<std::size_t> best;
  for (; it != keys_.end() && *it <= key + tol; ++it) {
    const std::size_t idx = order_[static_cast<std::size_t>(it - keys_.begin())];
    if (max_entry_distance(entries_[idx].element.matrix(), m) <= tol) {
      if (!best || idx < *best) best = idx;
    }
  }
  return best;
}

bool NormedGroupSample::is_trivial() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const SampleEntry& e) { return e.element.is_identity(); });
}

std::string_view to_string(AxiomKind kind) noexcept {
  switch (kind) {
    case AxiomKind::kPositivity: return "positivity";
    case AxiomKind::kNonDegeneracy: return "non-degeneracy";
    case AxiomKind::kSymmetry: return "symmetry";
    case AxiomKind::kSubadditivity: return "subadditivity";
  }
  return "unknown";
}

ValidationReport validate_group_norm(const NormedGroupSample& sample, double tol) {
  ValidationReport report;
  const auto& entries = sample.entries();

  if (!sample.contains_identity()) {
    report.violations.push_back({AxiomKind::kNonDegeneracy, 0, std::nullopt, 0.0,
                                 "sample does not contain the identity"});
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.L < 0.0) {
      report.violations.push_back({AxiomKind::kPositivity, i, std::nullopt, -e.L, "negative L value"});
    }
    const bool is_id = e.element.is_identity();
    if (is_id && std::abs(e.L) > tol) {
      report.violations.push_back({AxiomKind::kNonDegeneracy, i, std::nullopt, std::abs(e.L),
                                   "identity has nonzero L value"});
    } else if (!is_id && e.L <= tol) {
      report.violations.push_back({AxiomKind::kNonDegeneracy, i, std::nullopt, tol - e.L,
                                   "non-identity element has zero L value"});
    }

    const auto inv = sample.find(Matrix(e.element.matrix().transpose()));
    if (!inv) {
      report.violations.push_back({AxiomKind::kSymmetry, i, std::nullopt, 0.0, "inverse not in sample"});
    } else if (std::abs(entries[*inv].L - e.L) > tol) {
      report.violations.push_back({AxiomKind::kSymmetry, i, *inv, std::abs(entries[*inv].L - e.L),
                                   "L(a^-1) != L(a)"});
    }
  }

  Matrix product(sample.dimension(), sample.dimension());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      product.noalias() = entries[i].element.matrix() * entries[j].element.matrix();
      const auto k = sample.find(product);
      if (!k) {
        ++report.unchecked_pairs;
        continue;
      }
      ++report.checked_pairs;
      const double excess = entries[*k].L - entries[i].L - entries[j].L;
      if (excess > tol) {
        report.violations.push_back({AxiomKind::kSubadditivity, i, j, excess, "L(ab) > L(a) + L(b)"});
      }
    }
  }
  return report;
}

double left_invariant_distance(const NormedGroupSample& sample, const GroupElement& a,
                               const GroupElement& b) {
  if (a.dimension() != sample.dimension() || b.dimension() != sample.dimension()) {
    throw Error(ErrorCode::kInvalidInput, "left_invariant_distance: dimension mismatch");
  }
  const Matrix quotient = a.matrix().transpose() * b.matrix();
  const auto k = sample.find(quotient);
  if (!k) throw Error(ErrorCode::kElementNotInSample, "a^-1 b is not in the sample");
  return sample[*k].L;
}

NormedGroupSample compose_norm_with_subadditive(const NormedGroupSample& sample,
                                                const std::function<double(double)>& f) {
  const double f0 = f(0.0);
  if (f0 != 0.0) throw Error(ErrorCode::kInvalidFunction, "f(0) must be 0");

  std::vector<double> ls;
  ls.reserve(sample.size());
  for (const auto& e : sample.entries()) ls.push_back(e.L);
  std::sort(ls.begin(), ls.end());
  double prev = f0;
  for (double l : ls) {
    if (l < 0.0) continue;
    const double fl = f(l);
    if (!std::isfinite(fl) || fl < prev) {
      throw Error(ErrorCode::kInvalidFunction, "f is not nondecreasing on the sample's L values");
    }
    prev = fl;
  }

  std::vector<SampleEntry> out;
  out.reserve(sample.size());
  for (const auto& e : sample.entries()) out.push_back({e.element, f(e.L)});
  return NormedGroupSample(sample.dimension(), std::move(out));
}

}  // namespace holonomic
