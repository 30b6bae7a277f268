#include "holonomic/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "holonomic/error.hpp"
#include "holonomic/extended_real.hpp"

namespace holonomic {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kElementNotInSample: return "element-not-in-sample";
    case ErrorCode::kInvalidFunction: return "invalid-function";
    case ErrorCode::kOutOfChart: return "out-of-chart";
    case ErrorCode::kOutOfDomain: return "out-of-domain";
    case ErrorCode::kFlatExcluded: return "flat-excluded";
    case ErrorCode::kDegenerateLoop: return "degenerate-loop";
    case ErrorCode::kDegenerateRadius: return "divide-by-zero-radius";
  }
  return "unknown";
}

ExtendedReal ExtendedReal::finite(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidInput, "ExtendedReal::finite given a non-finite value");
  return ExtendedReal(x);
}

double ExtendedReal::value() const {
  if (!value_) throw Error(ErrorCode::kInvalidInput, "value() of an infinite ExtendedReal");
  return *value_;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

double max_entry_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kInvalidInput, "max_entry_distance: dimension mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix planar_rotation(double theta) {
  Matrix r(2, 2);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r << c, -s, s, c;
  return r;
}

Matrix block_rotation(std::initializer_list<double> angles) {
  const auto n = static_cast<Eigen::Index>(2 * angles.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index k = 0;
  for (double a : angles) {
    m.block(k, k, 2, 2) = planar_rotation(a);
    k += 2;
  }
  return m;
}

SymmetricEigen jacobi_eigen(const Matrix& symmetric) {
  const Eigen::Index n = symmetric.rows();
  if (symmetric.cols() != n) throw Error(ErrorCode::kInvalidInput, "jacobi_eigen: matrix is not square");
  Matrix a = 0.5 * (symmetric + symmetric.transpose());
  Matrix v = Matrix::Identity(n, n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    const double scale = a.diagonal().squaredNorm();
    if (off == 0.0 || off <= 1e-32 * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

namespace {

double spectral_norm_2x2(const Matrix& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  return 0.5 * (std::hypot(a + d, c - b) + std::hypot(a - d, b + c));
}

// Largest eigenvalue of a symmetric 3×3 matrix, trigonometric form.
double largest_eigenvalue_3x3(const Matrix& s) {
  const double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
  const double q = s.trace() / 3.0;
  const double d0 = s(0, 0) - q, d1 = s(1, 1) - q, d2 = s(2, 2) - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  if (p2 <= 0.0) return q;
  const double p = std::sqrt(p2 / 6.0);
  Matrix b = (s - q * Matrix::Identity(3, 3)) / p;
  const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

}  // namespace

double operator_norm(const Matrix& m) {
  if (!all_finite(m)) throw Error(ErrorCode::kInvalidInput, "operator_norm: non-finite entry");
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  if (m.rows() == 2 && m.cols() == 2) return spectral_norm_2x2(m);
  if (m.rows() == 3 && m.cols() == 3) {
    const Matrix s = m.transpose() * m;
    return std::sqrt(std::max(0.0, largest_eigenvalue_3x3(s)));
  }
  const SymmetricEigen eig = jacobi_eigen(m.transpose() * m);
  return std::sqrt(std::max(0.0, eig.values(0)));
}

SingularPair top_singular_pair(const Matrix& m) {
  if (!all_finite(m)) throw Error(ErrorCode::kInvalidInput, "top_singular_pair: non-finite entry");
  const SymmetricEigen eig = jacobi_eigen(m.transpose() * m);
  SingularPair out;
  out.right = eig.vectors.col(0).normalized();
  out.value = (m * out.right).norm();
  return out;
}

}  // namespace holonomic
