#include "holonomic/holonomic_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holonomic/error.hpp"

namespace holonomic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(const HolonomicSpace& space, const Vector& x, const char* what) {
  if (x.size() != space.dimension()) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + ": vector dimension does not match the space");
  }
  if (!x.allFinite()) throw Error(ErrorCode::kInvalidInput, std::string(what) + ": non-finite vector");
}

bool is_identity_matrix(const Matrix& m) {
  return max_entry_distance(m, Matrix::Identity(m.rows(), m.cols())) <= kIdentityTolerance;
}

// Matrices within kIdentityTolerance are one group element.
bool same_element(const Matrix& a, const Matrix& b) { return max_entry_distance(a, b) <= kIdentityTolerance; }

// Ratio L(a)/g(‖id − a‖) with identity elements mapped to +inf so they drop
// out of the infimum.
template <typename Denominator>
double radius_ratio(const Matrix& a, double L, Denominator denom) {
  if (is_identity_matrix(a)) return kInf;
  const double n = operator_norm(Matrix::Identity(a.rows(), a.cols()) - a);
  if (n <= 0.0) return kInf;
  return L / denom(n);
}

template <typename Denominator>
RadiusResult radius_search(const HolonomicSpace& space, const RadiusOptions& options, Denominator denom) {
  RadiusResult out;
  if (space.is_discrete()) {
    const auto& entries = space.sample().entries();
    const IndexMin best = parallel_argmin(entries.size(), [&](std::size_t i) {
      return radius_ratio(entries[i].element.matrix(), entries[i].L, denom);
    });
    if (best.found) {
      out.value = ExtendedReal::finite(best.value);
      out.argmin_index = best.index;
    }
    return out;
  }

  const auto& fam = space.family();
  ScanOptions scan;
  scan.grid = options.grid;
  scan.puncture = std::max(fam.puncture, 0.0);
  scan.geometric = true;
  scan.rel_tol = options.rel_tol;
  const ParamMin best = scan_and_refine(
      [&](double t) { return radius_ratio(fam.element(t), fam.norm(t), denom); }, fam.lo, fam.hi, scan);
  if (std::isfinite(best.value)) {
    out.value = ExtendedReal::finite(best.value);
    out.argmin_param = best.param;
    out.at_puncture = scan.puncture > 0.0 && std::abs(best.param) <= scan.puncture * (1.0 + 1e-12);
  }
  return out;
}

}  // namespace

Eigen::Index OneParamFamily::dimension() const {
  if (!element) throw Error(ErrorCode::kInvalidInput, "family has no element map");
  return element(0.0).rows();
}

void OneParamFamily::check() const {
  if (!element || !norm) throw Error(ErrorCode::kInvalidInput, "family needs element and norm maps");
  if (!(lo < hi) || !(lo <= 0.0 && 0.0 <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidInput, "family range must be a finite interval containing 0");
  }
  const Matrix e0 = element(0.0);
  if (e0.rows() == 0 || e0.rows() != e0.cols() || !is_identity_matrix(e0)) {
    throw Error(ErrorCode::kInvalidInput, "family element(0) must be the identity");
  }
  if (std::abs(norm(0.0)) > 1e-12) throw Error(ErrorCode::kInvalidInput, "family L(0) must be 0");
  const double reach = std::min(-lo, hi);
  for (int i = 1; i <= 16; ++i) {
    const double t = reach * i / 16.0;
    if (t <= 0.0) break;
    const double a = norm(t), b = norm(-t);
    if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) {
      throw Error(ErrorCode::kInvalidInput, "family L is not symmetric");
    }
  }
}

HolonomicSpace::HolonomicSpace(NormedGroupSample sample)
    : dimension_(sample.dimension()), group_(std::move(sample)) {}

HolonomicSpace::HolonomicSpace(OneParamFamily family) : dimension_(0), group_(std::move(family)) {
  const auto& fam = std::get<OneParamFamily>(group_);
  fam.check();
  dimension_ = fam.dimension();
}

HolonomicSpace HolonomicSpace::trivial(Eigen::Index dimension) {
  return HolonomicSpace(NormedGroupSample(dimension, {{GroupElement::identity(dimension), 0.0}}));
}

const NormedGroupSample& HolonomicSpace::sample() const {
  if (!is_discrete()) throw Error(ErrorCode::kInvalidInput, "space is a one-parameter family");
  return std::get<NormedGroupSample>(group_);
}

const OneParamFamily& HolonomicSpace::family() const {
  if (is_discrete()) throw Error(ErrorCode::kInvalidInput, "space is a discrete sample");
  return std::get<OneParamFamily>(group_);
}

bool HolonomicSpace::is_trivial() const {
  if (is_discrete()) return sample().is_trivial();
  for (const auto& e : discretize()) {
    if (!e.element.is_identity()) return false;
  }
  return true;
}

std::vector<SampleEntry> HolonomicSpace::discretize(std::size_t family_grid) const {
  if (is_discrete()) return sample().entries();
  const auto& fam = family();
  std::vector<double> params;
  for (double t : uniform_grid(fam.lo, fam.hi, std::max<std::size_t>(family_grid, 2))) {
    if (std::abs(t) >= fam.puncture && t != 0.0) params.push_back(t);
  }
  if (fam.puncture > 0.0) {
    const double reach = std::max(-fam.lo, fam.hi);
    const std::size_t n = std::max<std::size_t>(family_grid / 4, 2);
    for (std::size_t i = 0; i < n && reach > fam.puncture; ++i) {
      const double t = fam.puncture * std::pow(reach / fam.puncture, static_cast<double>(i) / static_cast<double>(n - 1));
      if (t <= fam.hi) params.push_back(t);
      if (-t >= fam.lo) params.push_back(-t);
    }
  }
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());

  std::vector<SampleEntry> out;
  out.reserve(params.size() + 1);
  out.push_back({GroupElement::identity(dimension_), 0.0});
  for (double t : params) {
    GroupElement a(fam.element(t));
    if (a.is_identity()) continue;
    out.push_back({std::move(a), fam.norm(t)});
  }
  return out;
}

std::optional<double> HolonomicSpace::resolve(const Matrix& m) const {
  if (m.rows() != dimension_ || m.cols() != dimension_) return std::nullopt;
  if (is_discrete()) {
    const auto k = sample().find(m);
    if (!k) return std::nullopt;
    return sample()[*k].L;
  }
  const auto& fam = family();
  if (is_identity_matrix(m)) return 0.0;
  if (fam.locate) {
    const auto t = fam.locate(m);
    if (t && *t >= fam.lo && *t <= fam.hi && max_entry_distance(fam.element(*t), m) <= kIdentityTolerance) {
      return fam.norm(*t);
    }
    return std::nullopt;
  }
  ScanOptions scan;
  scan.grid = 1 << 16;
  const ParamMin best =
      scan_and_refine([&](double t) { return max_entry_distance(fam.element(t), m); }, fam.lo, fam.hi, scan);
  if (best.value <= kIdentityTolerance) return fam.norm(best.param);
  return std::nullopt;
}

double holonomic_distance(const HolonomicSpace& space, const Vector& u, const Vector& v,
                          const DistanceOptions& options) {
  require_dimension(space, u, "holonomic_distance");
  require_dimension(space, v, "holonomic_distance");

  if (space.is_discrete()) {
    const auto& entries = space.sample().entries();
    const IndexMin best = parallel_argmin(entries.size(), [&](std::size_t i) {
      const double L = entries[i].L;
      return L * L + (u - entries[i].element.matrix() * v).squaredNorm();
    });
    // The identity witness bounds d_L by ‖u − v‖ even for samples missing it.
    const double euclid = (u - v).squaredNorm();
    return std::sqrt(best.found ? std::min(best.value, euclid) : euclid);
  }

  const auto& fam = space.family();
  ScanOptions scan;
  scan.grid = options.grid;
  scan.rel_tol = options.rel_tol;
  scan.extra = {0.0};
  const ParamMin best = scan_and_refine(
      [&](double t) {
        const double L = fam.norm(t);
        return L * L + (u - fam.element(t) * v).squaredNorm();
      },
      fam.lo, fam.hi, scan);
  return std::sqrt(std::min(best.value, (u - v).squaredNorm()));
}

double recover_norm(const HolonomicSpace& space, const Vector& v) {
  return holonomic_distance(space, v, Vector::Zero(space.dimension()));
}

RadiusResult holonomy_radius_origin(const HolonomicSpace& space, const RadiusOptions& options) {
  return radius_search(space, options, [](double n) { return std::sqrt(2.0 * n); });
}

RadiusResult convexity_radius(const HolonomicSpace& space, const RadiusOptions& options) {
  return radius_search(space, options, [](double n) { return n; });
}

double lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b) {
  return lipschitz_gap(space, a, b, holonomy_radius_origin(space));
}

double lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b, const RadiusResult& rho) {
  if (a.rows() != space.dimension() || b.rows() != space.dimension()) {
    throw Error(ErrorCode::kInvalidInput, "lipschitz_gap: dimension mismatch");
  }
  const auto L = space.resolve(a.transpose() * b);
  if (!L) throw Error(ErrorCode::kElementNotInSample, "a^-1 b cannot be resolved in the group");
  const double spread = same_element(a, b) ? 0.0 : std::sqrt(2.0 * operator_norm(a - b));
  if (rho.value.is_infinite()) return -spread;
  if (rho.value.value() <= 0.0 || rho.at_puncture) {
    throw Error(ErrorCode::kDegenerateRadius,
                "holonomy radius at the origin is zero or only approached at the puncture");
  }
  return *L / rho.value.value() - spread;
}

double convexity_lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b) {
  return convexity_lipschitz_gap(space, a, b, convexity_radius(space));
}

double convexity_lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b,
                               const RadiusResult& cvx) {
  if (a.rows() != space.dimension() || b.rows() != space.dimension()) {
    throw Error(ErrorCode::kInvalidInput, "convexity_lipschitz_gap: dimension mismatch");
  }
  const auto L = space.resolve(a.transpose() * b);
  if (!L) throw Error(ErrorCode::kElementNotInSample, "a^-1 b cannot be resolved in the group");
  const double spread = same_element(a, b) ? 0.0 : operator_norm(a - b);
  if (cvx.value.is_infinite()) return -spread;
  if (cvx.value.value() <= 0.0) throw Error(ErrorCode::kDegenerateRadius, "convexity radius is zero");
  return *L / cvx.value.value() - spread;
}

HolonomicSpace counterexample_space(double t_min, double t_max) {
  if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::kInvalidInput, "counterexample_space needs 0 < t_min < t_max");
  }
  const double ratio = std::numbers::sqrt2;
  OneParamFamily fam;
  fam.lo = -t_max;
  fam.hi = t_max;
  fam.puncture = t_min;
  fam.element = [ratio](double t) { return block_rotation({t, ratio * t}); };
  fam.norm = [](double t) { return std::abs(t); };
  fam.locate = [ratio, t_max](const Matrix& m) -> std::optional<double> {
    if (m.rows() != 4 || m.cols() != 4) return std::nullopt;
    const double t0 = std::atan2(m(1, 0), m(0, 0));
    const double period = 2.0 * std::numbers::pi;
    const auto k_lo = static_cast<long>(std::floor((-t_max - t0) / period));
    const auto k_hi = static_cast<long>(std::ceil((t_max - t0) / period));
    std::optional<double> best;
    double best_err = kInf;
    for (long k = k_lo; k <= k_hi; ++k) {
      const double t = t0 + period * static_cast<double>(k);
      if (t < -t_max || t > t_max) continue;
      const double err = max_entry_distance(block_rotation({t, ratio * t}), m);
      if (err < best_err) {
        best_err = err;
        best = t;
      }
    }
    if (best_err <= kIdentityTolerance) return best;
    return std::nullopt;
  };
  fam.builder = "counterexample";
  fam.parameters = {{"t_min", t_min}, {"t_max", t_max}};
  return HolonomicSpace(std::move(fam));
}

}  // namespace holonomic
