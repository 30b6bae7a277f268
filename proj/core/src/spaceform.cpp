#include "holonomic/spaceform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "holonomic/error.hpp"
#include "holonomic/surface_transport.hpp"

namespace holonomic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_nonflat(double K) {
  if (!std::isfinite(K)) throw Error(ErrorCode::kInvalidInput, "curvature must be finite");
  if (K == 0.0) throw Error(ErrorCode::kFlatExcluded, "flat space forms are excluded");
}

// Unreduced holonomy of the counterclockwise circle of radius r, 2π − ℓk.
double circle_holonomy(double K, double r) {
  if (r == 0.0) return 0.0;
  const GeodesicCircle c(K, r);
  return kTwoPi - c.length() * c.geodesic_curvature();
}

double bisect_root(double K, double target, double a, double b) {
  double fa = circle_holonomy(K, a) - target;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = circle_holonomy(K, m) - target;
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SpaceForm::SpaceForm(double K) : K_(K) { require_nonflat(K); }

double SpaceForm::length_norm(double theta) const {
  if (!std::isfinite(theta) || std::abs(theta) > kPi) {
    throw Error(ErrorCode::kOutOfDomain, "length norm is defined for |theta| <= pi");
  }
  const double t = std::abs(theta);
  const double sign = K_ > 0.0 ? -1.0 : 1.0;
  return std::sqrt(4.0 * kPi * t + sign * t * t) / std::sqrt(std::abs(K_));
}

double spaceform_length_norm(double K, double theta) { return SpaceForm(K).length_norm(theta); }

NumericLengthNorm spaceform_length_norm_numeric(double K, double theta, std::size_t grid) {
  require_nonflat(K);
  if (!std::isfinite(theta) || std::abs(theta) > kPi) {
    throw Error(ErrorCode::kOutOfDomain, "length norm is defined for |theta| <= pi");
  }
  if (grid < 256) throw Error(ErrorCode::kInvalidInput, "numeric length norm needs grid >= 256");
  if (theta == 0.0) return {0.0, 0.0, false, true};

  const double s = std::sqrt(std::abs(K));
  // Sphere: the whole chart. Hyperbolic plane: circles up to |K|A = 4π, which
  // covers every representative of |θ| ≤ π with at most one extra winding.
  const double r_max = K > 0.0 ? kPi / s : std::acosh(3.0) / s;

  std::vector<double> radii(grid + 1);
  std::vector<double> hol(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i) {
    // The open end r_max is approached but not reached on the sphere.
    double r = r_max * static_cast<double>(i) / static_cast<double>(grid);
    if (K > 0.0 && i == grid) r = std::nextafter(r_max, 0.0);
    radii[i] = r;
    hol[i] = circle_holonomy(K, r);
  }
  const double h_min = *std::min_element(hol.begin(), hol.end());
  const double h_max = *std::max_element(hol.begin(), hol.end());

  NumericLengthNorm best{std::numeric_limits<double>::infinity(), 0.0, false, false};
  // On the sphere the circles of radius r and π/√K − r have equal length;
  // equal lengths resolve to the smaller radius.
  auto consider = [&](double r, bool rev) {
    const double ell = GeodesicCircle(K, r).length();
    const double tie = 1e-12 * std::max(1.0, ell);
    if (ell < best.value - tie || (std::abs(ell - best.value) <= tie && r < best.radius)) {
      best = {ell, r, rev, true};
    }
  };
  for (const bool rev : {false, true}) {
    // Counterclockwise circles realise h(r); reversed ones realise −h(r).
    const double want = rev ? -theta : theta;
    const auto m_lo = static_cast<long>(std::floor((h_min - want) / kTwoPi));
    const auto m_hi = static_cast<long>(std::ceil((h_max - want) / kTwoPi));
    for (long m = m_lo; m <= m_hi; ++m) {
      const double target = want + kTwoPi * static_cast<double>(m);
      if (target == 0.0) continue;  // only the degenerate r = 0 "circle"
      for (std::size_t i = 0; i < grid; ++i) {
        const double f0 = hol[i] - target, f1 = hol[i + 1] - target;
        if (f0 == 0.0 && i > 0) {
          consider(radii[i], rev);
          continue;
        }
        if ((f0 < 0.0) == (f1 < 0.0) && f1 != 0.0) continue;
        if (f1 == 0.0) continue;  // picked up as f0 of the next cell
        const double r = bisect_root(K, target, radii[i], radii[i + 1]);
        if (r > 0.0) consider(r, rev);
      }
    }
  }
  return best;
}

double isoperimetric_residual(double K, double r) {
  const GeodesicCircle c(K, r);
  const double ell = c.length();
  const double A = c.area();
  return ell * ell - (4.0 * kPi * A - K * A * A);
}

ManifoldRadius manifold_holonomy_radius(double K, std::size_t grid) {
  require_nonflat(K);
  const double sign = K > 0.0 ? -1.0 : 1.0;
  const double absK = std::abs(K);
  auto integrand = [&](double theta) {
    const double chord = 2.0 * std::sin(0.5 * theta);  // ‖id − R_θ‖
    if (!(chord > 0.0)) return std::numeric_limits<double>::infinity();
    return (4.0 * kPi * theta + sign * theta * theta) / (2.0 * absK * chord);
  };
  ScanOptions scan;
  scan.grid = grid;
  scan.puncture = 1e-12;
  scan.geometric = true;
  const ParamMin best = scan_and_refine(integrand, 0.0, kPi, scan);
  return {std::sqrt(best.value), best.param, best.param <= scan.puncture * (1.0 + 1e-12)};
}

HolonomicSpace build_fiber_holonomic_space(double K, std::size_t n_angles) {
  require_nonflat(K);
  if (K < 0.0) throw Error(ErrorCode::kInvalidInput, "fiber spaces are only built for K > 0");
  if (n_angles < 3) throw Error(ErrorCode::kInvalidInput, "fiber space needs n_angles >= 3");

  const SpaceForm form(K);
  const auto denom = static_cast<double>(n_angles - 1);
  std::vector<SampleEntry> entries;
  entries.reserve(n_angles + 1);
  bool has_zero = false;
  auto add = [&](double theta) {
    std::ostringstream label;
    label.precision(17);
    label << "theta=" << theta;
    GroupElement a = theta == 0.0 ? GroupElement::identity(2) : GroupElement(planar_rotation(theta), label.str());
    entries.push_back({std::move(a), form.length_norm(theta)});
  };
  for (std::size_t i = 0; i < n_angles; ++i) {
    // Integer numerator keeps the grid exactly symmetric and hits 0 exactly.
    const double num = 2.0 * static_cast<double>(i) - denom;
    const double theta = kPi * num / denom;
    has_zero = has_zero || num == 0.0;
    add(theta);
  }
  if (!has_zero) add(0.0);
  return HolonomicSpace(NormedGroupSample(2, std::move(entries)));
}

HolonomicSpace fiber_rotation_family(double K) {
  require_nonflat(K);
  if (K < 0.0) throw Error(ErrorCode::kInvalidInput, "fiber spaces are only built for K > 0");
  const SpaceForm form(K);
  OneParamFamily fam;
  fam.lo = -kPi;
  fam.hi = kPi;
  fam.puncture = 1e-12;
  fam.element = [](double t) { return planar_rotation(t); };
  fam.norm = [form](double t) { return form.length_norm(std::clamp(t, -kPi, kPi)); };
  fam.locate = [](const Matrix& m) -> std::optional<double> {
    if (m.rows() != 2 || m.cols() != 2) return std::nullopt;
    return std::atan2(m(1, 0), m(0, 0));
  };
  fam.builder = "fiber_family";
  fam.parameters = {{"K", K}};
  return HolonomicSpace(std::move(fam));
}

FiberDistance fiber_distance(double K, const Vector& u, const Vector& v, std::size_t grid) {
  require_nonflat(K);
  if (K < 0.0) throw Error(ErrorCode::kInvalidInput, "fiber_distance requires K > 0");
  if (u.size() != 2 || v.size() != 2 || !u.allFinite() || !v.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "fiber_distance takes finite 2-vectors");
  }
  const SpaceForm form(K);
  ScanOptions scan;
  scan.grid = grid;
  scan.extra = {0.0};
  const ParamMin best = scan_and_refine(
      [&](double theta) {
        const double L = form.length_norm(theta);
        return L * L + (planar_rotation(theta) * u - v).squaredNorm();
      },
      -kPi, kPi, scan);
  return {std::sqrt(best.value), best.param};
}

}  // namespace holonomic
