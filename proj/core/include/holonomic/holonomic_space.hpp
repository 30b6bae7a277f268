#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holonomic/extended_real.hpp"
#include "holonomic/group.hpp"
#include "holonomic/search.hpp"

namespace holonomic {

/// A one-parameter family t ↦ (element(t), L(t)) over a closed interval.
/// element(0) must be the identity with L(0) = 0, and L must be even.
struct OneParamFamily {
  double lo = 0.0;
  double hi = 0.0;
  std::function<Matrix(double)> element;
  std::function<double(double)> norm;
  // Searches never evaluate |t| < puncture (0/0 forms live at t = 0).
  double puncture = 1e-12;
  // Optional inverse map: a parameter t with element(t) ≈ m, if any.
  std::function<std::optional<double>(const Matrix&)> locate;
  // Builder id + parameters, used to serialise the family by name.
  std::string builder;
  std::map<std::string, double> parameters;

  Eigen::Index dimension() const;
  /// Throws kInvalidInput if the family breaks its invariants at t = 0 or is
  /// visibly asymmetric on a coarse probe grid.
  void check() const;
};

/// (V, H, L) with V = ℝⁿ carrying the Euclidean inner-product norm.
class HolonomicSpace {
 public:
  explicit HolonomicSpace(NormedGroupSample sample);
  explicit HolonomicSpace(OneParamFamily family);

  static HolonomicSpace trivial(Eigen::Index dimension);

  Eigen::Index dimension() const noexcept { return dimension_; }
  bool is_discrete() const noexcept { return std::holds_alternative<NormedGroupSample>(group_); }
  const NormedGroupSample& sample() const;
  const OneParamFamily& family() const;

  /// True when every element is the identity.
  bool is_trivial() const;

  /// The group as a finite list: the sample itself, or the family evaluated
  /// on a uniform grid of `family_grid` points plus a geometric grid out of
  /// the puncture (identity parameters excluded, t = 0 included once).
  std::vector<SampleEntry> discretize(std::size_t family_grid = 4096) const;

  /// L-value of the element matching `m`; nullopt when unresolvable.
  std::optional<double> resolve(const Matrix& m) const;

 private:
  Eigen::Index dimension_;
  std::variant<NormedGroupSample, OneParamFamily> group_;
};

struct DistanceOptions {
  std::size_t grid = 4096;
  double rel_tol = 1e-10;
};

/// d_L(u, v) = inf_a √(L(a)² + ‖u − a v‖²).
double holonomic_distance(const HolonomicSpace& space, const Vector& u, const Vector& v,
                          const DistanceOptions& options = {});

/// ‖v‖ recovered as d_L(v, 0).
double recover_norm(const HolonomicSpace& space, const Vector& v);

struct RadiusResult {
  ExtendedReal value = ExtendedReal::infinity();
  // Family parameter or sample index of the minimising element.
  std::optional<double> argmin_param;
  std::optional<std::size_t> argmin_index;
  // The minimum sits on the edge of the excluded puncture: the infimum may be
  // a limit below the reported value.
  bool at_puncture = false;
};

struct RadiusOptions {
  std::size_t grid = 4096;
  double rel_tol = 1e-10;
};

/// inf over non-identity a of L(a)/√(2‖id − a‖); +∞ for the trivial group.
RadiusResult holonomy_radius_origin(const HolonomicSpace& space, const RadiusOptions& options = {});

/// inf over non-identity a of L(a)/‖id − a‖; +∞ for the trivial group.
RadiusResult convexity_radius(const HolonomicSpace& space, const RadiusOptions& options = {});

struct PropertyPViolation {
  Vector v;
  Vector w;
  Matrix a;
  double L = 0.0;
  // ‖v − w‖² − ‖v − a w‖² − L(a)², strictly positive.
  double slack = 0.0;
};

/// Looks for v, w in the open ball B(u, r) and a group element a breaking
/// ‖v − w‖² − ‖v − a w‖² ≤ L(a)². Tests `pair_budget` uniformly sampled pairs
/// (deterministic in `seed`) against every element, plus adversarial pairs
/// built per element. Returns the violation with the largest slack.
std::optional<PropertyPViolation> check_property_p(const HolonomicSpace& space, const Vector& u,
                                                   double r, std::size_t pair_budget,
                                                   std::uint64_t seed);

struct RadiusBracket {
  bool unbounded = false;
  double lo = 0.0;
  double hi = 0.0;
  // hi carries a witnessed violation.
  bool witnessed = false;

  double mid() const noexcept { return 0.5 * (lo + hi); }
};

/// Bisection for HolRad(u) using check_property_p as the predicate.
RadiusBracket holonomy_radius_at(const HolonomicSpace& space, const Vector& u, double bracket_tol,
                                 std::size_t pair_budget, std::uint64_t seed = 0x5eed);

/// L(a⁻¹b)/HolRad(0) − √(2‖a − b‖); nonnegative up to rounding on a
/// holonomic space. Throws kElementNotInSample if a⁻¹b cannot be resolved and
/// kDegenerateRadius if HolRad(0) is zero or only approached at the puncture.
double lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b);
/// Same, against a radius already computed by holonomy_radius_origin(space).
double lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b, const RadiusResult& rho);

/// L(a⁻¹b)/CvxRad − ‖a − b‖, the convexity-radius form of the same bound.
double convexity_lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b);
double convexity_lipschitz_gap(const HolonomicSpace& space, const Matrix& a, const Matrix& b,
                               const RadiusResult& cvx);

/// ℝ⁴ = ℂ² with t·(z, w) = (e^{it} z, e^{i√2 t} w) and L(t) = |t| on
/// [−t_max, t_max]; searches exclude |t| < t_min.
HolonomicSpace counterexample_space(double t_min, double t_max);

}  // namespace holonomic
