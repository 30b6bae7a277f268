#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "holonomic/holonomic.hpp"

namespace holonomic::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string csv_text(std::span<const std::string_view> columns, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  io::write_csv_header(os, columns);
  for (const auto& r : rows) io::write_csv_row(os, r);
  return os.str();
}

std::string short_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Vector to_vector(const std::vector<double>& xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

std::vector<double> theta_grid(std::size_t n) {
  std::vector<double> out(n);
  const auto denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = kPi * (2.0 * static_cast<double>(i) - denom) / denom;
  return out;
}

}  // namespace

Artifact spaceform_table(const RunConfig& c) {
  const std::size_t n = effective_grid(c);
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  json jrows = json::array();
  double worst = 0.0;
  std::size_t worst_row = 0;
  bool complete = true;
  for (double theta : theta_grid(n)) {
    const double closed = spaceform_length_norm(c.K, theta);
    const NumericLengthNorm numeric = spaceform_length_norm_numeric(c.K, theta);
    complete = complete && numeric.complete;
    const double err = std::abs(closed - numeric.value);
    if (err > worst || !std::isfinite(err)) {
      worst = err;
      worst_row = rows.size();
    }
    rows.push_back({c.K, theta, closed, numeric.value, err});
    jrows.push_back({{"theta", theta}, {"L_closed", closed}, {"L_numeric", numeric.value}, {"abs_err", err},
                     {"radius", numeric.radius}, {"reversed", numeric.reversed}});
  }

  Artifact a;
  a.csv = csv_text(io::kSpaceformTableColumns, rows);
  a.result = {{"K", c.K}, {"rows", jrows}, {"max_abs_err", worst}, {"complete", complete}};
  a.key_result = "max_abs_err=" + short_number(worst);
  if (!(worst <= 1e-8) || !complete) {
    a.counterexample = json{{"check", "closed form vs circle family within 1e-8"}, {"row", jrows[worst_row]}};
  }
  return a;
}

Artifact holrad(const RunConfig& c) {
  const ManifoldRadius m = manifold_holonomy_radius(c.K, effective_grid(c));
  Artifact a;
  a.csv = csv_text(io::kHolradColumns, {{c.K, m.value, m.theta_star}});
  a.result = {{"K", c.K}, {"holrad", m.value}, {"theta_star", m.theta_star}, {"at_puncture", m.at_puncture}};
  a.key_result = "holrad=" + short_number(m.value) + " theta_star=" + short_number(m.theta_star);
  if (!(m.value > 0.0) || !std::isfinite(m.value)) {
    a.counterexample = json{{"check", "holonomy radius positive and finite"}, {"holrad", m.value}};
    return a;
  }
  if (c.K > 0.0) {
    constexpr std::size_t kFiberAngles = 10001;
    const RadiusResult fiber = holonomy_radius_origin(build_fiber_holonomic_space(c.K, kFiberAngles));
    const double diff = std::abs(fiber.value.value() - m.value);
    a.result["fiber_route"] = {{"n_angles", kFiberAngles}, {"holrad", fiber.value.value()}, {"abs_diff", diff}};
    if (!(diff <= 1e-4)) {
      a.counterexample = json{{"check", "corollary and fiber-space radius agree within 1e-4"},
                              {"holrad", m.value},
                              {"fiber_holrad", fiber.value.value()}};
    }
  }
  return a;
}

Artifact counterexample_sweep(const RunConfig& c) {
  const HolonomicSpace space = counterexample_space(c.t_min, c.t_max);
  const auto& fam = space.family();
  const std::size_t n = effective_grid(c);
  const Matrix id = Matrix::Identity(4, 4);

  constexpr std::string_view kColumns[] = {"t", "norm_id_minus_a", "cvx_ratio", "holrad_ratio"};
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  ParamMin cvx_min{0.0, INFINITY}, hol_min{0.0, INFINITY};
  const double log_span = std::log(c.t_max / c.t_min);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? c.t_max : c.t_min * std::exp(log_span * static_cast<double>(i) / static_cast<double>(n - 1));
    const double norm = operator_norm(id - fam.element(t));
    const double cvx = fam.norm(t) / norm;
    const double hol = fam.norm(t) / std::sqrt(2.0 * norm);
    if (better({t, cvx}, cvx_min)) cvx_min = {t, cvx};
    if (better({t, hol}, hol_min)) hol_min = {t, hol};
    rows.push_back({t, norm, cvx, hol});
  }
  const RadiusResult cvx_refined = convexity_radius(space);
  const double cvx_inf = std::min(cvx_min.value, cvx_refined.value.to_double());

  auto holrad_ratio = [&](double t) { return fam.norm(t) / std::sqrt(2.0 * operator_norm(id - fam.element(t))); };

  Artifact a;
  a.csv = csv_text(kColumns, rows);
  a.result = {{"t_min", c.t_min},
              {"t_max", c.t_max},
              {"samples", n},
              {"cvx_inf", cvx_inf},
              {"cvx_grid_min", {{"t", cvx_min.param}, {"ratio", cvx_min.value}}},
              {"holrad_grid_min", {{"t", hol_min.param}, {"ratio", hol_min.value}}},
              {"cvx_bound", 1.0 / std::numbers::sqrt2}};
  if (c.t_min <= 1e-4 && 1e-4 <= c.t_max) a.result["holrad_ratio_at_1e-4"] = holrad_ratio(1e-4);
  a.key_result = "cvx_inf=" + short_number(cvx_inf) + " holrad_min=" + short_number(hol_min.value) +
                 " at t=" + short_number(hol_min.param);

  // Every element satisfies ‖id − a‖ ≤ √2·|t|.
  if (!(cvx_inf >= 1.0 / std::numbers::sqrt2 - 1e-9)) {
    a.counterexample = json{{"check", "L/||id-a|| >= 1/sqrt(2)"}, {"t", cvx_min.param}, {"ratio", cvx_inf}};
    return a;
  }
  // The holonomy ratio behaves like √t near 0: strictly increasing there.
  for (std::size_t i = 1; i < rows.size() && rows[i][0] <= 0.1; ++i) {
    if (!(rows[i][3] > rows[i - 1][3])) {
      a.counterexample = json{{"check", "L/sqrt(2||id-a||) increasing for t <= 0.1"},
                              {"t0", rows[i - 1][0]},
                              {"ratio0", rows[i - 1][3]},
                              {"t1", rows[i][0]},
                              {"ratio1", rows[i][3]}};
      return a;
    }
  }
  return a;
}

Artifact fiber_distance_report(const RunConfig& c) {
  const Vector u = to_vector(c.u), v = to_vector(c.v);
  const FiberDistance d = fiber_distance(c.K, u, v, effective_grid(c));
  const double euclid = (u - v).norm();

  constexpr std::string_view kColumns[] = {"K", "u0", "u1", "v0", "v1", "d", "theta_star"};
  Artifact a;
  a.csv = csv_text(kColumns, {{c.K, u(0), u(1), v(0), v(1), d.distance, d.theta_star}});
  a.result = io::fiber_distance_to_json(c.K, u, v, d);
  a.result["euclidean"] = euclid;
  a.key_result = "d=" + short_number(d.distance) + " theta_star=" + short_number(d.theta_star);

  if (!(d.distance >= 0.0) || d.distance > euclid + 1e-12) {
    a.counterexample = json{{"check", "0 <= d <= ||u - v||"}, {"d", d.distance}, {"euclidean", euclid}};
    return a;
  }
  const double rho = manifold_holonomy_radius(c.K).value;
  if (u.norm() < rho && v.norm() < rho && std::abs(d.distance - euclid) > 1e-8) {
    a.counterexample =
        json{{"check", "local isometry inside the holonomy radius"}, {"d", d.distance}, {"euclidean", euclid}};
  }
  return a;
}

namespace {

struct CheckOutcome {
  std::string name;
  // Worst observed value of the checked quantity and the bound it must meet.
  double worst = 0.0;
  double bound = 0.0;
  std::optional<json> counterexample;
};

class Suite {
 public:
  explicit Suite(const RunConfig& c)
      : c_(c),
        K_(c.K),
        space_(build_fiber_holonomic_space(c.K, effective_grid(c))),
        rho0_(holonomy_radius_origin(space_).value.value()),
        manifold_rho_(manifold_holonomy_radius(c.K).value) {}

  std::vector<CheckOutcome> run() {
    std::vector<CheckOutcome> done;
    using Step = CheckOutcome (Suite::*)();
    const Step steps[] = {&Suite::group_norm,      &Suite::length_norm,     &Suite::metric_axioms,
                          &Suite::norm_recovery,   &Suite::ray_geodesic,    &Suite::local_isometry,
                          &Suite::property_p_in,   &Suite::property_p_out,  &Suite::lipschitz,
                          &Suite::radius_ordering, &Suite::displacement,    &Suite::dual_route,
                          &Suite::transport,       &Suite::residuals,       &Suite::boundedness};
    for (Step s : steps) {
      done.push_back((this->*s)());
      if (done.back().counterexample) break;
    }
    return done;
  }

 private:
  std::mt19937_64 rng(std::uint64_t salt) const { return std::mt19937_64(c_.seed ^ (salt * 0x9e3779b97f4a7c15ULL)); }

  static Vector in_box(std::mt19937_64& g, double scale) {
    std::uniform_real_distribution<double> d(-scale, scale);
    Vector v(2);
    v << d(g), d(g);
    return v;
  }

  static Vector in_ball(std::mt19937_64& g, double radius) {
    for (;;) {
      Vector v = in_box(g, radius);
      if (v.norm() < radius) return v;
    }
  }

  CheckOutcome group_norm() {
    CheckOutcome out{"group_norm_axioms", 0.0, 0.0, std::nullopt};
    const ValidationReport r = validate_group_norm(space_.sample());
    out.worst = static_cast<double>(r.violations.size());
    if (!r.valid()) out.counterexample = io::report_to_json(r);
    return out;
  }

  CheckOutcome length_norm() {
    CheckOutcome out{"length_norm_closed_vs_numeric", 0.0, 1e-8, std::nullopt};
    for (double theta : theta_grid(99)) {
      const double err = std::abs(spaceform_length_norm(K_, theta) - spaceform_length_norm_numeric(K_, theta).value);
      out.worst = std::max(out.worst, err);
      if (!(err <= out.bound)) {
        out.counterexample = json{{"theta", theta}, {"abs_err", err}};
        break;
      }
    }
    return out;
  }

  CheckOutcome metric_axioms() {
    CheckOutcome out{"metric_axioms", 0.0, -1e-9, std::nullopt};
    auto g = rng(1);
    const double scale = 3.0 * manifold_rho_;
    for (std::size_t i = 0; i < c_.budget; ++i) {
      const Vector u = in_box(g, scale), v = in_box(g, scale), w = in_box(g, scale);
      const double uv = holonomic_distance(space_, u, v);
      const double vu = holonomic_distance(space_, v, u);
      const double vw = holonomic_distance(space_, v, w);
      const double uw = holonomic_distance(space_, u, w);
      const double uu = holonomic_distance(space_, u, u);
      const double slack = std::min({uv + vw - uw, 1e-10 - std::abs(uv - vu), -uu});
      out.worst = std::min(out.worst, slack);
      if (slack < out.bound) {
        out.counterexample = json{{"u", io::vector_to_json(u)}, {"v", io::vector_to_json(v)},
                                  {"w", io::vector_to_json(w)}, {"d_uv", uv}, {"d_vu", vu},
                                  {"d_vw", vw}, {"d_uw", uw}, {"d_uu", uu}};
        break;
      }
    }
    return out;
  }

  CheckOutcome norm_recovery() {
    CheckOutcome out{"norm_recovery", 0.0, 1e-12, std::nullopt};
    auto g = rng(2);
    for (std::size_t i = 0; i < c_.budget; ++i) {
      const Vector v = in_box(g, 10.0 * manifold_rho_);
      const double n = v.norm();
      const double rel = std::abs(recover_norm(space_, v) - n) / std::max(n, 1e-300);
      out.worst = std::max(out.worst, rel);
      if (!(rel <= out.bound)) {
        out.counterexample = json{{"v", io::vector_to_json(v)}, {"relative_error", rel}};
        break;
      }
    }
    return out;
  }

  CheckOutcome ray_geodesic() {
    CheckOutcome out{"ray_geodesic", 0.0, 1e-12, std::nullopt};
    auto g = rng(3);
    std::uniform_real_distribution<double> len(0.0, 10.0 * manifold_rho_);
    for (std::size_t i = 0; i < c_.budget; ++i) {
      Vector e = in_ball(g, 1.0);
      if (e.norm() == 0.0) continue;
      e.normalize();
      const double s = len(g), t = len(g);
      const double err = std::abs(holonomic_distance(space_, s * e, t * e) - std::abs(s - t));
      const double rel = err / std::max(1.0, std::abs(s - t));
      out.worst = std::max(out.worst, rel);
      if (!(rel <= out.bound)) {
        out.counterexample = json{{"e", io::vector_to_json(e)}, {"s", s}, {"t", t}, {"error", err}};
        break;
      }
    }
    return out;
  }

  CheckOutcome local_isometry() {
    CheckOutcome out{"local_isometry", 0.0, 1e-8, std::nullopt};
    auto g = rng(4);
    const double r = 0.99 * manifold_rho_;
    const std::size_t pairs = std::max<std::size_t>(1, c_.budget / 10);
    for (std::size_t i = 0; i < pairs; ++i) {
      const Vector u = in_ball(g, r), v = in_ball(g, r);
      const double err = std::abs(fiber_distance(K_, u, v).distance - (u - v).norm());
      out.worst = std::max(out.worst, err);
      if (!(err <= out.bound)) {
        out.counterexample = json{{"u", io::vector_to_json(u)}, {"v", io::vector_to_json(v)}, {"error", err}};
        break;
      }
    }
    return out;
  }

  CheckOutcome property_p_in() {
    CheckOutcome out{"property_p_inside_0.99_rho0", 0.0, 0.0, std::nullopt};
    const auto viol = check_property_p(space_, Vector::Zero(2), 0.99 * rho0_, c_.budget, c_.seed);
    if (viol) {
      out.worst = viol->slack;
      out.counterexample = io::violation_to_json(*viol);
    }
    return out;
  }

  CheckOutcome property_p_out() {
    CheckOutcome out{"property_p_violated_at_1.2_rho0", 0.0, 0.0, std::nullopt};
    const auto viol = check_property_p(space_, Vector::Zero(2), 1.2 * rho0_, c_.budget, c_.seed);
    if (viol) {
      out.worst = viol->slack;
    } else {
      out.counterexample = json{{"r", 1.2 * rho0_}, {"detail", "no violation found outside the radius"}};
    }
    return out;
  }

  CheckOutcome lipschitz() {
    CheckOutcome out{"lipschitz_corollary", 0.0, -1e-9, std::nullopt};
    const auto& e = space_.sample().entries();
    const RadiusResult rho = holonomy_radius_origin(space_);
    for (const auto& a : e) {
      for (const auto& b : e) {
        const double gap = lipschitz_gap(space_, a.element.matrix(), b.element.matrix(), rho);
        out.worst = std::min(out.worst, gap);
        if (gap < out.bound) {
          out.counterexample = json{{"a", a.element.label()}, {"b", b.element.label()}, {"gap", gap}};
          return out;
        }
      }
    }
    return out;
  }

  CheckOutcome radius_ordering() {
    CheckOutcome out{"cvxrad_ge_holrad_per_element", 0.0, 0.0, std::nullopt};
    for (const auto& e : space_.sample().entries()) {
      if (e.element.is_identity()) continue;
      const double n = operator_norm(Matrix::Identity(2, 2) - e.element.matrix());
      const double diff = e.L / n - e.L / std::sqrt(2.0 * n);
      out.worst = std::min(out.worst, diff);
      if (diff < -1e-15) {
        out.counterexample = json{{"element", e.element.label()}, {"difference", diff}};
        break;
      }
    }
    return out;
  }

  CheckOutcome displacement() {
    CheckOutcome out{"displacement_inside_cvxrad", 0.0, 1e-12, std::nullopt};
    const double cvx = convexity_radius(space_).value.value();
    auto g = rng(5);
    const std::size_t points = std::max<std::size_t>(1, c_.budget / 100);
    for (std::size_t i = 0; i < points; ++i) {
      const Vector u = in_ball(g, cvx);
      for (const auto& e : space_.sample().entries()) {
        const double excess = (u - e.element.apply(u)).norm() - e.L;
        out.worst = std::max(out.worst, excess);
        if (excess > out.bound) {
          out.counterexample = json{{"u", io::vector_to_json(u)}, {"element", e.element.label()}, {"excess", excess}};
          return out;
        }
      }
    }
    return out;
  }

  CheckOutcome dual_route() {
    CheckOutcome out{"holrad_dual_route", 0.0, 0.0, std::nullopt};
    out.worst = rho0_ - manifold_rho_;
    // A discrete sample can only raise the infimum.
    if (out.worst < -1e-12) {
      out.counterexample = json{{"fiber_holrad", rho0_}, {"manifold_holrad", manifold_rho_}};
    }
    return out;
  }

  CheckOutcome transport() {
    CheckOutcome out{"transport_three_oracles", 0.0, 1e-6, std::nullopt};
    const double s = std::sqrt(K_);
    const auto rows = transport_sweep(K_, {kPi / 6 / s, kPi / 4 / s, kPi / 3 / s, kPi / 2 / s}, 4096);
    for (const auto& r : rows) {
      const double err = std::max({angular_distance(r.theta_ode, r.theta_gb), angular_distance(r.theta_ode, r.theta_extrinsic),
                                   angular_distance(r.theta_gb, r.theta_extrinsic)});
      out.worst = std::max(out.worst, err);
      if (!(err <= out.bound)) {
        out.counterexample = json{{"r", r.r}, {"theta_ode", r.theta_ode}, {"theta_gb", r.theta_gb},
                                  {"theta_extrinsic", r.theta_extrinsic}};
        break;
      }
    }
    return out;
  }

  CheckOutcome residuals() {
    CheckOutcome out{"isoperimetric_and_gauss_bonnet", 0.0, 1e-9, std::nullopt};
    for (double K : {K_, -K_}) {
      const double reach = K > 0 ? kPi / std::sqrt(K) : 4.0 / std::sqrt(-K);
      for (int i = 1; i < 32; ++i) {
        const double r = reach * i / 32.0;
        const GeodesicCircle c(K, r);
        const double iso = std::abs(isoperimetric_residual(K, r)) / (c.length() * c.length());
        const double gb = std::abs(gauss_bonnet_residual(c)) / std::max(1.0, std::abs(K * c.area()));
        out.worst = std::max({out.worst, iso, gb});
        if (!(iso <= out.bound) || !(gb <= out.bound)) {
          out.counterexample = json{{"K", K}, {"r", r}, {"isoperimetric", iso}, {"gauss_bonnet", gb}};
          return out;
        }
      }
    }
    return out;
  }

  CheckOutcome boundedness() {
    CheckOutcome out{"bounded_length_norm", 0.0, 1e-10, std::nullopt};
    double max_l = 0.0;
    for (const auto& e : space_.sample().entries()) max_l = std::max(max_l, e.L);
    out.worst = std::abs(max_l - kPi * std::sqrt(3.0 / K_));
    if (!(out.worst <= out.bound)) out.counterexample = json{{"max_L", max_l}};
    return out;
  }

  const RunConfig& c_;
  double K_;
  HolonomicSpace space_;
  double rho0_;
  double manifold_rho_;
};

}  // namespace

Artifact property_suite(const RunConfig& c) {
  const std::vector<CheckOutcome> checks = Suite(c).run();

  std::ostringstream csv;
  csv << "check,passed,worst,bound\n";
  json jchecks = json::array();
  Artifact a;
  for (const auto& ch : checks) {
    const bool passed = !ch.counterexample;
    csv << ch.name << ',' << (passed ? 1 : 0) << ',' << io::format_double(ch.worst) << ','
        << io::format_double(ch.bound) << '\n';
    jchecks.push_back({{"check", ch.name}, {"passed", passed}, {"worst", ch.worst}, {"bound", ch.bound}});
    if (!passed) a.counterexample = json{{"check", ch.name}, {"witness", *ch.counterexample}};
  }
  a.csv = csv.str();
  a.result = {{"K", c.K}, {"n_angles", effective_grid(c)}, {"checks", jchecks}};
  a.key_result = a.counterexample ? "failed " + checks.back().name
                                  : "passed " + std::to_string(checks.size()) + " checks";
  return a;
}

Artifact transport_check(const RunConfig& c) {
  const double s = std::sqrt(std::abs(c.K));
  std::vector<double> radii;
  if (c.K > 0.0) {
    for (double f : {6.0, 4.0, 3.0, 2.0}) radii.push_back(kPi / f / s);
  } else {
    for (double r : {0.25, 0.5, 1.0, 2.0}) radii.push_back(r / s);
  }
  const auto rows = transport_sweep(c.K, radii, c.steps);

  std::ostringstream csv;
  io::write_transport_csv(csv, rows);
  Artifact a;
  a.csv = csv.str();
  json jrows = json::array();
  double worst = 0.0;
  for (const auto& r : rows) {
    double err = angular_distance(r.theta_ode, r.theta_gb);
    if (c.K > 0.0) {
      err = std::max({err, angular_distance(r.theta_ode, r.theta_extrinsic), angular_distance(r.theta_gb, r.theta_extrinsic)});
    }
    const double gb_scale = std::max(1.0, std::abs(c.K) * GeodesicCircle(c.K, r.r).area());
    json row{{"r", r.r},         {"ell", r.ell},           {"int_k", r.int_k},   {"theta_ode", r.theta_ode},
             {"theta_gb", r.theta_gb}, {"residual", r.residual}, {"max_disagreement", err}};
    if (c.K > 0.0) row["theta_extrinsic"] = r.theta_extrinsic;
    jrows.push_back(row);
    worst = std::max(worst, err);
    if (!a.counterexample && (!(err <= 1e-6) || !(std::abs(r.residual) <= 1e-9 * gb_scale))) {
      a.counterexample = json{{"check", "routes agree within 1e-6 and Gauss-Bonnet residual vanishes"}, {"row", row}};
    }
  }
  a.result = {{"K", c.K}, {"steps", c.steps}, {"rows", jrows}, {"max_disagreement", worst}};
  a.key_result = "max_disagreement=" + short_number(worst);
  return a;
}

}  // namespace holonomic::cli
