#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "holonomic/group.hpp"
#include "holonomic/holonomic_space.hpp"
#include "holonomic/spaceform.hpp"
#include "holonomic/surface_transport.hpp"

namespace holonomic::io {

using nlohmann::json;

/// 17 significant digits, '.' decimal, independent of the C++ locale;
/// "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double x);

void write_csv_row(std::ostream& os, std::span<const double> values);
void write_csv_header(std::ostream& os, std::span<const std::string_view> columns);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// {"dimension": n, "entries": [{"matrix": [[...]], "L": x, "label": "..."}]}
json sample_to_json(const NormedGroupSample& sample);
/// Throws holonomic::Error(kInvalidInput) on schema or orthogonality errors.
NormedGroupSample sample_from_json(const json& j);

/// Discrete spaces serialise as their sample; families by builder id and
/// parameters, e.g. {"family": "counterexample", "t_min": 1e-6, "t_max": 100}.
json space_to_json(const HolonomicSpace& space);
/// Accepts either form. Known builders: "counterexample" (t_min, t_max),
/// "fiber" (K, n_angles) and "fiber_family" (K).
HolonomicSpace space_from_json(const json& j);

json violation_to_json(const PropertyPViolation& violation);
json report_to_json(const ValidationReport& report);
json fiber_distance_to_json(double K, const Vector& u, const Vector& v, const FiberDistance& d);

inline constexpr std::string_view kSpaceformTableColumns[] = {"K", "theta", "L_closed", "L_numeric", "abs_err"};
inline constexpr std::string_view kHolradColumns[] = {"K", "holrad", "theta_star"};
inline constexpr std::string_view kTransportColumns[] = {"K",        "r",        "ell",
                                                         "int_k",    "theta_ode", "theta_gb",
                                                         "theta_extrinsic", "residual"};

void write_transport_csv(std::ostream& os, std::span<const TransportSweepRow> rows);

}  // namespace holonomic::io
