#include "holonomic/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "holonomic/error.hpp"

namespace holonomic::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw Error(ErrorCode::kInvalidInput, "format_double failed");
  return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& os, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << format_double(values[i]);
  }
  os << '\n';
}

void write_csv_header(std::ostream& os, std::span<const std::string_view> columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << columns[i];
  }
  os << '\n';
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::kInvalidInput, "matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::kInvalidInput, "matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw Error(ErrorCode::kInvalidInput, "matrix entries must be numbers");
      m(i, c) = x.get<double>();
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidInput, "vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::kInvalidInput, "vector entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json sample_to_json(const NormedGroupSample& sample) {
  json entries = json::array();
  for (const auto& e : sample.entries()) {
    json item{{"matrix", matrix_to_json(e.element.matrix())}, {"L", e.L}};
    if (!e.element.label().empty()) item["label"] = e.element.label();
    entries.push_back(std::move(item));
  }
  return json{{"dimension", sample.dimension()}, {"entries", std::move(entries)}};
}

NormedGroupSample sample_from_json(const json& j) {
  try {
    const auto n = j.at("dimension").get<Eigen::Index>();
    std::vector<SampleEntry> entries;
    for (const json& item : j.at("entries")) {
      std::string label = item.contains("label") ? item.at("label").get<std::string>() : std::string{};
      GroupElement a(matrix_from_json(item.at("matrix")), std::move(label));
      entries.push_back({std::move(a), item.at("L").get<double>()});
    }
    return NormedGroupSample(n, std::move(entries));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("malformed sample JSON: ") + e.what());
  }
}

json space_to_json(const HolonomicSpace& space) {
  if (space.is_discrete()) return sample_to_json(space.sample());
  const auto& fam = space.family();
  if (fam.builder.empty()) throw Error(ErrorCode::kInvalidInput, "family has no builder id to serialise");
  json out{{"family", fam.builder}};
  for (const auto& [k, v] : fam.parameters) out[k] = v;
  return out;
}

HolonomicSpace space_from_json(const json& j) {
  try {
    if (j.contains("family")) {
      const auto id = j.at("family").get<std::string>();
      if (id == "counterexample") {
        return counterexample_space(j.value("t_min", 1e-6), j.at("t_max").get<double>());
      }
      if (id == "fiber") {
        return build_fiber_holonomic_space(j.at("K").get<double>(), j.value<std::size_t>("n_angles", 1025));
      }
      if (id == "fiber_family") return fiber_rotation_family(j.at("K").get<double>());
      throw Error(ErrorCode::kInvalidInput, "unknown family builder '" + id + "'");
    }
    return HolonomicSpace(sample_from_json(j));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("malformed space JSON: ") + e.what());
  }
}

json violation_to_json(const PropertyPViolation& violation) {
  return json{{"v", vector_to_json(violation.v)},
              {"w", vector_to_json(violation.w)},
              {"a", matrix_to_json(violation.a)},
              {"L", violation.L},
              {"slack", violation.slack}};
}

json report_to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json item{{"axiom", std::string(to_string(v.kind))}, {"first", v.first}, {"amount", v.amount},
              {"detail", v.detail}};
    if (v.second) item["second"] = *v.second;
    violations.push_back(std::move(item));
  }
  return json{{"valid", report.valid()},
              {"checked_pairs", report.checked_pairs},
              {"unchecked_pairs", report.unchecked_pairs},
              {"violations", std::move(violations)}};
}

json fiber_distance_to_json(double K, const Vector& u, const Vector& v, const FiberDistance& d) {
  return json{{"K", K}, {"u", vector_to_json(u)}, {"v", vector_to_json(v)}, {"d", d.distance},
              {"theta_star", d.theta_star}};
}

void write_transport_csv(std::ostream& os, std::span<const TransportSweepRow> rows) {
  write_csv_header(os, kTransportColumns);
  for (const auto& r : rows) {
    const double vals[] = {r.K, r.r, r.ell, r.int_k, r.theta_ode, r.theta_gb, r.theta_extrinsic, r.residual};
    write_csv_row(os, vals);
  }
}

}  // namespace holonomic::io
