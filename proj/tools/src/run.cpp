#include <chrono>
#include <exception>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "holonomic/error.hpp"
#include "holonomic/io.hpp"
#include "holonomic/version.hpp"
#include "holonomic_cli/cli.hpp"

namespace holonomic::cli {

namespace {

using nlohmann::json;

Artifact dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::kSpaceformTable: return spaceform_table(c);
    case Command::kHolrad: return holrad(c);
    case Command::kCounterexampleSweep: return counterexample_sweep(c);
    case Command::kFiberDistance: return fiber_distance_report(c);
    case Command::kPropertySuite: return property_suite(c);
    case Command::kTransportCheck: return transport_check(c);
  }
  throw Error(ErrorCode::kInvalidInput, "unknown command");
}

std::string render(const RunConfig& c, const Artifact& a) {
  const bool ok = !a.counterexample;
  if (c.format == Format::kJson) {
    json doc{{"tool", "holonomic"},
             {"version", kVersion},
             {"config", config_to_json(c)},
             {"status", ok ? "ok" : "violation"},
             {"result", a.result}};
    if (!ok) doc["counterexample"] = *a.counterexample;
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# holonomic " << kVersion << "\n";
  os << "# config " << config_to_json(c).dump() << "\n";
  os << "# status " << (ok ? "ok" : "violation") << "\n";
  if (!ok) os << "# counterexample " << a.counterexample->dump() << "\n";
  os << a.csv;
  return os.str();
}

std::string seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << "s";
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const std::string name(to_string(config.command));
  auto elapsed = [&] {
    return seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };

  RunResult out;
  try {
    validate(config);
    const std::string path = output_path(config);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);

    const Artifact a = dispatch(config);
    file << render(config, a);
    file.flush();
    if (!file) throw Error(ErrorCode::kInvalidInput, "failed writing " + path);

    out.exit_code = a.counterexample ? kExitViolation : kExitOk;
    out.summary = name + (a.counterexample ? " VIOLATION " : " ok ") + a.key_result + " -> " + path +
                  " wall=" + elapsed();
  } catch (const Error& e) {
    out.exit_code = kExitInvalid;
    out.summary = name + " error: " + e.what() + " wall=" + elapsed();
  } catch (const std::exception& e) {
    out.exit_code = kExitInvalid;
    out.summary = name + " error: " + e.what() + " wall=" + elapsed();
  }
  return out;
}

}  // namespace holonomic::cli
