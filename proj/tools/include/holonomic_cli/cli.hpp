#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace holonomic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInvalid = 2;

enum class Command {
  kSpaceformTable,
  kHolrad,
  kCounterexampleSweep,
  kFiberDistance,
  kPropertySuite,
  kTransportCheck,
};

enum class Format { kCsv, kJson };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

struct RunConfig {
  Command command = Command::kHolrad;
  double K = 1.0;
  // 0 selects the command's default.
  std::size_t grid = 0;
  double t_min = 1e-6;
  double t_max = 100.0;
  std::uint64_t seed = 0x5eed;
  int steps = 4096;
  std::size_t budget = 10000;
  std::vector<double> u;
  std::vector<double> v;
  // Empty: <command>.<format> in the working directory.
  std::string out;
  Format format = Format::kJson;
};

std::size_t default_grid(Command c) noexcept;
/// grid with the command default substituted.
std::size_t effective_grid(const RunConfig& config) noexcept;
std::string output_path(const RunConfig& config);

/// Keys mirror the long flag names with '-' replaced by '_'.
nlohmann::json config_to_json(const RunConfig& config);
/// Overlays the keys present in `j` onto `base`. Throws holonomic::Error
/// (kInvalidInput) naming the offending key.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Throws holonomic::Error (kInvalidInput) for out-of-range values.
void validate(const RunConfig& config);

struct ParseOutcome {
  std::optional<RunConfig> config;
  // Meaningful when config is empty: 0 for --help/--version, 2 for errors.
  int exit_code = kExitOk;
  std::string message;
};

ParseOutcome parse_args(int argc, const char* const* argv);

struct RunResult {
  int exit_code = kExitOk;
  // One line: command, key result, wall time.
  std::string summary;
};

/// Runs the experiment and writes the artifact. Never throws.
RunResult run(const RunConfig& config);

}  // namespace holonomic::cli
