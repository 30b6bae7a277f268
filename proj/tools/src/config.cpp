#include <array>
#include <cmath>
#include <fstream>
#include <utility>

#include <CLI11.hpp>

#include "holonomic/error.hpp"
#include "holonomic/version.hpp"
#include "holonomic_cli/cli.hpp"

namespace holonomic::cli {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommandNames{{
    {Command::kSpaceformTable, "spaceform-table"},
    {Command::kHolrad, "holrad"},
    {Command::kCounterexampleSweep, "counterexample-sweep"},
    {Command::kFiberDistance, "fiber-distance"},
    {Command::kPropertySuite, "property-suite"},
    {Command::kTransportCheck, "transport-check"},
}};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidInput, what); }

template <typename T>
T get_key(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (const auto& [cmd, n] : kCommandNames) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

std::size_t default_grid(Command c) noexcept {
  switch (c) {
    case Command::kSpaceformTable: return 99;
    case Command::kHolrad: return 100000;
    case Command::kCounterexampleSweep: return 100000;
    case Command::kFiberDistance: return 4096;
    case Command::kPropertySuite: return 513;
    case Command::kTransportCheck: return 4;
  }
  return 4096;
}

std::size_t effective_grid(const RunConfig& config) noexcept {
  return config.grid == 0 ? default_grid(config.command) : config.grid;
}

std::string output_path(const RunConfig& config) {
  if (!config.out.empty()) return config.out;
  return std::string(to_string(config.command)) + (config.format == Format::kCsv ? ".csv" : ".json");
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j{{"command", std::string(to_string(c.command))},
                   {"K", c.K},
                   {"grid", effective_grid(c)},
                   {"t_min", c.t_min},
                   {"t_max", c.t_max},
                   {"seed", c.seed},
                   {"steps", c.steps},
                   {"budget", c.budget},
                   {"out", output_path(c)},
                   {"format", c.format == Format::kCsv ? "csv" : "json"}};
  j["u"] = c.u;
  j["v"] = c.v;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) bad("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      const auto cmd = parse_command(get_key<std::string>(j, "command"));
      if (!cmd) bad("config key 'command' names an unknown command");
      c.command = *cmd;
    } else if (key == "K") {
      c.K = get_key<double>(j, "K");
    } else if (key == "grid") {
      c.grid = get_key<std::size_t>(j, "grid");
    } else if (key == "t_min") {
      c.t_min = get_key<double>(j, "t_min");
    } else if (key == "t_max") {
      c.t_max = get_key<double>(j, "t_max");
    } else if (key == "seed") {
      c.seed = get_key<std::uint64_t>(j, "seed");
    } else if (key == "steps") {
      c.steps = get_key<int>(j, "steps");
    } else if (key == "budget") {
      c.budget = get_key<std::size_t>(j, "budget");
    } else if (key == "out") {
      c.out = get_key<std::string>(j, "out");
    } else if (key == "format") {
      const auto f = get_key<std::string>(j, "format");
      if (f != "csv" && f != "json") bad("config key 'format' must be csv or json");
      c.format = f == "csv" ? Format::kCsv : Format::kJson;
    } else if (key == "u") {
      c.u = get_key<std::vector<double>>(j, "u");
    } else if (key == "v") {
      c.v = get_key<std::vector<double>>(j, "v");
    } else {
      bad("unknown config key '" + key + "'");
    }
  }
  return c;
}

void validate(const RunConfig& c) {
  if (!std::isfinite(c.K)) bad("--K must be finite");
  if (c.grid != 0 && c.grid < 8) bad("--grid must be at least 8");
  if (!(c.t_min > 0.0) || !(c.t_max > c.t_min) || !std::isfinite(c.t_max)) {
    bad("--t-min and --t-max need 0 < t-min < t-max");
  }
  if (c.steps < 16) bad("--steps must be at least 16");
  if (c.budget < 1) bad("--budget must be at least 1");
  for (double x : c.u) {
    if (!std::isfinite(x)) bad("--u must be finite");
  }
  for (double x : c.v) {
    if (!std::isfinite(x)) bad("--v must be finite");
  }
  if (c.command == Command::kFiberDistance && (c.u.size() != 2 || c.v.size() != 2)) {
    bad("fiber-distance needs --u x,y and --v x,y");
  }
}

ParseOutcome parse_args(int argc, const char* const* argv) {
  CLI::App app{"Holonomic spaces: radii, length norms, transport and property checks", "holonomic"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string command;
  std::string config_path;
  RunConfig flags;
  std::string format = "json";
  std::vector<std::string> commands;
  for (const auto& [cmd, name] : kCommandNames) commands.emplace_back(name);

  app.add_option("command", command, "Experiment to run")->check(CLI::IsMember(commands));
  app.add_option("--config", config_path, "JSON file with any of the options below")->check(CLI::ExistingFile);
  auto* k = app.add_option("--K", flags.K, "Curvature of the space form");
  auto* grid = app.add_option("--grid", flags.grid, "Grid size (command specific)");
  auto* t_min = app.add_option("--t-min", flags.t_min, "Smallest counterexample parameter");
  auto* t_max = app.add_option("--t-max", flags.t_max, "Largest counterexample parameter");
  auto* seed = app.add_option("--seed", flags.seed, "Seed for sampled pairs and triples");
  auto* steps = app.add_option("--steps", flags.steps, "RK4 steps per loop");
  auto* budget = app.add_option("--budget", flags.budget, "Random pairs/triples per check");
  auto* out = app.add_option("--out", flags.out, "Artifact path");
  auto* fmt = app.add_option("--format", format, "Artifact format")->check(CLI::IsMember({"csv", "json"}));
  auto* u = app.add_option("--u", flags.u, "First vector, comma separated")->delimiter(',');
  auto* v = app.add_option("--v", flags.v, "Second vector, comma separated")->delimiter(',');

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::CallForVersion&) {
    outcome.message = std::string(kVersion);
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kExitInvalid;
    outcome.message = e.what();
    return outcome;
  }

  try {
    RunConfig c;
    bool has_command = !command.empty();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        bad(config_path + ": " + e.what());
      }
      c = config_from_json(j, c);
      has_command = has_command || (j.is_object() && j.contains("command"));
    }
    if (!has_command) bad("no command given");
    if (!command.empty()) c.command = *parse_command(command);
    if (k->count()) c.K = flags.K;
    if (grid->count()) c.grid = flags.grid;
    if (t_min->count()) c.t_min = flags.t_min;
    if (t_max->count()) c.t_max = flags.t_max;
    if (seed->count()) c.seed = flags.seed;
    if (steps->count()) c.steps = flags.steps;
    if (budget->count()) c.budget = flags.budget;
    if (out->count()) c.out = flags.out;
    if (fmt->count()) c.format = format == "csv" ? Format::kCsv : Format::kJson;
    if (u->count()) c.u = flags.u;
    if (v->count()) c.v = flags.v;
    validate(c);
    outcome.config = std::move(c);
  } catch (const Error& e) {
    outcome.exit_code = kExitInvalid;
    outcome.message = e.what();
  }
  return outcome;
}

}  // namespace holonomic::cli
