#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace symspec::cli {

using nlohmann::json;

// Bad command line, unknown key or type mismatch (exit code 2).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

enum class ParamType { Int, Real, Str, Bool, IntList, RealList };

struct ParamSpec {
  std::string key;
  ParamType type;
  json fallback;  // null: no default
  bool required = false;
  std::string help;
};

struct CommandSpec {
  std::string group, name;  // "wave", "linear"
  std::string help;
  std::vector<ParamSpec> params;
  std::string id() const { return group + " " + name; }
};

const std::vector<CommandSpec>& commands();
const CommandSpec& command_spec(const std::string& id);

struct RunConfig {
  std::string command;  // e.g. "space info"
  json params;          // resolved, sorted keys
  std::uint64_t seed = 7;
  std::string out;
  std::string format = "json";
};

// Defaults, then --config file (key=value lines or a JSON object), then flags.
RunConfig parse(const std::vector<std::string>& args);
RunConfig parse(int argc, const char* const* argv);

struct RunResult {
  int exit_code = 0;
  json report;
  std::string text;  // rendered in the configured format
};

// Never throws for parameter or numerical problems; they are serialized into the report.
RunResult run(const RunConfig& config);

// Report without the timestamp field.
json canonical(const json& report);

std::string render_csv(const json& report);
std::string csv_field(const std::string& s);

int main(int argc, const char* const* argv);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace symspec::cli
