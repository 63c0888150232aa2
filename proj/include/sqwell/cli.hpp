#pragma once

// Command-line front end. parse_args/execute are library functions so the
// verbs can be driven in-process from tests; tools/sqwell_cli.cpp is a thin
// main() around them.

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqwell/model.hpp"
#include "sqwell/param_map.hpp"
#include "sqwell/spectrum.hpp"

namespace sqwell::cli {

enum class Verb { Spectrum, Params, Audit, Compare, Figure1 };
enum class Format { Csv, Json };

struct SweepSpec {
  char variable = 'a';  // 'a' or 'b'
  double start = 0.0;
  double stop = 10.0;
  int steps = 101;
};

struct Command {
  Verb verb = Verb::Spectrum;
  MatchingParams params{4.0, 2.0};
  WellConfig config{2.5, 0.5};
  int levels = 3;
  SweepSpec sweep;
  Format format = Format::Csv;
  std::optional<std::string> output_path;
  // audit only: explicit k, otherwise the `level`-th root of Q.
  std::optional<double> k;
  int level = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSingularCoupling = 3;
inline constexpr int kExitNumeric = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv without the program name. Throws UsageError with a one-line
/// reason. Returns nullopt when help was requested (help text in `help`).
std::optional<Command> parse_args(const std::vector<std::string>& args, std::string* help = nullptr);

struct ExecResult {
  int exit_code = kExitOk;
  std::string output;  // serialized data
  std::string error;   // one-line message for stderr
};

ExecResult execute(const Command& cmd);

/// Full CLI round: parse, execute, write data to `out` or the --output
/// file and messages to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest representation that reads back to the same double.
std::string format_double(double x);

struct SweepRow {
  double sweep_value = 0.0;
  std::vector<double> energies;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

std::vector<SweepRow> figure1_sweep(const Command& cmd);

std::string csv_header(Verb verb, int levels = 3);

std::string to_csv(const std::vector<SpectralLevel>& rows);
std::string to_csv(const std::vector<LevelMapRow>& rows);
std::string to_csv(const std::vector<ModelComparisonRow>& rows);
std::string to_csv(const AuditReport& report);
std::string to_csv(const std::vector<SweepRow>& rows, int levels);

}  // namespace sqwell::cli

namespace sqwell {

void to_json(nlohmann::json& j, const SpectralLevel& v);
void from_json(const nlohmann::json& j, SpectralLevel& v);
void to_json(nlohmann::json& j, const LevelMapRow& v);
void from_json(const nlohmann::json& j, LevelMapRow& v);
void to_json(nlohmann::json& j, const ModelComparisonRow& v);
void from_json(const nlohmann::json& j, ModelComparisonRow& v);
void to_json(nlohmann::json& j, const AuditRecord& v);
void from_json(const nlohmann::json& j, AuditRecord& v);
void to_json(nlohmann::json& j, const AuditReport& v);
void from_json(const nlohmann::json& j, AuditReport& v);

namespace cli {
void to_json(nlohmann::json& j, const SweepRow& v);
void from_json(const nlohmann::json& j, SweepRow& v);
}  // namespace cli

}  // namespace sqwell
