#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lyap/bounds.hpp"
#include "lyap/enumerate.hpp"
#include "lyap/error.hpp"
#include "lyap/report_io.hpp"

namespace lyap::cli {

enum class Command { kBound, kSimulate, kEnumerate, kCompare, kReproducePaper };
enum class OutputFormat { kTable, kJson, kCsv };

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kSeedEnvVar = "LYAP_SEED";

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitHypothesis = 3,
  kExitBudget = 4,
  kExitNonConvergence = 5,
};

int exit_code_for(ErrorKind kind);

struct EnsembleSource {
  std::optional<std::string> family;  // builtin name, CLI spelling accepted
  FamilyParams params;
  std::optional<std::string> file;
};

struct RunConfig {
  Command command = Command::kBound;
  EnsembleSource source;
  int n = 10000;
  int n_max = 16;
  int trials = 200;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t word_budget = kDefaultWordBudget;
  int threads = 1;
  OutputFormat format = OutputFormat::kTable;
  std::optional<std::string> output_path;
};

/// Default seed: LYAP_SEED when set and numeric, else kDefaultSeed.
std::uint64_t default_seed();

/// Builtin or file ensemble. Exactly one source must be set.
MatrixEnsemble load_ensemble(const EnsembleSource& source);

struct CommandResult {
  ReportDocument document;
  std::string rendered;
};

CommandResult run_bound(const RunConfig& cfg);
CommandResult run_compare(const RunConfig& cfg);
CommandResult run_simulate(const RunConfig& cfg);
CommandResult run_enumerate(const RunConfig& cfg);

/// One line of the reproduction table.
struct ReproRow {
  std::string label;
  std::string quantity;
  double ours = 0.0;
  std::optional<double> expected;
  int expected_decimals = 0;
  std::optional<double> other;
  std::string other_label;
  std::optional<Tighter> expected_tighter;
  std::optional<Tighter> tighter;
  bool pass = false;
  std::string note;
};

/// Deterministic rows for every closed-form example; nothing is sampled.
std::vector<ReproRow> reproduce_rows();

/// |ours - expected| <= 1e-3, or ours rounded to the quoted number of
/// decimals equals the quoted value.
bool matches_quoted(double ours, double quoted, int decimals);

std::string render_repro_rows(const std::vector<ReproRow>& rows, OutputFormat format,
                              std::uint64_t seed);

/// Parses argv and runs one command. Errors go to err with a nonzero code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lyap::cli
