#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lyap/bounds.hpp"
#include "lyap/ensemble.hpp"
#include "lyap/enumerate.hpp"
#include "lyap/montecarlo.hpp"

namespace lyap {

std::string version();

/// Ensemble file schema: {"dim": d, "matrices": [[row-major]...], "probs": [...]}
/// with an optional "id". Throws ErrorKind::kInvalidInput on schema errors.
MatrixEnsemble ensemble_from_json(std::string_view text);
std::string ensemble_to_json(const MatrixEnsemble& e);

/// Everything one command run produces, as written to report files.
struct ReportDocument {
  std::string tool_version;
  std::string timestamp;
  std::string command;
  std::optional<std::uint64_t> seed;
  std::optional<BoundReport> bound;
  std::optional<LyapunovEstimate> estimate;
  std::optional<GrowthSeries> growth;
  std::optional<MaxEntryProbe> probe;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// Fills tool_version and an ISO-8601 UTC timestamp.
ReportDocument make_document(std::string command);

std::string report_to_json(const ReportDocument& doc);
ReportDocument report_from_json(std::string_view text);

/// Flat section,key,value CSV of the scalar fields, at full precision.
std::string report_to_csv(const ReportDocument& doc);

}  // namespace lyap
