#include "lyap/report_io.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include <json.hpp>

#include "lyap/error.hpp"

#ifndef LYAP_VERSION
#define LYAP_VERSION "0.0.0"
#endif

namespace lyap {
namespace {

using nlohmann::json;

json applicability_json(const Applicability& a) {
  return {{"expectation_positive", a.expectation_positive},
          {"distinct_real", a.distinct_real ? json(*a.distinct_real) : json(nullptr)},
          {"growth_ok", a.growth_ok},
          {"bound_ok", a.bound_ok},
          {"factors_nonnegative", a.factors_nonnegative}};
}

Applicability applicability_from(const json& j) {
  Applicability a;
  a.expectation_positive = j.at("expectation_positive").get<bool>();
  if (!j.at("distinct_real").is_null()) a.distinct_real = j.at("distinct_real").get<bool>();
  a.growth_ok = j.at("growth_ok").get<bool>();
  a.bound_ok = j.at("bound_ok").get<bool>();
  a.factors_nonnegative = j.at("factors_nonnegative").get<bool>();
  return a;
}

ReferenceKind kind_from(const std::string& s) {
  if (s == "estimate") return ReferenceKind::kEstimate;
  if (s == "upper_bound") return ReferenceKind::kUpperBound;
  throw invalid_input("unknown reference kind '" + s + "'");
}

Tighter tighter_from(const std::string& s) {
  if (s == "ours") return Tighter::kOurs;
  if (s == "other") return Tighter::kOther;
  if (s == "tie") return Tighter::kTie;
  throw invalid_input("unknown comparison winner '" + s + "'");
}

json bound_json(const BoundReport& b) {
  json refs = json::object();
  for (const auto& [label, ref] : b.reference_values) {
    refs[label] = {{"value", ref.value},
                   {"kind", to_string(ref.kind)},
                   {"provenance", ref.provenance}};
  }
  json comps = json::array();
  for (const auto& c : b.comparisons) {
    comps.push_back({{"label", c.label},
                     {"ours", c.ours},
                     {"other", c.other},
                     {"kind", to_string(c.kind)},
                     {"tighter", to_string(c.tighter)},
                     {"consistent", c.consistent}});
  }
  return {{"ensemble_id", b.ensemble_id},
          {"mu", b.mu},
          {"log_mu_bound", b.log_mu_bound},
          {"sturman_bound", b.sturman_bound ? json(*b.sturman_bound) : json(nullptr)},
          {"reference_values", refs},
          {"comparisons", comps},
          {"applicability", applicability_json(b.applicability)},
          {"extrapolated", b.extrapolated},
          {"warnings", b.warnings}};
}

BoundReport bound_from(const json& j) {
  BoundReport b;
  b.ensemble_id = j.at("ensemble_id").get<std::string>();
  b.mu = j.at("mu").get<double>();
  b.log_mu_bound = j.at("log_mu_bound").get<double>();
  if (!j.at("sturman_bound").is_null()) b.sturman_bound = j.at("sturman_bound").get<double>();
  for (const auto& [label, ref] : j.at("reference_values").items()) {
    b.reference_values.emplace(
        label, ReferenceValue{ref.at("value").get<double>(),
                              kind_from(ref.at("kind").get<std::string>()),
                              ref.at("provenance").get<std::string>()});
  }
  for (const auto& c : j.at("comparisons")) {
    b.comparisons.push_back(Comparison{c.at("label").get<std::string>(),
                                       c.at("ours").get<double>(),
                                       c.at("other").get<double>(),
                                       kind_from(c.at("kind").get<std::string>()),
                                       tighter_from(c.at("tighter").get<std::string>()),
                                       c.at("consistent").get<bool>()});
  }
  b.applicability = applicability_from(j.at("applicability"));
  b.extrapolated = j.at("extrapolated").get<bool>();
  b.warnings = j.at("warnings").get<std::vector<std::string>>();
  return b;
}

json estimate_json(const LyapunovEstimate& e) {
  return {{"lambda_hat", e.lambda_hat},   {"std_error", e.std_error},
          {"word_length", e.word_length}, {"trials", e.trials},
          {"failed_trials", e.failed_trials}, {"seed", e.seed},
          {"ensemble_id", e.ensemble_id}, {"rng_algorithm", e.rng_algorithm},
          {"norm", e.norm}};
}

LyapunovEstimate estimate_from(const json& j) {
  LyapunovEstimate e;
  e.lambda_hat = j.at("lambda_hat").get<double>();
  e.std_error = j.at("std_error").get<double>();
  e.word_length = j.at("word_length").get<int>();
  e.trials = j.at("trials").get<int>();
  e.failed_trials = j.at("failed_trials").get<int>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.ensemble_id = j.at("ensemble_id").get<std::string>();
  e.rng_algorithm = j.at("rng_algorithm").get<std::string>();
  e.norm = j.at("norm").get<std::string>();
  return e;
}

json growth_json(const GrowthSeries& g) {
  return {{"values", g.values}, {"ratios", g.ratios}, {"fitted_rate", g.fitted_rate}};
}

GrowthSeries growth_from(const json& j) {
  GrowthSeries g;
  g.values = j.at("values").get<std::vector<double>>();
  g.ratios = j.at("ratios").get<std::vector<double>>();
  g.fitted_rate = j.at("fitted_rate").get<double>();
  return g;
}

json probe_json(const MaxEntryProbe& p) {
  return {{"g", p.g},
          {"witness", p.witness},
          {"jsr_lower_estimate", p.jsr_lower_estimate},
          {"word_length", p.word_length}};
}

MaxEntryProbe probe_from(const json& j) {
  MaxEntryProbe p;
  p.g = j.at("g").get<double>();
  p.witness = j.at("witness").get<std::vector<std::size_t>>();
  p.jsr_lower_estimate = j.at("jsr_lower_estimate").get<double>();
  p.word_length = j.at("word_length").get<int>();
  return p;
}

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string full(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string version() { return LYAP_VERSION; }

MatrixEnsemble ensemble_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw invalid_input(std::string("ensemble JSON does not parse: ") + err.what());
  }
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<Matrix> matrices;
    for (const auto& m : j.at("matrices")) matrices.emplace_back(dim, m.get<std::vector<double>>());
    auto probs = j.at("probs").get<std::vector<double>>();
    std::string id = j.contains("id") ? j.at("id").get<std::string>() : "file";
    return MatrixEnsemble(std::move(matrices), std::move(probs), std::move(id));
  } catch (const json::exception& err) {
    throw invalid_input(std::string("ensemble JSON schema error: ") + err.what());
  }
}

std::string ensemble_to_json(const MatrixEnsemble& e) {
  json matrices = json::array();
  for (const auto& m : e.matrices())
    matrices.push_back(std::vector<double>(m.entries().begin(), m.entries().end()));
  json j = {{"id", e.id()}, {"dim", e.dim()}, {"matrices", matrices}, {"probs", e.probs()}};
  return j.dump(2);
}

ReportDocument make_document(std::string command) {
  ReportDocument doc;
  doc.tool_version = version();
  doc.timestamp = iso_timestamp();
  doc.command = std::move(command);
  return doc;
}

std::string report_to_json(const ReportDocument& doc) {
  json j = {{"tool_version", doc.tool_version},
            {"timestamp", doc.timestamp},
            {"command", doc.command},
            {"seed", doc.seed ? json(*doc.seed) : json(nullptr)}};
  if (doc.bound) j["bound"] = bound_json(*doc.bound);
  if (doc.estimate) j["estimate"] = estimate_json(*doc.estimate);
  if (doc.growth) j["growth"] = growth_json(*doc.growth);
  if (doc.probe) j["probe"] = probe_json(*doc.probe);
  return j.dump(2);
}

ReportDocument report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ReportDocument doc;
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.timestamp = j.at("timestamp").get<std::string>();
    doc.command = j.at("command").get<std::string>();
    if (!j.at("seed").is_null()) doc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("bound")) doc.bound = bound_from(j.at("bound"));
    if (j.contains("estimate")) doc.estimate = estimate_from(j.at("estimate"));
    if (j.contains("growth")) doc.growth = growth_from(j.at("growth"));
    if (j.contains("probe")) doc.probe = probe_from(j.at("probe"));
    return doc;
  } catch (const json::exception& err) {
    throw invalid_input(std::string("report JSON error: ") + err.what());
  }
}

std::string report_to_csv(const ReportDocument& doc) {
  std::ostringstream os;
  os << "section,key,value\n";
  os << "meta,tool_version," << doc.tool_version << '\n';
  os << "meta,timestamp," << doc.timestamp << '\n';
  os << "meta,command," << doc.command << '\n';
  if (doc.seed) os << "meta,seed," << *doc.seed << '\n';
  if (doc.bound) {
    const auto& b = *doc.bound;
    os << "bound,ensemble_id," << b.ensemble_id << '\n';
    os << "bound,mu," << full(b.mu) << '\n';
    os << "bound,log_mu_bound," << full(b.log_mu_bound) << '\n';
    if (b.sturman_bound) os << "bound,sturman_bound," << full(*b.sturman_bound) << '\n';
    for (const auto& [label, ref] : b.reference_values)
      os << "reference," << label << ',' << full(ref.value) << '\n';
    for (const auto& c : b.comparisons)
      os << "tighter," << c.label << ',' << to_string(c.tighter) << '\n';
    os << "bound,extrapolated," << (b.extrapolated ? "true" : "false") << '\n';
  }
  if (doc.estimate) {
    const auto& e = *doc.estimate;
    os << "estimate,ensemble_id," << e.ensemble_id << '\n';
    os << "estimate,lambda_hat," << full(e.lambda_hat) << '\n';
    os << "estimate,std_error," << full(e.std_error) << '\n';
    os << "estimate,word_length," << e.word_length << '\n';
    os << "estimate,trials," << e.trials << '\n';
    os << "estimate,failed_trials," << e.failed_trials << '\n';
    os << "estimate,seed," << e.seed << '\n';
    os << "estimate,rng_algorithm," << e.rng_algorithm << '\n';
    os << "estimate,norm," << e.norm << '\n';
  }
  if (doc.probe) {
    os << "probe,g," << full(doc.probe->g) << '\n';
    os << "probe,jsr_lower_estimate," << full(doc.probe->jsr_lower_estimate) << '\n';
  }
  return os.str();
}

}  // namespace lyap
