#include "cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli/render.hpp"

namespace lyap::cli {
namespace {

std::string canonical_family(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  if (name == "pollicott2") return "pollicott2_series";
  return name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CommandResult finish(ReportDocument doc, const RunConfig& cfg) {
  doc.seed = cfg.seed;
  std::string rendered = render(doc, cfg.format);
  return {std::move(doc), std::move(rendered)};
}

std::optional<BoundReport> bound_if_applicable(const MatrixEnsemble& e) {
  try {
    return compare(e);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::kHypothesis) return std::nullopt;
    throw;
  }
}

std::string csv_rows(const std::vector<ReproRow>& rows) {
  std::string s = "label,quantity,ours,quoted,other_label,other,tighter,expected_tighter,pass\n";
  for (const auto& r : rows) {
    s += fmt::format("\"{}\",{},{:.17g},{},{},{},{},{},{}\n", r.label, r.quantity, r.ours,
                     r.expected ? fmt::format("{:.17g}", *r.expected) : "",
                     r.other_label, r.other ? fmt::format("{:.17g}", *r.other) : "",
                     r.tighter ? to_string(*r.tighter) : "",
                     r.expected_tighter ? to_string(*r.expected_tighter) : "",
                     r.pass ? "PASS" : "FAIL");
  }
  return s;
}

std::string json_rows(const std::vector<ReproRow>& rows, std::uint64_t seed) {
  std::string s = fmt::format("{{\n  \"tool_version\": \"{}\",\n  \"seed\": {},\n  \"rows\": [\n",
                              version(), seed);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    s += fmt::format(
        "    {{\"label\": \"{}\", \"quantity\": \"{}\", \"ours\": {:.17g}, \"quoted\": {}, "
        "\"other_label\": \"{}\", \"other\": {}, \"tighter\": {}, \"pass\": {}}}{}\n",
        r.label, r.quantity, r.ours, r.expected ? fmt::format("{:.17g}", *r.expected) : "null",
        r.other_label, r.other ? fmt::format("{:.17g}", *r.other) : "null",
        r.tighter ? "\"" + to_string(*r.tighter) + "\"" : "null", r.pass ? "true" : "false",
        i + 1 < rows.size() ? "," : "");
  }
  s += "  ]\n}\n";
  return s;
}

std::string table_rows(const std::vector<ReproRow>& rows, std::uint64_t seed) {
  std::string s = fmt::format("{:<34}{:<9}{:>9}{:>9}  {:<22}{:>9}  {:<10}{}\n", "example",
                              "quantity", "ours", "quoted", "compared with", "value",
                              "tighter", "status");
  int failures = 0;
  for (const auto& r : rows) {
    const std::string tighter = r.tighter ? to_string(*r.tighter) : "-";
    s += fmt::format("{:<34}{:<9}{:>9.4f}{:>9}  {:<22}{:>9}  {:<10}{}{}\n", r.label, r.quantity,
                     r.ours,
                     r.expected ? fmt::format("{:.{}f}", *r.expected, r.expected_decimals) : "-",
                     r.other_label.empty() ? "-" : r.other_label,
                     r.other ? fmt::format("{:.4f}", *r.other) : "-", tighter,
                     r.pass ? "PASS" : "FAIL", r.note.empty() ? "" : "  " + r.note);
    if (!r.pass) ++failures;
  }
  s += fmt::format("{} rows, {} failed; seed {} (no sampled rows)\n", rows.size(), failures,
                   seed);
  return s;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return kExitInput;
    case ErrorKind::kHypothesis:
      return kExitHypothesis;
    case ErrorKind::kBudget:
      return kExitBudget;
    case ErrorKind::kNonConvergence:
    case ErrorKind::kNumeric:
      return kExitNonConvergence;
  }
  return kExitInput;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar)) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
  }
  return kDefaultSeed;
}

MatrixEnsemble load_ensemble(const EnsembleSource& source) {
  if (source.family.has_value() == source.file.has_value())
    throw invalid_input("specify exactly one of --family or --file");
  if (source.file) {
    if (!source.params.empty())
      throw invalid_input("--k/--m/--t/--p only apply to --family");
    return ensemble_from_json(read_file(*source.file));
  }
  return builtin_family(canonical_family(*source.family), source.params);
}

CommandResult run_bound(const RunConfig& cfg) {
  ReportDocument doc = make_document("bound");
  doc.bound = compare(load_ensemble(cfg.source));
  return finish(std::move(doc), cfg);
}

CommandResult run_compare(const RunConfig& cfg) {
  ReportDocument doc = make_document("compare");
  doc.bound = compare(load_ensemble(cfg.source));
  return finish(std::move(doc), cfg);
}

CommandResult run_simulate(const RunConfig& cfg) {
  const MatrixEnsemble e = load_ensemble(cfg.source);
  ReportDocument doc = make_document("simulate");
  doc.estimate = estimate_lyapunov(e, cfg.n, cfg.trials, cfg.seed, cfg.threads);
  doc.bound = bound_if_applicable(e);
  return finish(std::move(doc), cfg);
}

CommandResult run_enumerate(const RunConfig& cfg) {
  const MatrixEnsemble e = load_ensemble(cfg.source);
  const EnumerationOptions opts{cfg.word_budget, cfg.threads};
  ReportDocument doc = make_document("enumerate");
  doc.growth = growth_series(e, cfg.n_max, opts);
  doc.probe = max_entry_probe(e, cfg.n_max, opts);
  doc.bound = bound_if_applicable(e);
  return finish(std::move(doc), cfg);
}

std::string render_repro_rows(const std::vector<ReproRow>& rows, OutputFormat format,
                              std::uint64_t seed) {
  switch (format) {
    case OutputFormat::kCsv:
      return csv_rows(rows);
    case OutputFormat::kJson:
      return json_rows(rows, seed);
    case OutputFormat::kTable:
      return table_rows(rows, seed);
  }
  return {};
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upper bounds and estimates for Lyapunov exponents of random matrix products"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.seed = default_seed();
  std::optional<double> k, m, t, p;
  std::string format = "table";

  const std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::kTable}, {"json", OutputFormat::kJson}, {"csv", OutputFormat::kCsv}};

  auto add_common = [&](CLI::App* sub, bool needs_ensemble) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    sub->add_option("--output,-o", cfg.output_path, "Write the output to this file");
    sub->add_option("--seed", cfg.seed,
                    fmt::format("Random seed (default {}, or ${})", kDefaultSeed, kSeedEnvVar));
    sub->add_option("--threads", cfg.threads, "Worker threads; output does not depend on it")
        ->check(CLI::PositiveNumber);
    if (!needs_ensemble) return;
    auto* family = sub->add_option("--family", cfg.source.family,
                                   "Builtin family: ak-bm, pollicott, jurga, pollicott2, example6");
    auto* file = sub->add_option("--file", cfg.source.file, "Ensemble JSON file")
                     ->check(CLI::ExistingFile);
    family->excludes(file);
    sub->add_option("--k", k, "ak-bm: upper shear entry");
    sub->add_option("--m", m, "ak-bm: lower shear entry");
    sub->add_option("--t", t, "pollicott2: series parameter (> 0)");
    sub->add_option("--p", p, "Probability of the first matrix (default 0.5)");
  };

  auto* bound = app.add_subcommand("bound", "Spectral upper bound ln(mu) with comparisons");
  add_common(bound, true);
  auto* compare_cmd = app.add_subcommand("compare", "Our bound against Sturman and literature values");
  add_common(compare_cmd, true);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the Lyapunov exponent");
  add_common(simulate, true);
  simulate->add_option("--n", cfg.n, "Word length")->check(CLI::PositiveNumber);
  simulate->add_option("--trials", cfg.trials, "Independent words")->check(CLI::Range(2, 1 << 30));
  auto* enumerate = app.add_subcommand("enumerate", "Exact enumeration over all words");
  add_common(enumerate, true);
  enumerate->add_option("--n-max", cfg.n_max, "Longest word length")->check(CLI::Range(2, 64));
  enumerate->add_option("--budget", cfg.word_budget, "Maximum number of words");
  auto* reproduce = app.add_subcommand("reproduce-paper", "Recompute every closed-form example");
  add_common(reproduce, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  cfg.format = formats.at(format);
  if (k) cfg.source.params["k"] = *k;
  if (m) cfg.source.params["m"] = *m;
  if (t) cfg.source.params["t"] = *t;
  if (p) cfg.source.params["p"] = *p;

  try {
    std::string rendered;
    bool all_pass = true;
    if (reproduce->parsed()) {
      cfg.command = Command::kReproducePaper;
      const auto rows = reproduce_rows();
      all_pass = std::all_of(rows.begin(), rows.end(), [](const ReproRow& r) { return r.pass; });
      rendered = render_repro_rows(rows, cfg.format, cfg.seed);
    } else if (bound->parsed()) {
      rendered = run_bound(cfg).rendered;
    } else if (compare_cmd->parsed()) {
      rendered = run_compare(cfg).rendered;
    } else if (simulate->parsed()) {
      rendered = run_simulate(cfg).rendered;
    } else {
      rendered = run_enumerate(cfg).rendered;
    }
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path);
      if (!file) throw invalid_input("cannot write '" + *cfg.output_path + "'");
      file << rendered;
    } else {
      out << rendered;
    }
    return all_pass ? kExitOk : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace lyap::cli
