#include "cli/render.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace lyap::cli {
namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string describe(const Comparison& c) {
  if (c.kind == ReferenceKind::kEstimate) {
    return c.consistent ? "ours >= estimate (consistent)" : "ours < estimate (INCONSISTENT)";
  }
  switch (c.tighter) {
    case Tighter::kOurs:
      return "ours tighter";
    case Tighter::kOther:
      return c.label + " tighter";
    case Tighter::kTie:
      return "tie";
  }
  return "";
}

void append_seed(std::string& s, const ReportDocument& doc) {
  if (doc.seed) s += fmt::format("{:<22}{}\n", "seed", *doc.seed);
}

}  // namespace

std::string render_bound_table(const ReportDocument& doc) {
  const BoundReport& b = *doc.bound;
  const Applicability& a = b.applicability;
  std::string s;
  s += fmt::format("{:<22}{}\n", "ensemble", b.ensemble_id);
  s += fmt::format("{:<22}{:.4f}\n", "mu", b.mu);
  s += fmt::format("{:<22}{:.4f}\n", "bound ln(mu)", b.log_mu_bound);
  s += fmt::format("{:<22}positive M={} distinct real={} growth={} bound={} nonneg factors={}\n",
                   "applicability", yes_no(a.expectation_positive),
                   a.distinct_real ? yes_no(*a.distinct_real) : "unknown",
                   yes_no(a.growth_ok), yes_no(a.bound_ok),
                   yes_no(a.factors_nonnegative));
  if (b.sturman_bound) s += fmt::format("{:<22}{:.4f}\n", "sturman bound", *b.sturman_bound);
  for (const auto& [label, ref] : b.reference_values) {
    s += fmt::format("{:<22}{:.4f} [{}; {}]\n", label, ref.value, to_string(ref.kind),
                     ref.provenance);
  }
  for (const auto& c : b.comparisons) {
    s += fmt::format("{:<22}{:.4f} vs {:.4f}: {}\n", "vs " + c.label, c.ours, c.other,
                     describe(c));
  }
  for (const auto& w : b.warnings) s += fmt::format("{:<22}{}\n", "warning", w);
  append_seed(s, doc);
  return s;
}

std::string render_estimate_table(const ReportDocument& doc) {
  const LyapunovEstimate& e = *doc.estimate;
  std::string s;
  s += fmt::format("{:<22}{}\n", "ensemble", e.ensemble_id);
  s += fmt::format("{:<22}{:.4f}\n", "lambda_hat", e.lambda_hat);
  s += fmt::format("{:<22}{:.4f}\n", "std_error", e.std_error);
  s += fmt::format("{:<22}{}\n", "word_length", e.word_length);
  s += fmt::format("{:<22}{} ({} failed)\n", "trials", e.trials, e.failed_trials);
  s += fmt::format("{:<22}{}\n", "rng", e.rng_algorithm);
  s += fmt::format("{:<22}{}\n", "norm", e.norm);
  if (doc.bound) {
    const double margin = doc.bound->log_mu_bound + 3.0 * e.std_error;
    s += fmt::format("{:<22}{:.4f} ({})\n", "bound ln(mu)", doc.bound->log_mu_bound,
                     e.lambda_hat <= margin ? "lambda_hat <= bound + 3 se"
                                            : "lambda_hat EXCEEDS bound + 3 se");
  }
  append_seed(s, doc);
  return s;
}

std::string render_enumerate_table(const ReportDocument& doc) {
  const GrowthSeries& g = *doc.growth;
  std::string s = fmt::format("{:>4}  {:>16}  {:>10}\n", "n", "E_n", "ratio");
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    s += fmt::format("{:>4}  {:>16.4f}  {:>10}\n", i + 1, g.values[i],
                     i == 0 ? std::string("-") : fmt::format("{:.4f}", g.ratios[i - 1]));
  }
  s += fmt::format("{:<22}{:.4f}\n", "fitted_rate", g.fitted_rate);
  if (doc.bound) s += fmt::format("{:<22}{:.4f}\n", "mu", doc.bound->mu);
  if (doc.probe) {
    s += fmt::format("{:<22}{:.4f} at n={}\n", "max entry G(n)", doc.probe->g,
                     doc.probe->word_length);
    s += fmt::format("{:<22}{:.4f}\n", "G(n)^(1/n)", doc.probe->jsr_lower_estimate);
    s += fmt::format("{:<22}{}\n", "witness word", fmt::join(doc.probe->witness, " "));
  }
  append_seed(s, doc);
  return s;
}

std::string render(const ReportDocument& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson:
      return report_to_json(doc) + "\n";
    case OutputFormat::kCsv:
      if (doc.growth) return growth_series_csv(*doc.growth);
      return report_to_csv(doc);
    case OutputFormat::kTable:
      if (doc.growth) return render_enumerate_table(doc);
      if (doc.estimate) return render_estimate_table(doc);
      return render_bound_table(doc);
  }
  return {};
}

}  // namespace lyap::cli
