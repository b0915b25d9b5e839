#include <cmath>

#include <fmt/format.h>

#include "cli/commands.hpp"
#include "lyap/spectral.hpp"

namespace lyap::cli {
namespace {

double mu_of(const MatrixEnsemble& e) { return dominant_eigen(expectation_matrix(e)).mu; }

ReproRow mu_row(std::string label, const MatrixEnsemble& e, double quoted, int decimals) {
  ReproRow row;
  row.label = std::move(label);
  row.quantity = "mu";
  row.ours = mu_of(e);
  row.expected = quoted;
  row.expected_decimals = decimals;
  row.pass = matches_quoted(row.ours, quoted, decimals);
  return row;
}

// Our bound against a competitor (computed Sturman value or stored constant).
ReproRow bound_row(std::string label, const MatrixEnsemble& e, double quoted, int decimals,
                   std::optional<Tighter> expected_tighter) {
  const BoundReport report = compare(e);
  ReproRow row;
  row.label = std::move(label);
  row.quantity = "ln mu";
  row.ours = report.log_mu_bound;
  row.expected = quoted;
  row.expected_decimals = decimals;
  row.expected_tighter = expected_tighter;
  row.pass = matches_quoted(row.ours, quoted, decimals);
  if (!report.comparisons.empty()) {
    // Literature constants take precedence over the Sturman pairing.
    const Comparison& c = report.comparisons.back();
    row.other = c.other;
    row.other_label = c.label;
    if (c.kind == ReferenceKind::kEstimate) {
      row.note = c.consistent ? "bound >= reported lambda" : "bound < reported lambda";
      row.pass = row.pass && c.consistent;
    } else {
      row.tighter = c.tighter;
    }
  }
  if (expected_tighter) row.pass = row.pass && row.tighter == expected_tighter;
  return row;
}

ReproRow sturman_row(std::string label, double k, double m, double quoted) {
  ReproRow row;
  row.label = std::move(label);
  row.quantity = "sturman";
  row.ours = sturman_bound(k, m);
  row.expected = quoted;
  row.expected_decimals = 3;
  row.pass = matches_quoted(row.ours, quoted, 3);
  return row;
}

// k where ln(1 + k/2) meets sturman_bound(k, k), by bisection on [1, 2].
ReproRow crossover_row() {
  auto gap = [](double k) { return std::log1p(k / 2.0) - sturman_bound(k, k); };
  double lo = 1.0;
  double hi = 2.0;
  ReproRow row;
  row.label = "A(k),B(k): crossover k";
  row.quantity = "k*";
  const bool bracketed = gap(lo) < 0.0 && gap(hi) > 0.0;
  if (bracketed) {
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      (gap(mid) < 0.0 ? lo : hi) = mid;
    }
  }
  row.ours = 0.5 * (lo + hi);
  row.note = bracketed ? "ours tighter below k*, Sturman tighter above"
                       : "no sign change on [1, 2]";
  row.pass = bracketed;
  return row;
}

}  // namespace

bool matches_quoted(double ours, double quoted, int decimals) {
  if (std::fabs(ours - quoted) <= 1e-3) return true;
  const double scale = std::pow(10.0, decimals);
  return std::fabs(std::round(ours * scale) / scale - quoted) <= 1e-12;
}

std::vector<ReproRow> reproduce_rows() {
  const auto ak_bm = [](double k, double m) {
    return builtin_family("ak_bm", {{"k", k}, {"m", m}});
  };
  const auto series = [](double t) { return builtin_family("pollicott2_series", {{"t", t}}); };

  std::vector<ReproRow> rows;
  rows.push_back(mu_row("A(1),B(1) growth rate", ak_bm(1, 1), 1.5, 1));
  rows.push_back(mu_row("A(2),B(2) growth rate", ak_bm(2, 2), 2.0, 0));
  rows.push_back(mu_row("Pollicott pair growth rate", builtin_family("pollicott"), 3.186, 3));

  rows.push_back(bound_row("A(1),B(1) bound", ak_bm(1, 1), 0.405, 3, Tighter::kOurs));
  rows.push_back(sturman_row("A(1),B(1) Sturman", 1, 1, 0.514));
  rows.push_back(bound_row("A(2),B(2) bound", ak_bm(2, 2), 0.693, 3, Tighter::kOther));
  rows.push_back(sturman_row("A(2),B(2) Sturman", 2, 2, 0.684));
  rows.push_back(crossover_row());
  rows.push_back(bound_row("Pollicott pair bound", builtin_family("pollicott"), 1.159, 3,
                           std::nullopt));
  rows.push_back(bound_row("Jurga pair bound", builtin_family("jurga"), 1.7, 1,
                           Tighter::kOther));
  rows.push_back(mu_row("Signed pair growth rate", builtin_family("example6"), 1.707, 3));
  rows.push_back(bound_row("Signed pair bound", builtin_family("example6"), 0.535, 3,
                           std::nullopt));

  struct SeriesCase {
    double t;
    double quoted;
    int decimals;
    Tighter tighter;
  };
  const SeriesCase cases[] = {
      {2.0, 1.2528, 4, Tighter::kOther}, {1.0, 0.916, 3, Tighter::kOther},
      {0.5, 0.6931, 4, Tighter::kOurs},  {0.4, 0.6418, 4, Tighter::kOurs},
      {0.3, 0.5878, 4, Tighter::kOther}, {0.2, 0.5306, 4, Tighter::kOther},
      {0.1, 0.47, 2, Tighter::kOther},
  };
  for (const auto& c : cases) {
    rows.push_back(bound_row(fmt::format("Pollicott t-series t={}", c.t), series(c.t), c.quoted,
                             c.decimals, c.tighter));
  }
  return rows;
}

}  // namespace lyap::cli
