#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lyap/ensemble.hpp"

namespace lyap {

/// Default cap on k^n words visited by one enumeration.
inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 20;

struct EnumerationOptions {
  std::uint64_t word_budget = kDefaultWordBudget;
  /// Workers split the word tree by first letter; results do not depend on it.
  int threads = 1;
};

/// Entrywise E[X_1 ... X_n] over all k^n words. Equals M^n by independence.
Matrix exact_entry_expectation(const MatrixEnsemble& e, int n,
                               const EnumerationOptions& opts = {});

/// E[max |entry| of X_1 ... X_n] (not max |E[entry]|).
double expected_max_entry(const MatrixEnsemble& e, int n,
                          const EnumerationOptions& opts = {});

struct GrowthSeries {
  /// values[i] = E(i + 1).
  std::vector<double> values;
  /// ratios[i] = E(i + 2) / E(i + 1).
  std::vector<double> ratios;
  /// exp of the least-squares slope of ln E(n) over the upper half of n.
  double fitted_rate = 0.0;

  friend bool operator==(const GrowthSeries&, const GrowthSeries&) = default;
};

GrowthSeries growth_series(const MatrixEnsemble& e, int n_max,
                           const EnumerationOptions& opts = {});

/// exp of the OLS slope of ln values[i] against i, over the upper half.
double fit_growth_rate(const std::vector<double>& values);

struct MaxEntryProbe {
  /// G(n) = max over words of max |entry|.
  double g = 0.0;
  /// Lexicographically first word attaining G(n).
  std::vector<std::size_t> witness;
  /// G(n)^(1/n): a lower estimate of the joint spectral radius, not certified.
  double jsr_lower_estimate = 0.0;
  int word_length = 0;

  friend bool operator==(const MaxEntryProbe&, const MaxEntryProbe&) = default;
};

MaxEntryProbe max_entry_probe(const MatrixEnsemble& e, int n,
                              const EnumerationOptions& opts = {});

/// CSV with header n,E_n,ratio,fitted_rate. ratio is empty on the first row.
std::string growth_series_csv(const GrowthSeries& series);

}  // namespace lyap
