#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lyap/ensemble.hpp"

namespace lyap {

/// Constant c of the Sturman shear-pair bound, approximately 1.0157.
inline constexpr double kSturmanConstant = 1.0157;

/// Upper bound 1/4 [c + ln(sqrt(km) + 1/sqrt(km)) + 1/2 ln(1 + km)] for the
/// shear pair A(k) = [[1,k],[0,1]], B(m) = [[1,0],[m,1]] at p = 1/2.
double sturman_bound(double k, double m);

enum class ReferenceKind {
  kUpperBound,  // a competing upper bound on lambda
  kEstimate,    // an approximation of lambda itself
};

struct ReferenceValue {
  double value = 0.0;
  ReferenceKind kind = ReferenceKind::kUpperBound;
  std::string provenance;

  friend bool operator==(const ReferenceValue&, const ReferenceValue&) = default;
};

/// Frozen literature values (nats). Nothing here is computed by this library.
const std::map<std::string, ReferenceValue>& reference_constants();
std::optional<ReferenceValue> lookup_reference(const std::string& label);

enum class Tighter { kOurs, kOther, kTie };

std::string to_string(Tighter t);
std::string to_string(ReferenceKind k);

struct Comparison {
  std::string label;
  double ours = 0.0;
  double other = 0.0;
  ReferenceKind kind = ReferenceKind::kUpperBound;
  /// For estimates: whether ours >= the estimate, as a valid bound must be.
  /// For bounds: which of the two is smaller.
  Tighter tighter = Tighter::kTie;
  bool consistent = true;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

struct BoundReport {
  std::string ensemble_id;
  double mu = 0.0;
  double log_mu_bound = 0.0;
  std::optional<double> sturman_bound;
  std::map<std::string, ReferenceValue> reference_values;
  std::vector<Comparison> comparisons;
  Applicability applicability;
  /// Set when only the distinct-real hypothesis holds (M not positive).
  bool extrapolated = false;
  std::vector<std::string> warnings;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Shear parameters (k, m) when e is exactly {A(k), B(m)} with k, m > 0 and
/// equal probabilities, in either order.
std::optional<std::pair<double, double>> match_shear_pair(const MatrixEnsemble& e);

/// Reference labels that apply to e (by matrix content, p = 1/2 only).
std::vector<std::string> matching_references(const MatrixEnsemble& e);

/// mu and ln mu. Refuses (ErrorKind::kHypothesis) unless the expectation
/// matrix is positive or has distinct real eigenvalues with a positive
/// dominant one; the latter case is flagged as extrapolated.
///
/// With signed factors the bound is reported with a warning only: a
/// positive M does not bound E[max |entry|] then. For instance
/// {5J, -4.9J} (J the all-ones 2x2) has M = 0.05J and ln mu = ln 0.1,
/// while every product has norm about 10^n.
BoundReport lyapunov_upper_bound(const MatrixEnsemble& e);

/// lyapunov_upper_bound plus Sturman and matching literature values, each
/// paired against ours.
BoundReport compare(const MatrixEnsemble& e);

}  // namespace lyap
