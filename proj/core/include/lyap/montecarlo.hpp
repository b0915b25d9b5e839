#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "lyap/ensemble.hpp"

namespace lyap {

inline constexpr const char* kRngAlgorithm = "mt19937_64/seed_seq(seed,trial)";
inline constexpr const char* kNormName = "scaled_max_norm";

/// Independent generator stream for one trial. The stream is a function of
/// (seed, trial) only, so results do not depend on scheduling.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Index drawn from the ensemble's probability vector.
  std::size_t pick(const MatrixEnsemble& e);

 private:
  std::mt19937_64 engine_;
};

/// ln of the scaled max norm of one random word of length n, drawn with the
/// per-step rescaled product. nullopt when the product hits the zero matrix.
std::optional<long double> sample_log_norm(const MatrixEnsemble& e, int n, TrialRng& rng);

/// sample_log_norm / n: one Furstenberg-Kesten estimate of lambda.
std::optional<double> sample_word_estimate(const MatrixEnsemble& e, int n, TrialRng& rng);

struct LyapunovEstimate {
  double lambda_hat = 0.0;
  /// Sample standard deviation of per-trial estimates over sqrt(successes).
  double std_error = 0.0;
  int word_length = 0;
  int trials = 0;
  int failed_trials = 0;
  std::uint64_t seed = 0;
  std::string ensemble_id;
  std::string rng_algorithm = kRngAlgorithm;
  std::string norm = kNormName;

  friend bool operator==(const LyapunovEstimate&, const LyapunovEstimate&) = default;
};

/// Mean of `trials` independent word estimates. Trials run on `threads`
/// workers; output is identical for any thread count. Throws when fewer
/// than two trials succeed.
LyapunovEstimate estimate_lyapunov(const MatrixEnsemble& e, int n, int trials,
                                   std::uint64_t seed, int threads = 1);

struct JensenDiagnostic {
  /// E[ln F(n)] / n over the sample.
  double e_log = 0.0;
  /// ln E[F(n)] / n over the same sample.
  double log_e = 0.0;
  double e_log_se = 0.0;
  /// Delta-method standard error of log_e.
  double log_e_se = 0.0;
  int word_length = 0;
  int trials = 0;
  int failed_trials = 0;

  double combined_se() const;
};

JensenDiagnostic jensen_gap_diagnostic(const MatrixEnsemble& e, int n, int trials,
                                       std::uint64_t seed, int threads = 1);

}  // namespace lyap
