#include "lyap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "lyap/error.hpp"

namespace lyap {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

void check_args(int n, int trials) {
  if (n < 1) throw invalid_input("word length n must be at least 1");
  if (trials < 2) throw invalid_input("at least two trials are required");
}

// ln F(n) for every trial, indexed by trial. Workers take trial indices
// round-robin, so the vector content does not depend on the thread count.
std::vector<std::optional<long double>> run_trials(const MatrixEnsemble& e, int n,
                                                   int trials, std::uint64_t seed,
                                                   int threads) {
  std::vector<std::optional<long double>> out(static_cast<std::size_t>(trials));
  const int workers = std::clamp(threads, 1, trials);
  auto work = [&](int worker) {
    for (int t = worker; t < trials; t += workers) {
      TrialRng rng(seed, static_cast<std::uint64_t>(t));
      out[static_cast<std::size_t>(t)] = sample_log_norm(e, n, rng);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return out;
}

struct Moments {
  long double mean = 0.0L;
  long double sample_var = 0.0L;
  int count = 0;
};

Moments moments(const std::vector<long double>& xs) {
  Moments m;
  m.count = static_cast<int>(xs.size());
  // Shift by the first sample so a constant sample has an exact mean.
  const long double x0 = xs.front();
  long double shifted = 0.0L;
  for (auto x : xs) shifted += x - x0;
  m.mean = x0 + shifted / m.count;
  long double ss = 0.0L;
  for (auto x : xs) ss += (x - m.mean) * (x - m.mean);
  m.sample_var = m.count > 1 ? ss / (m.count - 1) : 0.0L;
  return m;
}

std::vector<long double> successes(const std::vector<std::optional<long double>>& raw,
                                   int& failed) {
  std::vector<long double> ok;
  ok.reserve(raw.size());
  failed = 0;
  for (const auto& r : raw) {
    if (r) {
      ok.push_back(*r);
    } else {
      ++failed;
    }
  }
  if (ok.empty()) {
    throw Error(ErrorKind::kNumeric, "every trial produced a zero product");
  }
  if (ok.size() < 2) {
    throw Error(ErrorKind::kNumeric,
                "fewer than two trials produced a nonzero product; "
                "no standard error available");
  }
  return ok;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : engine_(make_engine(seed, trial)) {}

std::size_t TrialRng::pick(const MatrixEnsemble& e) {
  const double u = uniform();
  double cumulative = 0.0;
  const auto& probs = e.probs();
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  return probs.size() - 1;
}

std::optional<long double> sample_log_norm(const MatrixEnsemble& e, int n, TrialRng& rng) {
  ProductAccumulator acc(e.dim());
  for (int step = 0; step < n; ++step) {
    acc.right_multiply(e.matrices()[rng.pick(e)]);
    if (acc.is_zero()) return std::nullopt;
  }
  return acc.log_scaled_norm();
}

std::optional<double> sample_word_estimate(const MatrixEnsemble& e, int n, TrialRng& rng) {
  if (n < 1) throw invalid_input("word length n must be at least 1");
  auto log_norm = sample_log_norm(e, n, rng);
  if (!log_norm) return std::nullopt;
  return static_cast<double>(*log_norm / n);
}

LyapunovEstimate estimate_lyapunov(const MatrixEnsemble& e, int n, int trials,
                                   std::uint64_t seed, int threads) {
  check_args(n, trials);
  LyapunovEstimate est;
  est.word_length = n;
  est.trials = trials;
  est.seed = seed;
  est.ensemble_id = e.id();

  auto ok = successes(run_trials(e, n, trials, seed, threads), est.failed_trials);
  for (auto& x : ok) x /= n;
  const Moments m = moments(ok);
  est.lambda_hat = static_cast<double>(m.mean);
  est.std_error = static_cast<double>(std::sqrt(m.sample_var / m.count));
  return est;
}

double JensenDiagnostic::combined_se() const {
  return std::hypot(e_log_se, log_e_se);
}

JensenDiagnostic jensen_gap_diagnostic(const MatrixEnsemble& e, int n, int trials,
                                       std::uint64_t seed, int threads) {
  check_args(n, trials);
  JensenDiagnostic out;
  out.word_length = n;
  out.trials = trials;
  const auto logs = successes(run_trials(e, n, trials, seed, threads), out.failed_trials);

  const Moments log_m = moments(logs);
  out.e_log = static_cast<double>(log_m.mean / n);
  out.e_log_se = static_cast<double>(std::sqrt(log_m.sample_var / log_m.count) / n);

  // F_i = exp(L_i) relative to the largest sample, so nothing overflows.
  const long double top = *std::max_element(logs.begin(), logs.end());
  std::vector<long double> rel;
  rel.reserve(logs.size());
  for (auto l : logs) rel.push_back(std::exp(l - top));
  const Moments f = moments(rel);
  out.log_e = static_cast<double>((top + std::log(f.mean)) / n);
  out.log_e_se = static_cast<double>(std::sqrt(f.sample_var / f.count) / f.mean / n);
  return out;
}

}  // namespace lyap
