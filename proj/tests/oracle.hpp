#pragma once

// Test-only reference computations. Nothing here calls into the library's
// multiply, DFS, or eigen code, so tests can compare the two routes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "lyap/ensemble.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense dense(const lyap::Matrix& m) {
  Dense out(m.dim(), std::vector<double>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
  return out;
}

inline Dense identity(std::size_t d) {
  Dense out(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) out[i][i] = 1.0;
  return out;
}

inline Dense naive_multiply(const Dense& a, const Dense& b) {
  const std::size_t d = a.size();
  Dense out(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline double max_abs(const Dense& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (double x : row) m = std::max(m, std::fabs(x));
  return m;
}

/// Calls visit(weight, product, word) for each of the k^n words, building
/// every product from scratch by counting in base k.
inline void brute_force_words(
    const lyap::MatrixEnsemble& e, int n,
    const std::function<void(double, const Dense&, const std::vector<std::size_t>&)>& visit) {
  const std::size_t k = e.size();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= k;
  std::vector<Dense> factors;
  for (const auto& m : e.matrices()) factors.push_back(dense(m));
  std::vector<std::size_t> word(static_cast<std::size_t>(n));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int pos = n - 1; pos >= 0; --pos) {
      word[static_cast<std::size_t>(pos)] = rest % k;
      rest /= k;
    }
    Dense product = identity(e.dim());
    double weight = 1.0;
    for (std::size_t letter : word) {
      product = naive_multiply(product, factors[letter]);
      weight *= e.probs()[letter];
    }
    visit(weight, product, word);
  }
}

inline double brute_expected_max(const lyap::MatrixEnsemble& e, int n) {
  long double total = 0.0L;
  brute_force_words(e, n, [&](double w, const Dense& p, const auto&) { total += w * max_abs(p); });
  return static_cast<double>(total);
}

inline Dense brute_entry_expectation(const lyap::MatrixEnsemble& e, int n) {
  const std::size_t d = e.dim();
  std::vector<std::vector<long double>> acc(d, std::vector<long double>(d, 0.0L));
  brute_force_words(e, n, [&](double w, const Dense& p, const auto&) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) acc[i][j] += w * p[i][j];
  });
  Dense out(d, std::vector<double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i][j] = static_cast<double>(acc[i][j]);
  return out;
}

inline Dense repeated_power(const Dense& m, int n) {
  Dense out = identity(m.size());
  for (int i = 0; i < n; ++i) out = naive_multiply(out, m);
  return out;
}

/// Larger root of a real 2x2 with real spectrum, textbook formula.
inline double top_eigenvalue_2x2(const Dense& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return tr / 2.0 + std::sqrt(tr * tr / 4.0 - det);
}

/// Reference word estimate: direct product without rescaling (short words).
inline double direct_log_norm_rate(const lyap::MatrixEnsemble& e,
                                   const std::vector<std::size_t>& word) {
  Dense product = identity(e.dim());
  for (std::size_t letter : word) product = naive_multiply(product, dense(e.matrices()[letter]));
  return std::log(static_cast<double>(e.dim()) * max_abs(product)) /
         static_cast<double>(word.size());
}

}  // namespace oracle
