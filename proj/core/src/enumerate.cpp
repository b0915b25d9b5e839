#include "lyap/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "lyap/error.hpp"

namespace lyap {
namespace {

// Neumaier summation in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

void check_budget(const MatrixEnsemble& e, int n, std::uint64_t budget) {
  if (n < 1) throw invalid_input("word length must be at least 1");
  std::uint64_t words = 1;
  for (int i = 0; i < n; ++i) {
    if (words > budget / e.size()) {
      throw Error(ErrorKind::kBudget,
                  std::to_string(e.size()) + "^" + std::to_string(n) +
                      " words exceeds the enumeration budget of " +
                      std::to_string(budget));
    }
    words *= e.size();
  }
}

// Visits every prefix of every word up to length n, in lexicographic order,
// starting with `first`. The product of a prefix is computed once from its
// parent, so the whole tree costs one multiply per node.
struct Node {
  int depth;
  double weight;
  const std::vector<double>& product;
  const std::vector<std::size_t>& word;
};

void walk_subtree(const MatrixEnsemble& e, int n, std::size_t first,
                  const std::function<void(const Node&)>& visit) {
  const std::size_t d = e.dim();
  const std::size_t k = e.size();
  std::vector<std::vector<double>> products(static_cast<std::size_t>(n),
                                            std::vector<double>(d * d));
  std::vector<double> weights(static_cast<std::size_t>(n));
  std::vector<std::size_t> word;
  word.reserve(static_cast<std::size_t>(n));

  auto step = [&](int depth, std::size_t letter) {
    const auto& factor = e.matrices()[letter].entries();
    auto& out = products[static_cast<std::size_t>(depth)];
    if (depth == 0) {
      std::copy(factor.begin(), factor.end(), out.begin());
      weights[0] = e.probs()[letter];
    } else {
      const auto& prev = products[static_cast<std::size_t>(depth - 1)];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          double s = 0.0;
          for (std::size_t l = 0; l < d; ++l) s += prev[i * d + l] * factor[l * d + j];
          out[i * d + j] = s;
        }
      weights[static_cast<std::size_t>(depth)] =
          weights[static_cast<std::size_t>(depth - 1)] * e.probs()[letter];
    }
    word.push_back(letter);
    visit(Node{depth + 1, weights[static_cast<std::size_t>(depth)], out, word});
  };

  // Iterative DFS: letters[depth] is the next letter to try at that depth.
  std::vector<std::size_t> letters(static_cast<std::size_t>(n), 0);
  step(0, first);
  int depth = 1;
  while (depth >= 1) {
    if (depth == n || letters[static_cast<std::size_t>(depth)] == k) {
      if (depth < n) letters[static_cast<std::size_t>(depth)] = 0;
      word.pop_back();
      --depth;
      continue;
    }
    step(depth, letters[static_cast<std::size_t>(depth)]++);
    ++depth;
  }
}

// Runs `make` once per first letter (optionally in parallel) and returns the
// per-letter results in letter order.
template <typename Partial>
std::vector<Partial> per_first_letter(const MatrixEnsemble& e, int threads,
                                      const std::function<Partial(std::size_t)>& make) {
  const std::size_t k = e.size();
  std::vector<Partial> parts(k);
  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(threads, 1)), 1, k);
  if (workers == 1) {
    for (std::size_t a = 0; a < k; ++a) parts[a] = make(a);
    return parts;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t a = w; a < k; a += workers) parts[a] = make(a);
    });
  }
  pool.clear();
  return parts;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

struct SeriesPartial {
  std::vector<CompensatedSum> by_length;
};

std::vector<double> expected_max_by_length(const MatrixEnsemble& e, int n,
                                           const EnumerationOptions& opts) {
  check_budget(e, n, opts.word_budget);
  auto parts = per_first_letter<SeriesPartial>(e, opts.threads, [&](std::size_t a) {
    SeriesPartial p;
    p.by_length.resize(static_cast<std::size_t>(n));
    walk_subtree(e, n, a, [&](const Node& node) {
      p.by_length[static_cast<std::size_t>(node.depth - 1)].add(
          static_cast<long double>(node.weight) * max_abs(node.product));
    });
    return p;
  });
  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::size_t len = 0; len < out.size(); ++len) {
    CompensatedSum total;
    for (const auto& p : parts) total.merge(p.by_length[len]);
    out[len] = static_cast<double>(total.value());
  }
  return out;
}

}  // namespace

Matrix exact_entry_expectation(const MatrixEnsemble& e, int n,
                               const EnumerationOptions& opts) {
  check_budget(e, n, opts.word_budget);
  const std::size_t dd = e.dim() * e.dim();
  using Partial = std::vector<CompensatedSum>;
  auto parts = per_first_letter<Partial>(e, opts.threads, [&](std::size_t a) {
    Partial p(dd);
    walk_subtree(e, n, a, [&](const Node& node) {
      if (node.depth != n) return;
      for (std::size_t i = 0; i < dd; ++i)
        p[i].add(static_cast<long double>(node.weight) * node.product[i]);
    });
    return p;
  });
  std::vector<double> entries(dd);
  for (std::size_t i = 0; i < dd; ++i) {
    CompensatedSum total;
    for (const auto& p : parts) total.merge(p[i]);
    entries[i] = static_cast<double>(total.value());
  }
  return Matrix(e.dim(), std::move(entries));
}

double expected_max_entry(const MatrixEnsemble& e, int n, const EnumerationOptions& opts) {
  return expected_max_by_length(e, n, opts).back();
}

double fit_growth_rate(const std::vector<double>& values) {
  const std::size_t count = values.size();
  if (count < 2) throw invalid_input("growth fit needs at least two values");
  const std::size_t begin = count / 2;  // upper half: n = count/2 + 1 .. count
  const std::size_t used = count - begin;
  if (used < 2) throw invalid_input("growth fit needs at least two tail values");
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = begin; i < count; ++i) {
    if (!(values[i] > 0.0)) throw invalid_input("growth fit needs positive values");
    const long double x = static_cast<long double>(i + 1);
    const long double y = std::log(static_cast<long double>(values[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const long double m = static_cast<long double>(used);
  const long double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return static_cast<double>(std::exp(slope));
}

GrowthSeries growth_series(const MatrixEnsemble& e, int n_max,
                           const EnumerationOptions& opts) {
  if (n_max < 2) throw invalid_input("growth series needs n_max >= 2");
  GrowthSeries s;
  s.values = expected_max_by_length(e, n_max, opts);
  for (std::size_t i = 1; i < s.values.size(); ++i)
    s.ratios.push_back(s.values[i] / s.values[i - 1]);
  s.fitted_rate = fit_growth_rate(s.values);
  return s;
}

MaxEntryProbe max_entry_probe(const MatrixEnsemble& e, int n,
                              const EnumerationOptions& opts) {
  check_budget(e, n, opts.word_budget);
  struct Partial {
    double g = -1.0;
    std::vector<std::size_t> witness;
  };
  auto parts = per_first_letter<Partial>(e, opts.threads, [&](std::size_t a) {
    Partial p;
    walk_subtree(e, n, a, [&](const Node& node) {
      if (node.depth != n) return;
      const double m = max_abs(node.product);
      if (m > p.g) {
        p.g = m;
        p.witness = node.word;
      }
    });
    return p;
  });
  MaxEntryProbe out;
  out.g = -1.0;
  for (auto& p : parts) {
    if (p.g > out.g) {
      out.g = p.g;
      out.witness = std::move(p.witness);
    }
  }
  out.jsr_lower_estimate = std::pow(out.g, 1.0 / n);
  out.word_length = n;
  return out;
}

std::string growth_series_csv(const GrowthSeries& series) {
  std::ostringstream os;
  os.precision(17);
  os << "n,E_n,ratio,fitted_rate\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    os << (i + 1) << ',' << series.values[i] << ',';
    if (i > 0) os << series.ratios[i - 1];
    os << ',' << series.fitted_rate << '\n';
  }
  return os.str();
}

}  // namespace lyap
