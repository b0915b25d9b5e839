#include "lyap/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "lyap/error.hpp"

namespace lyap {
namespace {

void validate(const std::vector<Matrix>& matrices, const std::vector<double>& probs) {
  if (matrices.empty()) throw invalid_input("ensemble needs at least one matrix");
  if (matrices.size() != probs.size()) {
    throw invalid_input("ensemble has " + std::to_string(matrices.size()) +
                        " matrices but " + std::to_string(probs.size()) +
                        " probabilities");
  }
  for (const auto& m : matrices) {
    if (m.dim() != matrices.front().dim())
      throw invalid_input("ensemble matrices must share one dimension");
  }
  for (double p : probs) {
    if (!(p > 0.0 && p <= 1.0))
      throw invalid_input("ensemble probabilities must lie in (0, 1]");
  }
}

double param(const FamilyParams& params, const std::string& key,
             std::optional<double> fallback = std::nullopt) {
  if (auto it = params.find(key); it != params.end()) return it->second;
  if (fallback) return *fallback;
  throw invalid_input("missing family parameter '" + key + "'");
}

void reject_unknown(const FamilyParams& params, const std::set<std::string>& allowed,
                    const std::string& family) {
  for (const auto& [key, value] : params) {
    if (!allowed.count(key))
      throw invalid_input("family '" + family + "' has no parameter '" + key + "'");
    if (!std::isfinite(value))
      throw invalid_input("family parameter '" + key + "' must be finite");
  }
}

std::string fmt_number(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

MatrixEnsemble pair(Matrix a, Matrix b, double p, std::string id) {
  if (!(p > 0.0 && p < 1.0)) throw invalid_input("pair probability p must lie in (0, 1)");
  if (p != 0.5) id += ",p=" + fmt_number(p);
  return MatrixEnsemble({std::move(a), std::move(b)}, {p, 1.0 - p}, std::move(id));
}

}  // namespace

MatrixEnsemble::MatrixEnsemble(std::vector<Matrix> matrices, std::vector<double> probs,
                               std::string id)
    : matrices_(std::move(matrices)), probs_(std::move(probs)), id_(std::move(id)) {
  validate(matrices_, probs_);
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::fabs(total - 1.0) > kProbabilitySumTolerance) {
    throw invalid_input("ensemble probabilities sum to " + fmt_number(total) +
                        ", expected 1 (use normalized() to rescale weights)");
  }
}

MatrixEnsemble MatrixEnsemble::normalized(std::vector<Matrix> matrices,
                                          std::vector<double> weights, std::string id) {
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw invalid_input("weights must be positive");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return MatrixEnsemble(std::move(matrices), std::move(weights), std::move(id));
}

Matrix expectation_matrix(const MatrixEnsemble& e) {
  const std::size_t d = e.dim();
  std::vector<double> acc(d * d, 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto entries = e.matrices()[i].entries();
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += e.probs()[i] * entries[j];
  }
  return Matrix(d, std::move(acc));
}

Applicability check_applicability(const MatrixEnsemble& e) {
  const Matrix m = expectation_matrix(e);
  Applicability out;
  out.expectation_positive = all_positive(m);
  out.bound_ok = out.expectation_positive;
  out.factors_nonnegative = std::all_of(e.matrices().begin(), e.matrices().end(),
                                        [](const Matrix& a) { return all_nonnegative(a); });
  if (m.dim() <= kClosedFormMaxDim) {
    const auto spectrum = dominant_eigen(m);
    out.distinct_real = spectrum.distinct_real;
    const bool distinct_with_positive_top =
        spectrum.distinct_real.value_or(false) && spectrum.positive_dominant;
    out.growth_ok = out.expectation_positive || distinct_with_positive_top;
  } else {
    out.growth_ok = out.expectation_positive;
  }
  return out;
}

MatrixEnsemble builtin_family(const std::string& name, const FamilyParams& params) {
  if (name == "ak_bm") {
    reject_unknown(params, {"k", "m", "p"}, name);
    const double k = param(params, "k");
    const double m = param(params, "m");
    return pair(Matrix{{1, k}, {0, 1}}, Matrix{{1, 0}, {m, 1}}, param(params, "p", 0.5),
                "ak_bm(k=" + fmt_number(k) + ",m=" + fmt_number(m) + ")");
  }
  if (name == "pollicott") {
    reject_unknown(params, {"p"}, name);
    return pair(Matrix{{2, 1}, {1, 1}}, Matrix{{3, 1}, {2, 1}}, param(params, "p", 0.5),
                "pollicott");
  }
  if (name == "jurga") {
    reject_unknown(params, {"p"}, name);
    return pair(Matrix{{3, 1}, {1, 3}}, Matrix{{5, 2}, {2, 5}}, param(params, "p", 0.5),
                "jurga");
  }
  if (name == "pollicott2_series") {
    reject_unknown(params, {"t", "p"}, name);
    const double t = param(params, "t");
    if (!(t > 0.0)) throw invalid_input("pollicott2_series requires t > 0");
    return pair(Matrix{{1 + t, 1}, {t, 1}}, Matrix{{1, t}, {1, 1 + t}},
                param(params, "p", 0.5), "pollicott2_series(t=" + fmt_number(t) + ")");
  }
  if (name == "example6") {
    reject_unknown(params, {"p"}, name);
    return pair(Matrix{{1, -1}, {0, 1}}, Matrix{{1, 2}, {2, 1}}, param(params, "p", 0.5),
                "example6");
  }
  throw invalid_input("unknown builtin family '" + name + "'");
}

std::vector<std::string> builtin_family_names() {
  return {"ak_bm", "pollicott", "jurga", "pollicott2_series", "example6"};
}

}  // namespace lyap
