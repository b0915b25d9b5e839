#include "lyap/bounds.hpp"

#include <cmath>

#include "lyap/error.hpp"

namespace lyap {
namespace {

constexpr const char* kLiteratureNote = "published literature value, not computed here";

Comparison make_comparison(const std::string& label, double ours, double other,
                           ReferenceKind kind) {
  Comparison c{label, ours, other, kind, Tighter::kTie, true};
  if (ours < other) {
    c.tighter = Tighter::kOurs;
  } else if (other < ours) {
    c.tighter = Tighter::kOther;
  }
  if (kind == ReferenceKind::kEstimate) c.consistent = ours >= other;
  return c;
}

bool same(const Matrix& a, const Matrix& b) { return a == b; }

}  // namespace

double sturman_bound(double k, double m) {
  if (!(k > 0.0) || !(m > 0.0) || !std::isfinite(k) || !std::isfinite(m))
    throw invalid_input("sturman_bound requires k > 0 and m > 0");
  const double km = k * m;
  const double root = std::sqrt(km);
  return 0.25 * (kSturmanConstant + std::log(root + 1.0 / root) + 0.5 * std::log1p(km));
}

const std::map<std::string, ReferenceValue>& reference_constants() {
  static const std::map<std::string, ReferenceValue> table = {
      {"pollicott_actual", {1.1433, ReferenceKind::kEstimate, kLiteratureNote}},
      {"jurga_bound", {1.66, ReferenceKind::kUpperBound, kLiteratureNote}},
      {"pollicott2_t2", {1.2509, ReferenceKind::kUpperBound, kLiteratureNote}},
      {"pollicott2_t1", {0.915, ReferenceKind::kUpperBound, kLiteratureNote}},
      {"pollicott2_t0.5", {0.6936, ReferenceKind::kUpperBound, kLiteratureNote}},
      {"pollicott2_t0.4", {0.6468, ReferenceKind::kUpperBound, kLiteratureNote}},
      {"pollicott2_t0.3", {0.5872, ReferenceKind::kUpperBound, kLiteratureNote}},
      {"pollicott2_t0.2", {0.529, ReferenceKind::kUpperBound, kLiteratureNote}},
      {"pollicott2_t0.1", {0.4, ReferenceKind::kUpperBound, kLiteratureNote}},
  };
  return table;
}

std::optional<ReferenceValue> lookup_reference(const std::string& label) {
  const auto& table = reference_constants();
  if (auto it = table.find(label); it != table.end()) return it->second;
  return std::nullopt;
}

std::string to_string(Tighter t) {
  switch (t) {
    case Tighter::kOurs:
      return "ours";
    case Tighter::kOther:
      return "other";
    case Tighter::kTie:
      return "tie";
  }
  return "tie";
}

std::string to_string(ReferenceKind k) {
  return k == ReferenceKind::kEstimate ? "estimate" : "upper_bound";
}

std::optional<std::pair<double, double>> match_shear_pair(const MatrixEnsemble& e) {
  if (e.size() != 2 || e.dim() != 2 || e.probs()[0] != 0.5) return std::nullopt;
  auto is_upper = [](const Matrix& a) {
    return a(0, 0) == 1.0 && a(1, 0) == 0.0 && a(1, 1) == 1.0 && a(0, 1) > 0.0;
  };
  auto is_lower = [](const Matrix& b) {
    return b(0, 0) == 1.0 && b(0, 1) == 0.0 && b(1, 1) == 1.0 && b(1, 0) > 0.0;
  };
  const auto& m = e.matrices();
  for (int first : {0, 1}) {
    const Matrix& a = m[first];
    const Matrix& b = m[1 - first];
    if (is_upper(a) && is_lower(b)) return std::make_pair(a(0, 1), b(1, 0));
  }
  return std::nullopt;
}

std::vector<std::string> matching_references(const MatrixEnsemble& e) {
  if (e.size() != 2 || e.dim() != 2 || e.probs()[0] != 0.5) return {};
  auto matches = [&](const MatrixEnsemble& family) {
    const auto& a = e.matrices();
    const auto& b = family.matrices();
    return (same(a[0], b[0]) && same(a[1], b[1])) || (same(a[0], b[1]) && same(a[1], b[0]));
  };
  if (matches(builtin_family("pollicott"))) return {"pollicott_actual"};
  if (matches(builtin_family("jurga"))) return {"jurga_bound"};
  const std::pair<double, const char*> series[] = {
      {2.0, "pollicott2_t2"},   {1.0, "pollicott2_t1"},   {0.5, "pollicott2_t0.5"},
      {0.4, "pollicott2_t0.4"}, {0.3, "pollicott2_t0.3"}, {0.2, "pollicott2_t0.2"},
      {0.1, "pollicott2_t0.1"},
  };
  for (const auto& [t, label] : series) {
    if (matches(builtin_family("pollicott2_series", {{"t", t}}))) return {label};
  }
  return {};
}

BoundReport lyapunov_upper_bound(const MatrixEnsemble& e) {
  BoundReport report;
  report.ensemble_id = e.id();
  report.applicability = check_applicability(e);
  const auto& app = report.applicability;
  if (!app.bound_ok && !app.growth_ok) {
    std::string why = "expectation matrix is not strictly positive";
    if (!app.distinct_real.has_value()) {
      why += ", and its spectrum is not checked above dimension 4";
    } else if (!*app.distinct_real) {
      why += ", and its eigenvalues are not distinct reals";
    } else {
      why += ", and its largest-modulus eigenvalue is not positive";
    }
    throw Error(ErrorKind::kHypothesis, "cannot certify lambda <= log mu: " + why);
  }

  const Matrix m = expectation_matrix(e);
  const SpectralResult spectrum = dominant_eigen(m);
  if (!spectrum.converged) {
    throw Error(ErrorKind::kNonConvergence,
                "dominant eigenvalue did not converge (residual " +
                    std::to_string(spectrum.residual) + ")");
  }
  if (!spectrum.positive_dominant || !(spectrum.mu > 0.0)) {
    throw Error(ErrorKind::kHypothesis,
                "cannot certify lambda <= log mu: dominant eigenvalue is not positive");
  }
  report.mu = spectrum.mu;
  report.log_mu_bound = std::log(spectrum.mu);
  if (!app.bound_ok) {
    report.extrapolated = true;
    report.warnings.push_back(
        "extrapolated beyond positivity hypothesis: expectation matrix has "
        "non-positive entries; bound rests on distinct real eigenvalues only");
  }
  if (!app.factors_nonnegative) {
    report.warnings.push_back(
        "factors have negative entries: a positive expectation matrix does not "
        "guarantee lambda <= ln mu in this case");
  }
  return report;
}

BoundReport compare(const MatrixEnsemble& e) {
  BoundReport report = lyapunov_upper_bound(e);
  if (auto shear = match_shear_pair(e)) {
    const double s = sturman_bound(shear->first, shear->second);
    report.sturman_bound = s;
    report.comparisons.push_back(
        make_comparison("sturman", report.log_mu_bound, s, ReferenceKind::kUpperBound));
  }
  for (const auto& label : matching_references(e)) {
    const ReferenceValue ref = *lookup_reference(label);
    report.reference_values.emplace(label, ref);
    report.comparisons.push_back(
        make_comparison(label, report.log_mu_bound, ref.value, ref.kind));
  }
  return report;
}

}  // namespace lyap
