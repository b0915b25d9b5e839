#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lyap/matrix.hpp"
#include "lyap/spectral.hpp"

namespace lyap {

inline constexpr double kProbabilitySumTolerance = 1e-12;

/// A finite family of same-size matrices, each drawn independently with
/// its own probability at every step of a random product.
class MatrixEnsemble {
 public:
  /// Probabilities must be positive and sum to 1 within 1e-12.
  MatrixEnsemble(std::vector<Matrix> matrices, std::vector<double> probs,
                 std::string id = "custom");

  /// Divides positive weights by their sum. The only normalizing entry point.
  static MatrixEnsemble normalized(std::vector<Matrix> matrices,
                                   std::vector<double> weights,
                                   std::string id = "custom");

  std::size_t dim() const noexcept { return matrices_.front().dim(); }
  std::size_t size() const noexcept { return matrices_.size(); }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::string& id() const noexcept { return id_; }

  friend bool operator==(const MatrixEnsemble&, const MatrixEnsemble&) = default;

 private:
  std::vector<Matrix> matrices_;
  std::vector<double> probs_;
  std::string id_;
};

struct Applicability {
  bool expectation_positive = false;
  /// nullopt above dimension 4 when the spectrum is not computed.
  std::optional<bool> distinct_real;
  /// Expected entry growth is Theta(mu^n): M positive, or distinct real
  /// eigenvalues with a positive dominant one.
  bool growth_ok = false;
  /// lambda <= log mu holds almost surely (M strictly positive).
  bool bound_ok = false;
  /// Every factor is entrywise >= 0. Without it a positive M does not
  /// control E[max |entry|], and the bound can fail (see bounds.hpp).
  bool factors_nonnegative = false;

  friend bool operator==(const Applicability&, const Applicability&) = default;
};

/// sum_i p_i A_i
Matrix expectation_matrix(const MatrixEnsemble& e);

Applicability check_applicability(const MatrixEnsemble& e);

using FamilyParams = std::map<std::string, double>;

/// Builtin families. Names: "ak_bm" (k, m), "pollicott", "jurga",
/// "pollicott2_series" (t > 0), "example6". Every family accepts an
/// optional "p" for the first matrix; the default is 1/2.
MatrixEnsemble builtin_family(const std::string& name, const FamilyParams& params = {});

std::vector<std::string> builtin_family_names();

}  // namespace lyap
