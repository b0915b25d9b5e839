#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lyap/matrix.hpp"

namespace lyap {

inline constexpr double kDefaultEigenTolerance = 1e-12;
inline constexpr int kDefaultMaxIterations = 100000;
/// Absolute gap (and |Im| bound) used by the distinct-real test.
inline constexpr double kDistinctRealTolerance = 1e-9;
/// Largest dimension handled by the closed-form characteristic polynomial.
inline constexpr std::size_t kClosedFormMaxDim = 4;

enum class EigenMethod { kPowerIteration, kCharacteristicPolynomial };

std::string to_string(EigenMethod method);

struct SpectralResult {
  double mu = 0.0;
  /// Normalized to unit max-norm.
  std::vector<double> eigenvector;
  /// max-norm of (M v - mu v).
  double residual = 0.0;
  int iterations = 0;
  /// residual <= tol * max(1, max|M_ij|).
  bool converged = false;
  /// The largest-modulus eigenvalue is real, positive and strictly dominant.
  bool positive_dominant = false;
  EigenMethod method = EigenMethod::kPowerIteration;
  /// Full spectrum, sorted by decreasing modulus; only for dim <= 4.
  std::optional<std::vector<std::complex<double>>> all_eigenvalues;
  /// nullopt when the spectrum was not computed.
  std::optional<bool> distinct_real;
};

/// Perron-Frobenius eigenpair of a strictly positive matrix by power
/// iteration. The iterate is renormalized by its max-norm each step.
/// A run that exhausts max_iter comes back with converged == false.
SpectralResult dominant_eigen_power(const Matrix& m,
                                    double tol = kDefaultEigenTolerance,
                                    int max_iter = kDefaultMaxIterations);

/// All eigenvalues (with multiplicity) of a matrix with dim <= 4, from the
/// roots of the characteristic polynomial. Sorted by decreasing modulus,
/// ties broken by decreasing real part.
std::vector<std::complex<double>> eigenvalues_small(const Matrix& m);

/// True when every eigenvalue is real and all pairwise gaps exceed tol.
bool distinct_real(const std::vector<std::complex<double>>& eigenvalues,
                   double tol = kDistinctRealTolerance);

/// Characteristic polynomial coefficients c with
/// det(xI - M) = x^d + c[0] x^(d-1) + ... + c[d-1].
std::vector<double> characteristic_polynomial(const Matrix& m);

/// Dominant eigenpair with the dimension split: closed form plus inverse
/// iteration for dim <= 4, power iteration (positive matrices only) above.
/// mu is the real part of the largest-modulus eigenvalue; check
/// positive_dominant before treating it as a growth rate.
SpectralResult dominant_eigen(const Matrix& m,
                              double tol = kDefaultEigenTolerance,
                              int max_iter = kDefaultMaxIterations);

}  // namespace lyap
