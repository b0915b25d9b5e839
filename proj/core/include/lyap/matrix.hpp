#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lyap {

/// Dense square matrix of doubles, row-major. Entries are finite.
class Matrix {
 public:
  /// Zero matrix of the given dimension (dim >= 1).
  explicit Matrix(std::size_t dim);
  Matrix(std::size_t dim, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> entries() const noexcept { return entries_; }

  double operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  struct Unchecked {};
  Matrix(Unchecked, std::size_t dim, std::vector<double> entries) noexcept
      : dim_(dim), entries_(std::move(entries)) {}

  friend Matrix multiply(const Matrix& a, const Matrix& b);
  friend Matrix scaled(const Matrix& a, double factor);
  friend Matrix add(const Matrix& a, const Matrix& b);
  friend class ProductAccumulator;

  std::size_t dim_;
  std::vector<double> entries_;
};

/// Standard product a*b. Throws on dimension mismatch, and with
/// ErrorKind::kNumeric when an entry overflows to infinity (rescale first).
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, double factor);

/// m^power by repeated squaring; power 0 gives the identity.
Matrix power(const Matrix& m, unsigned power);

double max_abs_entry(const Matrix& a) noexcept;

/// d * max|a_ij|. Submultiplicative, unlike the plain max-abs entry.
double scaled_max_norm(const Matrix& a) noexcept;

double entry_sum(const Matrix& a) noexcept;

bool all_positive(const Matrix& a) noexcept;
bool all_nonnegative(const Matrix& a) noexcept;

std::vector<double> matvec(const Matrix& a, std::span<const double> v);

// Running product with log-space rescaling, used by the word walkers.
// After every right-multiplication the product is divided by its max-abs
// entry and the log of that factor is added to log_scale(). Zero products
// are sticky: once hit, is_zero() stays true.
class ProductAccumulator {
 public:
  explicit ProductAccumulator(std::size_t dim);

  void reset();
  void right_multiply(const Matrix& factor);

  bool is_zero() const noexcept { return zero_; }
  long double log_scale() const noexcept { return log_scale_; }
  const std::vector<double>& normalized() const noexcept { return current_; }

  /// log of the scaled max norm of the unnormalized product.
  long double log_scaled_norm() const noexcept;

 private:
  std::size_t dim_;
  std::vector<double> current_;
  std::vector<double> scratch_;
  long double log_scale_ = 0.0L;
  bool zero_ = false;
};

}  // namespace lyap
