#include "lyap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lyap/error.hpp"

namespace lyap {
namespace {

void require_finite(std::span<const double> entries) {
  for (double x : entries) {
    if (!std::isfinite(x)) throw invalid_input("matrix entries must be finite");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw invalid_input(std::string(op) + ": dimension mismatch (" +
                        std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()) + ")");
  }
}

void product_into(std::span<const double> a, std::span<const double> b,
                  std::size_t d, std::span<double> out) {
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < d; ++l) s += a[i * d + l] * b[l * d + j];
      out[i * d + j] = s;
    }
  }
}

double max_abs(std::span<const double> v) noexcept {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

Matrix::Matrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {
  if (dim == 0) throw invalid_input("matrix dimension must be at least 1");
}

Matrix::Matrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw invalid_input("matrix dimension must be at least 1");
  if (entries_.size() != dim * dim) {
    throw invalid_input("matrix of dimension " + std::to_string(dim) +
                        " needs " + std::to_string(dim * dim) +
                        " entries, got " + std::to_string(entries_.size()));
  }
  require_finite(entries_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw invalid_input("matrix dimension must be at least 1");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw invalid_input("matrix must be square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  require_finite(entries_);
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  std::vector<double> t(entries_.size());
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t[j * dim_ + i] = entries_[i * dim_ + j];
  return Matrix(Unchecked{}, dim_, std::move(t));
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "multiply");
  std::vector<double> out(a.entries_.size());
  product_into(a.entries_, b.entries_, a.dim_, out);
  for (double x : out) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::kNumeric,
                  "matrix product overflowed; rescale before multiplying");
    }
  }
  return Matrix(Matrix::Unchecked{}, a.dim_, std::move(out));
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "add");
  std::vector<double> out(a.entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.entries_[i];
  require_finite(out);
  return Matrix(Matrix::Unchecked{}, a.dim_, std::move(out));
}

Matrix scaled(const Matrix& a, double factor) {
  std::vector<double> out(a.entries_);
  for (double& x : out) x *= factor;
  require_finite(out);
  return Matrix(Matrix::Unchecked{}, a.dim_, std::move(out));
}

Matrix power(const Matrix& m, unsigned power) {
  Matrix result = Matrix::identity(m.dim());
  Matrix base = m;
  while (power > 0) {
    if (power & 1u) result = multiply(result, base);
    power >>= 1u;
    if (power > 0) base = multiply(base, base);
  }
  return result;
}

double max_abs_entry(const Matrix& a) noexcept { return max_abs(a.entries()); }

double scaled_max_norm(const Matrix& a) noexcept {
  return static_cast<double>(a.dim()) * max_abs_entry(a);
}

double entry_sum(const Matrix& a) noexcept {
  double s = 0.0;
  for (double x : a.entries()) s += x;
  return s;
}

bool all_positive(const Matrix& a) noexcept {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [](double x) { return x > 0.0; });
}

bool all_nonnegative(const Matrix& a) noexcept {
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [](double x) { return x >= 0.0; });
}

std::vector<double> matvec(const Matrix& a, std::span<const double> v) {
  if (v.size() != a.dim()) throw invalid_input("matvec: vector length mismatch");
  std::vector<double> out(a.dim(), 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ProductAccumulator::ProductAccumulator(std::size_t dim)
    : dim_(dim), current_(dim * dim), scratch_(dim * dim) {
  reset();
}

void ProductAccumulator::reset() {
  std::fill(current_.begin(), current_.end(), 0.0);
  for (std::size_t i = 0; i < dim_; ++i) current_[i * dim_ + i] = 1.0;
  log_scale_ = 0.0L;
  zero_ = false;
}

void ProductAccumulator::right_multiply(const Matrix& factor) {
  if (zero_) return;
  product_into(current_, factor.entries_, dim_, scratch_);
  const double s = max_abs(scratch_);
  if (s == 0.0) {
    zero_ = true;
    return;
  }
  const double inv = 1.0 / s;
  for (std::size_t i = 0; i < scratch_.size(); ++i) current_[i] = scratch_[i] * inv;
  log_scale_ += std::log(static_cast<long double>(s));
}

long double ProductAccumulator::log_scaled_norm() const noexcept {
  return log_scale_ +
         std::log(static_cast<long double>(dim_) *
                  static_cast<long double>(max_abs(current_)));
}

}  // namespace lyap
