#include "lyap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lyap/error.hpp"

namespace lyap {
namespace {

using Complex = std::complex<double>;
using ComplexLD = std::complex<long double>;

double residual_scale(const Matrix& m) {
  return std::max(1.0, max_abs_entry(m));
}

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::fabs(x));
  return r;
}

double eigen_residual(const Matrix& m, const std::vector<double>& v, double mu) {
  const auto mv = matvec(m, v);
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::fabs(mv[i] - mu * v[i]));
  return r;
}

// Scale so the largest-magnitude component is exactly +1.
void normalize_signed(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::fabs(v[i]) > std::fabs(v[arg])) arg = i;
  const double pivot = v[arg];
  if (pivot == 0.0) return;
  for (double& x : v) x /= pivot;
  v[arg] = 1.0;
}

ComplexLD eval_poly(const std::vector<double>& c, ComplexLD x) {
  ComplexLD acc = 1.0L;
  for (double ci : c) acc = acc * x + static_cast<long double>(ci);
  return acc;
}

ComplexLD eval_poly_derivative(const std::vector<double>& c, ComplexLD x) {
  const std::size_t d = c.size();
  ComplexLD acc = static_cast<long double>(d);
  for (std::size_t i = 0; i + 1 < d; ++i)
    acc = acc * x + static_cast<long double>(d - 1 - i) * static_cast<long double>(c[i]);
  return acc;
}

// A few guarded Newton steps on the characteristic polynomial. Steps that
// do not reduce |p| are rejected, so repeated roots are left alone.
Complex polish(const std::vector<double>& c, Complex root) {
  ComplexLD x(root.real(), root.imag());
  ComplexLD px = eval_poly(c, x);
  for (int it = 0; it < 4 && std::abs(px) > 0.0L; ++it) {
    const ComplexLD dpx = eval_poly_derivative(c, x);
    if (std::abs(dpx) == 0.0L) break;
    const ComplexLD next = x - px / dpx;
    const ComplexLD pn = eval_poly(c, next);
    if (!(std::abs(pn) < std::abs(px))) break;
    x = next;
    px = pn;
  }
  return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

std::vector<Complex> quadratic_roots(double b, double c) {
  // x^2 + b x + c
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) return {0.0, 0.0};
    return {q, c / q};
  }
  const double sq = std::sqrt(-disc);
  return {Complex(-0.5 * b, 0.5 * sq), Complex(-0.5 * b, -0.5 * sq)};
}

std::vector<Complex> cubic_roots(double a, double b, double c) {
  // x^3 + a x^2 + b x + c; substitute x = y - a/3.
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<Complex> roots;
  if (p == 0.0 && q == 0.0) {
    roots = {0.0, 0.0, 0.0};
  } else if (disc <= 0.0 && p < 0.0) {
    // Three real roots, trigonometric form.
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    const double two_pi_3 = 2.0 * std::acos(-1.0) / 3.0;
    for (int k = 0; k < 3; ++k) roots.emplace_back(r * std::cos(phi - k * two_pi_3));
  } else {
    const double sq = std::sqrt(std::max(disc, 0.0));
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    const double re = -(u + v) / 2.0;
    const double im = std::sqrt(3.0) / 2.0 * (u - v);
    roots = {Complex(u + v), Complex(re, im), Complex(re, -im)};
  }
  for (auto& r : roots) r -= shift;
  return roots;
}

std::vector<Complex> quartic_roots(double a, double b, double c, double d) {
  // x^4 + a x^3 + b x^2 + c x + d; substitute x = y - a/4.
  const double shift = a / 4.0;
  const double p = b - 3.0 * a * a / 8.0;
  const double q = c - a * b / 2.0 + a * a * a / 8.0;
  const double r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
  const double scale = std::max({1.0, std::fabs(p), std::fabs(r), std::fabs(q)});
  std::vector<Complex> roots;
  if (std::fabs(q) <= 1e-14 * scale) {
    // Biquadratic: z = y^2.
    for (Complex z : quadratic_roots(p, r)) {
      const Complex s = std::sqrt(z);
      roots.push_back(s);
      roots.push_back(-s);
    }
  } else {
    // Ferrari: pick the resolvent root m with largest modulus, then
    // y^4 + p y^2 + q y + r = (y^2 + p/2 + m)^2 - 2m (y - q/(4m))^2.
    const auto resolvent = cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
    Complex m = resolvent[0];
    for (const auto& cand : resolvent)
      if (std::abs(cand) > std::abs(m)) m = cand;
    const Complex s = std::sqrt(2.0 * m);
    const Complex half_p = p / 2.0;
    const Complex t = q / (2.0 * s);
    for (int sign : {1, -1}) {
      // y^2 - sign*s*y + (p/2 + m + sign*t) = 0
      const Complex bb = -static_cast<double>(sign) * s;
      const Complex cc = half_p + m + static_cast<double>(sign) * t;
      const Complex disc = std::sqrt(bb * bb - 4.0 * cc);
      roots.push_back((-bb + disc) / 2.0);
      roots.push_back((-bb - disc) / 2.0);
    }
  }
  for (auto& root : roots) root -= shift;
  return roots;
}

// Solve (A - shift I) x = rhs with partial pivoting; zero pivots are
// nudged so an exact shift still yields a usable inverse-iteration step.
std::vector<double> shifted_solve(const Matrix& a, double shift, std::vector<double> rhs) {
  const std::size_t n = a.dim();
  std::vector<double> lu(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < n; ++i) lu[i * n + i] -= shift;
  const double tiny = std::numeric_limits<double>::epsilon() * residual_scale(a);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(lu[r * n + col]) > std::fabs(lu[piv * n + col])) piv = r;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu[col * n + j], lu[piv * n + j]);
      std::swap(rhs[col], rhs[piv]);
    }
    double& diag = lu[col * n + col];
    if (std::fabs(diag) < tiny) diag = std::copysign(tiny, diag == 0.0 ? 1.0 : diag);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = lu[r * n + col] / diag;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) lu[r * n + j] -= f * lu[col * n + j];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu[i * n + j] * x[j];
    x[i] = s / lu[i * n + i];
  }
  return x;
}

}  // namespace

std::string to_string(EigenMethod method) {
  switch (method) {
    case EigenMethod::kPowerIteration:
      return "power_iteration";
    case EigenMethod::kCharacteristicPolynomial:
      return "characteristic_polynomial";
  }
  return "unknown";
}

std::vector<double> characteristic_polynomial(const Matrix& m) {
  // Faddeev-LeVerrier in extended precision.
  const std::size_t n = m.dim();
  std::vector<long double> a(m.entries().begin(), m.entries().end());
  std::vector<long double> mk(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) mk[i * n + i] = 1.0L;
  std::vector<double> coeffs(n);
  std::vector<long double> amk(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long double s = 0.0L;
        for (std::size_t l = 0; l < n; ++l) s += a[i * n + l] * mk[l * n + j];
        amk[i * n + j] = s;
      }
    long double trace = 0.0L;
    for (std::size_t i = 0; i < n; ++i) trace += amk[i * n + i];
    const long double ck = -trace / static_cast<long double>(k);
    coeffs[k - 1] = static_cast<double>(ck);
    mk = amk;
    for (std::size_t i = 0; i < n; ++i) mk[i * n + i] += ck;
  }
  return coeffs;
}

std::vector<std::complex<double>> eigenvalues_small(const Matrix& m) {
  const std::size_t n = m.dim();
  if (n > kClosedFormMaxDim) {
    throw invalid_input("eigenvalues_small supports dimension <= 4, got " +
                        std::to_string(n));
  }
  std::vector<Complex> roots;
  std::vector<double> coeffs;
  if (n == 1) {
    roots = {m(0, 0)};
  } else if (n == 2) {
    // Discriminant from entries avoids the tr^2 - 4 det cancellation.
    const double half_tr = 0.5 * (m(0, 0) + m(1, 1));
    const double half_gap = 0.5 * (m(0, 0) - m(1, 1));
    const double disc = half_gap * half_gap + m(0, 1) * m(1, 0);
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      roots = {half_tr + sq, half_tr - sq};
    } else {
      const double sq = std::sqrt(-disc);
      roots = {Complex(half_tr, sq), Complex(half_tr, -sq)};
    }
  } else {
    coeffs = characteristic_polynomial(m);
    roots = n == 3 ? cubic_roots(coeffs[0], coeffs[1], coeffs[2])
                   : quartic_roots(coeffs[0], coeffs[1], coeffs[2], coeffs[3]);
    for (auto& r : roots) r = polish(coeffs, r);
  }
  const double snap = 64.0 * std::numeric_limits<double>::epsilon();
  for (auto& r : roots) {
    if (std::fabs(r.imag()) <= snap * std::max(1.0, std::abs(r))) r = r.real();
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ax != ay) return ax > ay;
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return roots;
}

bool distinct_real(const std::vector<std::complex<double>>& eigenvalues, double tol) {
  for (const auto& z : eigenvalues)
    if (std::fabs(z.imag()) > tol) return false;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (std::fabs(eigenvalues[i].real() - eigenvalues[j].real()) <= tol) return false;
  return true;
}

SpectralResult dominant_eigen_power(const Matrix& m, double tol, int max_iter) {
  if (!(tol > 0.0)) throw invalid_input("power iteration tolerance must be positive");
  if (max_iter < 1) throw invalid_input("power iteration needs max_iter >= 1");
  if (!all_positive(m)) {
    throw Error(ErrorKind::kHypothesis,
                "power iteration requires a strictly positive matrix");
  }
  const double threshold = tol * residual_scale(m);
  SpectralResult out;
  out.method = EigenMethod::kPowerIteration;
  std::vector<double> v(m.dim(), 1.0);
  for (int it = 1; it <= max_iter; ++it) {
    auto w = matvec(m, v);
    const double mu = max_abs(w);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::fabs(w[i] - mu * v[i]));
    out.mu = mu;
    out.residual = r;
    out.iterations = it;
    out.eigenvector = v;
    if (r <= threshold) {
      out.converged = true;
      break;
    }
    for (double& x : w) x /= mu;
    v = std::move(w);
  }
  out.positive_dominant = out.converged;
  return out;
}

SpectralResult dominant_eigen(const Matrix& m, double tol, int max_iter) {
  if (m.dim() > kClosedFormMaxDim) return dominant_eigen_power(m, tol, max_iter);

  SpectralResult out;
  out.method = EigenMethod::kCharacteristicPolynomial;
  auto eig = eigenvalues_small(m);
  out.distinct_real = distinct_real(eig);
  const Complex top = eig.front();
  out.mu = top.real();
  const bool real_top = std::fabs(top.imag()) <= kDistinctRealTolerance;
  const bool strict = eig.size() == 1 ||
                      std::abs(eig[1]) < std::abs(top) - kDistinctRealTolerance;
  out.positive_dominant = real_top && strict && out.mu > 0.0;
  out.all_eigenvalues = std::move(eig);

  if (!real_top) return out;

  std::vector<double> v(m.dim(), 1.0);
  for (int it = 0; it < 3; ++it) {
    v = shifted_solve(m, out.mu, std::move(v));
    normalize_signed(v);
    ++out.iterations;
  }
  out.eigenvector = std::move(v);
  out.residual = eigen_residual(m, out.eigenvector, out.mu);
  out.converged = std::isfinite(out.residual) &&
                  out.residual <= tol * residual_scale(m);
  return out;
}

}  // namespace lyap
