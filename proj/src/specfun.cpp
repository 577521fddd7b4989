#include "pcount/specfun.hpp"

#include <cmath>
#include <cstdlib>

namespace pcount::specfun {
namespace {

using cplx = std::complex<double>;

std::vector<cplx> powers(cplx z, unsigned n) {
  std::vector<cplx> out(n + 1);
  out[0] = 1.0;
  for (unsigned j = 1; j <= n; ++j) out[j] = out[j - 1] * z;
  return out;
}

// scale * H_{m,n}(x,y) from precomputed powers. The coefficient of the top
// term k = min(m,n) comes from log-gamma (with log_scale folded in); the rest
// follow from c_{k-1} = c_k k / ((m-k+1)(n-k+1)), so all terms share one
// rounding of the exponential.
cplx scaled_hermite(unsigned m, unsigned n, double log_scale, bool negate,
                    const std::vector<cplx>& xp, const std::vector<cplx>& yp) {
  const unsigned top = std::min(m, n);
  double c = std::exp(log_scale + log_factorial(std::max(m, n)) -
                      log_factorial(std::max(m, n) - top));
  cplx sum = 0.0;
  for (unsigned k = top + 1; k-- > 0;) {
    const bool minus = (k % 2 == 1) != negate;
    sum += (minus ? -c : c) * xp[m - k] * yp[n - k];
    if (k > 0) c *= static_cast<double>(k) / (static_cast<double>(m - k + 1) * (n - k + 1));
  }
  return sum;
}

// log of m! / (4^l l!^2 (m-2l)!)
double log_legendre_coeff(unsigned m, unsigned l) {
  return log_factorial(m) - 2.0 * l * std::log(2.0) - 2.0 * log_factorial(l) -
         log_factorial(m - 2 * l);
}

cplx hermite2_unchecked(unsigned m, unsigned n, cplx x, cplx y) {
  return scaled_hermite(m, n, 0.0, false, powers(x, m), powers(y, n));
}

}  // namespace

double log_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double legendre_sum_form(unsigned m, double x) {
  if (m == 0) return 1.0;
  if (x == 0.0) {
    throw DomainError("legendre_sum_form: x = 0 with m > 0; use legendre_seq");
  }
  const double w = 1.0 - 1.0 / (x * x);
  double sum = 0.0;
  double wl = 1.0;
  for (unsigned l = 0; 2 * l <= m; ++l) {
    sum += std::exp(log_legendre_coeff(m, l)) * wl;
    wl *= w;
  }
  return std::pow(x, static_cast<int>(m)) * sum;
}

double legendre_kernel(unsigned m, double y) {
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = y;
  const double y2m1 = y * y - 1.0;
  for (unsigned k = 1; k < m; ++k) {
    const double kk = k;
    const double next = ((2.0 * kk + 1.0) * y * cur - kk * y2m1 * prev) / (kk + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx hermite2(unsigned m, unsigned n, cplx x, cplx y, unsigned max_degree) {
  check_degree(std::max(m, n), max_degree, "hermite2");
  return hermite2_unchecked(m, n, x, y);
}

cplx hermite_shift_sum(unsigned m, unsigned n, double alpha, cplx x, cplx y,
                       unsigned terms) {
  if (!(std::abs(alpha) < 1.0)) {
    throw DomainError("hermite_shift_sum: |alpha| must be < 1 for convergence");
  }
  if (terms == 0) throw DomainError("hermite_shift_sum: terms must be positive");

  const unsigned top = std::max(m, n) + terms;
  const auto xp = powers(x, top);
  const auto yp = powers(y, top);
  const double log_alpha = alpha == 0.0 ? 0.0 : std::log(std::abs(alpha));

  cplx sum = 0.0;
  for (unsigned l = 0; l < terms; ++l) {
    if (alpha == 0.0 && l > 0) break;
    // alpha^l / l! folded into the log coefficient keeps high degrees finite.
    const double log_scale = l * log_alpha - log_factorial(l);
    const bool negative_scale = alpha < 0.0 && l % 2 == 1;
    const cplx term = scaled_hermite(m + l, n + l, log_scale, negative_scale, xp, yp);
    sum += term;
  }
  return sum;
}

cplx hermite_shift_closed(unsigned m, unsigned n, double alpha, cplx x, cplx y) {
  if (!(alpha > -1.0)) throw DomainError("hermite_shift_closed: alpha must exceed -1");
  const double s = std::sqrt(alpha + 1.0);
  const double scale = std::pow(alpha + 1.0, -0.5 * (m + n + 2.0));
  return std::exp(alpha * x * y / (alpha + 1.0)) * scale * hermite2_unchecked(m, n, x / s, y / s);
}

}  // namespace pcount::specfun
