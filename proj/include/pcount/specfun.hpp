#pragma once

// Orthogonal-polynomial kernels and the squeezed-state Legendre kernel K_m.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcount/error.hpp"

namespace pcount::specfun {

inline constexpr unsigned kDefaultMaxDegree = 60;

/// Values p_0(x) .. p_{m_max}(x) of a polynomial family at one point.
template <class T = double>
struct PolySequence {
  std::vector<T> values;

  std::size_t size() const noexcept { return values.size(); }
  unsigned degree() const noexcept { return static_cast<unsigned>(values.size()) - 1; }
  const T& operator[](std::size_t k) const { return values[k]; }
};

inline void check_degree(unsigned degree, unsigned max_degree, const char* who) {
  if (degree > max_degree) {
    throw DegreeOverflow(std::string(who) + ": degree " + std::to_string(degree) +
                         " exceeds bound " + std::to_string(max_degree));
  }
}

/// Writes L_0(x) .. L_{out.size()-1}(x). No degree check; used in inner loops.
template <class T>
void laguerre_fill(std::span<T> out, T x) {
  if (out.empty()) return;
  out[0] = T(1);
  if (out.size() == 1) return;
  out[1] = T(1) - x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const T kk = static_cast<T>(k);
    out[k + 1] = ((T(2) * kk + T(1) - x) * out[k] - kk * out[k - 1]) / (kk + T(1));
  }
}

/// Writes P_0(x) .. P_{out.size()-1}(x).
template <class T>
void legendre_fill(std::span<T> out, T x) {
  if (out.empty()) return;
  out[0] = T(1);
  if (out.size() == 1) return;
  out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const T kk = static_cast<T>(k);
    out[k + 1] = ((T(2) * kk + T(1)) * x * out[k] - kk * out[k - 1]) / (kk + T(1));
  }
}

template <class T = double>
PolySequence<T> laguerre_seq(unsigned m_max, T x, unsigned max_degree = kDefaultMaxDegree) {
  check_degree(m_max, max_degree, "laguerre_seq");
  PolySequence<T> seq{std::vector<T>(m_max + 1)};
  laguerre_fill(std::span<T>(seq.values), x);
  return seq;
}

template <class T = double>
PolySequence<T> legendre_seq(unsigned m_max, T x, unsigned max_degree = kDefaultMaxDegree) {
  check_degree(m_max, max_degree, "legendre_seq");
  PolySequence<T> seq{std::vector<T>(m_max + 1)};
  legendre_fill(std::span<T>(seq.values), x);
  return seq;
}

/// P_m(x) through the sum x^m sum_l m!/(4^l l!^2 (m-2l)!) (1 - 1/x^2)^l.
/// Throws DomainError for x == 0 when m > 0.
double legendre_sum_form(unsigned m, double x);

/// K_m(y) = sum_l m!/(4^l l!^2 (m-2l)!) y^(m-2l).
///
/// Equal to (y^2-1)^(m/2) P_m(y/sqrt(y^2-1)) for |y| > 1 and continued as a
/// real polynomial everywhere else. Evaluated with the three-term recurrence
/// (k+1) K_{k+1} = (2k+1) y K_k - k (y^2-1) K_{k-1}.
double legendre_kernel(unsigned m, double y);

/// Two-variable Hermite polynomial with unit coupling:
/// H_{m,n}(x,y) = sum_k (-1)^k m! n! x^(m-k) y^(n-k) / (k! (m-k)! (n-k)!).
std::complex<double> hermite2(unsigned m, unsigned n, std::complex<double> x,
                              std::complex<double> y,
                              unsigned max_degree = kDefaultMaxDegree);

/// Partial sum over l < terms of alpha^l / l! * H_{m+l,n+l}(x,y).
/// Throws DomainError unless |alpha| < 1 and terms >= 1.
std::complex<double> hermite_shift_sum(unsigned m, unsigned n, double alpha,
                                       std::complex<double> x, std::complex<double> y,
                                       unsigned terms);

/// Closed form of the infinite shift sum:
/// e^(alpha x y/(alpha+1)) (alpha+1)^(-(m+n+2)/2) H_{m,n}(x/sqrt(alpha+1), y/sqrt(alpha+1)).
std::complex<double> hermite_shift_closed(unsigned m, unsigned n, double alpha,
                                          std::complex<double> x, std::complex<double> y);

double log_factorial(unsigned n);

}  // namespace pcount::specfun
