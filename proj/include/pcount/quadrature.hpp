#pragma once

// Phase-plane integrals  int d^2 lambda / pi  f(lambda)  for integrands with a
// Gaussian envelope. Radial direction: u = rho^2 with Gauss-Laguerre nodes;
// angular direction: uniform trapezoid rule.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pcount/error.hpp"

namespace pcount::quadrature {

/// Point of the complex phase plane (lambda or alpha). Extended precision is
/// used throughout phase-space evaluation so that the alternating photocount
/// kernels keep their accuracy.
using Point = std::complex<long double>;
using Value = std::complex<long double>;
using Integrand = std::function<Value(Point)>;

/// Quadratic decay bound |f| <= M poly(|l|) exp(-rate_re Re(l)^2 - rate_im Im(l)^2).
///
/// The isotropic case rate_re == rate_im == c_min is the common one; the two
/// axis rates let squeezed states keep a near-exact radial rule in both
/// directions.
struct GaussianEnvelope {
  double rate_re = 1.0;
  double rate_im = 1.0;

  GaussianEnvelope() = default;
  explicit GaussianEnvelope(double c_min) : rate_re(c_min), rate_im(c_min) {}
  static GaussianEnvelope axes(double rate_re, double rate_im) {
    GaussianEnvelope env;
    env.rate_re = rate_re;
    env.rate_im = rate_im;
    return env;
  }

  double c_min() const noexcept { return rate_re < rate_im ? rate_re : rate_im; }
  /// Envelope of the product with an isotropic exp(-extra |l|^2).
  GaussianEnvelope widened(double extra) const { return axes(rate_re + extra, rate_im + extra); }
  /// Throws DivergentIntegral unless both rates are finite and positive.
  void validate() const;
};

struct QuadratureSpec {
  unsigned radial_nodes = 80;
  unsigned angular_nodes = 64;
  unsigned refine_factor = 2;

  /// Throws DomainError on odd angular_nodes, radial_nodes < 8 or refine_factor 0.
  void validate() const;
  QuadratureSpec refined() const;
};

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
};

struct GaussLaguerreRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;  // for weight function e^{-x} on [0, inf)
};

/// n-point Gauss-Laguerre rule, computed once per n and shared.
const GaussLaguerreRule& gauss_laguerre(unsigned n);

struct PlaneNode {
  Point point;
  long double weight;  // includes the e^{+u} envelope compensation
};

/// Node set with  int d^2 l/pi f(l)  ~=  sum_i weight_i f(point_i).
/// Nodes are ordered radius-major, so summation order is fixed.
std::vector<PlaneNode> plane_rule(const GaussianEnvelope& env, const QuadratureSpec& spec);

/// Scalar integral with refinement-based error estimate.
QuadratureResult integrate_plane(const Integrand& f, const GaussianEnvelope& env,
                                 const QuadratureSpec& spec = {});

/// Evaluates `count` integrals sharing one node set. `f(point, out)` must fill
/// out[0..count) with the integrand values at `point`.
using VectorIntegrand = std::function<void(Point, std::span<Value>)>;

struct VectorQuadrature {
  std::vector<Value> value;
  std::vector<Value> refined;
  std::vector<long double> magnitude;  // sum_i |w_i f_i|, base rule
};

VectorQuadrature integrate_plane_many(const VectorIntegrand& f, std::size_t count,
                                      const GaussianEnvelope& env, const QuadratureSpec& spec);

/// int d^2a/pi exp(-B|a|^2 + C a - C* a*) L_m(A |a|^2)
///   = (B-A)^m / B^(m+1) e^(-|C|^2/B) L_m((A|C|^2/B)/(A-B)),
/// evaluated in the division-free form that covers A == B.
/// Throws DivergentIntegral for B <= 0.
double laguerre_gauss_closed(unsigned m, double A, double B, std::complex<double> C);

/// int d^2l/pi exp(-B|l|^2 + C l^2 + C l*^2) L_m(A |l|^2)
///   = (2AC)^m K_m(y) / (B^2-4C^2)^(m+1/2),  y = (B^2-4C^2-AB)/(2AC).
/// Throws DivergentIntegral unless B^2 > 4C^2 and B > 0.
double legendre_gauss_closed(unsigned m, double A, double B, double C);

}  // namespace pcount::quadrature
