#pragma once

// Photocount distributions p(m) for a detector of quantum efficiency zeta.
// The Fock-basis thinning sum serves as the reference; the phase-space routes
// and the coherent/squeezed closed forms are checked against it.

#include <complex>
#include <string>
#include <vector>

#include "pcount/quadrature.hpp"
#include "pcount/states.hpp"

namespace pcount {

struct DetectionSpec {
  double zeta = 1.0;
  unsigned m_max = 30;

  /// Throws DomainError unless 0 <= zeta <= 1.
  void validate() const;
};

enum class Route { fock, cf, wigner, q, p, closed };

std::string to_string(Route route);
/// Throws UsageError on an unknown label.
Route route_from_string(const std::string& label);

struct PhotocountDistribution {
  double zeta = 0.0;
  std::vector<double> probabilities;
  Route route = Route::fock;
  double error_estimate = 0.0;
  double residual_negative = 0.0;  // most negative raw p(m), 0 if none

  double total() const;
  double mean() const;
  unsigned m_max() const { return static_cast<unsigned>(probabilities.size()) - 1; }
};

/// p(m) = sum_{n>=m} rho_nn binom(n,m) zeta^m (1-zeta)^(n-m).
PhotocountDistribution pcount_fock(const states::DensityDiagonal& diag, const DetectionSpec& det);

/// p(m) = (1/zeta) int d^2l/pi exp(-(2-zeta)|l|^2/(2 zeta)) L_m(|l|^2/zeta) chi(l).
PhotocountDistribution pcount_cf(const states::PhaseSpaceRep& cf, const DetectionSpec& det,
                                 const quadrature::QuadratureSpec& spec = {});

/// p(m) = 2(-zeta)^m/(2-zeta)^(m+1) int d^2a exp(-2 zeta|a|^2/(2-zeta)) L_m(4|a|^2/(2-zeta)) W(a).
PhotocountDistribution pcount_wigner(const states::PhaseSpaceRep& w, const DetectionSpec& det,
                                     const quadrature::QuadratureSpec& spec = {});

/// p(m) = (-zeta)^m/(1-zeta)^(m+1) int d^2a exp(-zeta|a|^2/(1-zeta)) L_m(|a|^2/(1-zeta)) Q(a).
/// The prefactor grows like (zeta/(1-zeta))^m, so accuracy degrades as zeta -> 1.
PhotocountDistribution pcount_q(const states::PhaseSpaceRep& q, const DetectionSpec& det,
                                const quadrature::QuadratureSpec& spec = {});

/// p(m) = zeta^m/m! int d^2a |a|^(2m) exp(-zeta|a|^2) P(a); delta P handled exactly.
PhotocountDistribution pcount_p(const states::PhaseSpaceRep& p_rep, const DetectionSpec& det,
                                const quadrature::QuadratureSpec& spec = {});

/// Poisson with mean zeta |beta|^2.
PhotocountDistribution closed_coherent(std::complex<double> beta, const DetectionSpec& det);

/// Squeezed vacuum e^{r(a+^2 - a^2)/2}|0>:
/// p(m) = (zeta sinh r cosh r)^m K_m(y) / E^(m+1/2),
/// y = (1-zeta) tanh r,  E = 1 + (2-zeta) zeta sinh^2 r.
PhotocountDistribution closed_squeezed(double r, const DetectionSpec& det);

/// The squeezed-vacuum Legendre expression with
/// ((A-B)^2-4C^2)^(m/2) / (B^2-4C^2)^((m+1)/2) P_m(y/sqrt(y^2-1)),
/// evaluated with principal-branch complex powers. Diagnostic only.
std::complex<double> squeezed_legendre_principal(unsigned m, double r, double zeta);

/// The compact form zeta^m sech r tanh^m r P_m(y/sqrt(y^2-1)) / ((y^2-1)^(m/2) (1-y^2)^(1/2))
/// under principal branches. Differs from closed_squeezed by (-1)^m. Diagnostic only.
std::complex<double> squeezed_compact_principal(unsigned m, double r, double zeta);

/// Dispatches a route for a catalog state. `closed` is defined for coherent and
/// squeezed-vacuum states only.
PhotocountDistribution compute_route(const states::StateSpec& state, Route route,
                                     const DetectionSpec& det,
                                     const quadrature::QuadratureSpec& spec = {},
                                     double tail_bound = states::kDefaultTailBound);

}  // namespace pcount
