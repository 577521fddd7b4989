#pragma once

// Catalog of single-mode light fields with their Fock-diagonal densities and
// closed-form phase-space representations.

#include <array>
#include <complex>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcount/quadrature.hpp"

namespace pcount::states {

enum class StateKind { coherent, squeezed_vacuum, thermal, fock, custom_diag };

struct StateSpec {
  StateKind kind = StateKind::coherent;
  std::complex<double> beta{0.0, 0.0};
  double r = 0.0;
  double nbar = 0.0;
  unsigned n = 0;
  std::vector<double> diag;

  static StateSpec coherent(std::complex<double> beta);
  static StateSpec squeezed_vacuum(double r);
  static StateSpec thermal(double nbar);
  static StateSpec fock(unsigned n);
  static StateSpec custom(std::vector<double> diag);

  /// Throws DomainError when the active fields break their invariants.
  void validate() const;
  /// <a^dagger a> of the state.
  double mean_photon_number() const;
};

enum class RepKind { cf, wigner, q, p };

std::string to_string(RepKind kind);

/// One phase-space representation of a state.
///
/// `decay` is the Gaussian decay of the representation itself; the photocount
/// route for this representation multiplies it by an isotropic kernel whose
/// rate depends on the efficiency, which `envelope_for` adds.
struct PhaseSpaceRep {
  RepKind kind = RepKind::cf;
  bool available = false;
  quadrature::Integrand evaluate;
  quadrature::GaussianEnvelope decay;
  /// Set when the representation is a delta functional at this point.
  std::optional<std::complex<double>> delta_at;
  std::string unavailable_reason;

  quadrature::Value operator()(quadrature::Point p) const { return evaluate(p); }
  bool is_delta() const noexcept { return delta_at.has_value(); }

  /// Decay bound of the full route integrand at efficiency zeta.
  /// Throws RouteDomainError where the route kernel itself is undefined.
  quadrature::GaussianEnvelope envelope_for(double zeta) const;
  /// Throws RepresentationUnavailable unless available.
  void require_available() const;
};

struct Representations {
  PhaseSpaceRep cf;
  PhaseSpaceRep wigner;
  PhaseSpaceRep q;
  PhaseSpaceRep p;

  const PhaseSpaceRep& get(RepKind kind) const;
};

Representations make_representations(const StateSpec& state);

struct DensityDiagonal {
  std::vector<double> entries;
  double truncation_tail = 0.0;

  double sum() const;
  /// Upper bound on sum_{n > k} rho_nn, using the stored tail.
  double tail_beyond(std::size_t k) const;
};

inline constexpr double kDefaultTailBound = 1e-12;

/// rho_nn truncated where the analytic tail drops below tail_bound.
DensityDiagonal density_diagonal(const StateSpec& state, double tail_bound = kDefaultTailBound);

/// Max over the grid of |RHS - CF(lambda)| for the Fourier relation linking
/// the chosen representation to the characteristic function.
double fourier_check(const StateSpec& state, RepKind kind,
                     std::span<const std::complex<double>> grid,
                     const quadrature::QuadratureSpec& spec = {});

/// Reads one rho_nn per line (index implicit from 0) and validates it.
std::vector<double> read_diag_csv(const std::filesystem::path& path);

}  // namespace pcount::states
