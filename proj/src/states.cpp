#include "pcount/states.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <numbers>
#include <numeric>

#include "pcount/specfun.hpp"

namespace pcount::states {
namespace {

using quadrature::GaussianEnvelope;
using quadrature::Point;
using quadrature::Value;
using R = long double;

constexpr R kPi = std::numbers::pi_v<R>;

R norm2(Point p) { return p.real() * p.real() + p.imag() * p.imag(); }

// sum_n c_n L_n(x) with the Laguerre recurrence run in place.
R laguerre_series(const std::vector<R>& coeffs, R x) {
  if (coeffs.empty()) return 0.0L;
  R prev = 1.0L, cur = 1.0L - x;
  R sum = coeffs[0];
  if (coeffs.size() > 1) sum += coeffs[1] * cur;
  for (std::size_t k = 1; k + 1 < coeffs.size(); ++k) {
    const R next = ((2.0L * k + 1.0L - x) * cur - static_cast<R>(k) * prev) / (k + 1.0L);
    prev = cur;
    cur = next;
    sum += coeffs[k + 1] * cur;
  }
  return sum;
}

PhaseSpaceRep unavailable(RepKind kind, std::string why) {
  PhaseSpaceRep rep;
  rep.kind = kind;
  rep.available = false;
  rep.unavailable_reason = std::move(why);
  return rep;
}

PhaseSpaceRep regular(RepKind kind, quadrature::Integrand f, GaussianEnvelope decay) {
  PhaseSpaceRep rep;
  rep.kind = kind;
  rep.available = true;
  rep.evaluate = std::move(f);
  rep.decay = decay;
  return rep;
}

PhaseSpaceRep delta(std::complex<double> at) {
  PhaseSpaceRep rep;
  rep.kind = RepKind::p;
  rep.available = true;
  rep.delta_at = at;
  return rep;
}

Representations coherent_reps(std::complex<double> beta_d) {
  const Point beta(beta_d.real(), beta_d.imag());
  Representations reps;
  reps.cf = regular(
      RepKind::cf,
      [beta](Point l) { return std::exp(-norm2(l) / 2.0L + l * std::conj(beta) - std::conj(l) * beta); },
      GaussianEnvelope(0.5));
  reps.wigner = regular(
      RepKind::wigner, [beta](Point a) { return Value(2.0L / kPi * std::exp(-2.0L * norm2(a - beta))); },
      GaussianEnvelope(2.0));
  reps.q = regular(
      RepKind::q, [beta](Point a) { return Value(std::exp(-norm2(a - beta)) / kPi); },
      GaussianEnvelope(1.0));
  reps.p = delta(beta_d);
  return reps;
}

Representations squeezed_reps(double r) {
  if (r == 0.0) return coherent_reps(0.0);
  const R e2 = std::exp(2.0L * r);
  const R em2 = 1.0L / e2;
  const R coshr = std::cosh(static_cast<R>(r));
  Representations reps;
  // Principal axes are Re and Im; exp(-|l|^2 cosh2r/2 + (l^2 + l*^2) sinh2r/4)
  // equals exp(-x^2 e^{-2r}/2 - y^2 e^{2r}/2).
  reps.cf = regular(
      RepKind::cf,
      [e2, em2](Point l) {
        return Value(std::exp(-l.real() * l.real() * em2 / 2.0L - l.imag() * l.imag() * e2 / 2.0L));
      },
      GaussianEnvelope::axes(static_cast<double>(em2 / 2.0L), static_cast<double>(e2 / 2.0L)));
  reps.wigner = regular(
      RepKind::wigner,
      [e2, em2](Point a) {
        return Value(2.0L / kPi *
                     std::exp(-2.0L * em2 * a.real() * a.real() - 2.0L * e2 * a.imag() * a.imag()));
      },
      GaussianEnvelope::axes(static_cast<double>(2.0L * em2), static_cast<double>(2.0L * e2)));
  const R qx = 2.0L / (e2 + 1.0L);
  const R qy = 2.0L / (em2 + 1.0L);
  reps.q = regular(
      RepKind::q,
      [qx, qy, coshr](Point a) {
        return Value(std::exp(-qx * a.real() * a.real() - qy * a.imag() * a.imag()) / (kPi * coshr));
      },
      GaussianEnvelope::axes(static_cast<double>(qx), static_cast<double>(qy)));
  reps.p = unavailable(RepKind::p, "squeezed vacuum has no regular P-function");
  return reps;
}

Representations thermal_reps(double nbar_d) {
  const R nbar = nbar_d;
  Representations reps;
  reps.cf = regular(
      RepKind::cf, [nbar](Point l) { return Value(std::exp(-(nbar + 0.5L) * norm2(l))); },
      GaussianEnvelope(nbar_d + 0.5));
  const R wv = 2.0L * nbar + 1.0L;
  reps.wigner = regular(
      RepKind::wigner, [wv](Point a) { return Value(2.0L / (kPi * wv) * std::exp(-2.0L * norm2(a) / wv)); },
      GaussianEnvelope(static_cast<double>(2.0L / wv)));
  reps.q = regular(
      RepKind::q,
      [nbar](Point a) { return Value(std::exp(-norm2(a) / (nbar + 1.0L)) / (kPi * (nbar + 1.0L))); },
      GaussianEnvelope(1.0 / (nbar_d + 1.0)));
  if (nbar_d == 0.0) {
    reps.p = delta(0.0);
  } else {
    reps.p = regular(
        RepKind::p, [nbar](Point a) { return Value(std::exp(-norm2(a) / nbar) / (kPi * nbar)); },
        GaussianEnvelope(1.0 / nbar_d));
  }
  return reps;
}

// Fock-diagonal mixtures: CF, W and Q as finite Laguerre / monomial sums.
Representations diagonal_reps(const std::vector<double>& diag, bool p_is_vacuum_delta) {
  specfun::check_degree(static_cast<unsigned>(diag.size()) - 1, specfun::kDefaultMaxDegree,
                        "diagonal state representation");
  std::vector<R> cf_c(diag.begin(), diag.end());
  std::vector<R> w_c(diag.size());
  std::vector<R> q_c(diag.size());
  for (std::size_t n = 0; n < diag.size(); ++n) {
    w_c[n] = (n % 2 == 0 ? 1.0L : -1.0L) * diag[n];
    q_c[n] = diag[n] / std::exp(std::lgamma(static_cast<R>(n) + 1.0L));
  }
  Representations reps;
  reps.cf = regular(
      RepKind::cf,
      [cf_c](Point l) {
        const R u = norm2(l);
        return Value(std::exp(-u / 2.0L) * laguerre_series(cf_c, u));
      },
      GaussianEnvelope(0.5));
  reps.wigner = regular(
      RepKind::wigner,
      [w_c](Point a) {
        const R u = norm2(a);
        return Value(2.0L / kPi * std::exp(-2.0L * u) * laguerre_series(w_c, 4.0L * u));
      },
      GaussianEnvelope(2.0));
  reps.q = regular(
      RepKind::q,
      [q_c](Point a) {
        const R u = norm2(a);
        R sum = 0.0L, un = 1.0L;
        for (const R c : q_c) {
          sum += c * un;
          un *= u;
        }
        return Value(std::exp(-u) * sum / kPi);
      },
      GaussianEnvelope(1.0));
  reps.p = p_is_vacuum_delta ? delta(0.0)
                             : unavailable(RepKind::p, "P-function is not a regular function for this state");
  return reps;
}

}  // namespace

StateSpec StateSpec::coherent(std::complex<double> beta) {
  StateSpec s;
  s.kind = StateKind::coherent;
  s.beta = beta;
  return s;
}

StateSpec StateSpec::squeezed_vacuum(double r) {
  StateSpec s;
  s.kind = StateKind::squeezed_vacuum;
  s.r = r;
  return s;
}

StateSpec StateSpec::thermal(double nbar) {
  StateSpec s;
  s.kind = StateKind::thermal;
  s.nbar = nbar;
  return s;
}

StateSpec StateSpec::fock(unsigned n) {
  StateSpec s;
  s.kind = StateKind::fock;
  s.n = n;
  return s;
}

StateSpec StateSpec::custom(std::vector<double> diag) {
  StateSpec s;
  s.kind = StateKind::custom_diag;
  s.diag = std::move(diag);
  return s;
}

void StateSpec::validate() const {
  switch (kind) {
    case StateKind::coherent:
      if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw DomainError("coherent amplitude must be finite");
      }
      break;
    case StateKind::squeezed_vacuum:
      if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeeze parameter r must be >= 0");
      break;
    case StateKind::thermal:
      if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw DomainError("thermal nbar must be >= 0");
      break;
    case StateKind::fock:
      break;
    case StateKind::custom_diag: {
      if (diag.empty()) throw DomainError("custom diagonal is empty");
      double sum = 0.0;
      for (std::size_t i = 0; i < diag.size(); ++i) {
        if (!(diag[i] >= 0.0) || !std::isfinite(diag[i])) {
          throw DomainError("custom diagonal entry " + std::to_string(i) + " is negative or not finite");
        }
        sum += diag[i];
      }
      if (sum > 1.0 + 1e-12) throw DomainError("custom diagonal sums to more than 1");
      break;
    }
  }
}

double StateSpec::mean_photon_number() const {
  switch (kind) {
    case StateKind::coherent: return std::norm(beta);
    case StateKind::squeezed_vacuum: return std::sinh(r) * std::sinh(r);
    case StateKind::thermal: return nbar;
    case StateKind::fock: return n;
    case StateKind::custom_diag: {
      double mean = 0.0;
      for (std::size_t i = 0; i < diag.size(); ++i) mean += static_cast<double>(i) * diag[i];
      return mean;
    }
  }
  return 0.0;
}

std::string to_string(RepKind kind) {
  switch (kind) {
    case RepKind::cf: return "cf";
    case RepKind::wigner: return "wigner";
    case RepKind::q: return "q";
    case RepKind::p: return "p";
  }
  return "?";
}

quadrature::GaussianEnvelope PhaseSpaceRep::envelope_for(double zeta) const {
  require_available();
  if (is_delta()) throw DomainError("delta representation has no integration envelope");
  switch (kind) {
    case RepKind::cf:
      if (!(zeta > 0.0 && zeta <= 1.0)) throw RouteDomainError("CF route needs 0 < zeta <= 1");
      return decay.widened((2.0 - zeta) / (2.0 * zeta));
    case RepKind::wigner:
      if (!(zeta > 0.0 && zeta <= 1.0)) throw RouteDomainError("Wigner route needs 0 < zeta <= 1");
      return decay.widened(2.0 * zeta / (2.0 - zeta));
    case RepKind::q:
      if (!(zeta > 0.0 && zeta < 1.0)) {
        throw RouteDomainError("Q route needs 0 < zeta < 1 (kernel singular at zeta = 1)");
      }
      return decay.widened(zeta / (1.0 - zeta));
    case RepKind::p:
      if (!(zeta >= 0.0 && zeta <= 1.0)) throw RouteDomainError("P route needs 0 <= zeta <= 1");
      return decay.widened(zeta);
  }
  return decay;
}

void PhaseSpaceRep::require_available() const {
  if (!available) {
    throw RepresentationUnavailable(to_string(kind) + " representation unavailable: " +
                                    unavailable_reason);
  }
}

const PhaseSpaceRep& Representations::get(RepKind kind) const {
  switch (kind) {
    case RepKind::cf: return cf;
    case RepKind::wigner: return wigner;
    case RepKind::q: return q;
    case RepKind::p: return p;
  }
  return cf;
}

Representations make_representations(const StateSpec& state) {
  state.validate();
  switch (state.kind) {
    case StateKind::coherent: return coherent_reps(state.beta);
    case StateKind::squeezed_vacuum: return squeezed_reps(state.r);
    case StateKind::thermal: return thermal_reps(state.nbar);
    case StateKind::fock: {
      std::vector<double> diag(state.n + 1, 0.0);
      diag[state.n] = 1.0;
      return diagonal_reps(diag, state.n == 0);
    }
    case StateKind::custom_diag: return diagonal_reps(state.diag, false);
  }
  throw DomainError("unknown state kind");
}

double DensityDiagonal::sum() const {
  double s = 0.0;
  for (const double v : entries) s += v;
  return s;
}

double DensityDiagonal::tail_beyond(std::size_t k) const {
  double s = truncation_tail;
  for (std::size_t n = k + 1; n < entries.size(); ++n) s += entries[n];
  return s;
}

DensityDiagonal density_diagonal(const StateSpec& state, double tail_bound) {
  state.validate();
  if (!(tail_bound > 0.0 && tail_bound <= 1e-6)) {
    throw DomainError("tail_bound must lie in (0, 1e-6]");
  }
  DensityDiagonal out;
  switch (state.kind) {
    case StateKind::coherent: {
      const double mu = std::norm(state.beta);
      if (mu == 0.0) {
        out.entries = {1.0};
        break;
      }
      auto poisson = [mu](std::size_t n) {
        return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
      };
      for (std::size_t n = 0;; ++n) {
        out.entries.push_back(poisson(n));
        // Geometric bound on the Poisson tail past the mode.
        if (n + 2 > mu) {
          const double tail = poisson(n + 1) / (1.0 - mu / (n + 2.0));
          if (tail <= tail_bound) {
            out.truncation_tail = tail;
            break;
          }
        }
      }
      break;
    }
    case StateKind::thermal: {
      const double q = state.nbar / (state.nbar + 1.0);
      double qn = 1.0;
      for (;;) {
        out.entries.push_back((1.0 - q) * qn);
        qn *= q;
        if (qn <= tail_bound) {
          out.truncation_tail = qn;
          break;
        }
      }
      break;
    }
    case StateKind::squeezed_vacuum: {
      const double t2 = std::tanh(state.r) * std::tanh(state.r);
      double rho = 1.0 / std::cosh(state.r);
      if (t2 == 0.0) {
        out.entries = {1.0};
        break;
      }
      const double cosh2 = std::cosh(state.r) * std::cosh(state.r);
      for (std::size_t k = 0;; ++k) {
        out.entries.push_back(rho);
        rho *= (2.0 * k + 1.0) / (2.0 * k + 2.0) * t2;
        // Ratio of successive even entries is below tanh^2 r.
        const double tail = rho * cosh2;
        if (tail <= tail_bound) {
          out.truncation_tail = tail;
          break;
        }
        out.entries.push_back(0.0);
      }
      break;
    }
    case StateKind::fock:
      out.entries.assign(state.n + 1, 0.0);
      out.entries[state.n] = 1.0;
      break;
    case StateKind::custom_diag:
      out.entries = state.diag;
      out.truncation_tail = std::max(0.0, 1.0 - out.sum());
      return out;
  }
  // The analytic tails are loose bounds. The true discarded mass is 1 - sum,
  // known to within rounding of the sum, so report that when it is tighter.
  const double slack = 4.0 * out.entries.size() * std::numeric_limits<double>::epsilon();
  out.truncation_tail = std::min(out.truncation_tail, std::max(0.0, 1.0 - out.sum()) + slack);
  return out;
}

double fourier_check(const StateSpec& state, RepKind kind, std::span<const std::complex<double>> grid,
                     const quadrature::QuadratureSpec& spec) {
  if (kind == RepKind::cf) throw DomainError("fourier_check compares W, Q or P against the CF");
  const auto reps = make_representations(state);
  const auto& rep = reps.get(kind);
  rep.require_available();

  double worst = 0.0;
  for (const auto& lam_d : grid) {
    const Point lam(lam_d.real(), lam_d.imag());
    const R l2 = norm2(lam);
    Value integral;
    if (rep.is_delta()) {
      const Point at(rep.delta_at->real(), rep.delta_at->imag());
      integral = std::exp(lam * std::conj(at) - std::conj(lam) * at);
    } else {
      // Plain d^2 alpha = pi * (d^2 alpha / pi).
      const auto res = quadrature::integrate_plane(
          [&](Point a) { return std::exp(lam * std::conj(a) - std::conj(lam) * a) * rep(a); },
          rep.decay, spec);
      integral = kPi * Value(res.value.real(), res.value.imag());
    }
    R factor = 1.0L;
    if (kind == RepKind::q) factor = std::exp(l2 / 2.0L);
    if (kind == RepKind::p) factor = std::exp(-l2 / 2.0L);
    const Value rhs = factor * integral;
    worst = std::max(worst, static_cast<double>(std::abs(rhs - reps.cf(lam))));
  }
  return worst;
}

std::vector<double> read_diag_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open diagonal file '" + path.string() + "'");
  std::vector<double> diag;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r,");
    const std::string_view token(line.data() + first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" +
                       std::string(token) + "'");
    }
    diag.push_back(v);
  }
  try {
    StateSpec::custom(diag).validate();
  } catch (const DomainError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  return diag;
}

}  // namespace pcount::states
