#include "pcount/photocount.hpp"

#include <cfloat>
#include <cmath>
#include <functional>
#include <numbers>

#include "pcount/specfun.hpp"

namespace pcount {
namespace {

using quadrature::Point;
using quadrature::Value;
using R = long double;

constexpr R kPi = std::numbers::pi_v<R>;
constexpr R kRoundingFloor = 16.0L * DBL_EPSILON;

void finish(PhotocountDistribution& d) {
  d.residual_negative = 0.0;
  for (const double p : d.probabilities) d.residual_negative = std::min(d.residual_negative, p);
}

// Laguerre-type kernel of one route: the integrand for count m is
//   exp(-rate u) * kernel_m(u) * rep(point),  u = |point|^2,
// and p(m) = prefactor(m) * (integral over d^2/pi).
struct RouteKernel {
  R rate = 0.0L;
  R laguerre_scale = 1.0L;  // kernel_m = L_m(laguerre_scale u)
  bool monomial = false;    // kernel_m = (zeta u)^m / m! instead
  R zeta = 0.0L;
  std::function<R(unsigned)> prefactor;
};

PhotocountDistribution integrate_route(const states::PhaseSpaceRep& rep, const DetectionSpec& det,
                                       const quadrature::QuadratureSpec& spec, Route route,
                                       const RouteKernel& kernel) {
  specfun::check_degree(det.m_max, specfun::kDefaultMaxDegree, "photocount route m_max");
  const auto env = rep.envelope_for(det.zeta);
  const std::size_t count = det.m_max + 1;

  auto integrand = [&](Point pt, std::span<Value> out) {
    const R u = pt.real() * pt.real() + pt.imag() * pt.imag();
    const Value base = std::exp(-kernel.rate * u) * rep(pt);
    // Kernel values are written into `out` as reals first, then scaled.
    if (kernel.monomial) {
      R t = 1.0L;
      for (std::size_t m = 0; m < count; ++m) {
        out[m] = base * t;
        t *= kernel.zeta * u / static_cast<R>(m + 1);
      }
    } else {
      const R x = kernel.laguerre_scale * u;
      R prev = 1.0L, cur = 1.0L - x;
      out[0] = base;
      if (count > 1) out[1] = base * cur;
      for (std::size_t k = 1; k + 1 < count; ++k) {
        const R next = ((2.0L * k + 1.0L - x) * cur - static_cast<R>(k) * prev) / (k + 1.0L);
        prev = cur;
        cur = next;
        out[k + 1] = base * cur;
      }
    }
  };

  const auto q = quadrature::integrate_plane_many(integrand, count, env, spec);

  PhotocountDistribution d;
  d.zeta = det.zeta;
  d.route = route;
  d.probabilities.resize(count);
  R worst = 0.0L;
  for (std::size_t m = 0; m < count; ++m) {
    const R pref = kernel.prefactor(static_cast<unsigned>(m));
    const Value p = pref * q.value[m];
    const R err = std::fabs(pref) * (std::abs(q.value[m] - q.refined[m]) + kRoundingFloor * q.magnitude[m]) +
                  std::fabs(p.imag());
    d.probabilities[m] = static_cast<double>(p.real());
    worst = std::max(worst, err);
  }
  d.error_estimate = static_cast<double>(worst);
  finish(d);
  return d;
}

void require_kind(const states::PhaseSpaceRep& rep, states::RepKind kind, const char* who) {
  if (rep.kind != kind) {
    throw DomainError(std::string(who) + ": expected a " + states::to_string(kind) +
                      " representation, got " + states::to_string(rep.kind));
  }
  rep.require_available();
}

PhotocountDistribution delta_route(const DetectionSpec& det, Route route) {
  PhotocountDistribution d;
  d.zeta = det.zeta;
  d.route = route;
  d.probabilities.assign(det.m_max + 1, 0.0);
  d.probabilities[0] = 1.0;
  return d;
}

}  // namespace

void DetectionSpec::validate() const {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw DomainError("zeta must lie in [0, 1]");
}

std::string to_string(Route route) {
  switch (route) {
    case Route::fock: return "fock";
    case Route::cf: return "cf";
    case Route::wigner: return "wigner";
    case Route::q: return "q";
    case Route::p: return "p";
    case Route::closed: return "closed";
  }
  return "?";
}

Route route_from_string(const std::string& label) {
  for (Route r : {Route::fock, Route::cf, Route::wigner, Route::q, Route::p, Route::closed}) {
    if (to_string(r) == label) return r;
  }
  throw UsageError("unknown route '" + label + "'");
}

double PhotocountDistribution::total() const {
  double s = 0.0;
  for (const double p : probabilities) s += p;
  return s;
}

double PhotocountDistribution::mean() const {
  double s = 0.0;
  for (std::size_t m = 0; m < probabilities.size(); ++m) s += static_cast<double>(m) * probabilities[m];
  return s;
}

PhotocountDistribution pcount_fock(const states::DensityDiagonal& diag, const DetectionSpec& det) {
  det.validate();
  if (det.zeta == 0.0) return delta_route(det, Route::fock);

  PhotocountDistribution d;
  d.zeta = det.zeta;
  d.route = Route::fock;
  d.error_estimate = diag.truncation_tail;
  d.probabilities.assign(det.m_max + 1, 0.0);
  const auto& rho = diag.entries;
  const double keep = 1.0 - det.zeta;
  for (std::size_t m = 0; m <= det.m_max && m < rho.size(); ++m) {
    // b = binom(n, m) zeta^m (1-zeta)^(n-m), stepped in n.
    double b = std::pow(det.zeta, static_cast<double>(m));
    double sum = 0.0;
    for (std::size_t n = m; n < rho.size(); ++n) {
      sum += rho[n] * b;
      b *= static_cast<double>(n + 1) / static_cast<double>(n + 1 - m) * keep;
    }
    d.probabilities[m] = sum;
  }
  finish(d);
  return d;
}

PhotocountDistribution pcount_cf(const states::PhaseSpaceRep& cf, const DetectionSpec& det,
                                 const quadrature::QuadratureSpec& spec) {
  require_kind(cf, states::RepKind::cf, "pcount_cf");
  det.validate();
  if (det.zeta == 0.0) throw RouteDomainError("CF route undefined at zeta = 0 (use the fock route)");
  const R z = det.zeta;
  RouteKernel k;
  k.rate = (2.0L - z) / (2.0L * z);
  k.laguerre_scale = 1.0L / z;
  k.prefactor = [z](unsigned) { return 1.0L / z; };
  return integrate_route(cf, det, spec, Route::cf, k);
}

PhotocountDistribution pcount_wigner(const states::PhaseSpaceRep& w, const DetectionSpec& det,
                                     const quadrature::QuadratureSpec& spec) {
  require_kind(w, states::RepKind::wigner, "pcount_wigner");
  det.validate();
  if (det.zeta == 0.0) throw RouteDomainError("Wigner route undefined at zeta = 0 (use the fock route)");
  const R z = det.zeta;
  RouteKernel k;
  k.rate = 2.0L * z / (2.0L - z);
  k.laguerre_scale = 4.0L / (2.0L - z);
  k.prefactor = [z](unsigned m) {
    return kPi * 2.0L * std::pow(-z, static_cast<R>(m)) / std::pow(2.0L - z, static_cast<R>(m + 1));
  };
  return integrate_route(w, det, spec, Route::wigner, k);
}

PhotocountDistribution pcount_q(const states::PhaseSpaceRep& q, const DetectionSpec& det,
                                const quadrature::QuadratureSpec& spec) {
  require_kind(q, states::RepKind::q, "pcount_q");
  det.validate();
  if (det.zeta == 0.0 || det.zeta == 1.0) {
    throw RouteDomainError("Q route needs 0 < zeta < 1 (use the fock or cf route)");
  }
  const R z = det.zeta;
  RouteKernel k;
  k.rate = z / (1.0L - z);
  k.laguerre_scale = 1.0L / (1.0L - z);
  k.prefactor = [z](unsigned m) {
    return kPi * std::pow(-z, static_cast<R>(m)) / std::pow(1.0L - z, static_cast<R>(m + 1));
  };
  return integrate_route(q, det, spec, Route::q, k);
}

PhotocountDistribution pcount_p(const states::PhaseSpaceRep& p_rep, const DetectionSpec& det,
                                const quadrature::QuadratureSpec& spec) {
  require_kind(p_rep, states::RepKind::p, "pcount_p");
  det.validate();
  if (p_rep.is_delta()) {
    auto d = closed_coherent(*p_rep.delta_at, det);
    d.route = Route::p;
    return d;
  }
  RouteKernel k;
  k.rate = det.zeta;
  k.monomial = true;
  k.zeta = det.zeta;
  k.prefactor = [](unsigned) { return kPi; };
  return integrate_route(p_rep, det, spec, Route::p, k);
}

PhotocountDistribution closed_coherent(std::complex<double> beta, const DetectionSpec& det) {
  det.validate();
  const double mu = det.zeta * std::norm(beta);
  PhotocountDistribution d;
  d.zeta = det.zeta;
  d.route = Route::closed;
  d.probabilities.resize(det.m_max + 1);
  double p = std::exp(-mu);
  for (unsigned m = 0; m <= det.m_max; ++m) {
    d.probabilities[m] = p;
    p *= mu / (m + 1.0);
  }
  finish(d);
  return d;
}

PhotocountDistribution closed_squeezed(double r, const DetectionSpec& det) {
  det.validate();
  if (!(r >= 0.0)) throw DomainError("closed_squeezed: r must be >= 0");
  if (det.zeta == 0.0) throw RouteDomainError("squeezed closed form undefined at zeta = 0");
  const double z = det.zeta;
  const double sh = std::sinh(r), ch = std::cosh(r);
  const double y = (1.0 - z) * std::tanh(r);
  const double e = 1.0 + (2.0 - z) * z * sh * sh;
  const double ratio = z * sh * ch / e;
  PhotocountDistribution d;
  d.zeta = z;
  d.route = Route::closed;
  d.probabilities.resize(det.m_max + 1);
  double scale = 1.0 / std::sqrt(e);
  for (unsigned m = 0; m <= det.m_max; ++m) {
    d.probabilities[m] = scale * specfun::legendre_kernel(m, y);
    scale *= ratio;
  }
  finish(d);
  return d;
}

std::complex<double> squeezed_legendre_principal(unsigned m, double r, double zeta) {
  using C = std::complex<double>;
  const double a = 1.0 / zeta;
  const double b = 1.0 / zeta + std::sinh(r) * std::sinh(r);
  const double c = std::sinh(2.0 * r) / 4.0;
  const double y = (1.0 - zeta) * std::tanh(r);
  const C x = y / std::sqrt(C(y * y - 1.0));
  std::vector<C> p(m + 1);
  specfun::legendre_fill(std::span<C>(p), x);
  return std::pow(C((a - b) * (a - b) - 4.0 * c * c), m / 2.0) /
         std::pow(C(b * b - 4.0 * c * c), (m + 1.0) / 2.0) * p[m] / zeta;
}

std::complex<double> squeezed_compact_principal(unsigned m, double r, double zeta) {
  using C = std::complex<double>;
  const double t = std::tanh(r);
  const double y = (1.0 - zeta) * t;
  const C x = y / std::sqrt(C(y * y - 1.0));
  std::vector<C> p(m + 1);
  specfun::legendre_fill(std::span<C>(p), x);
  return std::pow(zeta, m) / std::cosh(r) * std::pow(t, m) * p[m] /
         (std::pow(C(y * y - 1.0), m / 2.0) * std::sqrt(1.0 - y * y));
}

PhotocountDistribution compute_route(const states::StateSpec& state, Route route,
                                     const DetectionSpec& det, const quadrature::QuadratureSpec& spec,
                                     double tail_bound) {
  using states::RepKind;
  using states::StateKind;
  switch (route) {
    case Route::fock: return pcount_fock(states::density_diagonal(state, tail_bound), det);
    case Route::closed:
      state.validate();
      if (state.kind == StateKind::coherent) return closed_coherent(state.beta, det);
      if (state.kind == StateKind::squeezed_vacuum) return closed_squeezed(state.r, det);
      throw RepresentationUnavailable("no closed form for this state (coherent and squeezed only)");
    default: break;
  }
  const auto reps = states::make_representations(state);
  switch (route) {
    case Route::cf: return pcount_cf(reps.cf, det, spec);
    case Route::wigner: return pcount_wigner(reps.wigner, det, spec);
    case Route::q: return pcount_q(reps.q, det, spec);
    case Route::p: return pcount_p(reps.p, det, spec);
    default: break;
  }
  throw DomainError("unhandled route");
}

}  // namespace pcount
