#include "pcount/quadrature.hpp"

#include <cfloat>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "pcount/specfun.hpp"

namespace pcount::quadrature {
namespace {

// Rounding floor added to refinement differences, relative to sum |w f|.
constexpr long double kRoundingFloor = 16.0L * DBL_EPSILON;

GaussLaguerreRule compute_gauss_laguerre(unsigned n) {
  using R = long double;
  GaussLaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const R eps = 4.0L * LDBL_EPSILON;
  R z = 0.0L;
  for (unsigned i = 0; i < n; ++i) {
    // Initial guesses after the classic gaulag recipe; Newton polishes them.
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const R ai = i - 1;
      z += ((1.0L + 2.55L * ai) / (1.9L * ai)) * (z - rule.nodes[i - 2]);
    }
    R p1 = 0.0L, p2 = 0.0L, pp = 0.0L;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      p1 = 1.0L;
      p2 = 0.0L;
      for (unsigned j = 1; j <= n; ++j) {
        const R p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
      }
      pp = n * (p1 - p2) / z;
      const R dz = p1 / pp;
      z -= dz;
      // Newton stalls at the rounding level of the recurrence, so accept
      // once the step is tiny and then take one polishing step.
      if (std::fabs(dz) <= eps * std::fabs(z)) {
        converged = true;
        break;
      }
      if (std::fabs(dz) <= 1e-3L * std::sqrt(eps) * std::fabs(z)) converged = true;
      if (converged && it > 0) break;
    }
    if (!converged || (i > 0 && !(z > rule.nodes[i - 1]))) {
      throw Error("gauss_laguerre: root finding failed for n = " + std::to_string(n));
    }
    // Re-evaluate at the polished root for the weight.
    p1 = 1.0L;
    p2 = 0.0L;
    for (unsigned j = 1; j <= n; ++j) {
      const R p3 = p2;
      p2 = p1;
      p1 = ((2.0L * j - 1.0L - z) * p2 - (j - 1.0L) * p3) / j;
    }
    pp = n * (p1 - p2) / z;
    rule.nodes[i] = z;
    rule.weights[i] = -1.0L / (pp * n * p2);
  }
  return rule;
}

}  // namespace

void GaussianEnvelope::validate() const {
  if (!(rate_re > 0.0) || !(rate_im > 0.0) || !std::isfinite(rate_re) ||
      !std::isfinite(rate_im)) {
    throw DivergentIntegral("integrand has no Gaussian decay (rates " + std::to_string(rate_re) +
                            ", " + std::to_string(rate_im) + ")");
  }
}

void QuadratureSpec::validate() const {
  if (radial_nodes < 8) throw DomainError("radial_nodes must be >= 8");
  if (angular_nodes == 0 || angular_nodes % 2 != 0) {
    throw DomainError("angular_nodes must be a positive even integer");
  }
  if (refine_factor == 0) throw DomainError("refine_factor must be positive");
}

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec r = *this;
  r.radial_nodes *= refine_factor;
  r.angular_nodes *= refine_factor;
  return r;
}

const GaussLaguerreRule& gauss_laguerre(unsigned n) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<const GaussLaguerreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const GaussLaguerreRule>(compute_gauss_laguerre(n));
  return *slot;
}

std::vector<PlaneNode> plane_rule(const GaussianEnvelope& env, const QuadratureSpec& spec) {
  env.validate();
  spec.validate();
  const auto& gl = gauss_laguerre(spec.radial_nodes);
  const long double sx = 1.0L / std::sqrt(static_cast<long double>(env.rate_re));
  const long double sy = 1.0L / std::sqrt(static_cast<long double>(env.rate_im));
  const long double jacobian = sx * sy / spec.angular_nodes;

  std::vector<long double> cosines(spec.angular_nodes), sines(spec.angular_nodes);
  for (unsigned j = 0; j < spec.angular_nodes; ++j) {
    const long double phi = 2.0L * std::numbers::pi_v<long double> * j / spec.angular_nodes;
    cosines[j] = std::cos(phi);
    sines[j] = std::sin(phi);
  }

  std::vector<PlaneNode> nodes;
  nodes.reserve(static_cast<std::size_t>(spec.radial_nodes) * spec.angular_nodes);
  for (unsigned i = 0; i < spec.radial_nodes; ++i) {
    const long double u = gl.nodes[i];
    const long double rho = std::sqrt(u);
    const long double w = gl.weights[i] * std::exp(u) * jacobian;
    for (unsigned j = 0; j < spec.angular_nodes; ++j) {
      nodes.push_back({Point(rho * cosines[j] * sx, rho * sines[j] * sy), w});
    }
  }
  return nodes;
}

VectorQuadrature integrate_plane_many(const VectorIntegrand& f, std::size_t count,
                                      const GaussianEnvelope& env, const QuadratureSpec& spec) {
  VectorQuadrature out;
  out.value.assign(count, Value(0));
  out.refined.assign(count, Value(0));
  out.magnitude.assign(count, 0.0L);
  std::vector<Value> buf(count);

  auto accumulate = [&](const QuadratureSpec& s, std::vector<Value>& acc, bool track) {
    for (const auto& node : plane_rule(env, s)) {
      f(node.point, std::span<Value>(buf));
      for (std::size_t k = 0; k < count; ++k) {
        const Value v = buf[k];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          throw IntegrandDomainError("non-finite integrand value at node (" +
                                         std::to_string(static_cast<double>(node.point.real())) +
                                         ", " +
                                         std::to_string(static_cast<double>(node.point.imag())) +
                                         ")",
                                     node.point);
        }
        acc[k] += node.weight * v;
        if (track) out.magnitude[k] += node.weight * std::abs(v);
      }
    }
  };
  accumulate(spec, out.value, true);
  accumulate(spec.refined(), out.refined, false);
  return out;
}

QuadratureResult integrate_plane(const Integrand& f, const GaussianEnvelope& env,
                                 const QuadratureSpec& spec) {
  const auto q = integrate_plane_many([&](Point p, std::span<Value> out) { out[0] = f(p); }, 1,
                                      env, spec);
  const long double err = std::abs(q.value[0] - q.refined[0]) + kRoundingFloor * q.magnitude[0];
  return {std::complex<double>(static_cast<double>(q.value[0].real()),
                               static_cast<double>(q.value[0].imag())),
          static_cast<double>(err)};
}

double laguerre_gauss_closed(unsigned m, double A, double B, std::complex<double> C) {
  if (!(B > 0.0)) throw DivergentIntegral("laguerre_gauss_closed: requires B > 0");
  const double c2 = std::norm(C);
  const double t = A * c2 / B;
  // (B-A)^m L_m(t/(A-B)) = sum_k binom(m,k) t^k (B-A)^(m-k) / k!
  double sum = 0.0;
  for (unsigned k = 0; k <= m; ++k) {
    const double log_c = specfun::log_factorial(m) - specfun::log_factorial(k) -
                         specfun::log_factorial(m - k) - specfun::log_factorial(k);
    sum += std::exp(log_c) * std::pow(t, static_cast<int>(k)) *
           std::pow(B - A, static_cast<int>(m - k));
  }
  return sum * std::exp(-c2 / B) / std::pow(B, static_cast<int>(m) + 1);
}

double legendre_gauss_closed(unsigned m, double A, double B, double C) {
  const double D = B * B - 4.0 * C * C;
  if (!(B > 0.0) || !(D > 0.0)) {
    throw DivergentIntegral("legendre_gauss_closed: requires B > 2|C|");
  }
  if (C == 0.0) return laguerre_gauss_closed(m, A, B, 0.0);
  if (A == 0.0) return 1.0 / std::sqrt(D);  // L_m(0) = 1
  const double two_ac = 2.0 * A * C;
  const double y = (D - A * B) / two_ac;
  return std::pow(two_ac, static_cast<int>(m)) * specfun::legendre_kernel(m, y) /
         std::pow(D, m + 0.5);
}

}  // namespace pcount::quadrature
