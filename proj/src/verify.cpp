#include "pcount/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "pcount/specfun.hpp"
#include "pcount/states.hpp"

namespace pcount::verify {

namespace {

using cd = std::complex<double>;
using quadrature::Point;
using quadrature::Value;

IdentityResult start(std::string name, std::string description, double tolerance, bool relative) {
  IdentityResult r;
  r.name = std::move(name);
  r.description = std::move(description);
  r.tolerance = tolerance;
  r.relative = relative;
  return r;
}

void record(IdentityResult& r, double error) {
  ++r.cases;
  r.max_error = std::max(r.max_error, error);
}

IdentityResult finish(IdentityResult r) {
  r.passed = r.cases > 0 && r.max_error <= r.tolerance;
  return r;
}

double scaled_error(cd got, cd want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

long double laguerre_at(unsigned m, long double x) {
  long double prev = 1.0L, cur = 1.0L - x;
  if (m == 0) return prev;
  for (unsigned k = 1; k < m; ++k) {
    const long double next = ((2.0L * k + 1.0L - x) * cur - k * prev) / (k + 1.0L);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

IdentityResult laguerre_hermite_link() {
  auto r = start("laguerre-hermite", "m! (-1)^m L_m(xy) = H_{m,m}(x,y)", 1e-10, true);
  const cd pts[] = {{0.3, -0.2}, {1.5, 0.0}, {-0.7, 1.1}, {1.2, 0.9}};
  for (const cd x : pts) {
    for (const cd y : pts) {
      const auto l = specfun::laguerre_seq<cd>(12, x * y);
      double fact = 1.0;
      for (unsigned m = 0; m <= 12; ++m) {
        if (m > 0) fact *= m;
        const cd lhs = l[m] * fact * (m % 2 ? -1.0 : 1.0);
        record(r, scaled_error(lhs, specfun::hermite2(m, m, x, y)));
      }
    }
  }
  return finish(r);
}

IdentityResult hermite_shift_sum() {
  // Near |alpha| = 1 the partial sums swell far above the limit before they
  // settle, and rounding in that swell caps the reachable accuracy, so the
  // suite stays at |alpha| <= 0.6.
  auto r = start("hermite-shift-sum", "sum_l alpha^l/l! H_{m+l,n+l}(x,y) against its closed form", 1e-9,
                 true);
  const cd pts[] = {{0.4, 0.3}, {-0.5, 0.2}, {0.3, -0.6}};
  for (double alpha : {-0.6, -0.3, 0.3, 0.6}) {
    for (unsigned m = 0; m <= 4; ++m) {
      for (unsigned n = 0; n <= 4; ++n) {
        for (const cd x : pts) {
          for (const cd y : pts) {
            const cd closed = specfun::hermite_shift_closed(m, n, alpha, x, y);
            cd prev = specfun::hermite_shift_sum(m, n, alpha, x, y, 80);
            for (unsigned terms = 160; terms <= 1280; terms *= 2) {
              const cd next = specfun::hermite_shift_sum(m, n, alpha, x, y, terms);
              const bool settled = std::abs(next - prev) <= 1e-12 * std::max(1.0, std::abs(next));
              prev = next;
              if (settled) break;
            }
            record(r, std::abs(prev - closed) / std::abs(closed));
          }
        }
      }
    }
  }
  return finish(r);
}

IdentityResult laguerre_gauss_integral(const quadrature::QuadratureSpec& spec) {
  auto r = start("laguerre-gauss-integral",
                 "int d2l/pi exp(-B|l|^2 + C l - C* l*) L_m(A|l|^2) against its closed form", 1e-9, false);
  const cd cs[] = {{0.0, 0.0}, {0.3, 0.2}, {0.0, -0.5}, {0.6, 0.0}};
  for (unsigned m = 0; m <= 8; ++m) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double b : {1.0, 2.5}) {
        for (const cd c : cs) {
          const Point cl(c.real(), c.imag());
          const long double al = a, bl = b;
          const auto q = quadrature::integrate_plane(
              [=](Point l) -> Value {
                return std::exp(-bl * std::norm(l) + cl * l - std::conj(cl) * std::conj(l)) *
                       laguerre_at(m, al * std::norm(l));
              },
              quadrature::GaussianEnvelope(b), spec);
          record(r, std::abs(q.value - cd(quadrature::laguerre_gauss_closed(m, a, b, c))));
        }
      }
    }
  }
  return finish(r);
}

IdentityResult legendre_sum_form() {
  auto r = start("legendre-sum-form", "P_m(x) as x^m times a sum in (1 - 1/x^2)", 1e-12, true);
  for (double x : {-2.5, -1.0, -0.6, 0.2, 0.5, 0.9, 1.0, 1.7, 3.0}) {
    const auto p = specfun::legendre_seq(20, x);
    for (unsigned m = 0; m <= 20; ++m) {
      record(r, std::fabs(specfun::legendre_sum_form(m, x) - p[m]) / std::max(1.0, std::fabs(p[m])));
    }
  }
  return finish(r);
}

IdentityResult legendre_gauss_integral(const quadrature::QuadratureSpec& spec) {
  auto r = start("legendre-gauss-integral",
                 "int d2l/pi exp(-B|l|^2 + C(l^2 + l*^2)) L_m(A|l|^2) against its Legendre closed form", 1e-9,
                 false);
  for (unsigned m = 0; m <= 8; ++m) {
    for (double a : {0.5, 1.0}) {
      for (double b : {1.0, 2.0}) {
        for (double c : {-0.3, 0.0, 0.2}) {
          const long double al = a, bl = b, clv = c;
          const auto q = quadrature::integrate_plane(
              [=](Point l) -> Value {
                return std::exp(-bl * std::norm(l) + clv * (l * l + std::conj(l) * std::conj(l))) *
                       laguerre_at(m, al * std::norm(l));
              },
              quadrature::GaussianEnvelope::axes(b - 2.0 * c, b + 2.0 * c), spec);
          record(r, std::abs(q.value - cd(quadrature::legendre_gauss_closed(m, a, b, c))));
        }
      }
    }
  }
  return finish(r);
}

IdentityResult fourier_relations(const quadrature::QuadratureSpec& spec) {
  auto r = start("fourier-relations", "W, Q and P transform back to the characteristic function", 1e-8, false);
  using states::StateSpec;
  const StateSpec catalog[] = {StateSpec::coherent({0.0, 0.0}), StateSpec::coherent({0.6, -0.3}),
                               StateSpec::squeezed_vacuum(0.4), StateSpec::squeezed_vacuum(1.0),
                               StateSpec::thermal(0.0),         StateSpec::thermal(1.5),
                               StateSpec::fock(1),              StateSpec::fock(3),
                               StateSpec::custom({0.5, 0.3, 0.2})};
  std::vector<cd> grid;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) grid.emplace_back(-1.4 + 0.7 * i, -1.4 + 0.7 * j);
  for (const auto& s : catalog) {
    const auto reps = states::make_representations(s);
    for (auto kind : {states::RepKind::wigner, states::RepKind::q, states::RepKind::p}) {
      if (!reps.get(kind).available) continue;
      record(r, states::fourier_check(s, kind, grid, spec));
    }
  }
  return finish(r);
}

std::vector<IdentityResult> run_all(const quadrature::QuadratureSpec& spec) {
  return {laguerre_hermite_link(),        hermite_shift_sum(),   laguerre_gauss_integral(spec),
          legendre_sum_form(),            legendre_gauss_integral(spec), fourier_relations(spec)};
}

}  // namespace pcount::verify
