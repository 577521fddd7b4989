#pragma once

// Identity checks that tie each closed form to the series or integral it
// summarizes. Used by the `verify` subcommand.

#include <string>
#include <vector>

#include "pcount/quadrature.hpp"

namespace pcount::verify {

struct IdentityResult {
  std::string name;
  std::string description;
  unsigned cases = 0;
  double max_error = 0.0;  // in the metric named by `relative`
  double tolerance = 0.0;
  bool relative = false;
  bool passed = false;
};

IdentityResult laguerre_hermite_link();
/// Terms are doubled from 80 until the partial sum settles, up to 1280.
IdentityResult hermite_shift_sum();
IdentityResult laguerre_gauss_integral(const quadrature::QuadratureSpec& spec = {});
IdentityResult legendre_sum_form();
IdentityResult legendre_gauss_integral(const quadrature::QuadratureSpec& spec = {});
IdentityResult fourier_relations(const quadrature::QuadratureSpec& spec = {});

std::vector<IdentityResult> run_all(const quadrature::QuadratureSpec& spec = {});

}  // namespace pcount::verify
