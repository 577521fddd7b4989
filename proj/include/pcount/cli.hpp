#pragma once

// Command-line front end: parsing into a RunConfig and executing it with JSON
// or CSV output.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcount/photocount.hpp"
#include "pcount/quadrature.hpp"
#include "pcount/states.hpp"

namespace pcount::cli {

enum class Subcommand { compute, compare, sweep, verify };
enum class Format { json, csv };

std::string to_string(Subcommand sub);

struct RunConfig {
  Subcommand subcommand = Subcommand::compute;
  std::string state_text;  // echoed verbatim into the output
  states::StateSpec state;
  std::vector<double> zetas{1.0};
  unsigned m_max = 30;
  std::vector<Route> routes{Route::fock};
  quadrature::QuadratureSpec quad;
  double tail_bound = states::kDefaultTailBound;
  double tolerance = 1e-7;
  Format format = Format::json;
  std::optional<std::filesystem::path> out;
};

/// Raised by parse_args for --help; carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `coherent:re=<f>,im=<f>` | `squeezed:r=<f>` | `thermal:nbar=<f>` | `fock:n=<int>` | `diag:@<path>`.
/// Throws UsageError naming the offending token.
states::StateSpec parse_state(std::string_view text);

/// `start:stop:count` (inclusive, evenly spaced) or a comma list.
std::vector<double> parse_zeta_grid(std::string_view text);

/// Arguments exclude the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

/// Exit status: 0 success, 1 tolerance or numerical/domain failure, 2 usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// parse_args + run with the process streams.
int main_entry(int argc, char** argv);

}  // namespace pcount::cli
