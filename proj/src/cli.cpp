#include "pcount/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcount/error.hpp"
#include "pcount/verify.hpp"

namespace pcount::cli {

namespace {

using json = nlohmann::ordered_json;

double parse_number(std::string_view token, std::string_view what) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("invalid number for " + std::string(what) + ": '" + std::string(token) + "'");
  }
  return v;
}

unsigned parse_count(std::string_view token, std::string_view what) {
  unsigned v = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("invalid integer for " + std::string(what) + ": '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// key=value pairs restricted to `allowed`; every key at most once.
std::map<std::string, std::string_view> parse_keys(std::string_view kind, std::string_view body,
                                                   std::initializer_list<std::string_view> allowed) {
  std::map<std::string, std::string_view> keys;
  if (body.empty()) return keys;
  for (auto item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("state " + std::string(kind) + ": expected key=value, got '" + std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("state " + std::string(kind) + ": unknown key '" + key + "'");
    }
    if (!keys.emplace(key, item.substr(eq + 1)).second) {
      throw UsageError("state " + std::string(kind) + ": key '" + key + "' given twice");
    }
  }
  return keys;
}

std::string_view require(const std::map<std::string, std::string_view>& keys, const std::string& key,
                         std::string_view kind) {
  const auto it = keys.find(key);
  if (it == keys.end()) throw UsageError("state " + std::string(kind) + ": missing key '" + key + "'");
  return it->second;
}

std::vector<Route> parse_routes(std::string_view text) {
  std::vector<Route> routes;
  for (auto token : split(text, ',')) {
    const Route r = route_from_string(std::string(token));
    if (std::find(routes.begin(), routes.end(), r) != routes.end()) {
      throw UsageError("route '" + std::string(token) + "' listed twice");
    }
    routes.push_back(r);
  }
  return routes;
}

json distribution_json(const RunConfig& config, const PhotocountDistribution& d) {
  json j;
  j["state"] = config.state_text;
  j["zeta"] = d.zeta;
  j["route"] = to_string(d.route);
  j["m_max"] = d.m_max();
  j["probabilities"] = d.probabilities;
  j["total"] = d.total();
  j["error_estimate"] = d.error_estimate;
  j["residual_negative"] = d.residual_negative;
  return j;
}

void csv_rows(std::ostream& os, const PhotocountDistribution& d) {
  const std::string route = to_string(d.route);
  const std::string zeta = format_double(d.zeta);
  for (std::size_t m = 0; m < d.probabilities.size(); ++m) {
    os << m << ',' << format_double(d.probabilities[m]) << ',' << route << ',' << zeta << '\n';
  }
}

constexpr std::string_view kCsvHeader = "m,p,route,zeta\n";

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const RouteDomainError*>(&e)) return "route-domain";
  if (dynamic_cast<const RepresentationUnavailable*>(&e)) return "representation-unavailable";
  if (dynamic_cast<const DivergentIntegral*>(&e)) return "divergent-integral";
  if (dynamic_cast<const IntegrandDomainError*>(&e)) return "integrand-domain";
  if (dynamic_cast<const DegreeOverflow*>(&e)) return "degree-overflow";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  return "error";
}

void report(std::ostream& err, const std::string& kind, const std::string& message) {
  json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

int emit(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err) {
  if (!config.out) {
    out << text;
    return 0;
  }
  std::ofstream file(*config.out, std::ios::binary);
  if (!file || !(file << text)) {
    report(err, "usage", "cannot write '" + config.out->string() + "'");
    return 2;
  }
  return 0;
}

DetectionSpec detection(const RunConfig& config, double zeta) {
  DetectionSpec det;
  det.zeta = zeta;
  det.m_max = config.m_max;
  return det;
}

PhotocountDistribution compute_one(const RunConfig& config, Route route, double zeta) {
  return compute_route(config.state, route, detection(config, zeta), config.quad, config.tail_bound);
}

int run_compute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto d = compute_one(config, config.routes.front(), config.zetas.front());
  std::ostringstream os;
  if (config.format == Format::json) {
    os << distribution_json(config, d).dump(2) << '\n';
  } else {
    os << kCsvHeader;
    csv_rows(os, d);
  }
  return emit(config, os.str(), out, err);
}

int run_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<PhotocountDistribution> ds;
  for (Route r : config.routes) ds.push_back(compute_one(config, r, config.zetas.front()));
  double max_dev = 0.0;
  for (std::size_t a = 0; a < ds.size(); ++a) {
    for (std::size_t b = a + 1; b < ds.size(); ++b) {
      for (std::size_t m = 0; m < ds[a].probabilities.size(); ++m) {
        max_dev = std::max(max_dev, std::fabs(ds[a].probabilities[m] - ds[b].probabilities[m]));
      }
    }
  }
  const bool passed = max_dev <= config.tolerance;
  std::ostringstream os;
  if (config.format == Format::json) {
    json j;
    j["state"] = config.state_text;
    j["zeta"] = config.zetas.front();
    j["m_max"] = config.m_max;
    j["tolerance"] = config.tolerance;
    j["distributions"] = json::array();
    for (const auto& d : ds) j["distributions"].push_back(distribution_json(config, d));
    j["max_deviation"] = max_dev;
    j["passed"] = passed;
    os << j.dump(2) << '\n';
  } else {
    os << kCsvHeader;
    for (const auto& d : ds) csv_rows(os, d);
  }
  err << "max deviation " << format_double(max_dev) << " (tolerance " << format_double(config.tolerance)
      << "): " << (passed ? "pass" : "FAIL") << '\n';
  const int status = emit(config, os.str(), out, err);
  return status != 0 ? status : (passed ? 0 : 1);
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream os;
  json j;
  j["state"] = config.state_text;
  j["m_max"] = config.m_max;
  j["distributions"] = json::array();
  if (config.format == Format::csv) os << kCsvHeader;
  for (double zeta : config.zetas) {
    for (Route r : config.routes) {
      const auto d = compute_one(config, r, zeta);
      if (config.format == Format::json) {
        j["distributions"].push_back(distribution_json(config, d));
      } else {
        csv_rows(os, d);
      }
    }
  }
  if (config.format == Format::json) os << j.dump(2) << '\n';
  return emit(config, os.str(), out, err);
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto results = verify::run_all(config.quad);
  bool all = true;
  std::ostringstream os;
  json j;
  j["identities"] = json::array();
  if (config.format == Format::csv) os << "name,cases,max_error,tolerance,metric,passed\n";
  for (const auto& r : results) {
    all = all && r.passed;
    if (config.format == Format::json) {
      json e;
      e["name"] = r.name;
      e["description"] = r.description;
      e["cases"] = r.cases;
      e["max_error"] = r.max_error;
      e["tolerance"] = r.tolerance;
      e["metric"] = r.relative ? "relative" : "absolute";
      e["passed"] = r.passed;
      j["identities"].push_back(e);
    } else {
      os << r.name << ',' << r.cases << ',' << format_double(r.max_error) << ',' << format_double(r.tolerance)
         << ',' << (r.relative ? "relative" : "absolute") << ',' << (r.passed ? "true" : "false") << '\n';
    }
    err << (r.passed ? "pass " : "FAIL ") << r.name << ": max error " << format_double(r.max_error) << " over "
        << r.cases << " cases (tolerance " << format_double(r.tolerance) << ")\n";
  }
  if (config.format == Format::json) {
    j["passed"] = all;
    os << j.dump(2) << '\n';
  }
  const int status = emit(config, os.str(), out, err);
  return status != 0 ? status : (all ? 0 : 1);
}

}  // namespace

std::string to_string(Subcommand sub) {
  switch (sub) {
    case Subcommand::compute: return "compute";
    case Subcommand::compare: return "compare";
    case Subcommand::sweep: return "sweep";
    case Subcommand::verify: return "verify";
  }
  return "?";
}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

states::StateSpec parse_state(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("state '" + std::string(text) + "': expected <kind>:<parameters>");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  states::StateSpec s;
  if (kind == "coherent") {
    const auto keys = parse_keys(kind, body, {"re", "im"});
    const double re = keys.count("re") ? parse_number(keys.at("re"), "coherent re") : 0.0;
    const double im = keys.count("im") ? parse_number(keys.at("im"), "coherent im") : 0.0;
    s = states::StateSpec::coherent({re, im});
  } else if (kind == "squeezed") {
    const auto keys = parse_keys(kind, body, {"r"});
    s = states::StateSpec::squeezed_vacuum(parse_number(require(keys, "r", kind), "squeezed r"));
  } else if (kind == "thermal") {
    const auto keys = parse_keys(kind, body, {"nbar"});
    s = states::StateSpec::thermal(parse_number(require(keys, "nbar", kind), "thermal nbar"));
  } else if (kind == "fock") {
    const auto keys = parse_keys(kind, body, {"n"});
    s = states::StateSpec::fock(parse_count(require(keys, "n", kind), "fock n"));
  } else if (kind == "diag") {
    if (body.size() < 2 || body.front() != '@') {
      throw UsageError("state diag: expected diag:@<path>, got '" + std::string(body) + "'");
    }
    s = states::StateSpec::custom(states::read_diag_csv(std::filesystem::path(std::string(body.substr(1)))));
  } else {
    throw UsageError("unknown state kind '" + std::string(kind) + "'");
  }
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw UsageError("state '" + std::string(text) + "': " + e.what());
  }
  return s;
}

std::vector<double> parse_zeta_grid(std::string_view text) {
  std::vector<double> grid;
  const auto range = split(text, ':');
  if (range.size() == 3) {
    const double a = parse_number(range[0], "zeta grid start");
    const double b = parse_number(range[1], "zeta grid stop");
    const unsigned n = parse_count(range[2], "zeta grid count");
    if (n == 0) throw UsageError("zeta grid count must be positive");
    if (n == 1 && a != b) throw UsageError("zeta grid with one point needs start == stop");
    for (unsigned i = 0; i < n; ++i) grid.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    if (n > 1) grid.back() = b;
  } else if (range.size() == 1) {
    for (auto token : split(text, ',')) grid.push_back(parse_number(token, "zeta grid"));
  } else {
    throw UsageError("zeta grid '" + std::string(text) + "': expected start:stop:count or a comma list");
  }
  for (double z : grid) {
    if (!(z >= 0.0 && z <= 1.0)) throw UsageError("zeta " + format_double(z) + " outside [0, 1]");
  }
  return grid;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Photocount distributions from phase-space representations", "pcount"};
  app.require_subcommand(1);

  struct Raw {
    std::string state;
    std::optional<std::string> zeta;
    std::optional<std::string> zeta_grid;
    unsigned m_max = 30;
    std::optional<std::string> routes;
    std::string format = "json";
    std::optional<std::string> out;
    unsigned radial = quadrature::QuadratureSpec{}.radial_nodes;
    unsigned angular = quadrature::QuadratureSpec{}.angular_nodes;
    unsigned refine = quadrature::QuadratureSpec{}.refine_factor;
    double tol = 1e-7;
    double tail_bound = states::kDefaultTailBound;
  } raw;

  auto add_common = [&raw](CLI::App* sub) {
    sub->add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", raw.out, "Write output to this file instead of standard output");
    sub->add_option("--radial-nodes", raw.radial, "Gauss-Laguerre nodes in |z|^2");
    sub->add_option("--angular-nodes", raw.angular, "Trapezoid nodes in the angle (even)");
    sub->add_option("--refine-factor", raw.refine, "Node multiplier of the refined rule for error estimates");
  };
  auto add_state = [&raw](CLI::App* sub) {
    sub->add_option("--state", raw.state, "coherent:re=,im= | squeezed:r= | thermal:nbar= | fock:n= | diag:@file")
        ->required();
    sub->add_option("--m-max", raw.m_max, "Largest count m");
    sub->add_option("--routes", raw.routes, "Comma list of fock,cf,wigner,q,p,closed");
    sub->add_option("--tail-bound", raw.tail_bound, "Fock-diagonal truncation bound, in (0, 1e-6]");
  };

  auto* compute = app.add_subcommand("compute", "One distribution for one route");
  auto* compare = app.add_subcommand("compare", "Several routes with their largest pairwise deviation");
  auto* sweep = app.add_subcommand("sweep", "Distributions over a grid of efficiencies");
  auto* verify = app.add_subcommand("verify", "Run the identity suite");
  for (auto* sub : {compute, compare, sweep}) {
    add_state(sub);
    add_common(sub);
  }
  add_common(verify);
  compute->add_option("--zeta", raw.zeta, "Quantum efficiency in [0, 1]");
  compare->add_option("--zeta", raw.zeta, "Quantum efficiency in [0, 1]");
  compare->add_option("--tol", raw.tol, "Largest accepted pairwise deviation");
  sweep->add_option("--zeta-grid", raw.zeta_grid, "start:stop:count or a comma list")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig config;
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  config.subcommand = name == "compute"   ? Subcommand::compute
                      : name == "compare" ? Subcommand::compare
                      : name == "sweep"   ? Subcommand::sweep
                                          : Subcommand::verify;
  config.format = raw.format == "csv" ? Format::csv : Format::json;
  if (raw.out) config.out = std::filesystem::path(*raw.out);
  config.quad.radial_nodes = raw.radial;
  config.quad.angular_nodes = raw.angular;
  config.quad.refine_factor = raw.refine;
  try {
    config.quad.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (config.subcommand == Subcommand::verify) return config;

  config.state_text = raw.state;
  config.state = parse_state(raw.state);
  config.m_max = raw.m_max;
  if (!(raw.tail_bound > 0.0 && raw.tail_bound <= 1e-6)) throw UsageError("--tail-bound must lie in (0, 1e-6]");
  config.tail_bound = raw.tail_bound;
  if (!(raw.tol >= 0.0)) throw UsageError("--tol must be nonnegative");
  config.tolerance = raw.tol;

  if (raw.routes) {
    config.routes = parse_routes(*raw.routes);
  } else if (config.subcommand == Subcommand::compare) {
    config.routes = {Route::fock, Route::cf, Route::wigner};
  }
  if (config.subcommand == Subcommand::compute && config.routes.size() != 1) {
    throw UsageError("compute takes exactly one route; use compare for several");
  }

  if (config.subcommand == Subcommand::sweep) {
    config.zetas = parse_zeta_grid(*raw.zeta_grid);
  } else {
    const double z = raw.zeta ? parse_number(*raw.zeta, "--zeta") : 1.0;
    if (!(z >= 0.0 && z <= 1.0)) throw UsageError("--zeta " + format_double(z) + " outside [0, 1]");
    config.zetas = {z};
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::compute: return run_compute(config, out, err);
      case Subcommand::compare: return run_compare(config, out, err);
      case Subcommand::sweep: return run_sweep(config, out, err);
      case Subcommand::verify: return run_verify(config, out, err);
    }
  } catch (const UsageError& e) {
    report(err, "usage", e.what());
    return 2;
  } catch (const Error& e) {
    report(err, error_kind(e), e.what());
    return 1;
  }
  return 2;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const Error& e) {
    report(std::cerr, "usage", e.what());
    return 2;
  }
  return run(config, std::cout, std::cerr);
}

}  // namespace pcount::cli
