#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pcount/cli.hpp"

using namespace pcount;
using namespace pcount::cli;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = 0;
  try {
    status = run(parse_args(args), out, err);
  } catch (const UsageError& e) {
    err << e.what();
    status = 2;
  }
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("parse examples") {
  const auto a = parse_args({"compute", "--state", "fock:n=2", "--zeta", "0.5", "--m-max", "4"});
  CHECK(a.subcommand == Subcommand::compute);
  CHECK(a.state.kind == states::StateKind::fock);
  CHECK(a.state.n == 2);
  CHECK(a.zetas == std::vector<double>{0.5});
  CHECK(a.m_max == 4);
  CHECK(a.routes == std::vector<Route>{Route::fock});
  CHECK(a.format == Format::json);
  CHECK_FALSE(a.out.has_value());

  const auto b = parse_args({"compare", "--state", "squeezed:r=1", "--zeta", "0.6", "--routes", "cf,q,fock,closed"});
  CHECK(b.subcommand == Subcommand::compare);
  CHECK(b.state.r == 1.0);
  CHECK(b.routes == std::vector<Route>{Route::cf, Route::q, Route::fock, Route::closed});
  CHECK(b.tolerance == 1e-7);

  CHECK_THROWS_AS(parse_args({"compute", "--state", "fock:n=2", "--zeta", "1.5"}), UsageError);
}

TEST_CASE("state grammar") {
  const auto c = parse_state("coherent:re=0.5,im=-1.25");
  CHECK(c.kind == states::StateKind::coherent);
  CHECK(c.beta == std::complex<double>(0.5, -1.25));
  CHECK(parse_state("thermal:nbar=2").nbar == 2.0);
  CHECK(parse_state("fock:n=7").n == 7);

  for (const char* bad : {"coherent:re=0.5,phase=1", "squeezed:r=abc", "squeezed:r=-1", "thermal:", "fock:n=2.5",
                          "fock:n=1,n=2", "laser:p=1", "squeezed", "diag:path.csv", "coherent:re"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_state(bad), UsageError);
  }
  try {
    parse_state("coherent:re=0.5,phase=1");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("phase") != std::string::npos);
  }

  const auto path = temp_file("pcount_cli_diag.csv");
  {
    std::ofstream f(path);
    f << "0.5\n0.25\n0.25\n";
  }
  const auto d = parse_state("diag:@" + path.string());
  CHECK(d.kind == states::StateKind::custom_diag);
  CHECK(d.diag == std::vector<double>{0.5, 0.25, 0.25});
  std::filesystem::remove(path);
}

TEST_CASE("zeta grids") {
  CHECK(parse_zeta_grid("0:1:5") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(parse_zeta_grid("0.2,0.9") == std::vector<double>{0.2, 0.9});
  CHECK(parse_zeta_grid("0.3:0.3:1") == std::vector<double>{0.3});
  CHECK_THROWS_AS(parse_zeta_grid("0:1.2:3"), UsageError);
  CHECK_THROWS_AS(parse_zeta_grid("0:1"), UsageError);
  CHECK_THROWS_AS(parse_zeta_grid("0:1:0"), UsageError);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(invoke({"compute", "--state", "fock:n=2", "--zeta", "1.5"}).status == 2);
  CHECK(invoke({"compute", "--state", "fock:n=x"}).status == 2);
  CHECK(invoke({"compute"}).status == 2);
  CHECK(invoke({"frobnicate"}).status == 2);
  CHECK(invoke({"compute", "--state", "fock:n=2", "--routes", "cf,wigner"}).status == 2);
  CHECK(invoke({"compute", "--state", "fock:n=2", "--routes", "bogus"}).status == 2);
  CHECK(invoke({"compute", "--state", "fock:n=2", "--angular-nodes", "33"}).status == 2);
  CHECK(invoke({"sweep", "--state", "fock:n=2"}).status == 2);
  CHECK(invoke({"compute", "--state", "diag:@/nonexistent/pcount.csv"}).status == 2);
  CHECK_THROWS_AS(parse_args({"--help"}), HelpRequested);
}

TEST_CASE("numerical and domain failures exit with status 1") {
  const auto p = invoke({"compute", "--state", "squeezed:r=0.5", "--routes", "p", "--zeta", "0.5"});
  CHECK(p.status == 1);
  CHECK(json::parse(p.err)["error"] == "representation-unavailable");
  const auto q = invoke({"compute", "--state", "thermal:nbar=1", "--routes", "q", "--zeta", "1"});
  CHECK(q.status == 1);
  CHECK(json::parse(q.err)["error"] == "route-domain");
  const auto deg = invoke({"compute", "--state", "thermal:nbar=1", "--routes", "cf", "--zeta", "0.5", "--m-max", "70"});
  CHECK(deg.status == 1);
  // A pairwise deviation above the tolerance fails the comparison.
  CHECK(invoke({"compare", "--state", "coherent:re=1", "--zeta", "0.5", "--routes", "fock,cf", "--radial-nodes", "8",
                "--angular-nodes", "2", "--tol", "1e-12"})
            .status == 1);
}

TEST_CASE("compute examples") {
  const auto r = invoke({"compute", "--state", "thermal:nbar=2", "--zeta", "0.5", "--m-max", "6"});
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"state", "zeta", "route", "m_max", "probabilities", "total", "error_estimate",
                                         "residual_negative"});
  CHECK(j["state"] == "thermal:nbar=2");
  CHECK(j["route"] == "fock");
  CHECK(j["m_max"] == 6);
  for (unsigned m = 0; m <= 6; ++m) CHECK(j["probabilities"][m].get<double>() == doctest::Approx(std::ldexp(1.0, -static_cast<int>(m) - 1)).epsilon(1e-15));
}

TEST_CASE("compare example passes") {
  const auto r = invoke({"compare", "--state", "fock:n=2", "--zeta", "0.5", "--routes", "cf,wigner,q,fock"});
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["distributions"].size() == 4);
  CHECK(j["max_deviation"].get<double>() <= 1e-8);
  CHECK(j["passed"] == true);
}

TEST_CASE("sweep covers the grid in order") {
  const auto r = invoke({"sweep", "--state", "coherent:re=1", "--zeta-grid", "0:1:3", "--routes", "fock,closed",
                         "--m-max", "5"});
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j["distributions"].size() == 6);
  CHECK(j["distributions"][0]["zeta"] == 0.0);
  CHECK(j["distributions"][1]["route"] == "closed");
  CHECK(j["distributions"][5]["zeta"] == 1.0);
}

TEST_CASE("output is deterministic and JSON round-trips byte for byte") {
  const std::vector<std::string> args{"compare", "--state", "squeezed:r=0.7", "--zeta", "0.6",
                                      "--routes", "cf,wigner,q,closed", "--m-max", "12"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out).dump(2) + "\n" == a.out);

  const auto path = temp_file("pcount_cli_out.json");
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", path.string()});
  const auto c = invoke(with_out);
  CHECK(c.status == 0);
  CHECK(c.out.empty());
  std::ifstream f(path, std::ios::binary);
  const std::string file((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(file == a.out);
  std::filesystem::remove(path);
}

TEST_CASE("CSV and JSON carry identical values") {
  const std::vector<std::string> base{"sweep", "--state", "thermal:nbar=0.7", "--zeta-grid", "0.2,0.8",
                                      "--routes", "fock,wigner", "--m-max", "8"};
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const auto j = json::parse(invoke(base).out);
  const auto csv = invoke(csv_args);
  REQUIRE(csv.status == 0);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,p,route,zeta");
  std::size_t rows = 0;
  for (const auto& d : j["distributions"]) {
    for (std::size_t m = 0; m < d["probabilities"].size(); ++m) {
      REQUIRE(std::getline(lines, line));
      std::istringstream fields(line);
      std::string fm, fp, froute, fzeta;
      std::getline(fields, fm, ',');
      std::getline(fields, fp, ',');
      std::getline(fields, froute, ',');
      std::getline(fields, fzeta, ',');
      CHECK(std::stoul(fm) == m);
      CHECK(std::strtod(fp.c_str(), nullptr) == d["probabilities"][m].get<double>());
      CHECK(froute == d["route"].get<std::string>());
      CHECK(std::strtod(fzeta.c_str(), nullptr) == d["zeta"].get<double>());
      ++rows;
    }
  }
  CHECK(rows == 2 * 2 * 9);
  CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, -7.0, 0.0, 123456789.125}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("verify passes every identity") {
  const auto r = invoke({"verify"});
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["identities"].size() == 6);
  for (const auto& e : j["identities"]) {
    INFO(e["name"].get<std::string>());
    CHECK(e["passed"] == true);
    CHECK(e["cases"].get<unsigned>() > 0);
  }
}
