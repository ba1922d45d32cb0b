#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <utility>
#include <sstream>

#include <json.hpp>

#include "app.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = grs::app::run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Column name -> values of a CSV table.
std::map<std::string, std::vector<std::string>> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line, cell;
  std::getline(is, line);
  std::vector<std::string> names;
  for (std::istringstream hs(line); std::getline(hs, cell, ',');) names.push_back(cell);
  std::map<std::string, std::vector<std::string>> cols;
  while (std::getline(is, line)) {
    std::istringstream rs(line);
    for (const auto& n : names) {
      std::getline(rs, cell, ',');
      cols[n].push_back(cell);
    }
  }
  return cols;
}

double max_abs(const std::vector<std::string>& col) {
  double m = 0;
  for (const auto& c : col) m = std::max(m, std::abs(std::stod(c)));
  return m;
}

/// "key: value" lines of a generate report.
std::map<std::string, std::string> parse_report(const std::string& text) {
  std::map<std::string, std::string> r;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos) r[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "grs_cli_tests";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli_runner") {
  TEST_CASE("invariants on example 1: kappa vanishes") {
    const Result r = run({"invariants", "--preset", "example1", "--alpha", "1", "--beta", "1"});
    REQUIRE(r.code == 0);
    const auto cols = parse_csv(r.out);
    CHECK(cols.at("u").size() == 100);
    CHECK(max_abs(cols.at("kappa")) < 1e-8);
    // At v = 2 pi the coordinates grow like cosh(2 pi) and |k| reaches ~160,
    // so the deltas are held to 1e-8 relative there.
    for (const auto& [d, c] : {std::pair{"delta_k", "k"}, {"delta_kappa", "kappa"}, {"delta_K", "K"}}) {
      for (std::size_t i = 0; i < 100; ++i) {
        CHECK(std::stod(cols.at(d)[i]) <= 1e-8 * std::max(1.0, std::abs(std::stod(cols.at(c)[i]))));
      }
    }
    const Result near = run({"invariants", "--preset", "example1", "--v-range", "0,1"});
    REQUIRE(near.code == 0);
    const auto near_cols = parse_csv(near.out);
    for (const char* d : {"delta_k", "delta_kappa", "delta_K"}) CHECK(max_abs(near_cols.at(d)) < 1e-8);
    const std::vector<std::string> expected = {
        "u",  "v",      "E",       "F",      "G",      "L",       "M",     "N",     "k",
        "kappa", "K",   "normH",   "epsilon", "gamma1", "gamma2", "nu1",   "nu2",   "lambda",
        "mu", "beta1",  "beta2",   "point_class", "delta_k", "delta_kappa", "delta_K"};
    CHECK(r.out.substr(0, r.out.find('\n')) ==
          [&] {
            std::string h;
            for (const auto& c : expected) h += (h.empty() ? "" : ",") + c;
            return h;
          }());
  }

  TEST_CASE("invariants on a line meridian vanish") {
    const Result r = run({"invariants", "--kind", "first", "--alpha", "1", "--beta", "0.6", "--preset", "line",
                          "--a", "0.8", "--b", "0", "--u-range", "0.5,2"});
    REQUIRE(r.code == 0);
    const auto cols = parse_csv(r.out);
    CHECK(max_abs(cols.at("k")) < 1e-10);
    CHECK(max_abs(cols.at("kappa")) < 1e-10);
    CHECK(max_abs(cols.at("K")) < 1e-10);
  }

  TEST_CASE("dual-path deltas on the presets") {
    const std::vector<std::vector<std::string>> surfaces = {
        {"--kind", "first", "--preset", "circle", "--a", "1", "--u-range", "0.05,0.75"},
        {"--kind", "second", "--alpha", "1.3", "--beta", "0.7", "--preset", "circle", "--a", "1.2", "--u-range", "1,2"},
        {"--kind", "second", "--preset", "hyperbolic", "--a", "0.8", "--u-range", "0.1,2"},
        {"--kind", "first", "--alpha", "1.4", "--beta", "0.9", "--preset", "power-law", "--c", "0.6", "--u-range",
         "0.7,2"},
        {"--preset", "example2"},
    };
    for (const auto& surface : surfaces) {
      std::vector<std::string> args = {"invariants", "--nu", "6", "--nv", "6", "--v-range", "0,1"};
      args.insert(args.end(), surface.begin(), surface.end());
      const Result r = run(args);
      REQUIRE(r.code == 0);
      const auto cols = parse_csv(r.out);
      for (const char* d : {"delta_k", "delta_kappa", "delta_K"}) CHECK(max_abs(cols.at(d)) < 1e-8);
    }
  }

  TEST_CASE("outputs are deterministic and json mirrors csv") {
    const std::vector<std::string> args = {"invariants", "--preset", "example2", "--nu", "4", "--nv", "5"};
    const Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::vector<std::string> jargs = args;
    jargs.insert(jargs.begin(), {"--format", "json"});
    const Result j = run(jargs);
    REQUIRE(j.code == 0);
    const json doc = json::parse(j.out);
    const auto cols = parse_csv(a.out);
    REQUIRE(doc["K"].size() == 20);
    for (std::size_t i = 0; i < 20; ++i) CHECK(doc["K"][i].get<double>() == std::stod(cols.at("K")[i]));
    CHECK(doc["point_class"][0] == cols.at("point_class")[0]);
  }

  TEST_CASE("export-mesh: grid arithmetic, schema and channels") {
    const Result m = run({"export-mesh", "--preset", "example2", "--nu", "10", "--nv", "10", "--axis", "4"});
    REQUIRE(m.code == 0);
    const json mesh = json::parse(m.out);
    CHECK(mesh["vertices4"].size() == 100);
    CHECK(mesh["vertices3"].size() == 100);
    CHECK(mesh["faces"].size() == 81);
    CHECK(mesh["projection"]["mode"] == "drop-axis");
    CHECK(mesh["projection"]["axis"] == 4);
    for (const auto& f : mesh["faces"]) {
      REQUIRE(f.size() == 4);
      for (const auto& i : f) CHECK(i.get<std::size_t>() < 100);
    }
    for (const auto& v : mesh["vertices4"]) CHECK(v.size() == 4);
    for (std::size_t i = 0; i < 100; ++i) {
      CHECK(mesh["vertices3"][i][2] == mesh["vertices4"][i][2]);
    }

    const Result inv = run({"invariants", "--preset", "example2", "--nu", "10", "--nv", "10"});
    REQUIRE(inv.code == 0);
    const auto cols = parse_csv(inv.out);
    for (const char* ch : {"k", "kappa", "K"}) {
      for (std::size_t i = 0; i < 100; ++i) CHECK(mesh["channels"][ch][i].get<double>() == std::stod(cols.at(ch)[i]));
    }
    CHECK(mesh["channels"]["class"][0] == cols.at("point_class")[0]);
  }

  TEST_CASE("input errors exit 2") {
    CHECK(run({"export-mesh", "--preset", "example2", "--axis", "5"}).code == 2);
    CHECK(run({"invariants", "--kind", "third", "--preset", "circle", "--u-range", "0.1,0.5"}).code == 2);
    CHECK(run({"invariants", "--preset", "circle", "--a", "1", "--u-range", "0.05,1.2"}).code == 2);
    CHECK(run({"invariants", "--preset", "circle"}).code == 2);
    CHECK(run({"invariants", "--preset", "example1", "--nu", "1"}).code == 2);
    CHECK(run({"invariants", "--no-such-flag"}).code == 2);
    CHECK(run({"--format", "xml", "invariants", "--preset", "example1"}).code == 2);
    CHECK(run({"generate", "parabolic", "--case", "power-law", "--c", "0"}).code == 2);
    CHECK(run({"verify", "no_such_module"}).code == 2);
    const Result r = run({"invariants", "--preset", "circle", "--a", "1", "--u-range", "0.05,1.2"});
    CHECK(r.err.find("u = ") != std::string::npos);
  }

  TEST_CASE("under-resolved meridian files exit 3") {
    const fs::path p = scratch_dir() / "coarse.csv";
    {
      std::ofstream f(p);
      f << "u,f,fprime\n";
      for (int i = 0; i < 10; ++i) {
        const double u = 1.0 + 5.0 * i / 9.0;
        f << u << ',' << 2 + std::sin(u) << ',' << std::cos(u) << '\n';
      }
    }
    const Result r = run({"invariants", "--kind", "first", "--alpha", "3", "--meridian", p.string()});
    CHECK(r.code == 3);
    CHECK(r.err.find("InsufficientResolution") != std::string::npos);
  }

  TEST_CASE("generate minimal") {
    const fs::path p = scratch_dir() / "minimal.csv";
    const Result r = run({"generate", "minimal", "--kind", "first", "--alpha", "1", "--beta", "1", "--A", "0.25",
                          "--C", "0", "--eps", "+1", "--out", p.string()});
    REQUIRE(r.code == 0);
    const auto rep = parse_report(r.out);
    CHECK(std::stod(rep.at("max_abs_residual")) < 1e-8);
    const std::string file = slurp(p);
    CHECK(file.find("# kind=first") != std::string::npos);
    CHECK(file.find("# alpha=1") != std::string::npos);
    CHECK(file.find("u,f,fprime,g,gprime") != std::string::npos);

    // The file drives the kernel like any sampled meridian.
    const Result inv = run({"invariants", "--kind", "first", "--meridian", p.string(), "--nu", "5", "--nv", "3"});
    REQUIRE(inv.code == 0);
    CHECK(max_abs(parse_csv(inv.out).at("normH")) < 1e-6);
  }

  TEST_CASE("generate parabolic power-law") {
    const Result r = run({"generate", "parabolic", "--case", "power-law", "--alpha", "2", "--beta", "1", "--c", "1"});
    REQUIRE(r.code == 0);
    const fs::path p = scratch_dir() / "parabolic.csv";
    const Result r2 = run({"generate", "parabolic", "--case", "power-law", "--alpha", "2", "--beta", "1", "--c", "1",
                           "--out", p.string()});
    REQUIRE(r2.code == 0);
    const auto rep = parse_report(r2.out);
    CHECK(std::stod(rep.at("max_abs_residual")) < 1e-10);
    CHECK(std::stod(rep.at("kernel_max_abs_k")) < 1e-10);
  }

  TEST_CASE("generate example1: de Sitter membership") {
    const fs::path p = scratch_dir() / "example1.csv";
    const Result r = run({"generate", "example1", "--a", "1", "--alpha", "1", "--beta", "1", "--out", p.string()});
    REQUIRE(r.code == 0);
    const auto rep = parse_report(r.out);
    CHECK(std::stod(rep.at("membership_max_abs")) < 1e-12);
    CHECK(std::stod(rep.at("kernel_max_abs_kappa")) < 1e-8);
  }

  TEST_CASE("generate flat-normal: success and reported failure") {
    const fs::path ok = scratch_dir() / "fn.csv";
    const Result r = run({"generate", "flat-normal", "--kind", "second", "--alpha", "1", "--beta", "1.5", "--u0", "0.5",
                          "--f0", "1", "--fp0", "1.5", "--u-end", "1.5", "--out", ok.string()});
    REQUIRE(r.code == 0);
    const auto rep = parse_report(r.out);
    CHECK(rep.at("termination") == "domain-boundary");
    CHECK(std::stod(rep.at("max_abs_residual")) < 1e-6);

    const fs::path bad = scratch_dir() / "fn_fail.csv";
    const Result f = run({"generate", "flat-normal", "--kind", "first", "--alpha", "1", "--beta", "1", "--u0",
                          "0.479425538604203", "--f0", "0.8775825618903728", "--fp0", "-0.5463024898437905",
                          "--u-end", "1.2", "--out", bad.string()});
    CHECK(f.code == 4);
    const std::string partial = slurp(bad);
    CHECK(partial.find("# status=failed") != std::string::npos);
    CHECK(partial.find("# termination=singularity") != std::string::npos);
    CHECK(std::count(partial.begin(), partial.end(), '\n') > 100);
  }

  TEST_CASE("verify scopes") {
    const Result mk = run({"verify", "minkowski_core"});
    CHECK(mk.code == 0);
    CHECK(mk.out.find("Gram") != std::string::npos);
    const Result rot = run({"verify", "rotational_surfaces", "--seed", "7"});
    CHECK(rot.code == 0);
    CHECK(rot.out.find("Chen") != std::string::npos);
    CHECK(run({"verify", "cli_runner", "--seed", "3"}).out == run({"verify", "cli_runner", "--seed", "3"}).out);
  }
}
