#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "grs/errors.hpp"
#include "grs/io.hpp"

using namespace grs;
using nlohmann::json;

TEST_SUITE("io") {
  TEST_CASE("real formatting round-trips") {
    for (const double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
      CHECK(std::stod(io::format_real(x)) == x);
    }
    CHECK(io::format_real(0.1) == "0.10000000000000001");
    CHECK(io::format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(io::format_real(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(io::parse_format("json") == io::Format::Json);
    CHECK_THROWS_AS(io::parse_format("xml"), InvalidArgument);
  }

  TEST_CASE("json quoting") {
    const std::string s = io::quote_json("a\"b\\c\n\x01");
    CHECK(json::parse(s).get<std::string>() == "a\"b\\c\n\x01");
  }

  TEST_CASE("tables as csv and json") {
    io::Table t{{"u", "n", "class"}, {}};
    t.add_row({0.5, 3LL, std::string("elliptic")});
    t.add_row({std::numeric_limits<double>::quiet_NaN(), -1LL, std::string("parabolic")});
    CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);

    std::ostringstream csv;
    io::write_csv(csv, t);
    CHECK(csv.str() == "u,n,class\n0.5,3,elliptic\nnan,-1,parabolic\n");

    std::ostringstream js;
    io::write_json(js, t);
    const json j = json::parse(js.str());
    CHECK(j["u"][0] == 0.5);
    CHECK(j["u"][1].is_null());
    CHECK(j["n"][1] == -1);
    CHECK(j["class"][0] == "elliptic");
    // Columns keep table order.
    CHECK(js.str().find("\"u\"") < js.str().find("\"n\""));
    CHECK(js.str().find("\"n\"") < js.str().find("\"class\""));
  }

  TEST_CASE("meridian files round-trip") {
    io::MeridianFile file;
    file.header = {{"kind", "first"}, {"alpha", "1.5"}};
    file.samples.u = {0.1, 0.2, 0.3};
    file.samples.f = {1.0 / 3.0, 2.0, 3.0};
    file.samples.fp = {-1.0, 0.0, 1e-17};
    std::stringstream ss;
    io::write_meridian_file(ss, file);
    const io::MeridianFile back = io::read_meridian_file(ss);
    CHECK(back.header == file.header);
    CHECK(back.samples.u == file.samples.u);
    CHECK(back.samples.f == file.samples.f);
    CHECK(back.samples.fp == file.samples.fp);
    CHECK_FALSE(back.samples.g.has_value());
    CHECK(io::header_value(back.header, "alpha") == "1.5");
    CHECK(io::header_value(back.header, "beta", "none") == "none");

    file.samples.g = std::vector<double>{1, 2, 3};
    file.samples.gp = std::vector<double>{4, 5, 6};
    std::stringstream full;
    io::write_meridian_file(full, file);
    CHECK(full.str().find("u,f,fprime,g,gprime\n") != std::string::npos);
    CHECK(*io::read_meridian_file(full).samples.gp == *file.samples.gp);
  }

  TEST_CASE("malformed meridian files") {
    std::istringstream no_header("# kind=first\n");
    CHECK_THROWS_AS(io::read_meridian_file(no_header), InvalidArgument);
    std::istringstream bad_columns("u,f\n1,2\n");
    CHECK_THROWS_AS(io::read_meridian_file(bad_columns), InvalidArgument);
    std::istringstream bad_number("u,f,fprime\n1,2,x\n");
    CHECK_THROWS_AS(io::read_meridian_file(bad_number), InvalidArgument);
    std::istringstream short_row("u,f,fprime\n1,2\n");
    CHECK_THROWS_AS(io::read_meridian_file(short_row), InvalidArgument);
  }

  TEST_CASE("grid faces and projections") {
    const auto faces = io::grid_faces(3, 4);
    REQUIRE(faces.size() == 6);
    CHECK(faces[0] == std::array<std::size_t, 4>{0, 4, 5, 1});
    CHECK(faces.back() == std::array<std::size_t, 4>{6, 10, 11, 7});
    CHECK_THROWS_AS(io::grid_faces(1, 5), InvalidArgument);
    CHECK(io::drop_axis({1, 2, 3, 4}, 4) == std::array<double, 3>{1, 2, 3});
    CHECK(io::drop_axis({1, 2, 3, 4}, 1) == std::array<double, 3>{2, 3, 4});
    CHECK_THROWS_AS(io::drop_axis({1, 2, 3, 4}, 0), InvalidArgument);
    CHECK_THROWS_AS(io::drop_axis({1, 2, 3, 4}, 5), InvalidArgument);
  }

  TEST_CASE("mesh json follows the schema") {
    io::Mesh mesh;
    for (int i = 0; i < 4; ++i) {
      mesh.vertices4.push_back({double(i), 1, 2, 3});
      mesh.k.push_back(i);
      mesh.kappa.push_back(0);
      mesh.K.push_back(-i);
      mesh.point_class.push_back("hyperbolic");
    }
    mesh.drop_axis = 2;
    mesh.faces = io::grid_faces(2, 2);
    std::ostringstream os;
    io::write_mesh_json(os, mesh);
    const json j = json::parse(os.str());
    CHECK(j["vertices4"].size() == 4);
    CHECK(j["projection"]["mode"] == "drop-axis");
    CHECK(j["projection"]["axis"] == 2);
    CHECK(j["vertices3"][3] == json::array({3.0, 2.0, 3.0}));
    CHECK(j["faces"][0] == json::array({0, 2, 3, 1}));
    CHECK(j["channels"]["K"][3] == -3.0);
    CHECK(j["channels"]["class"][0] == "hyperbolic");

    mesh.faces.push_back({0, 1, 2, 9});
    std::ostringstream bad;
    CHECK_THROWS_AS(io::write_mesh_json(bad, mesh), InvalidArgument);
    mesh.faces.pop_back();
    mesh.k.pop_back();
    CHECK_THROWS_AS(io::write_mesh_json(bad, mesh), InvalidArgument);
  }
}
