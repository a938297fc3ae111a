#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/generator.hpp"
#include "core/rng.hpp"
#include "core/wkt.hpp"

using namespace topotwin;

namespace {

Geometry parsed(const std::string& wkt) {
  auto g = parse_wkt(wkt);
  REQUIRE(g.ok());
  return g.take();
}

std::string printed(const Geometry& g) {
  auto s = to_wkt(g);
  REQUIRE(s.ok());
  return s.take();
}

}  // namespace

TEST_CASE("rational decimals convert exactly") {
  auto r = rational_from_decimal("0.2");
  REQUIRE(r.has_value());
  CHECK(*r == Rational(1, 5));
  CHECK(*rational_from_decimal("-3.25") == Rational(-13, 4));
  CHECK(*rational_from_decimal("42") == Rational(42));
  CHECK(*rational_from_decimal(".5") == Rational(1, 2));
  CHECK(!rational_from_decimal("1e3").has_value());
  CHECK(!rational_from_decimal("").has_value());
  CHECK(!rational_from_decimal("1.2.3").has_value());
}

TEST_CASE("rational printing is the shortest exact decimal") {
  CHECK(*rational_to_decimal(Rational(1, 5)) == "0.2");
  CHECK(*rational_to_decimal(Rational(9, 10)) == "0.9");
  CHECK(*rational_to_decimal(Rational(-13, 4)) == "-3.25");
  CHECK(*rational_to_decimal(Rational(7)) == "7");
  CHECK(*rational_to_decimal(Rational(1, 8)) == "0.125");
  // denominator 3 has no finite decimal form
  CHECK(!rational_to_decimal(Rational(1, 3)).has_value());
}

TEST_CASE("rational arithmetic is exact") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational a(rng.range(-1000, 1000), rng.range(1, 50));
    Rational b(rng.range(-1000, 1000), rng.range(1, 50));
    CHECK((a + b) - b == a);
    CHECK(denominator(a) > 0);
  }
}

TEST_CASE("parse: paper fixtures") {
  Geometry p = parsed("POINT(0.2 0.9)");
  CHECK(p.type == GeometryType::Point);
  CHECK(p.point.x == Rational(1, 5));
  CHECK(p.point.y == Rational(9, 10));

  Geometry e = parsed("POINT EMPTY");
  CHECK(e.type == GeometryType::Point);
  CHECK(e.is_empty());

  Geometry m = parsed("MULTILINESTRING((0 2,1 0,3 1,3 1,5 0),EMPTY)");
  REQUIRE(m.type == GeometryType::MultiLineString);
  REQUIRE(m.elements.size() == 2);
  CHECK(m.elements[0].path.size() == 5);
  CHECK(m.elements[1].is_empty());
  CHECK(m.elements[1].type == GeometryType::LineString);
}

TEST_CASE("parse: case-insensitive tags, whitespace tolerance") {
  CHECK(parsed("point ( 1 2 )") == parsed("POINT(1 2)"));
  CHECK(parsed("MuLtIpOiNt((1 0),(0 0))") == parsed("MULTIPOINT((1 0),(0 0))"));
  CHECK(parsed("linestring empty").is_empty());
}

TEST_CASE("parse: syntax errors carry offsets, arity errors are semantic") {
  auto bad = parse_wkt("POINT(1,2)");
  REQUIRE(!bad.ok());
  CHECK(bad.error().code == Errc::ParseSyntax);

  auto unknown = parse_wkt("TRIANGLE(0 0,1 1,2 2)");
  REQUIRE(!unknown.ok());
  CHECK(unknown.error().code == Errc::ParseSyntax);

  auto short_line = parse_wkt("LINESTRING(1 1)");
  REQUIRE(!short_line.ok());
  CHECK(short_line.error().code == Errc::ParseSemantic);

  auto short_ring = parse_wkt("POLYGON((0 0,1 1,0 0))");
  REQUIRE(!short_ring.ok());
  CHECK(short_ring.error().code == Errc::ParseSemantic);

  auto open_ring = parse_wkt("POLYGON((0 0,1 0,1 1,0 1))");
  REQUIRE(!open_ring.ok());
  CHECK(open_ring.error().code == Errc::ParseSemantic);

  auto trailing = parse_wkt("POINT(1 1) garbage");
  REQUIRE(!trailing.ok());
  CHECK(trailing.error().code == Errc::ParseSyntax);
}

TEST_CASE("print: paper fixtures") {
  CHECK(printed(Geometry::make_point(Rational(1, 5), Rational(9, 10))) ==
        "POINT(0.2 0.9)");
  CHECK(printed(Geometry::make_empty(GeometryType::Polygon)) ==
        "POLYGON EMPTY");
  Geometry mp = Geometry::make_container(
      GeometryType::MultiPoint,
      {Geometry::make_point(Rational(1), Rational(0)),
       Geometry::make_point(Rational(0), Rational(0))});
  CHECK(printed(mp) == "MULTIPOINT((1 0),(0 0))");
}

TEST_CASE("print: unprintable rational is an error") {
  Geometry g = Geometry::make_point(Rational(1, 3), Rational(0));
  auto s = to_wkt(g);
  REQUIRE(!s.ok());
  CHECK(s.error().code == Errc::Unprintable);
}

TEST_CASE("round-trip law on handwritten and random geometries") {
  const char* fixtures[] = {
      "POINT(0.2 0.9)",
      "POINT EMPTY",
      "LINESTRING(0 1,2 0)",
      "POLYGON((0 0,5 0,0 5,0 0))",
      "POLYGON((0 0,10 0,10 10,0 10,0 0),(2 2,3 2,3 3,2 2))",
      "MULTIPOINT((1 0),(0 0))",
      "MULTILINESTRING((0 2,1 0,3 1,3 1,5 0),EMPTY)",
      "MULTIPOLYGON(((0 0,5 0,0 5,0 0)))",
      "GEOMETRYCOLLECTION(POINT(0 0),LINESTRING(0 0,1 0))",
      "GEOMETRYCOLLECTION(GEOMETRYCOLLECTION(POINT(1 1)))",
      "GEOMETRYCOLLECTION EMPTY",
      "MULTIPOLYGON(EMPTY,((0 0,1 0,0 1,0 0)))",
  };
  for (const char* f : fixtures) {
    Geometry g = parsed(f);
    CHECK(parsed(printed(g)) == g);
    CHECK(printed(g) == f);  // these fixtures are already in output form
  }

  GeneratorConfig cfg;
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    Geometry g = random_shape(rng, cfg);
    Geometry back = parsed(printed(g));
    CHECK(back == g);
  }
}

TEST_CASE("dimension") {
  CHECK(dimension(parsed("POINT(0 0)")) == 0);
  CHECK(dimension(parsed("GEOMETRYCOLLECTION(POINT(0 0),LINESTRING(0 0,1 0))")) ==
        1);
  CHECK(dimension(parsed("MULTIPOLYGON(((0 0,5 0,0 5,0 0)))")) == 2);
  CHECK(!dimension(parsed("POINT EMPTY")).has_value());
  CHECK(!dimension(parsed("MULTIPOINT(EMPTY)")).has_value());
  CHECK(dimension(parsed("GEOMETRYCOLLECTION(POINT EMPTY,LINESTRING(0 0,1 0))")) ==
        1);
}

TEST_CASE("for_each_point") {
  auto ident = [](const Point2& p) { return p; };
  auto swap_xy = [](const Point2& p) { return Point2{p.y, p.x}; };
  auto shift = [](const Point2& p) { return Point2{p.x + 1, p.y}; };

  Geometry poly = parsed("POLYGON((614 445,30 26,80 30,614 445))");
  CHECK(for_each_point(poly, ident) == poly);
  CHECK(for_each_point(poly, swap_xy) ==
        parsed("POLYGON((445 614,26 30,30 80,445 614))"));
  CHECK(for_each_point(parsed("POINT EMPTY"), shift) == parsed("POINT EMPTY"));

  // structure preserved on nested collections
  Geometry gc = parsed(
      "GEOMETRYCOLLECTION(MULTIPOINT((1 2),EMPTY),LINESTRING(0 0,1 0))");
  Geometry out = for_each_point(gc, swap_xy);
  CHECK(out ==
        parsed("GEOMETRYCOLLECTION(MULTIPOINT((2 1),EMPTY),LINESTRING(0 0,0 1))"));
}
