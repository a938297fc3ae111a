#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/canonical.hpp"
#include "core/generator.hpp"
#include "core/oracle.hpp"
#include "core/wkt.hpp"
#include "support/brute.hpp"

using namespace topotwin;

namespace {

Geometry parsed(const std::string& wkt) {
  auto g = parse_wkt(wkt);
  REQUIRE(g.ok());
  return g.take();
}

std::string relate_code(const std::string& w1, const std::string& w2) {
  auto m = relate(parsed(w1), parsed(w2));
  REQUIRE(m.ok());
  return m.value().code();
}

bool pred(PredicateName p, const std::string& w1, const std::string& w2) {
  auto v = named_predicate(p, parsed(w1), parsed(w2));
  REQUIRE(v.ok());
  return v.value();
}

}  // namespace

TEST_CASE("decompose and locate basics") {
  // open line: endpoints are boundary, the rest interior
  auto line = decompose(parsed("LINESTRING(0 0,1 0)"));
  CHECK(locate(line, Point2{Rational(0), Rational(0)}) == Location::Boundary);
  CHECK(locate(line, Point2{Rational(1), Rational(0)}) == Location::Boundary);
  CHECK(locate(line, Point2{Rational(1, 2), Rational(0)}) ==
        Location::Interior);
  CHECK(locate(line, Point2{Rational(2), Rational(0)}) == Location::Exterior);

  // shared chain vertex is subtracted pairwise
  auto chain = decompose(parsed("LINESTRING(0 0,1 0,1 1)"));
  CHECK(locate(chain, Point2{Rational(1), Rational(0)}) == Location::Interior);

  // closed line: every endpoint is claimed twice, no boundary survives
  auto ring = decompose(parsed("LINESTRING(0 0,1 0,0 1,0 0)"));
  for (auto p : {Point2{Rational(0), Rational(0)}, Point2{Rational(1), Rational(0)},
                 Point2{Rational(0), Rational(1)}}) {
    CHECK(locate(ring, p) == Location::Interior);
  }

  // a POINT element claims the line endpoint, pushing it into the interior
  auto mixed =
      decompose(parsed("GEOMETRYCOLLECTION(POINT(0 0),LINESTRING(0 0,1 0))"));
  CHECK(locate(mixed, Point2{Rational(0), Rational(0)}) == Location::Interior);
  CHECK(locate(mixed, Point2{Rational(1), Rational(0)}) == Location::Boundary);

  // polygon: ring is boundary, inside is interior
  auto tri = decompose(parsed("POLYGON((0 0,5 0,0 5,0 0))"));
  CHECK(locate(tri, Point2{Rational(0), Rational(0)}) == Location::Boundary);
  CHECK(locate(tri, Point2{Rational(1), Rational(1)}) == Location::Interior);
  CHECK(locate(tri, Point2{Rational(4), Rational(4)}) == Location::Exterior);
  CHECK(locate(tri, Point2{Rational(5, 2), Rational(5, 2)}) ==
        Location::Boundary);  // on the hypotenuse

  // hole via even-odd
  auto holed = decompose(
      parsed("POLYGON((0 0,10 0,10 10,0 10,0 0),(2 2,8 2,8 8,2 8,2 2))"));
  CHECK(locate(holed, Point2{Rational(5), Rational(5)}) == Location::Exterior);
  CHECK(locate(holed, Point2{Rational(1), Rational(1)}) == Location::Interior);
  CHECK(locate(holed, Point2{Rational(2), Rational(5)}) == Location::Boundary);
}

TEST_CASE("relate: frozen vectors") {
  CHECK(relate_code("POLYGON((0 0,5 0,0 5,0 0))",
                    "POLYGON((0 0,5 0,0 5,0 0))") == "2FFF1FFF2");
  CHECK(relate_code("POINT(0 0)", "POINT(5 5)") == "FF0FFF0F2");
  CHECK(relate_code("POINT(1 0)", "LINESTRING(0 0,2 0)") == "0FFFFF102");
  // fully empty operands still have exteriors everywhere
  CHECK(relate_code("POINT EMPTY", "POINT EMPTY") == "FFFFFFFF2");
  CHECK(relate_code("POINT(1 1)", "LINESTRING EMPTY") == "FF0FFFFF2");
}

TEST_CASE("relate: crossing, touching, overlapping lines") {
  CHECK(relate_code("LINESTRING(0 0,2 2)", "LINESTRING(0 2,2 0)") ==
        "0F1FF0102");
  CHECK(relate_code("LINESTRING(0 0,1 0)", "LINESTRING(1 0,2 0)") ==
        "FF1F00102");
  CHECK(relate_code("LINESTRING(0 0,2 0)", "LINESTRING(1 0,3 0)") ==
        "1010F0102");
}

TEST_CASE("relate: polygon and line") {
  // line crossing straight through a triangle
  CHECK(relate_code("POLYGON((0 0,4 0,0 4,0 0))", "LINESTRING(-1 1,5 1)") ==
        "1F20F1102");
  // line along an edge of the polygon
  CHECK(relate_code("POLYGON((0 0,4 0,0 4,0 0))", "LINESTRING(0 0,4 0)") ==
        "FF2101FF2");
}

TEST_CASE("matches and pattern evaluation") {
  auto m = DE9IMMatrix::from_code("2FFF1FFF2");
  REQUIRE(m.ok());
  CHECK(matches(m.value(), "T*F**FFF*"));
  CHECK(matches(m.value(), "2********"));
  CHECK(!matches(m.value(), "1********"));

  auto d = DE9IMMatrix::from_code("FF0FFF0F2");
  REQUIRE(d.ok());
  CHECK(matches(d.value(), "FF*FF****"));  // disjoint

  auto w = DE9IMMatrix::from_code("0FFFFF102");
  REQUIRE(w.ok());
  CHECK(matches(w.value(), "T*F**F***"));  // within
}

TEST_CASE("named predicates: paper fixtures") {
  CHECK(pred(PredicateName::Covers, "LINESTRING(0 1,2 0)", "POINT(0.2 0.9)"));
  CHECK(pred(PredicateName::Within, "POINT(0 0)",
             "GEOMETRYCOLLECTION(POINT(0 0),LINESTRING(0 0,1 0))"));
  CHECK(pred(PredicateName::Contains, "MULTIPOLYGON(((0 0,5 0,0 5,0 0)))",
             "GEOMETRYCOLLECTION(MULTIPOINT((0 0),(3 1)))"));

  // swapped-axes fixture: Overlaps is false before and after ST_SwapXY
  const std::string g1 = "POLYGON((614 445,30 26,80 30,614 445))";
  const std::string g2 =
      "GEOMETRYCOLLECTION(POLYGON((614 445,30 26,80 30,614 445)),"
      "POLYGON((190 1010,40 90,90 40,190 1010)))";
  CHECK(!pred(PredicateName::Overlaps, g2, g1));
  Geometry sg1 = for_each_point(parsed(g1), [](const Point2& p) {
    return Point2{p.y, p.x};
  });
  Geometry sg2 = for_each_point(parsed(g2), [](const Point2& p) {
    return Point2{p.y, p.x};
  });
  auto v = named_predicate(PredicateName::Overlaps, sg2, sg1);
  REQUIRE(v.ok());
  CHECK(!v.value());
}

TEST_CASE("named predicates: small truth table") {
  CHECK(pred(PredicateName::Intersects, "POINT(1 0)", "LINESTRING(0 0,2 0)"));
  CHECK(pred(PredicateName::Disjoint, "POINT(9 9)", "LINESTRING(0 0,2 0)"));
  CHECK(pred(PredicateName::Touches, "LINESTRING(0 0,1 0)",
             "LINESTRING(1 0,2 0)"));
  CHECK(pred(PredicateName::Crosses, "LINESTRING(0 0,2 2)",
             "LINESTRING(0 2,2 0)"));
  CHECK(pred(PredicateName::Overlaps, "LINESTRING(0 0,2 0)",
             "LINESTRING(1 0,3 0)"));
  CHECK(pred(PredicateName::Equals, "LINESTRING(0 0,2 0)",
             "LINESTRING(2 0,1 0,0 0)"));
  CHECK(pred(PredicateName::Contains, "POLYGON((0 0,4 0,0 4,0 0))",
             "POINT(1 1)"));
  CHECK(!pred(PredicateName::Contains, "POLYGON((0 0,4 0,0 4,0 0))",
              "POINT(0 0)"));  // boundary point: contains is false
  CHECK(pred(PredicateName::Covers, "POLYGON((0 0,4 0,0 4,0 0))",
             "POINT(0 0)"));
  CHECK(pred(PredicateName::CoveredBy, "POINT(0 0)",
             "POLYGON((0 0,4 0,0 4,0 0))"));
  CHECK(pred(PredicateName::Crosses, "LINESTRING(1 1,9 9)",
             "POLYGON((0 0,4 0,0 4,0 0))"));
}

TEST_CASE("boundary materialization") {
  auto b1 = boundary(parsed("LINESTRING(0 0,1 0)"));
  REQUIRE(b1.ok());
  CHECK(to_wkt_or_die(b1.value()) == "MULTIPOINT((0 0),(1 0))");

  auto b2 = boundary(parsed("POINT(7 7)"));
  REQUIRE(b2.ok());
  CHECK(b2.value().is_empty());

  auto b3 = boundary(parsed("LINESTRING(0 0,1 0,0 1,0 0)"));
  REQUIRE(b3.ok());
  CHECK(b3.value().is_empty());

  auto b4 = boundary(parsed("POLYGON((0 0,5 0,0 5,0 0))"));
  REQUIRE(b4.ok());
  CHECK(b4.value().type == GeometryType::MultiLineString);
  CHECK(shapes_equal(b4.value(), parsed("LINESTRING(0 0,5 0,0 5,0 0)")));

  // collection: the POINT element hides the shared endpoint
  auto b5 =
      boundary(parsed("GEOMETRYCOLLECTION(POINT(0 0),LINESTRING(0 0,1 0))"));
  REQUIRE(b5.ok());
  CHECK(to_wkt_or_die(b5.value()) == "MULTIPOINT((1 0))");
}

TEST_CASE("validity: self-intersecting shapes are refused with a verdict") {
  // the classic bowtie
  auto v = validate_geometry(parsed("POLYGON((0 0,1 1,0 1,1 0,0 0))"));
  REQUIRE(!v.ok());
  CHECK(v.error().code == Errc::InvalidGeometry);

  auto m = relate(parsed("POLYGON((0 0,1 1,0 1,1 0,0 0))"), parsed("POINT(0 0)"));
  REQUIRE(!m.ok());
  CHECK(m.error().code == Errc::InvalidGeometry);

  CHECK(validate_geometry(parsed("POLYGON((0 0,4 0,0 4,0 0))")).ok());
  CHECK(validate_geometry(
            parsed("POLYGON((0 0,10 0,10 10,0 10,0 0),(2 2,8 2,8 8,2 8,2 2))"))
            .ok());
  // repeated consecutive ring points
  CHECK(!validate_geometry(parsed("POLYGON((0 0,4 0,4 0,0 4,0 0))")).ok());
  // linestrings may self-intersect freely
  CHECK(validate_geometry(parsed("LINESTRING(0 0,2 2,0 2,2 0)")).ok());
}

TEST_CASE("structural properties on random pairs") {
  GeneratorConfig cfg;
  cfg.coord_max = 20;
  Rng rng(314);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    Geometry a = random_shape(rng, cfg);
    Geometry b = random_shape(rng, cfg);
    auto mab = relate(a, b);
    auto mba = relate(b, a);
    CHECK(mab.ok() == mba.ok());
    if (!mab.ok()) continue;
    ++checked;
    CHECK(mab.value().transpose() == mba.value());
    CHECK(mab.value().at(2, 2) == 2);
    const bool disjoint = evaluate_predicate(PredicateName::Disjoint,
                                             mab.value(), dimension(a),
                                             dimension(b));
    const bool intersects = evaluate_predicate(PredicateName::Intersects,
                                               mab.value(), dimension(a),
                                               dimension(b));
    CHECK(disjoint != intersects);
  }
  CHECK(checked > 30);  // plenty of valid pairs in the sample
}

TEST_CASE("relate agrees with the brute-force sampler on a tiny grid") {
  GeneratorConfig cfg;
  cfg.coord_min = 0;
  cfg.coord_max = 4;
  cfg.max_points_per_line = 5;
  cfg.max_elements = 2;
  Rng rng(2718);
  int compared = 0;
  while (compared < 40) {
    Geometry a = random_shape(rng, cfg);
    Geometry b = random_shape(rng, cfg);
    auto m = relate(a, b);
    if (!m.ok()) continue;
    ++compared;
    auto seen = brute::nonempty_matrix(a, b, 0, 4, 8);
    for (int k = 0; k < 9; ++k) {
      INFO("entry ", k, " code ", m.value().code(), " a=", to_wkt_or_die(a),
           " b=", to_wkt_or_die(b));
      CHECK(seen[static_cast<std::size_t>(k)] == (m.value().dims[static_cast<std::size_t>(k)] >= 0));
    }
  }
}

TEST_CASE("relate is compatible with canonicalization") {
  GeneratorConfig cfg;
  cfg.coord_max = 15;
  Rng rng(555);
  int compared = 0;
  while (compared < 60) {
    Geometry a = random_shape(rng, cfg);
    Geometry b = random_shape(rng, cfg);
    auto m1 = relate(a, b);
    if (!m1.ok()) continue;
    Geometry ca = canonicalize(a);
    Geometry cb = canonicalize(b);
    if (ca.is_empty() != a.is_empty() || cb.is_empty() != b.is_empty())
      continue;  // degenerate collapse changes the point set by design
    auto m2 = relate(ca, cb);
    REQUIRE(m2.ok());
    ++compared;
    CHECK(m1.value() == m2.value());
  }
}
