#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/adapter.hpp"
#include "core/sqltext.hpp"
#include "core/wkt.hpp"

using namespace topotwin;

TEST_CASE("dialect table") {
  REQUIRE(find_dialect("reference"));
  REQUIRE(find_dialect("postgis"));
  REQUIRE(find_dialect("MySQL"));
  REQUIRE(find_dialect("duckdb"));
  CHECK(!find_dialect("oracle12c"));

  // MySQL has no Covers/CoveredBy; the others carry all ten
  const Dialect* my = find_dialect("mysql");
  for (PredicateName p : my->supported) {
    CHECK(p != PredicateName::Covers);
    CHECK(p != PredicateName::CoveredBy);
  }
  CHECK(my->supported.size() == 8);
  CHECK(find_dialect("postgis")->supported.size() == 10);
}

TEST_CASE("rendering matches the documented statement shapes") {
  CHECK(render_create_table("t1") == "CREATE TABLE t1 (id int, g geometry);");
  CHECK(render_count_query("t1", "t2", PredicateName::Covers) ==
        "SELECT COUNT(*) FROM t1 JOIN t2 ON ST_Covers(t1.g,t2.g);");
  // self-joins are aliased unconditionally
  CHECK(render_count_query("t1", "t1", PredicateName::Covers) ==
        "SELECT COUNT(*) FROM t1 AS a1 JOIN t1 AS a2 ON ST_Covers(a1.g,a2.g);");

  const Dialect& ref = *find_dialect("reference");
  CHECK(render_insert(ref, "t1", 1, "POINT(1 1)") ==
        "INSERT INTO t1 (id, g) VALUES (1, 'POINT(1 1)');");
  const Dialect& pg = *find_dialect("postgis");
  CHECK(render_insert(pg, "t1", 2, "POINT(1 1)") ==
        "INSERT INTO t1 (id, g) VALUES (2, 'POINT(1 1)'::geometry);");
  const Dialect& my = *find_dialect("mysql");
  CHECK(render_insert(my, "t1", 3, "POINT(1 1)") ==
        "INSERT INTO t1 (id, g) VALUES (3, ST_GeomFromText('POINT(1 1)'));");
}

TEST_CASE("statement parsing round-trips every render style") {
  for (const std::string dialect : {"reference", "postgis", "mysql"}) {
    const Dialect& d = *find_dialect(dialect);
    auto ins = parse_statement(render_insert(d, "t2", 7, "POINT(0.2 0.9)"));
    REQUIRE(ins.ok());
    auto* i = std::get_if<InsertStmt>(&ins.value());
    REQUIRE(i);
    CHECK(i->table == "t2");
    CHECK(i->id == 7);
    CHECK(i->wkt == "POINT(0.2 0.9)");
  }

  auto q = parse_statement(
      "SELECT COUNT(*) FROM t1 JOIN t2 ON ST_Covers(t1.g,t2.g);");
  REQUIRE(q.ok());
  auto* c = std::get_if<CountQueryStmt>(&q.value());
  REQUIRE(c);
  CHECK(c->table1 == "t1");
  CHECK(c->table2 == "t2");
  CHECK(c->pred == PredicateName::Covers);
  CHECK(c->left_is_table1);

  auto self = parse_statement(
      "SELECT COUNT(*) FROM t1 AS a1 JOIN t1 AS a2 ON ST_Within(a2.g,a1.g);");
  REQUIRE(self.ok());
  auto* s = std::get_if<CountQueryStmt>(&self.value());
  REQUIRE(s);
  CHECK(s->pred == PredicateName::Within);
  CHECK(!s->left_is_table1);  // first argument is the second table ref

  CHECK(!parse_statement("VACUUM;").ok());
  CHECK(!parse_statement("SELECT COUNT(*) FROM t1 JOIN t2 ON foo(t1.g,t2.g);")
             .ok());
}

TEST_CASE("fault specs parse and trigger") {
  auto f = parse_fault_spec("covers:coord_gt=50:negate");
  REQUIRE(f.ok());
  CHECK(f.value().predicate == PredicateName::Covers);
  CHECK(f.value().policy == FaultSpec::Policy::Negate);
  CHECK(f.value().to_string() == "covers:coord_gt=50:negate");

  auto small = parse_wkt("POINT(10 10)").take();
  auto large = parse_wkt("POINT(10 60)").take();
  CHECK(!f.value().triggered(small, small));
  CHECK(f.value().triggered(small, large));
  CHECK(f.value().triggered(large, small));

  auto t = parse_fault_spec("crosses:type=POLYGON:always_false");
  REQUIRE(t.ok());
  CHECK(t.value().triggered(parse_wkt("POLYGON((0 0,1 0,0 1,0 0))").take(),
                            small));
  CHECK(!t.value().triggered(small, small));

  CHECK(!parse_fault_spec("covers:coord_gt=50").ok());
  CHECK(!parse_fault_spec("covers:bogus=1:negate").ok());
  CHECK(!parse_fault_spec("nosuch:coord_gt=1:negate").ok());
}

TEST_CASE("reference adapter: schema, inserts, rejection classes") {
  ReferenceAdapter a;
  CHECK(a.execute("CREATE TABLE t1 (id int, g geometry);").ok());
  CHECK(a.execute("CREATE TABLE t2 (id int, g geometry);").ok());
  CHECK(a.table_count() == 2);
  // idempotent reset
  CHECK(a.execute("CREATE TABLE t1 (id int, g geometry);").ok());

  CHECK(a.execute("INSERT INTO t1 (id, g) VALUES (1, 'POINT(1 1)');").ok());
  CHECK(a.row_count("t1") == 1);

  auto invalid = a.execute(
      "INSERT INTO t1 (id, g) VALUES (2, 'POLYGON((0 0,1 1,0 1,1 0,0 0))');");
  REQUIRE(!invalid.ok());
  CHECK(invalid.error().code == Errc::InvalidGeometry);
  CHECK(a.row_count("t1") == 1);

  auto syntax = a.execute("INSERT INTO t1 (id, g) VALUES (3, 'POINT(1)');");
  REQUIRE(!syntax.ok());
  CHECK(syntax.error().code == Errc::Engine);

  auto missing = a.execute("INSERT INTO nope (id, g) VALUES (1, 'POINT(1 1)');");
  REQUIRE(!missing.ok());
  CHECK(missing.error().code == Errc::Engine);

  CHECK(a.execute("DELETE FROM t1 WHERE id = 1;").ok());
  CHECK(a.row_count("t1") == 0);
}

TEST_CASE("reference adapter: counting joins") {
  ReferenceAdapter a;
  REQUIRE(a.execute("CREATE TABLE t1 (id int, g geometry);").ok());
  REQUIRE(a.execute("CREATE TABLE t2 (id int, g geometry);").ok());
  REQUIRE(a.execute("INSERT INTO t1 (id, g) VALUES (1, 'LINESTRING(0 1,2 0)');")
              .ok());
  REQUIRE(a.execute("INSERT INTO t2 (id, g) VALUES (1, 'POINT(0.2 0.9)');")
              .ok());

  auto c = a.count_query(
      "SELECT COUNT(*) FROM t1 JOIN t2 ON ST_Covers(t1.g,t2.g);");
  REQUIRE(c.ok());
  CHECK(c.value() == 1);

  // empty second table
  REQUIRE(a.execute("CREATE TABLE t3 (id int, g geometry);").ok());
  auto zero = a.count_query(
      "SELECT COUNT(*) FROM t1 JOIN t3 ON ST_Intersects(t1.g,t3.g);");
  REQUIRE(zero.ok());
  CHECK(zero.value() == 0);

  auto bad = a.count_query(
      "SELECT COUNT(*) FROM t1 JOIN missing ON ST_Covers(t1.g,missing.g);");
  REQUIRE(!bad.ok());
  CHECK(bad.error().code == Errc::Engine);
}

TEST_CASE("reference adapter: the prepared-pairs fixture counts 7") {
  ReferenceAdapter a;
  REQUIRE(a.execute("CREATE TABLE t (id int, g geometry);").ok());
  REQUIRE(a.execute("INSERT INTO t (id, g) VALUES (1, "
                    "'GEOMETRYCOLLECTION(MULTIPOINT((0 0),(3 1)))');")
              .ok());
  REQUIRE(a.execute("INSERT INTO t (id, g) VALUES (2, "
                    "'GEOMETRYCOLLECTION(MULTIPOINT((0 0),(3 1)))');")
              .ok());
  REQUIRE(a.execute("INSERT INTO t (id, g) VALUES (3, "
                    "'MULTIPOLYGON(((0 0,5 0,0 5,0 0)))');")
              .ok());
  auto c = a.count_query(
      "SELECT COUNT(*) FROM t AS a1 JOIN t AS a2 ON ST_Contains(a1.g,a2.g);");
  REQUIRE(c.ok());
  CHECK(c.value() == 7);
}

TEST_CASE("reference adapter: faults flip verdicts only when triggered") {
  auto fault = parse_fault_spec("covers:coord_gt=50:negate");
  REQUIRE(fault.ok());
  ReferenceAdapter a({fault.take()});
  REQUIRE(a.execute("CREATE TABLE t1 (id int, g geometry);").ok());
  REQUIRE(a.execute("CREATE TABLE t2 (id int, g geometry);").ok());
  REQUIRE(a.execute("INSERT INTO t1 (id, g) VALUES (1, 'LINESTRING(0 0,10 10)');")
              .ok());
  REQUIRE(a.execute("INSERT INTO t1 (id, g) VALUES (2, "
                    "'LINESTRING(0 0,100 100)');")
              .ok());
  REQUIRE(a.execute("INSERT INTO t2 (id, g) VALUES (1, 'POINT(5 5)');").ok());

  const std::string q =
      "SELECT COUNT(*) FROM t1 JOIN t2 ON ST_Covers(t1.g,t2.g);";
  auto truth = a.count_query_unfaulted(q);
  REQUIRE(truth.ok());
  CHECK(truth.value() == 2);  // both lines cover (5,5)
  auto faulty = a.count_query(q);
  REQUIRE(faulty.ok());
  CHECK(faulty.value() == 1);  // the 100-coordinate row is negated
}

TEST_CASE("reference adapter instances are isolated") {
  ReferenceAdapter a, b;
  REQUIRE(a.execute("CREATE TABLE t1 (id int, g geometry);").ok());
  REQUIRE(a.execute("INSERT INTO t1 (id, g) VALUES (1, 'POINT(1 1)');").ok());
  REQUIRE(b.execute("CREATE TABLE t1 (id int, g geometry);").ok());
  CHECK(a.row_count("t1") == 1);
  CHECK(b.row_count("t1") == 0);
}

TEST_CASE("make_adapter validates configuration") {
  AdapterOptions bad;
  bad.target = "postgis";  // no client command
  CHECK(!make_adapter(bad).ok());

  AdapterOptions unknown;
  unknown.target = "sqlserver";
  CHECK(!make_adapter(unknown).ok());

  AdapterOptions ok;
  ok.target = "reference";
  CHECK(make_adapter(ok).ok());
}

TEST_CASE("subprocess adapter pipes through a shell client") {
  // a tiny fake client that swallows the SQL and always answers 42
  SubprocessAdapter fake(*find_dialect("postgis"),
                         "sh -c 'cat > /dev/null; echo 42'");
  auto c = fake.count_query("SELECT COUNT(*) FROM t1 JOIN t2 ON ST_Covers(t1.g,t2.g);");
  REQUIRE(c.ok());
  CHECK(c.value() == 42);

  SubprocessAdapter broken(*find_dialect("postgis"), "/nonexistent/client");
  auto e = broken.count_query("SELECT 1;");
  CHECK(!e.ok());
}
