#include "core/reducer.hpp"

#include <algorithm>
#include <map>

#include "core/canonical.hpp"
#include "core/wkt.hpp"

namespace topotwin {

namespace {

struct RowPair {
  std::string table;
  long long id = 0;
  std::string wkt1;
  std::string wkt2;
};

struct ParsedBundle {
  std::vector<std::string> tables;  // creation order
  std::vector<RowPair> rows;
  CountQueryStmt query;
  std::string query_sql;
};

Result<ParsedBundle> parse_bundle(const Discrepancy& d) {
  ParsedBundle b;
  b.query_sql = d.query;
  auto q = parse_statement(d.query);
  if (!q.ok()) return make_error(Errc::BadBundle, "query: " + q.error().message);
  auto* cq = std::get_if<CountQueryStmt>(&q.value());
  if (!cq) return make_error(Errc::BadBundle, "query.sql is not a count query");
  b.query = *cq;

  std::map<std::pair<std::string, long long>, std::size_t> index;
  for (const std::string& sql : d.statements1) {
    auto st = parse_statement(sql);
    if (!st.ok()) return make_error(Errc::BadBundle, st.error().message);
    if (auto* c = std::get_if<CreateTableStmt>(&st.value())) {
      b.tables.push_back(c->table);
    } else if (auto* ins = std::get_if<InsertStmt>(&st.value())) {
      index[{ins->table, ins->id}] = b.rows.size();
      b.rows.push_back({ins->table, ins->id, ins->wkt, ""});
    } else {
      return make_error(Errc::BadBundle, "unexpected statement in sdb1.sql");
    }
  }
  for (const std::string& sql : d.statements2) {
    auto st = parse_statement(sql);
    if (!st.ok()) return make_error(Errc::BadBundle, st.error().message);
    if (std::get_if<CreateTableStmt>(&st.value())) continue;
    if (auto* ins = std::get_if<InsertStmt>(&st.value())) {
      auto it = index.find({ins->table, ins->id});
      if (it == index.end())
        return make_error(Errc::BadBundle,
                          "sdb2.sql row has no twin in sdb1.sql");
      b.rows[it->second].wkt2 = ins->wkt;
    } else {
      return make_error(Errc::BadBundle, "unexpected statement in sdb2.sql");
    }
  }
  for (const RowPair& r : b.rows)
    if (r.wkt2.empty())
      return make_error(Errc::BadBundle, "sdb1.sql row has no twin in sdb2.sql");
  return b;
}

// Executes the candidate subset on fresh adapters. True only when both
// counts come back cleanly and still differ.
Result<bool> reproduces(const ParsedBundle& b, const std::vector<RowPair>& rows,
                        const Dialect& dialect, const ReduceOptions& opts,
                        long long* c1_out = nullptr,
                        long long* c2_out = nullptr) {
  Discrepancy trial;
  trial.query = b.query_sql;
  for (const std::string& t : b.tables) {
    trial.statements1.push_back(render_create_table(t));
    trial.statements2.push_back(render_create_table(t));
  }
  for (const RowPair& r : rows) {
    trial.statements1.push_back(render_insert(dialect, r.table, r.id, r.wkt1));
    trial.statements2.push_back(render_insert(dialect, r.table, r.id, r.wkt2));
  }
  auto counts = replay_bundle(trial, opts.adapter);
  if (!counts.ok()) {
    if (counts.error().code == Errc::Transport) return counts.error();
    return false;  // engine error: the candidate is not a reproducer
  }
  if (c1_out) *c1_out = counts.value().first;
  if (c2_out) *c2_out = counts.value().second;
  return counts.value().first != counts.value().second;
}

// Classic ddmin over the row-pair list: split into 2n chunks, try removing
// complements, refine granularity until single rows; the result is
// 1-minimal (removing any one remaining row stops the reproduction).
Result<std::vector<RowPair>> ddmin_rows(const ParsedBundle& b,
                                        std::vector<RowPair> rows,
                                        const Dialect& dialect,
                                        const ReduceOptions& opts) {
  std::size_t granularity = 2;
  while (rows.size() >= 2) {
    const std::size_t n = std::min(granularity, rows.size());
    const std::size_t chunk = (rows.size() + n - 1) / n;
    bool reduced = false;
    for (std::size_t start = 0; start < rows.size(); start += chunk) {
      std::vector<RowPair> complement;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (i < start || i >= start + chunk) complement.push_back(rows[i]);
      if (complement.empty()) continue;
      auto ok = reproduces(b, complement, dialect, opts);
      if (!ok.ok()) return ok.error();
      if (ok.value()) {
        rows = std::move(complement);
        granularity = std::max<std::size_t>(2, granularity - 1);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      if (granularity >= rows.size()) break;
      granularity = std::min(rows.size(), granularity * 2);
    }
  }
  return rows;
}

Result<Geometry> parse_or_bundle_error(const std::string& wkt) {
  auto g = parse_wkt(wkt);
  if (!g.ok()) return make_error(Errc::BadBundle, "bundle WKT: " + g.error().message);
  return g;
}

// Candidate shrinks of the SDB1 geometry; the twin is rebuilt through the
// matrix afterwards so the pair stays affine-consistent.
std::vector<Geometry> shrink_candidates(const Geometry& g) {
  std::vector<Geometry> out;
  if (g.empty) return out;
  if (is_container(g.type) && g.elements.size() > 1) {
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      std::vector<Geometry> elems;
      for (std::size_t j = 0; j < g.elements.size(); ++j)
        if (j != i) elems.push_back(g.elements[j]);
      out.push_back(Geometry::make_container(g.type, std::move(elems)));
    }
  }
  if (g.type == GeometryType::LineString && g.path.size() > 2) {
    for (std::size_t i = 0; i < g.path.size(); ++i) {
      std::vector<Point2> pts;
      for (std::size_t j = 0; j < g.path.size(); ++j)
        if (j != i) pts.push_back(g.path[j]);
      out.push_back(Geometry::make_line(std::move(pts)));
    }
  }
  if (g.type == GeometryType::Polygon && g.rings.size() > 1) {
    for (std::size_t i = 1; i < g.rings.size(); ++i) {  // keep the outer ring
      std::vector<Ring> rings;
      for (std::size_t j = 0; j < g.rings.size(); ++j)
        if (j != i) rings.push_back(g.rings[j]);
      out.push_back(Geometry::make_polygon(std::move(rings)));
    }
  }
  return out;
}

Result<std::vector<RowPair>> shrink_geometries(const ParsedBundle& b,
                                               std::vector<RowPair> rows,
                                               const MappingMatrix& matrix,
                                               const Dialect& dialect,
                                               const ReduceOptions& opts) {
  int budget = opts.shrink_budget;
  for (std::size_t ri = 0; ri < rows.size() && budget > 0; ++ri) {
    bool progressed = true;
    while (progressed && budget > 0) {
      progressed = false;
      auto g = parse_or_bundle_error(rows[ri].wkt1);
      if (!g.ok()) return g.error();
      for (const Geometry& candidate : shrink_candidates(g.value())) {
        if (budget-- <= 0) break;
        auto w1 = to_wkt(candidate);
        auto w2 = to_wkt(matrix.apply(canonicalize(candidate)));
        if (!w1.ok() || !w2.ok()) continue;
        std::vector<RowPair> trial = rows;
        trial[ri].wkt1 = w1.value();
        trial[ri].wkt2 = w2.value();
        auto ok = reproduces(b, trial, dialect, opts);
        if (!ok.ok()) return ok.error();
        if (ok.value()) {
          rows = std::move(trial);
          progressed = true;
          break;
        }
      }
    }
  }
  return rows;
}

}  // namespace

Result<Discrepancy> reduce(const Discrepancy& d, const ReduceOptions& opts) {
  auto bundle = parse_bundle(d);
  if (!bundle.ok()) return bundle.error();
  const ParsedBundle& b = bundle.value();

  const Dialect* dialect = find_dialect(
      opts.adapter.target == "reference" ? "reference" : opts.adapter.target);
  if (!dialect)
    return make_error(Errc::Config, "unknown dialect " + opts.adapter.target);

  auto first = reproduces(b, b.rows, *dialect, opts);
  if (!first.ok()) return first.error();
  if (!first.value())
    return make_error(Errc::NotReproducing,
                      "bundle does not reproduce on this target");

  auto rows = ddmin_rows(b, b.rows, *dialect, opts);
  if (!rows.ok()) return rows.error();

  auto shrunk = shrink_geometries(b, rows.take(), d.matrix, *dialect, opts);
  if (!shrunk.ok()) return shrunk.error();
  const std::vector<RowPair>& final_rows = shrunk.value();

  long long c1 = 0, c2 = 0;
  auto still = reproduces(b, final_rows, *dialect, opts, &c1, &c2);
  if (!still.ok()) return still.error();
  if (!still.value())
    return make_error(Errc::Internal, "reduction lost the discrepancy");

  // Keep CREATEs for tables with rows or named by the query.
  Discrepancy out = d;
  out.statements1.clear();
  out.statements2.clear();
  for (const std::string& t : b.tables) {
    bool used = t == b.query.table1 || t == b.query.table2;
    for (const RowPair& r : final_rows) used = used || r.table == t;
    if (!used) continue;
    out.statements1.push_back(render_create_table(t));
    out.statements2.push_back(render_create_table(t));
  }
  for (const RowPair& r : final_rows) {
    out.statements1.push_back(render_insert(*dialect, r.table, r.id, r.wkt1));
    out.statements2.push_back(render_insert(*dialect, r.table, r.id, r.wkt2));
  }
  out.count1 = c1;
  out.count2 = c2;
  return out;
}

}  // namespace topotwin
