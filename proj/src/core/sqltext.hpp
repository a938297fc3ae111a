#ifndef TOPOTWIN_CORE_SQLTEXT_HPP
#define TOPOTWIN_CORE_SQLTEXT_HPP

#include <string>
#include <variant>
#include <vector>

#include "core/de9im.hpp"
#include "core/result.hpp"

namespace topotwin {

// How a dialect embeds a WKT literal in an INSERT.
enum class LiteralStyle {
  PlainQuote,    // 'WKT'
  QuoteCast,     // 'WKT'::geometry
  GeomFromText,  // ST_GeomFromText('WKT')
};

struct Dialect {
  std::string name;
  LiteralStyle literal = LiteralStyle::PlainQuote;
  std::vector<PredicateName> supported;
  // Substrings of engine error text classified as a semantic-invalid
  // rejection rather than a hard failure.
  std::vector<std::string> invalid_markers;
};

// Built-in dialect table: "reference", "postgis", "mysql", "duckdb".
const Dialect* find_dialect(const std::string& name);
std::vector<std::string> dialect_names();

// --- rendering (bit-exact statement text; these strings are the logs) ---

std::string render_create_table(const std::string& table);
std::string render_drop_table(const std::string& table);
std::string render_insert(const Dialect& d, const std::string& table,
                          long long id, const std::string& wkt);
std::string render_delete(const std::string& table, long long id);
// Self-joins are aliased (a1/a2) so table1 == table2 is legal everywhere;
// distinct tables keep the plain two-table join form.
std::string render_count_query(const std::string& table1,
                               const std::string& table2, PredicateName pred);

// --- parsing (the subset the reference engine and replay understand) ---

struct CreateTableStmt {
  std::string table;
};
struct DropTableStmt {
  std::string table;
};
struct InsertStmt {
  std::string table;
  long long id = 0;
  std::string wkt;
};
struct DeleteStmt {
  std::string table;
  long long id = 0;
};
struct CountQueryStmt {
  std::string table1;
  std::string table2;
  PredicateName pred = PredicateName::Intersects;
  bool left_is_table1 = true;  // first predicate argument refers to table1
};

using Statement = std::variant<CreateTableStmt, DropTableStmt, InsertStmt,
                               DeleteStmt, CountQueryStmt>;

Result<Statement> parse_statement(const std::string& sql);

}  // namespace topotwin

#endif
