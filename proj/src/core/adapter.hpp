#ifndef TOPOTWIN_CORE_ADAPTER_HPP
#define TOPOTWIN_CORE_ADAPTER_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/generator.hpp"
#include "core/oracle.hpp"
#include "core/sqltext.hpp"

namespace topotwin {

// Deterministic wrong-answer injection for the reference engine; used to
// test the tester. Triggers are evaluated on the two operand geometries.
struct FaultSpec {
  PredicateName predicate = PredicateName::Covers;
  enum class Trigger { CoordinateAbove, TypeTag, ElementCountAbove };
  Trigger trigger = Trigger::CoordinateAbove;
  long long threshold = 0;                       // CoordinateAbove / ElementCountAbove
  GeometryType tag = GeometryType::Point;        // TypeTag
  enum class Policy { Negate, AlwaysTrue, AlwaysFalse };
  Policy policy = Policy::Negate;

  bool triggered(const Geometry& a, const Geometry& b) const;
  std::string to_string() const;
};

// "covers:coord_gt=50:negate", "crosses:type=POLYGON:always_false",
// "within:elements_gt=2:always_true"
Result<FaultSpec> parse_fault_spec(const std::string& text);

// One adapter, one database. Statement text is the contract: whatever the
// harness logs is exactly what execute()/count_query() received.
class Adapter {
 public:
  virtual ~Adapter() = default;
  virtual const Dialect& dialect() const = 0;
  // DDL/DML. An engine-side rejection of a semantically invalid geometry
  // comes back as Errc::InvalidGeometry; other engine errors as Errc::Engine;
  // connection problems as Errc::Transport.
  virtual Status execute(const std::string& sql) = 0;
  virtual Result<long long> count_query(const std::string& sql) = 0;
};

// In-process engine backed by the exact oracle. Geometries are validated on
// insert; count queries run a nested-loop join evaluating the named
// predicate on each row pair, with DE-9IM matrices memoized per pair and
// fault overrides applied last.
class ReferenceAdapter : public Adapter {
 public:
  explicit ReferenceAdapter(std::vector<FaultSpec> faults = {},
                            int statement_delay_ms = 0);

  const Dialect& dialect() const override { return dialect_; }
  Status execute(const std::string& sql) override;
  Result<long long> count_query(const std::string& sql) override;

  // Ground-truth count for the same query with faults ignored.
  Result<long long> count_query_unfaulted(const std::string& sql);

  std::size_t table_count() const { return tables_.size(); }
  std::size_t row_count(const std::string& table) const;

 private:
  struct StoredRow {
    long long id;
    Geometry geom;
  };
  Result<long long> run_count(const CountQueryStmt& q, bool faulted);
  bool evaluate(PredicateName pred, const Geometry& a, const Geometry& b,
                const std::string& key_a, const std::string& key_b,
                bool faulted);
  void delay() const;

  Dialect dialect_;
  std::vector<FaultSpec> faults_;
  int delay_ms_;
  std::map<std::string, std::vector<StoredRow>> tables_;
  std::map<std::pair<std::string, std::string>, DE9IMMatrix> relate_memo_;
};

// Pipes statements through a vendor SQL client started per call
// ("psql -qAt mydb", "mysql -N mydb", "duckdb file.db -csv -noheader").
// count_query reads the last nonempty stdout line as the integer result.
class SubprocessAdapter : public Adapter {
 public:
  SubprocessAdapter(const Dialect& dialect, std::string command);

  const Dialect& dialect() const override { return dialect_; }
  Status execute(const std::string& sql) override;
  Result<long long> count_query(const std::string& sql) override;

 private:
  struct RunOutcome {
    int exit_code = -1;
    std::string out;
    std::string err;
  };
  Result<RunOutcome> run(const std::string& sql);
  Status classify(const RunOutcome& o) const;

  Dialect dialect_;
  std::string command_;
};

struct AdapterOptions {
  std::string target = "reference";
  std::vector<FaultSpec> faults;
  int statement_delay_ms = 0;
  std::string client_command;  // required for non-reference targets
  std::string database;        // substituted for {database} in the command
};

Result<std::unique_ptr<Adapter>> make_adapter(const AdapterOptions& opts);

}  // namespace topotwin

#endif
