#ifndef TOPOTWIN_CORE_HARNESS_HPP
#define TOPOTWIN_CORE_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/adapter.hpp"
#include "core/affine.hpp"
#include "core/generator.hpp"

namespace topotwin {

// SDB1 as generated plus its affine-equivalent twin: every SDB2 row is
// apply(matrix, canonicalize(SDB1 row)), one shared matrix per pair.
struct DatabasePair {
  SpatialDatabase sdb1;
  SpatialDatabase sdb2;
  MappingMatrix matrix = MappingMatrix::identity(2);
  std::uint64_t seed = 0;
};

DatabasePair build_pair(const GeneratorConfig& gen, Rng& rng,
                        long long matrix_entry_min, long long matrix_entry_max);

struct InstantiatedQuery {
  std::string sql;
  std::string table1;
  std::string table2;
  PredicateName pred = PredicateName::Intersects;
};

// Fills the fixed count-join template: both tables drawn uniformly with
// replacement, the predicate uniformly from the given list.
InstantiatedQuery instantiate_query(const SpatialDatabase& db,
                                    const std::vector<PredicateName>& preds,
                                    Rng& rng);

// A reproduction bundle: everything needed to replay the mismatch without
// the tool that found it.
struct Discrepancy {
  std::vector<std::string> statements1;  // CREATE/INSERT log for SDB1
  std::vector<std::string> statements2;
  std::string query;
  long long count1 = 0;
  long long count2 = 0;
  std::uint64_t seed = 0;
  MappingMatrix matrix = MappingMatrix::identity(2);
  std::string dialect;
  std::string timestamp;
};

Status write_bundle(const std::string& dir, const Discrepancy& d);
Result<Discrepancy> read_bundle(const std::string& dir);

struct CampaignConfig {
  GeneratorConfig gen;
  std::uint64_t queries_per_run = 100;
  std::uint64_t runs = 10;
  int workers = 1;
  long long matrix_entry_min = -5;
  long long matrix_entry_max = 5;
  std::vector<PredicateName> predicates;  // empty = dialect's full set
  bool oracle_crosscheck = false;
  std::string out_dir;
  AdapterOptions adapter;
};

// Per-run execution-time split; basis of the timing report.
struct TimingSplit {
  double sdbms_ms = 0;
  double total_ms = 0;
  double ratio() const { return total_ms > 0 ? sdbms_ms / total_ms : 0.0; }
};

struct RunReport {
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t verdicts = 0;        // queries that produced two counts
  std::uint64_t discrepancies = 0;
  std::uint64_t skipped_rows = 0;    // inserts rejected on both sides
  std::uint64_t skipped_queries = 0; // engine errors, no verdict
  std::uint64_t divergent_errors = 0;
  std::uint64_t oracle_mismatches = 0;
  TimingSplit timing;
  std::optional<std::string> aborted;  // transport failure text
};

struct CampaignReport {
  std::vector<RunReport> runs;
  std::vector<Discrepancy> discrepancies;
  std::uint64_t total_verdicts = 0;
  std::uint64_t total_discrepancies = 0;
  bool aborted = false;
  TimingSplit timing;
};

// Loads both twins through the adapters (logging the surviving statements),
// then alternates instantiate/compare for queries_per_run queries. Returns
// the discrepancy when the two counts differ; engine errors skip the query.
// A transport error aborts the run with a partial report.
CampaignReport run_campaign(const CampaignConfig& config);

// The timing harness: for each N runs the campaign `repetitions` times with
// the generator count forced to N and reports mean times.
struct TimingRow {
  std::uint64_t n = 0;
  double mean_sdbms_ms = 0;
  double mean_total_ms = 0;
  double ratio = 0;
};
Result<std::vector<TimingRow>> timing_sweep(const CampaignConfig& config,
                                            const std::vector<std::uint64_t>& ns,
                                            int repetitions);

// Replays a bundle: executes both statement logs and the query on fresh
// adapters and returns the two counts.
Result<std::pair<long long, long long>> replay_bundle(
    const Discrepancy& d, const AdapterOptions& adapter);

}  // namespace topotwin

#endif
