#include "core/harness.hpp"

#include <sys/stat.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "core/canonical.hpp"
#include "core/wkt.hpp"

namespace topotwin {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

DatabasePair build_pair(const GeneratorConfig& gen, Rng& rng,
                        long long matrix_entry_min,
                        long long matrix_entry_max) {
  DatabasePair pair;
  pair.seed = gen.seed;
  pair.sdb1 = generate(gen);
  auto m = generate_mapping_matrix(2, rng, matrix_entry_min, matrix_entry_max);
  if (!m.ok())
    // only a degenerate entry range can get here; nothing sane to build
    throw std::runtime_error(m.error().message);
  pair.matrix = m.take();

  pair.sdb2.tables.reserve(pair.sdb1.tables.size());
  for (const SpatialTable& t : pair.sdb1.tables) {
    SpatialTable twin{t.name, {}};
    for (const Row& r : t.rows)
      twin.rows.push_back({r.id, pair.matrix.apply(canonicalize(r.geom))});
    pair.sdb2.tables.push_back(std::move(twin));
  }
  return pair;
}

InstantiatedQuery instantiate_query(const SpatialDatabase& db,
                                    const std::vector<PredicateName>& preds,
                                    Rng& rng) {
  InstantiatedQuery q;
  q.table1 = db.tables[rng.below(db.tables.size())].name;
  q.table2 = db.tables[rng.below(db.tables.size())].name;
  q.pred = preds[rng.below(preds.size())];
  q.sql = render_count_query(q.table1, q.table2, q.pred);
  return q;
}

// ---------------------------------------------------------------------------
// Bundles

namespace {

Status write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) return make_error(Errc::Transport, "cannot write " + path);
  f << content;
  return Status();
}

Result<std::string> read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) return make_error(Errc::BadBundle, "missing file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split_statements(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string join_statements(const std::vector<std::string>& stmts) {
  std::string out;
  for (const auto& s : stmts) {
    out += s;
    out += '\n';
  }
  return out;
}

}  // namespace

Status write_bundle(const std::string& dir, const Discrepancy& d) {
  ::mkdir(dir.c_str(), 0755);
  if (auto s = write_text_file(dir + "/sdb1.sql", join_statements(d.statements1));
      !s.ok())
    return s;
  if (auto s = write_text_file(dir + "/sdb2.sql", join_statements(d.statements2));
      !s.ok())
    return s;
  if (auto s = write_text_file(dir + "/query.sql", d.query + "\n"); !s.ok())
    return s;
  if (auto s = write_text_file(dir + "/matrix.txt", d.matrix.serialize());
      !s.ok())
    return s;
  std::ostringstream meta;
  meta << "seed = " << d.seed << "\n"
       << "dialect = " << d.dialect << "\n"
       << "count1 = " << d.count1 << "\n"
       << "count2 = " << d.count2 << "\n"
       << "timestamp = " << d.timestamp << "\n";
  return write_text_file(dir + "/meta", meta.str());
}

Result<Discrepancy> read_bundle(const std::string& dir) {
  Discrepancy d;
  auto s1 = read_text_file(dir + "/sdb1.sql");
  if (!s1.ok()) return s1.error();
  auto s2 = read_text_file(dir + "/sdb2.sql");
  if (!s2.ok()) return s2.error();
  auto q = read_text_file(dir + "/query.sql");
  if (!q.ok()) return q.error();
  auto mx = read_text_file(dir + "/matrix.txt");
  if (!mx.ok()) return mx.error();
  auto meta = read_text_file(dir + "/meta");
  if (!meta.ok()) return meta.error();

  d.statements1 = split_statements(s1.value());
  d.statements2 = split_statements(s2.value());
  auto qlines = split_statements(q.value());
  if (qlines.size() != 1)
    return make_error(Errc::BadBundle, "query.sql must hold one statement");
  d.query = qlines.front();
  auto m = MappingMatrix::deserialize(mx.value());
  if (!m.ok())
    return make_error(Errc::BadBundle, "matrix.txt: " + m.error().message);
  d.matrix = m.take();

  std::istringstream in(meta.value());
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "seed") d.seed = std::stoull(val);
      else if (key == "dialect") d.dialect = val;
      else if (key == "count1") d.count1 = std::stoll(val);
      else if (key == "count2") d.count2 = std::stoll(val);
      else if (key == "timestamp") d.timestamp = val;
    } catch (...) {
      return make_error(Errc::BadBundle, "bad meta value for " + key);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Campaign

namespace {

struct LoadedPair {
  std::unique_ptr<Adapter> db1;
  std::unique_ptr<Adapter> db2;
  std::vector<std::string> log1;
  std::vector<std::string> log2;
  std::uint64_t skipped_rows = 0;
  std::uint64_t divergent_errors = 0;
  double sdbms_ms = 0;
};

// Renders and executes the schema and rows of both twins, keeping the
// surviving statements as the replayable logs.
Result<LoadedPair> load_pair(const CampaignConfig& cfg,
                             const DatabasePair& pair) {
  LoadedPair lp;
  AdapterOptions o1 = cfg.adapter;
  AdapterOptions o2 = cfg.adapter;
  if (o1.target != "reference") {
    // two databases on the same server
    if (o1.database.empty()) {
      o1.database = "topotwin1";
      o2.database = "topotwin2";
    } else {
      o2.database = o1.database + "_twin";
    }
  }
  auto a1 = make_adapter(o1);
  if (!a1.ok()) return a1.error();
  auto a2 = make_adapter(o2);
  if (!a2.ok()) return a2.error();
  lp.db1 = a1.take();
  lp.db2 = a2.take();
  const Dialect& dialect = lp.db1->dialect();

  auto timed_exec = [&](Adapter& a, const std::string& sql) {
    auto start = Clock::now();
    Status s = a.execute(sql);
    lp.sdbms_ms += ms_since(start);
    return s;
  };

  for (std::size_t ti = 0; ti < pair.sdb1.tables.size(); ++ti) {
    const SpatialTable& t1 = pair.sdb1.tables[ti];
    const SpatialTable& t2 = pair.sdb2.tables[ti];
    for (const std::string& sql :
         {render_drop_table(t1.name), render_create_table(t1.name)}) {
      if (auto s = timed_exec(*lp.db1, sql); !s.ok()) return s.error();
      if (auto s = timed_exec(*lp.db2, sql); !s.ok()) return s.error();
    }
    lp.log1.push_back(render_create_table(t1.name));
    lp.log2.push_back(render_create_table(t2.name));

    for (std::size_t ri = 0; ri < t1.rows.size(); ++ri) {
      auto w1 = to_wkt(t1.rows[ri].geom);
      auto w2 = to_wkt(t2.rows[ri].geom);
      if (!w1.ok() || !w2.ok())
        return make_error(Errc::Internal, "unprintable generated geometry");
      const std::string i1 =
          render_insert(dialect, t1.name, t1.rows[ri].id, w1.value());
      const std::string i2 =
          render_insert(dialect, t2.name, t2.rows[ri].id, w2.value());

      Status s1 = timed_exec(*lp.db1, i1);
      if (!s1.ok() && s1.error().code == Errc::Transport) return s1.error();
      if (!s1.ok()) {
        // rejected on side 1: skip the twin row entirely
        ++lp.skipped_rows;
        continue;
      }
      Status s2 = timed_exec(*lp.db2, i2);
      if (!s2.ok() && s2.error().code == Errc::Transport) return s2.error();
      if (!s2.ok()) {
        // accepted on one side only: surfaced for triage, not a verdict;
        // remove the stranded row to keep the twins paired
        ++lp.divergent_errors;
        std::string del = render_delete(t1.name, t1.rows[ri].id);
        if (auto s = timed_exec(*lp.db1, del); !s.ok()) return s.error();
        continue;
      }
      lp.log1.push_back(i1);
      lp.log2.push_back(i2);
    }
  }
  return lp;
}

// Ground-truth count of the instantiated query over sdb1, straight from the
// oracle; used by the optional differential crosscheck.
Result<long long> oracle_count(const DatabasePair& pair,
                               const InstantiatedQuery& q) {
  const SpatialTable* t1 = pair.sdb1.find_table(q.table1);
  const SpatialTable* t2 = pair.sdb1.find_table(q.table2);
  if (!t1 || !t2) return make_error(Errc::Internal, "query names missing table");
  long long n = 0;
  for (const Row& a : t1->rows) {
    for (const Row& b : t2->rows) {
      if (!validate_geometry(a.geom).ok() || !validate_geometry(b.geom).ok())
        continue;  // the engine rejected these rows as well
      auto v = named_predicate(q.pred, a.geom, b.geom);
      if (v.ok() && v.value()) ++n;
    }
  }
  return n;
}

RunReport execute_run(const CampaignConfig& cfg, std::uint64_t run_index,
                      std::vector<Discrepancy>& out,
                      std::mutex& out_mutex) {
  RunReport rep;
  rep.run_index = run_index;
  rep.seed = cfg.gen.seed + run_index;
  const auto run_start = Clock::now();

  GeneratorConfig gen = cfg.gen;
  gen.seed = rep.seed;
  Rng rng(rep.seed ^ 0x74775F72756E6ULL);  // distinct stream from generate()

  DatabasePair pair =
      build_pair(gen, rng, cfg.matrix_entry_min, cfg.matrix_entry_max);

  auto loaded = load_pair(cfg, pair);
  if (!loaded.ok()) {
    rep.aborted = loaded.error().message;
    rep.timing.total_ms = ms_since(run_start);
    return rep;
  }
  LoadedPair& lp = loaded.value();
  rep.skipped_rows = lp.skipped_rows;
  rep.divergent_errors = lp.divergent_errors;

  std::vector<PredicateName> preds = cfg.predicates;
  if (preds.empty()) preds = lp.db1->dialect().supported;

  for (std::uint64_t qi = 0; qi < cfg.queries_per_run; ++qi) {
    InstantiatedQuery q = instantiate_query(pair.sdb1, preds, rng);

    auto start = Clock::now();
    auto c1 = lp.db1->count_query(q.sql);
    auto c2 = lp.db2->count_query(q.sql);
    lp.sdbms_ms += ms_since(start);

    if (!c1.ok() || !c2.ok()) {
      const auto& e = !c1.ok() ? c1.error() : c2.error();
      if (e.code == Errc::Transport) {
        rep.aborted = e.message;
        break;
      }
      ++rep.skipped_queries;  // engine error: no verdict
      continue;
    }
    ++rep.verdicts;

    if (cfg.oracle_crosscheck) {
      auto truth = oracle_count(pair, q);
      if (truth.ok() && truth.value() != c1.value()) ++rep.oracle_mismatches;
    }

    if (c1.value() != c2.value()) {
      ++rep.discrepancies;
      Discrepancy d;
      d.statements1 = lp.log1;
      d.statements2 = lp.log2;
      d.query = q.sql;
      d.count1 = c1.value();
      d.count2 = c2.value();
      d.seed = rep.seed;
      d.matrix = pair.matrix;
      d.dialect = cfg.adapter.target;
      d.timestamp = now_iso8601();
      if (!cfg.out_dir.empty()) {
        const std::string dir = cfg.out_dir + "/discrepancy_run" +
                                std::to_string(run_index) + "_q" +
                                std::to_string(qi);
        write_bundle(dir, d);
      }
      std::lock_guard<std::mutex> lock(out_mutex);
      out.push_back(std::move(d));
    }
  }

  rep.timing.sdbms_ms = lp.sdbms_ms;
  rep.timing.total_ms = ms_since(run_start);
  return rep;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& config) {
  CampaignReport report;
  report.runs.resize(config.runs);
  if (!config.out_dir.empty()) ::mkdir(config.out_dir.c_str(), 0755);

  std::mutex out_mutex;
  const int workers =
      std::max(1, std::min<int>(config.workers,
                                static_cast<int>(config.runs)));
  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::uint64_t r = next.fetch_add(1);
      if (r >= config.runs) return;
      try {
        report.runs[r] =
            execute_run(config, r, report.discrepancies, out_mutex);
      } catch (const std::exception& e) {
        report.runs[r].run_index = r;
        report.runs[r].aborted = std::string("internal: ") + e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (const RunReport& r : report.runs) {
    report.total_verdicts += r.verdicts;
    report.total_discrepancies += r.discrepancies;
    report.timing.sdbms_ms += r.timing.sdbms_ms;
    report.timing.total_ms += r.timing.total_ms;
    if (r.aborted) report.aborted = true;
  }
  return report;
}

Result<std::vector<TimingRow>> timing_sweep(
    const CampaignConfig& config, const std::vector<std::uint64_t>& ns,
    int repetitions) {
  std::vector<TimingRow> rows;
  for (std::uint64_t n : ns) {
    CampaignConfig c = config;
    c.gen.geometry_count = n;
    c.runs = static_cast<std::uint64_t>(repetitions);
    c.out_dir.clear();  // measurement only
    CampaignReport rep = run_campaign(c);
    if (rep.aborted)
      return make_error(Errc::Transport, "timing run aborted");
    TimingRow row;
    row.n = n;
    row.mean_sdbms_ms = rep.timing.sdbms_ms / repetitions;
    row.mean_total_ms = rep.timing.total_ms / repetitions;
    row.ratio =
        rep.timing.total_ms > 0 ? rep.timing.sdbms_ms / rep.timing.total_ms : 0;
    rows.push_back(row);
  }
  return rows;
}

Result<std::pair<long long, long long>> replay_bundle(
    const Discrepancy& d, const AdapterOptions& adapter) {
  AdapterOptions o1 = adapter;
  AdapterOptions o2 = adapter;
  if (o1.target != "reference") {
    if (o1.database.empty()) {
      o1.database = "topotwin1";
      o2.database = "topotwin2";
    } else {
      o2.database = o1.database + "_twin";
    }
  }
  auto a1 = make_adapter(o1);
  if (!a1.ok()) return a1.error();
  auto a2 = make_adapter(o2);
  if (!a2.ok()) return a2.error();

  for (const std::string& sql : d.statements1)
    if (auto s = a1.value()->execute(sql); !s.ok())
      return make_error(s.error().code, "sdb1 replay: " + s.error().message);
  for (const std::string& sql : d.statements2)
    if (auto s = a2.value()->execute(sql); !s.ok())
      return make_error(s.error().code, "sdb2 replay: " + s.error().message);

  auto c1 = a1.value()->count_query(d.query);
  if (!c1.ok()) return c1.error();
  auto c2 = a2.value()->count_query(d.query);
  if (!c2.ok()) return c2.error();
  return std::make_pair(c1.value(), c2.value());
}

}  // namespace topotwin
