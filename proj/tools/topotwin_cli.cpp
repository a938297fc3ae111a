// Command-line front end. Talks to the core strictly through the C API in
// topotwin.h; exit codes: 0 = clean, 1 = discrepancies found, 2 =
// operational failure.

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "topotwin.h"

namespace {

struct ConfigHandle {
  ttw_config* cfg = ttw_config_new();
  ~ConfigHandle() { ttw_config_free(cfg); }
};

struct CommonOpts {
  std::string config_path;
  std::string target;
  std::string seed;
  std::string workers;
  std::string queries;
  std::string runs;
  std::string n;
  std::string m;
  std::string fault;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--config", o->config_path, "config file (key = value)");
  cmd->add_option("--target", o->target,
                  "dialect: reference, postgis, mysql, duckdb");
  cmd->add_option("--seed", o->seed, "base seed");
  cmd->add_option("--workers", o->workers, "parallel workers");
  cmd->add_option("--queries", o->queries, "queries per run");
  cmd->add_option("--runs", o->runs, "campaign runs");
  cmd->add_option("--n", o->n, "geometries per database");
  cmd->add_option("--m", o->m, "tables per database");
  cmd->add_option("--fault", o->fault,
                  "reference only: predicate:trigger:policy");
  cmd->add_option("--out", o->out, "output directory");
}

// Flags beat the config file; environment variables are ignored on purpose
// so a reported command line reproduces the run exactly.
int apply_common(const CommonOpts& o, ttw_config* cfg) {
  if (!o.config_path.empty() &&
      ttw_config_load(cfg, o.config_path.c_str()) != TTW_OK) {
    std::fprintf(stderr, "error: %s\n", ttw_last_error());
    return 2;
  }
  const std::pair<const char*, const std::string*> overrides[] = {
      {"target", &o.target}, {"seed", &o.seed},   {"workers", &o.workers},
      {"queries", &o.queries}, {"runs", &o.runs}, {"n", &o.n},
      {"m", &o.m},           {"fault", &o.fault}, {"out", &o.out},
  };
  for (const auto& [key, value] : overrides)
    if (!value->empty()) ttw_config_set(cfg, key, value->c_str());
  return 0;
}

int cmd_run(const CommonOpts& o) {
  ConfigHandle h;
  if (int rc = apply_common(o, h.cfg)) return rc;

  ttw_campaign_stats stats{};
  ttw_status st = ttw_campaign_run(h.cfg, &stats);
  if (st != TTW_OK) {
    std::fprintf(stderr, "error: %s\n", ttw_last_error());
    std::printf("RESULT status=error runs=%" PRIu64 " verdicts=%" PRIu64
                " discrepancies=%" PRIu64 "\n",
                stats.runs, stats.verdicts, stats.discrepancies);
    return 2;
  }
  const char* seed = ttw_config_get(h.cfg, "seed");
  const char* out = ttw_config_get(h.cfg, "out");
  std::printf("RESULT status=ok runs=%" PRIu64 " verdicts=%" PRIu64
              " discrepancies=%" PRIu64 " skipped_rows=%" PRIu64
              " skipped_queries=%" PRIu64 " divergent_errors=%" PRIu64
              " sdbms_ms=%.1f total_ms=%.1f seed=%s out=%s\n",
              stats.runs, stats.verdicts, stats.discrepancies,
              stats.skipped_rows, stats.skipped_queries,
              stats.divergent_errors, stats.sdbms_ms, stats.total_ms,
              seed ? seed : "0", out && *out ? out : "-");
  return stats.discrepancies > 0 ? 1 : 0;
}

int cmd_replay(const CommonOpts& o, const std::string& bundle) {
  ConfigHandle h;
  if (int rc = apply_common(o, h.cfg)) return rc;
  long long c1 = 0, c2 = 0;
  ttw_status st = ttw_replay(h.cfg, bundle.c_str(), &c1, &c2);
  if (st != TTW_OK) {
    std::fprintf(stderr, "error: %s\n", ttw_last_error());
    return 2;
  }
  std::printf("count1=%lld count2=%lld\n", c1, c2);
  std::printf("RESULT status=%s count1=%lld count2=%lld bundle=%s\n",
              c1 == c2 ? "ok" : "discrepancy", c1, c2, bundle.c_str());
  return c1 == c2 ? 0 : 1;
}

int cmd_reduce(const CommonOpts& o, const std::string& bundle) {
  ConfigHandle h;
  if (int rc = apply_common(o, h.cfg)) return rc;
  ttw_status st = ttw_reduce(h.cfg, bundle.c_str());
  if (st != TTW_OK) {
    std::fprintf(stderr, "error: %s\n", ttw_last_error());
    return 2;
  }
  long long c1 = 0, c2 = 0;
  if (ttw_replay(h.cfg, bundle.c_str(), &c1, &c2) != TTW_OK) {
    std::fprintf(stderr, "error: reduced bundle does not replay: %s\n",
                 ttw_last_error());
    return 2;
  }
  std::printf("RESULT status=reduced count1=%lld count2=%lld bundle=%s\n", c1,
              c2, bundle.c_str());
  return 0;
}

int cmd_timing(const CommonOpts& o) {
  ConfigHandle h;
  if (int rc = apply_common(o, h.cfg)) return rc;
  const uint64_t ns[] = {1, 10, 50, 100};
  ttw_timing_row rows[4] = {};
  ttw_status st = ttw_timing_sweep(h.cfg, ns, 4, 10, rows);
  if (st != TTW_OK) {
    std::fprintf(stderr, "error: %s\n", ttw_last_error());
    return 2;
  }
  std::printf("%8s %16s %16s %8s\n", "N", "sdbms_ms", "total_ms", "ratio");
  for (const auto& r : rows)
    std::printf("%8" PRIu64 " %16.2f %16.2f %8.3f\n", r.n, r.mean_sdbms_ms,
                r.mean_total_ms, r.ratio);
  std::printf("RESULT status=ok sweep=1,10,50,100 reps=10\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topotwin: metamorphic testing for spatial database engines"};
  app.require_subcommand(1);

  CommonOpts run_opts, replay_opts, reduce_opts, timing_opts;
  std::string replay_bundle, reduce_bundle;

  CLI::App* run = app.add_subcommand("run", "generate twin databases and hunt "
                                            "for count mismatches");
  add_common(run, &run_opts);

  CLI::App* replay =
      app.add_subcommand("replay", "re-execute a reproduction bundle");
  replay->add_option("bundle", replay_bundle, "bundle directory")->required();
  add_common(replay, &replay_opts);

  CLI::App* reduce =
      app.add_subcommand("reduce", "minimize a reproduction bundle in place");
  reduce->add_option("bundle", reduce_bundle, "bundle directory")->required();
  add_common(reduce, &reduce_opts);

  CLI::App* timing = app.add_subcommand(
      "timing", "N-sweep report of engine time vs. total time");
  add_common(timing, &timing_opts);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(run_opts);
  if (replay->parsed()) return cmd_replay(replay_opts, replay_bundle);
  if (reduce->parsed()) return cmd_reduce(reduce_opts, reduce_bundle);
  if (timing->parsed()) return cmd_timing(timing_opts);
  return 2;
}
