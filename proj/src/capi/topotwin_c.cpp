#include "topotwin.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "core/canonical.hpp"
#include "core/config.hpp"
#include "core/harness.hpp"
#include "core/oracle.hpp"
#include "core/reducer.hpp"
#include "core/wkt.hpp"

namespace {

using namespace topotwin;

thread_local std::string g_last_error = "";

ttw_status to_status(Errc c) {
  switch (c) {
    case Errc::ParseSyntax:
    case Errc::ParseSemantic: return TTW_ERR_PARSE;
    case Errc::InvalidGeometry: return TTW_ERR_INVALID_GEOMETRY;
    case Errc::Unprintable: return TTW_ERR_UNSUPPORTED;
    case Errc::Unsupported: return TTW_ERR_UNSUPPORTED;
    case Errc::Config: return TTW_ERR_CONFIG;
    case Errc::Transport: return TTW_ERR_TRANSPORT;
    case Errc::Engine: return TTW_ERR_ENGINE;
    case Errc::BadBundle: return TTW_ERR_BAD_BUNDLE;
    case Errc::NotReproducing: return TTW_ERR_NOT_REPRODUCING;
    case Errc::Internal: return TTW_ERR_INTERNAL;
  }
  return TTW_ERR_INTERNAL;
}

ttw_status fail(const Error& e) {
  g_last_error = e.message;
  return to_status(e.code);
}

ttw_status fail_msg(ttw_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

long write_out(const std::string& text, char* buf, size_t cap) {
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return static_cast<long>(text.size());
}

}  // namespace

struct ttw_config {
  topotwin::ConfigStore store;
};

extern "C" {

const char* ttw_version(void) { return "0.1.0"; }

const char* ttw_last_error(void) { return g_last_error.c_str(); }

ttw_config* ttw_config_new(void) { return new ttw_config(); }

void ttw_config_free(ttw_config* cfg) { delete cfg; }

ttw_status ttw_config_load(ttw_config* cfg, const char* path) {
  if (!cfg || !path) return fail_msg(TTW_ERR_CONFIG, "null argument");
  auto loaded = ConfigStore::load_file(path);
  if (!loaded.ok()) return fail(loaded.error());
  for (const auto& [k, v] : loaded.value().entries()) cfg->store.set(k, v);
  return TTW_OK;
}

ttw_status ttw_config_set(ttw_config* cfg, const char* key,
                          const char* value) {
  if (!cfg || !key || !value) return fail_msg(TTW_ERR_CONFIG, "null argument");
  cfg->store.set(key, value);
  return TTW_OK;
}

const char* ttw_config_get(const ttw_config* cfg, const char* key) {
  if (!cfg || !key) return nullptr;
  const std::string* v = cfg->store.get(key);
  return v ? v->c_str() : nullptr;
}

ttw_status ttw_campaign_run(const ttw_config* cfg,
                            ttw_campaign_stats* stats) try {
  if (!cfg) return fail_msg(TTW_ERR_CONFIG, "null config");
  auto campaign = make_campaign_config(cfg->store);
  if (!campaign.ok()) return fail(campaign.error());

  CampaignReport report = run_campaign(campaign.value());

  if (stats) {
    *stats = ttw_campaign_stats{};
    stats->runs = report.runs.size();
    stats->verdicts = report.total_verdicts;
    stats->discrepancies = report.total_discrepancies;
    for (const RunReport& r : report.runs) {
      stats->skipped_rows += r.skipped_rows;
      stats->skipped_queries += r.skipped_queries;
      stats->divergent_errors += r.divergent_errors;
      stats->oracle_mismatches += r.oracle_mismatches;
    }
    stats->aborted = report.aborted ? 1 : 0;
    stats->sdbms_ms = report.timing.sdbms_ms;
    stats->total_ms = report.timing.total_ms;
  }

  if (!campaign.value().out_dir.empty()) {
    std::ofstream f(campaign.value().out_dir + "/report.txt");
    f << "target = " << campaign.value().adapter.target << "\n"
      << "base_seed = " << campaign.value().gen.seed << "\n";
    for (const RunReport& r : report.runs) {
      f << "run " << r.run_index << ": seed=" << r.seed
        << " verdicts=" << r.verdicts << " discrepancies=" << r.discrepancies
        << " skipped_rows=" << r.skipped_rows
        << " skipped_queries=" << r.skipped_queries
        << " divergent_errors=" << r.divergent_errors
        << " sdbms_ms=" << r.timing.sdbms_ms
        << " total_ms=" << r.timing.total_ms;
      if (r.aborted) f << " ABORTED: " << *r.aborted;
      f << "\n";
    }
    f << "total: verdicts=" << report.total_verdicts
      << " discrepancies=" << report.total_discrepancies << "\n";
  }

  if (report.aborted) {
    for (const RunReport& r : report.runs)
      if (r.aborted) return fail_msg(TTW_ERR_TRANSPORT, *r.aborted);
    return fail_msg(TTW_ERR_TRANSPORT, "campaign aborted");
  }
  return TTW_OK;
} catch (const std::exception& e) {
  return fail_msg(TTW_ERR_INTERNAL, e.what());
}

ttw_status ttw_replay(const ttw_config* cfg, const char* bundle_dir,
                      long long* count1, long long* count2) try {
  if (!cfg || !bundle_dir) return fail_msg(TTW_ERR_CONFIG, "null argument");
  auto campaign = make_campaign_config(cfg->store);
  if (!campaign.ok()) return fail(campaign.error());
  auto bundle = read_bundle(bundle_dir);
  if (!bundle.ok()) return fail(bundle.error());
  auto counts = replay_bundle(bundle.value(), campaign.value().adapter);
  if (!counts.ok()) return fail(counts.error());
  if (count1) *count1 = counts.value().first;
  if (count2) *count2 = counts.value().second;
  return TTW_OK;
} catch (const std::exception& e) {
  return fail_msg(TTW_ERR_INTERNAL, e.what());
}

ttw_status ttw_reduce(const ttw_config* cfg, const char* bundle_dir) try {
  if (!cfg || !bundle_dir) return fail_msg(TTW_ERR_CONFIG, "null argument");
  auto campaign = make_campaign_config(cfg->store);
  if (!campaign.ok()) return fail(campaign.error());
  auto bundle = read_bundle(bundle_dir);
  if (!bundle.ok()) return fail(bundle.error());

  ReduceOptions opts;
  opts.adapter = campaign.value().adapter;
  auto reduced = reduce(bundle.value(), opts);
  if (!reduced.ok()) return fail(reduced.error());

  // Archive the pre-reduction bundle once.
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path dir(bundle_dir);
  const fs::path archive = dir / "pre_reduction";
  if (!fs::exists(archive)) {
    fs::create_directories(archive, ec);
    for (const char* name : {"sdb1.sql", "sdb2.sql", "query.sql", "matrix.txt",
                             "meta"}) {
      fs::copy_file(dir / name, archive / name,
                    fs::copy_options::overwrite_existing, ec);
    }
  }
  if (auto s = write_bundle(bundle_dir, reduced.value()); !s.ok())
    return fail(s.error());
  return TTW_OK;
} catch (const std::exception& e) {
  return fail_msg(TTW_ERR_INTERNAL, e.what());
}

ttw_status ttw_timing_sweep(const ttw_config* cfg, const uint64_t* n_values,
                            size_t n_count, int repetitions,
                            ttw_timing_row* rows) try {
  if (!cfg || !n_values || !rows || n_count == 0 || repetitions < 1)
    return fail_msg(TTW_ERR_CONFIG, "bad timing sweep arguments");
  auto campaign = make_campaign_config(cfg->store);
  if (!campaign.ok()) return fail(campaign.error());
  std::vector<std::uint64_t> ns(n_values, n_values + n_count);
  auto result = timing_sweep(campaign.value(), ns, repetitions);
  if (!result.ok()) return fail(result.error());
  for (size_t i = 0; i < n_count; ++i) {
    rows[i].n = result.value()[i].n;
    rows[i].mean_sdbms_ms = result.value()[i].mean_sdbms_ms;
    rows[i].mean_total_ms = result.value()[i].mean_total_ms;
    rows[i].ratio = result.value()[i].ratio;
  }
  return TTW_OK;
} catch (const std::exception& e) {
  return fail_msg(TTW_ERR_INTERNAL, e.what());
}

long ttw_canonical_wkt(const char* wkt, char* buf, size_t cap) {
  if (!wkt) return -TTW_ERR_PARSE;
  auto g = parse_wkt(wkt);
  if (!g.ok()) return -fail(g.error());
  auto out = to_wkt(canonicalize(g.value()));
  if (!out.ok()) return -fail(out.error());
  return write_out(out.value(), buf, cap);
}

long ttw_transform_wkt(const char* wkt, const char* matrix_text, char* buf,
                       size_t cap) {
  if (!wkt || !matrix_text) return -TTW_ERR_PARSE;
  auto g = parse_wkt(wkt);
  if (!g.ok()) return -fail(g.error());
  auto m = MappingMatrix::deserialize(matrix_text);
  if (!m.ok()) return -fail(m.error());
  if (m.value().dim() != 2)
    return -fail_msg(TTW_ERR_UNSUPPORTED, "geometry transforms need a 3x3 matrix");
  auto out = to_wkt(m.value().apply(g.value()));
  if (!out.ok()) return -fail(out.error());
  return write_out(out.value(), buf, cap);
}

ttw_status ttw_relate(const char* wkt1, const char* wkt2, char out[10]) {
  if (!wkt1 || !wkt2 || !out) return fail_msg(TTW_ERR_PARSE, "null argument");
  auto g1 = parse_wkt(wkt1);
  if (!g1.ok()) return fail(g1.error());
  auto g2 = parse_wkt(wkt2);
  if (!g2.ok()) return fail(g2.error());
  auto m = relate(g1.value(), g2.value());
  if (!m.ok()) return fail(m.error());
  const std::string code = m.value().code();
  std::memcpy(out, code.c_str(), 10);
  return TTW_OK;
}

ttw_status ttw_predicate(const char* name, const char* wkt1, const char* wkt2,
                         int* result) {
  if (!name || !wkt1 || !wkt2 || !result)
    return fail_msg(TTW_ERR_PARSE, "null argument");
  auto pred = predicate_from_name(name);
  if (!pred) return fail_msg(TTW_ERR_UNSUPPORTED,
                             std::string("unknown predicate: ") + name);
  auto g1 = parse_wkt(wkt1);
  if (!g1.ok()) return fail(g1.error());
  auto g2 = parse_wkt(wkt2);
  if (!g2.ok()) return fail(g2.error());
  auto v = named_predicate(*pred, g1.value(), g2.value());
  if (!v.ok()) return fail(v.error());
  *result = v.value() ? 1 : 0;
  return TTW_OK;
}

}  // extern "C"
