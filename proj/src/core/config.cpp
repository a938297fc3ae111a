#include "core/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace topotwin {

namespace {

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.pop_back();
  return s;
}

Error bad(const std::string& key, const std::string& why) {
  return make_error(Errc::Config, "config key '" + key + "': " + why);
}

}  // namespace

Result<ConfigStore> ConfigStore::from_text(const std::string& text) {
  ConfigStore store;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      return make_error(Errc::Config,
                        "line " + std::to_string(lineno) + ": expected key = value");
    store.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return store;
}

Result<ConfigStore> ConfigStore::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) return make_error(Errc::Config, "cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

void ConfigStore::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool ConfigStore::has(const std::string& key) const {
  return kv_.count(key) > 0;
}

const std::string* ConfigStore::get(const std::string& key) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? nullptr : &it->second;
}

const std::vector<ConfigKeyDoc>& config_key_docs() {
  static const std::vector<ConfigKeyDoc> docs = {
      {"target", "reference", "dialect: reference, postgis, mysql, duckdb"},
      {"seed", "0", "base seed; run r uses seed + r"},
      {"runs", "10", "campaign runs"},
      {"queries", "100", "queries per run"},
      {"n", "50", "geometries per database"},
      {"m", "3", "tables per database"},
      {"coord_min", "0", "lower bound of generated integer coordinates"},
      {"coord_max", "1000", "upper bound of generated integer coordinates"},
      {"max_points_per_line", "8", "cap on linestring points"},
      {"max_rings", "2", "cap on polygon rings"},
      {"max_elements", "4", "cap on container elements"},
      {"derivative_probability", "0.5",
       "chance a geometry is derived instead of random"},
      {"matrix_entry_min", "-5", "lower bound of matrix entries"},
      {"matrix_entry_max", "5", "upper bound of matrix entries"},
      {"workers", "1", "parallel campaign workers"},
      {"predicates", "",
       "comma list restricting the predicate pool (default: all the dialect "
       "supports)"},
      {"oracle_crosscheck", "false",
       "also compare SDB1 counts against the built-in oracle"},
      {"fault", "",
       "reference only: predicate:trigger:policy wrong-answer injection"},
      {"statement_delay_ms", "0",
       "reference only: artificial per-statement latency"},
      {"client_command", "",
       "real engines: SQL client command, {database} substituted"},
      {"database", "", "real engines: database name for SDB1"},
      {"out", "", "report/bundle output directory"},
  };
  return docs;
}

Result<CampaignConfig> make_campaign_config(const ConfigStore& store) {
  for (const auto& [key, value] : store.entries()) {
    (void)value;
    bool known = false;
    for (const auto& doc : config_key_docs()) known = known || key == doc.key;
    if (!known) return make_error(Errc::Config, "unknown config key: " + key);
  }

  CampaignConfig cfg;
  auto get_u64 = [&](const char* key, std::uint64_t* out) -> Status {
    if (const std::string* v = store.get(key)) {
      try {
        *out = std::stoull(*v);
      } catch (...) {
        return bad(key, "expected an unsigned integer, got '" + *v + "'");
      }
    }
    return Status();
  };
  auto get_ll = [&](const char* key, long long* out) -> Status {
    if (const std::string* v = store.get(key)) {
      try {
        *out = std::stoll(*v);
      } catch (...) {
        return bad(key, "expected an integer, got '" + *v + "'");
      }
    }
    return Status();
  };
  auto get_int = [&](const char* key, int* out) -> Status {
    long long v = *out;
    if (auto s = get_ll(key, &v); !s.ok()) return s;
    *out = static_cast<int>(v);
    return Status();
  };

  if (auto s = get_u64("seed", &cfg.gen.seed); !s.ok()) return s.error();
  if (auto s = get_u64("runs", &cfg.runs); !s.ok()) return s.error();
  if (auto s = get_u64("queries", &cfg.queries_per_run); !s.ok())
    return s.error();
  if (auto s = get_u64("n", &cfg.gen.geometry_count); !s.ok()) return s.error();
  if (auto s = get_u64("m", &cfg.gen.table_count); !s.ok()) return s.error();
  if (auto s = get_ll("coord_min", &cfg.gen.coord_min); !s.ok())
    return s.error();
  if (auto s = get_ll("coord_max", &cfg.gen.coord_max); !s.ok())
    return s.error();
  if (auto s = get_int("max_points_per_line", &cfg.gen.max_points_per_line);
      !s.ok())
    return s.error();
  if (auto s = get_int("max_rings", &cfg.gen.max_rings); !s.ok())
    return s.error();
  if (auto s = get_int("max_elements", &cfg.gen.max_elements); !s.ok())
    return s.error();
  if (auto s = get_ll("matrix_entry_min", &cfg.matrix_entry_min); !s.ok())
    return s.error();
  if (auto s = get_ll("matrix_entry_max", &cfg.matrix_entry_max); !s.ok())
    return s.error();
  if (auto s = get_int("workers", &cfg.workers); !s.ok()) return s.error();
  if (auto s = get_int("statement_delay_ms", &cfg.adapter.statement_delay_ms);
      !s.ok())
    return s.error();

  if (const std::string* v = store.get("derivative_probability")) {
    auto r = rational_from_decimal(*v);
    if (!r || *r < 0 || *r > 1)
      return bad("derivative_probability", "expected a decimal in [0,1]");
    cfg.gen.derivative_probability = *r;
  }
  if (const std::string* v = store.get("oracle_crosscheck")) {
    if (*v == "true") cfg.oracle_crosscheck = true;
    else if (*v == "false") cfg.oracle_crosscheck = false;
    else return bad("oracle_crosscheck", "expected true or false");
  }
  if (const std::string* v = store.get("target")) cfg.adapter.target = *v;
  if (const std::string* v = store.get("client_command"))
    cfg.adapter.client_command = *v;
  if (const std::string* v = store.get("database")) cfg.adapter.database = *v;
  if (const std::string* v = store.get("out")) cfg.out_dir = *v;
  if (const std::string* v = store.get("fault"); v && !v->empty()) {
    auto f = parse_fault_spec(*v);
    if (!f.ok()) return f.error();
    cfg.adapter.faults.push_back(f.take());
  }

  const Dialect* dialect = find_dialect(cfg.adapter.target);
  if (!dialect)
    return bad("target", "unknown dialect '" + cfg.adapter.target + "'");
  if (const std::string* v = store.get("predicates"); v && !v->empty()) {
    std::istringstream in(*v);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      auto p = predicate_from_name(trim(tok));
      if (!p) return bad("predicates", "unknown predicate '" + tok + "'");
      bool ok = false;
      for (PredicateName sp : dialect->supported) ok = ok || sp == *p;
      if (!ok)
        return bad("predicates", "dialect " + dialect->name +
                                     " does not support " + trim(tok));
      cfg.predicates.push_back(*p);
    }
    if (cfg.predicates.empty())
      return bad("predicates", "the list must not be empty");
  }

  if (cfg.gen.geometry_count < 1) return bad("n", "must be at least 1");
  if (cfg.gen.table_count < 1) return bad("m", "must be at least 1");
  if (cfg.gen.coord_min > cfg.gen.coord_max)
    return bad("coord_min", "range is empty");
  if (cfg.matrix_entry_min > cfg.matrix_entry_max)
    return bad("matrix_entry_min", "range is empty");
  if (cfg.matrix_entry_min == 0 && cfg.matrix_entry_max == 0)
    return bad("matrix_entry_min", "a zero-only range cannot be invertible");
  if (cfg.workers < 1) return bad("workers", "must be at least 1");
  if (cfg.gen.max_points_per_line < 2)
    return bad("max_points_per_line", "must be at least 2");
  if (cfg.gen.max_rings < 1) return bad("max_rings", "must be at least 1");
  if (cfg.gen.max_elements < 1) return bad("max_elements", "must be at least 1");
  if (!cfg.adapter.faults.empty() && cfg.adapter.target != "reference")
    return bad("fault", "fault injection exists only on the reference target");
  if (cfg.adapter.statement_delay_ms < 0)
    return bad("statement_delay_ms", "must be nonnegative");
  if (cfg.adapter.statement_delay_ms > 0 && cfg.adapter.target != "reference")
    return bad("statement_delay_ms", "delay exists only on the reference target");
  return cfg;
}

}  // namespace topotwin
