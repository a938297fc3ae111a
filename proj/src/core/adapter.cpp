#include "core/adapter.hpp"

#include <unistd.h>

#include <cassert>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "core/wkt.hpp"

namespace topotwin {

// ---------------------------------------------------------------------------
// Faults

bool FaultSpec::triggered(const Geometry& a, const Geometry& b) const {
  switch (trigger) {
    case Trigger::CoordinateAbove: {
      const Rational limit(threshold);
      auto below = [&](const Rational& v) { return v <= limit; };
      return !all_coords(a, below) || !all_coords(b, below);
    }
    case Trigger::TypeTag:
      return a.type == tag || b.type == tag;
    case Trigger::ElementCountAbove:
      return static_cast<long long>(a.elements.size()) > threshold ||
             static_cast<long long>(b.elements.size()) > threshold;
  }
  return false;
}

std::string FaultSpec::to_string() const {
  std::string t;
  switch (trigger) {
    case Trigger::CoordinateAbove:
      t = "coord_gt=" + std::to_string(threshold);
      break;
    case Trigger::TypeTag:
      t = std::string("type=") + type_tag(tag);
      break;
    case Trigger::ElementCountAbove:
      t = "elements_gt=" + std::to_string(threshold);
      break;
  }
  std::string p;
  switch (policy) {
    case Policy::Negate: p = "negate"; break;
    case Policy::AlwaysTrue: p = "always_true"; break;
    case Policy::AlwaysFalse: p = "always_false"; break;
  }
  std::string name = predicate_name(predicate);
  for (char& c : name) c = static_cast<char>(std::tolower(c));
  return name + ":" + t + ":" + p;
}

Result<FaultSpec> parse_fault_spec(const std::string& text) {
  auto fail = [&](const std::string& why) {
    return make_error(Errc::Config, "bad fault spec '" + text + "': " + why);
  };
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    return fail("expected predicate:trigger:policy");

  FaultSpec f;
  auto pred = predicate_from_name(parts[0]);
  if (!pred) return fail("unknown predicate " + parts[0]);
  f.predicate = *pred;

  const std::string& trig = parts[1];
  auto eq = trig.find('=');
  const std::string key = trig.substr(0, eq);
  const std::string val = eq == std::string::npos ? "" : trig.substr(eq + 1);
  if (key == "coord_gt") {
    f.trigger = FaultSpec::Trigger::CoordinateAbove;
    try {
      f.threshold = std::stoll(val);
    } catch (...) {
      return fail("bad threshold");
    }
  } else if (key == "elements_gt") {
    f.trigger = FaultSpec::Trigger::ElementCountAbove;
    try {
      f.threshold = std::stoll(val);
    } catch (...) {
      return fail("bad threshold");
    }
  } else if (key == "type") {
    f.trigger = FaultSpec::Trigger::TypeTag;
    auto t = type_from_tag(val);
    if (!t) return fail("unknown type tag " + val);
    f.tag = *t;
  } else {
    return fail("unknown trigger " + key);
  }

  if (parts[2] == "negate") f.policy = FaultSpec::Policy::Negate;
  else if (parts[2] == "always_true") f.policy = FaultSpec::Policy::AlwaysTrue;
  else if (parts[2] == "always_false") f.policy = FaultSpec::Policy::AlwaysFalse;
  else return fail("unknown policy " + parts[2]);
  return f;
}

// ---------------------------------------------------------------------------
// Reference adapter

ReferenceAdapter::ReferenceAdapter(std::vector<FaultSpec> faults,
                                   int statement_delay_ms)
    : dialect_(*find_dialect("reference")),
      faults_(std::move(faults)),
      delay_ms_(statement_delay_ms) {}

void ReferenceAdapter::delay() const {
  if (delay_ms_ > 0)
    std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
}

std::size_t ReferenceAdapter::row_count(const std::string& table) const {
  auto it = tables_.find(table);
  return it == tables_.end() ? 0 : it->second.size();
}

Status ReferenceAdapter::execute(const std::string& sql) {
  delay();
  auto stmt = parse_statement(sql);
  if (!stmt.ok())
    return make_error(Errc::Engine, "statement error: " + stmt.error().message);

  if (auto* c = std::get_if<CreateTableStmt>(&stmt.value())) {
    tables_[c->table].clear();
    relate_memo_.clear();
    return Status();
  }
  if (auto* d = std::get_if<DropTableStmt>(&stmt.value())) {
    tables_.erase(d->table);
    relate_memo_.clear();
    return Status();
  }
  if (auto* del = std::get_if<DeleteStmt>(&stmt.value())) {
    auto it = tables_.find(del->table);
    if (it == tables_.end())
      return make_error(Errc::Engine, "no such table: " + del->table);
    auto& rows = it->second;
    for (auto r = rows.begin(); r != rows.end();) {
      if (r->id == del->id) r = rows.erase(r);
      else ++r;
    }
    relate_memo_.clear();
    return Status();
  }
  if (auto* ins = std::get_if<InsertStmt>(&stmt.value())) {
    auto it = tables_.find(ins->table);
    if (it == tables_.end())
      return make_error(Errc::Engine, "no such table: " + ins->table);
    auto g = parse_wkt(ins->wkt);
    if (!g.ok())
      return make_error(Errc::Engine, "bad WKT: " + g.error().message);
    if (auto v = validate_geometry(g.value()); !v.ok())
      return make_error(Errc::InvalidGeometry, v.error().message);
    it->second.push_back({ins->id, g.take()});
    relate_memo_.clear();
    return Status();
  }
  return make_error(Errc::Engine, "not an executable statement");
}

bool ReferenceAdapter::evaluate(PredicateName pred, const Geometry& a,
                                const Geometry& b, const std::string& key_a,
                                const std::string& key_b, bool faulted) {
  DE9IMMatrix m;
  const bool swapped = key_b < key_a;
  const auto memo_key = swapped ? std::make_pair(key_b, key_a)
                                : std::make_pair(key_a, key_b);
  auto it = relate_memo_.find(memo_key);
  if (it != relate_memo_.end()) {
    m = swapped ? it->second.transpose() : it->second;
  } else {
    auto r = swapped ? relate(b, a) : relate(a, b);
    // Invalid shapes never reach storage, so relate cannot refuse here.
    assert(r.ok());
    relate_memo_.emplace(memo_key, r.value());
    m = swapped ? r.value().transpose() : r.value();
  }
  bool verdict = evaluate_predicate(pred, m, dimension(a), dimension(b));
  if (faulted) {
    for (const FaultSpec& f : faults_) {
      if (f.predicate != pred || !f.triggered(a, b)) continue;
      switch (f.policy) {
        case FaultSpec::Policy::Negate: verdict = !verdict; break;
        case FaultSpec::Policy::AlwaysTrue: verdict = true; break;
        case FaultSpec::Policy::AlwaysFalse: verdict = false; break;
      }
    }
  }
  return verdict;
}

Result<long long> ReferenceAdapter::run_count(const CountQueryStmt& q,
                                              bool faulted) {
  auto t1 = tables_.find(q.table1);
  auto t2 = tables_.find(q.table2);
  if (t1 == tables_.end() || t2 == tables_.end())
    return make_error(Errc::Engine, "no such table in query");

  long long count = 0;
  for (const StoredRow& r1 : t1->second) {
    for (const StoredRow& r2 : t2->second) {
      const std::string k1 = q.table1 + "#" + std::to_string(r1.id);
      const std::string k2 = q.table2 + "#" + std::to_string(r2.id);
      const bool hit =
          q.left_is_table1
              ? evaluate(q.pred, r1.geom, r2.geom, k1, k2, faulted)
              : evaluate(q.pred, r2.geom, r1.geom, k2, k1, faulted);
      if (hit) ++count;
    }
  }
  return count;
}

Result<long long> ReferenceAdapter::count_query(const std::string& sql) {
  delay();
  auto stmt = parse_statement(sql);
  if (!stmt.ok())
    return make_error(Errc::Engine, "statement error: " + stmt.error().message);
  auto* q = std::get_if<CountQueryStmt>(&stmt.value());
  if (!q) return make_error(Errc::Engine, "not a count query");
  return run_count(*q, /*faulted=*/true);
}

Result<long long> ReferenceAdapter::count_query_unfaulted(
    const std::string& sql) {
  auto stmt = parse_statement(sql);
  if (!stmt.ok())
    return make_error(Errc::Engine, "statement error: " + stmt.error().message);
  auto* q = std::get_if<CountQueryStmt>(&stmt.value());
  if (!q) return make_error(Errc::Engine, "not a count query");
  return run_count(*q, /*faulted=*/false);
}

// ---------------------------------------------------------------------------
// Subprocess adapter

SubprocessAdapter::SubprocessAdapter(const Dialect& dialect,
                                     std::string command)
    : dialect_(dialect), command_(std::move(command)) {}

Result<SubprocessAdapter::RunOutcome> SubprocessAdapter::run(
    const std::string& sql) {
  char dir_template[] = "/tmp/topotwin.XXXXXX";
  const char* dir = mkdtemp(dir_template);
  if (!dir) return make_error(Errc::Transport, "cannot create temp dir");
  const std::string in = std::string(dir) + "/in.sql";
  const std::string out = std::string(dir) + "/out.txt";
  const std::string err = std::string(dir) + "/err.txt";
  {
    std::ofstream f(in);
    f << sql << "\n";
  }
  const std::string cmd =
      command_ + " < " + in + " > " + out + " 2> " + err;
  const int rc = std::system(cmd.c_str());

  RunOutcome o;
  o.exit_code = rc;
  {
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    o.out = ss.str();
  }
  {
    std::ifstream f(err);
    std::stringstream ss;
    ss << f.rdbuf();
    o.err = ss.str();
  }
  std::remove(in.c_str());
  std::remove(out.c_str());
  std::remove(err.c_str());
  ::rmdir(dir);
  return o;
}

Status SubprocessAdapter::classify(const RunOutcome& o) const {
  if (o.exit_code == 0) return Status();
  for (const std::string& marker : dialect_.invalid_markers)
    if (o.err.find(marker) != std::string::npos)
      return make_error(Errc::InvalidGeometry, o.err);
  if (o.exit_code == 127 || o.exit_code < 0)
    return make_error(Errc::Transport, "client failed: " + o.err);
  return make_error(Errc::Engine, o.err);
}

Status SubprocessAdapter::execute(const std::string& sql) {
  auto o = run(sql);
  if (!o.ok()) return o.error();
  return classify(o.value());
}

Result<long long> SubprocessAdapter::count_query(const std::string& sql) {
  auto o = run(sql);
  if (!o.ok()) return o.error();
  if (auto s = classify(o.value()); !s.ok()) return s.error();
  // last nonempty line of stdout is the count
  std::istringstream in(o.value().out);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  try {
    return std::stoll(last);
  } catch (...) {
    return make_error(Errc::Engine, "cannot parse count from: " + last);
  }
}

Result<std::unique_ptr<Adapter>> make_adapter(const AdapterOptions& opts) {
  if (opts.target == "reference") {
    return std::unique_ptr<Adapter>(
        new ReferenceAdapter(opts.faults, opts.statement_delay_ms));
  }
  const Dialect* d = find_dialect(opts.target);
  if (!d)
    return make_error(Errc::Config, "unknown target dialect: " + opts.target);
  if (opts.client_command.empty())
    return make_error(Errc::Config,
                      "target '" + opts.target + "' needs client_command");
  std::string cmd = opts.client_command;
  const std::string key = "{database}";
  for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key))
    cmd.replace(pos, key.size(), opts.database);
  return std::unique_ptr<Adapter>(new SubprocessAdapter(*d, cmd));
}

}  // namespace topotwin
