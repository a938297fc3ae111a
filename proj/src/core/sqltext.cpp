#include "core/sqltext.hpp"

#include <algorithm>
#include <cctype>

namespace topotwin {

namespace {

std::vector<PredicateName> all_predicates() {
  return {kAllPredicates.begin(), kAllPredicates.end()};
}

std::vector<PredicateName> without_covers() {
  std::vector<PredicateName> out;
  for (PredicateName p : kAllPredicates)
    if (p != PredicateName::Covers && p != PredicateName::CoveredBy)
      out.push_back(p);
  return out;
}

const std::vector<Dialect>& dialects() {
  static const std::vector<Dialect> table = {
      {"reference", LiteralStyle::PlainQuote, all_predicates(), {"invalid"}},
      {"postgis",
       LiteralStyle::QuoteCast,
       all_predicates(),
       {"Self-intersection", "invalid geometry", "TopologyException"}},
      {"mysql",
       LiteralStyle::GeomFromText,
       without_covers(),
       {"Invalid GIS data"}},
      {"duckdb",
       LiteralStyle::GeomFromText,
       all_predicates(),
       {"invalid", "Self-intersection"}},
  };
  return table;
}

}  // namespace

const Dialect* find_dialect(const std::string& name) {
  std::string lower = name;
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  for (const Dialect& d : dialects())
    if (d.name == lower) return &d;
  return nullptr;
}

std::vector<std::string> dialect_names() {
  std::vector<std::string> out;
  for (const Dialect& d : dialects()) out.push_back(d.name);
  return out;
}

std::string render_create_table(const std::string& table) {
  return "CREATE TABLE " + table + " (id int, g geometry);";
}

std::string render_drop_table(const std::string& table) {
  return "DROP TABLE IF EXISTS " + table + ";";
}

std::string render_insert(const Dialect& d, const std::string& table,
                          long long id, const std::string& wkt) {
  std::string lit;
  switch (d.literal) {
    case LiteralStyle::PlainQuote: lit = "'" + wkt + "'"; break;
    case LiteralStyle::QuoteCast: lit = "'" + wkt + "'::geometry"; break;
    case LiteralStyle::GeomFromText:
      lit = "ST_GeomFromText('" + wkt + "')";
      break;
  }
  return "INSERT INTO " + table + " (id, g) VALUES (" + std::to_string(id) +
         ", " + lit + ");";
}

std::string render_delete(const std::string& table, long long id) {
  return "DELETE FROM " + table + " WHERE id = " + std::to_string(id) + ";";
}

std::string render_count_query(const std::string& table1,
                               const std::string& table2,
                               PredicateName pred) {
  const std::string fn = std::string("ST_") + predicate_name(pred);
  if (table1 == table2) {
    return "SELECT COUNT(*) FROM " + table1 + " AS a1 JOIN " + table2 +
           " AS a2 ON " + fn + "(a1.g,a2.g);";
  }
  return "SELECT COUNT(*) FROM " + table1 + " JOIN " + table2 + " ON " + fn +
         "(" + table1 + ".g," + table2 + ".g);";
}

// ---------------------------------------------------------------------------
// Statement parsing

namespace {

struct Token {
  enum Kind { Word, Number, String, Symbol, End } kind = End;
  std::string text;  // words upper-cased; strings without quotes
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Result<Token> next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ >= text_.size()) return Token{Token::End, ""};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string w;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        w.push_back(static_cast<char>(std::toupper(text_[pos_])));
        ++pos_;
      }
      return Token{Token::Word, w};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::string n;
      n.push_back(c);
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        n.push_back(text_[pos_++]);
      return Token{Token::Number, n};
    }
    if (c == '\'') {
      std::string s;
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '\'') s.push_back(text_[pos_++]);
      if (pos_ >= text_.size())
        return make_error(Errc::ParseSyntax, "unterminated string literal", pos_);
      ++pos_;
      return Token{Token::String, s};
    }
    ++pos_;
    return Token{Token::Symbol, std::string(1, c)};
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

class StmtParser {
 public:
  explicit StmtParser(const std::string& text) : lex_(text) {}

  Result<Statement> parse() {
    auto kw = expect_word();
    if (!kw.ok()) return kw.error();
    const std::string& k = kw.value();
    if (k == "CREATE") return parse_create();
    if (k == "DROP") return parse_drop();
    if (k == "INSERT") return parse_insert();
    if (k == "DELETE") return parse_delete();
    if (k == "SELECT") return parse_select();
    return err("unsupported statement: " + k);
  }

 private:
  Error err(std::string msg) {
    return make_error(Errc::ParseSyntax, std::move(msg));
  }

  Result<Token> take() {
    if (pending_) {
      Token t = *pending_;
      pending_.reset();
      return t;
    }
    return lex_.next();
  }
  void put_back(Token t) { pending_ = std::move(t); }

  Result<std::string> expect_word() {
    auto t = take();
    if (!t.ok()) return t.error();
    if (t.value().kind != Token::Word) return err("expected a keyword");
    return t.value().text;
  }
  Status expect_keyword(const std::string& w) {
    auto t = expect_word();
    if (!t.ok()) return t.error();
    if (t.value() != w) return err("expected " + w + ", got " + t.value());
    return Status();
  }
  Status expect_symbol(char c) {
    auto t = take();
    if (!t.ok()) return t.error();
    if (t.value().kind != Token::Symbol || t.value().text[0] != c)
      return err(std::string("expected '") + c + "'");
    return Status();
  }
  Result<std::string> expect_identifier() {
    auto t = take();
    if (!t.ok()) return t.error();
    if (t.value().kind != Token::Word) return err("expected identifier");
    std::string low = t.value().text;
    for (char& ch : low) ch = static_cast<char>(std::tolower(ch));
    return low;
  }
  Result<long long> expect_number() {
    auto t = take();
    if (!t.ok()) return t.error();
    if (t.value().kind != Token::Number) return err("expected number");
    return std::stoll(t.value().text);
  }

  Status skip_until_symbol(char open, char close) {
    // consumes a balanced (...) group, open already consumed
    int depth = 1;
    while (depth > 0) {
      auto t = take();
      if (!t.ok()) return t.error();
      if (t.value().kind == Token::End) return err("unbalanced parentheses");
      if (t.value().kind == Token::Symbol) {
        if (t.value().text[0] == open) ++depth;
        if (t.value().text[0] == close) --depth;
      }
    }
    return Status();
  }

  Result<Statement> parse_create() {
    if (auto s = expect_keyword("TABLE"); !s.ok()) return s.error();
    auto name = expect_identifier();
    if (!name.ok()) return name.error();
    if (auto s = expect_symbol('('); !s.ok()) return s.error();
    if (auto s = skip_until_symbol('(', ')'); !s.ok()) return s.error();
    return Statement(CreateTableStmt{name.take()});
  }

  Result<Statement> parse_drop() {
    if (auto s = expect_keyword("TABLE"); !s.ok()) return s.error();
    auto t = take();
    if (!t.ok()) return t.error();
    std::string name;
    if (t.value().kind == Token::Word && t.value().text == "IF") {
      if (auto s = expect_keyword("EXISTS"); !s.ok()) return s.error();
      auto n = expect_identifier();
      if (!n.ok()) return n.error();
      name = n.take();
    } else {
      put_back(t.value());
      auto n = expect_identifier();
      if (!n.ok()) return n.error();
      name = n.take();
    }
    return Statement(DropTableStmt{name});
  }

  Result<Statement> parse_insert() {
    if (auto s = expect_keyword("INTO"); !s.ok()) return s.error();
    auto name = expect_identifier();
    if (!name.ok()) return name.error();
    if (auto s = expect_symbol('('); !s.ok()) return s.error();
    if (auto s = skip_until_symbol('(', ')'); !s.ok()) return s.error();
    if (auto s = expect_keyword("VALUES"); !s.ok()) return s.error();
    if (auto s = expect_symbol('('); !s.ok()) return s.error();
    auto id = expect_number();
    if (!id.ok()) return id.error();
    if (auto s = expect_symbol(','); !s.ok()) return s.error();

    // literal: 'wkt' | 'wkt'::geometry | ST_GeomFromText('wkt')
    auto t = take();
    if (!t.ok()) return t.error();
    std::string wkt;
    if (t.value().kind == Token::String) {
      wkt = t.value().text;
      auto nxt = take();
      if (!nxt.ok()) return nxt.error();
      if (nxt.value().kind == Token::Symbol && nxt.value().text == ":") {
        if (auto s = expect_symbol(':'); !s.ok()) return s.error();
        auto cast = expect_word();
        if (!cast.ok()) return cast.error();
        if (cast.value() != "GEOMETRY") return err("unknown cast");
      } else {
        put_back(nxt.value());
      }
    } else if (t.value().kind == Token::Word &&
               t.value().text == "ST_GEOMFROMTEXT") {
      if (auto s = expect_symbol('('); !s.ok()) return s.error();
      auto lit = take();
      if (!lit.ok()) return lit.error();
      if (lit.value().kind != Token::String) return err("expected WKT string");
      wkt = lit.value().text;
      if (auto s = expect_symbol(')'); !s.ok()) return s.error();
    } else {
      return err("expected geometry literal");
    }
    if (auto s = expect_symbol(')'); !s.ok()) return s.error();
    return Statement(InsertStmt{name.take(), id.value(), wkt});
  }

  Result<Statement> parse_delete() {
    if (auto s = expect_keyword("FROM"); !s.ok()) return s.error();
    auto name = expect_identifier();
    if (!name.ok()) return name.error();
    if (auto s = expect_keyword("WHERE"); !s.ok()) return s.error();
    if (auto s = expect_keyword("ID"); !s.ok()) return s.error();
    if (auto s = expect_symbol('='); !s.ok()) return s.error();
    auto id = expect_number();
    if (!id.ok()) return id.error();
    return Statement(DeleteStmt{name.take(), id.value()});
  }

  Result<Statement> parse_select() {
    if (auto s = expect_keyword("COUNT"); !s.ok()) return s.error();
    if (auto s = expect_symbol('('); !s.ok()) return s.error();
    if (auto s = expect_symbol('*'); !s.ok()) return s.error();
    if (auto s = expect_symbol(')'); !s.ok()) return s.error();
    if (auto s = expect_keyword("FROM"); !s.ok()) return s.error();

    auto read_table_ref = [&]() -> Result<std::pair<std::string, std::string>> {
      auto name = expect_identifier();
      if (!name.ok()) return name.error();
      std::string alias = name.value();
      auto t = take();
      if (!t.ok()) return t.error();
      if (t.value().kind == Token::Word && t.value().text == "AS") {
        auto a = expect_identifier();
        if (!a.ok()) return a.error();
        alias = a.take();
      } else {
        put_back(t.value());
      }
      return std::make_pair(name.take(), alias);
    };

    auto ref1 = read_table_ref();
    if (!ref1.ok()) return ref1.error();
    if (auto s = expect_keyword("JOIN"); !s.ok()) return s.error();
    auto ref2 = read_table_ref();
    if (!ref2.ok()) return ref2.error();
    if (auto s = expect_keyword("ON"); !s.ok()) return s.error();

    auto fn = expect_word();
    if (!fn.ok()) return fn.error();
    std::string fname = fn.take();
    if (fname.rfind("ST_", 0) != 0) return err("expected an ST_ predicate");
    auto pred = predicate_from_name(fname.substr(3));
    if (!pred) return err("unknown predicate " + fname);

    if (auto s = expect_symbol('('); !s.ok()) return s.error();
    auto arg1 = expect_identifier();
    if (!arg1.ok()) return arg1.error();
    if (auto s = expect_symbol('.'); !s.ok()) return s.error();
    if (auto s = expect_keyword("G"); !s.ok()) return s.error();
    if (auto s = expect_symbol(','); !s.ok()) return s.error();
    auto arg2 = expect_identifier();
    if (!arg2.ok()) return arg2.error();
    if (auto s = expect_symbol('.'); !s.ok()) return s.error();
    if (auto s = expect_keyword("G"); !s.ok()) return s.error();
    if (auto s = expect_symbol(')'); !s.ok()) return s.error();

    CountQueryStmt q;
    q.table1 = ref1.value().first;
    q.table2 = ref2.value().first;
    q.pred = *pred;
    if (arg1.value() == ref1.value().second) {
      q.left_is_table1 = true;
      if (arg2.value() != ref2.value().second)
        return err("predicate arguments do not match the joined tables");
    } else if (arg1.value() == ref2.value().second) {
      q.left_is_table1 = false;
      if (arg2.value() != ref1.value().second)
        return err("predicate arguments do not match the joined tables");
    } else {
      return err("predicate arguments do not match the joined tables");
    }
    return Statement(q);
  }

  Lexer lex_;
  std::optional<Token> pending_;
};

}  // namespace

Result<Statement> parse_statement(const std::string& sql) {
  StmtParser p(sql);
  return p.parse();
}

}  // namespace topotwin
