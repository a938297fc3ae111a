#include "core/wkt.hpp"

#include <cassert>
#include <cctype>

namespace topotwin {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Reads a run of letters (a tag or the EMPTY keyword), upper-cased.
  std::string word() {
    skip_ws();
    std::string w;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_])))
      w.push_back(static_cast<char>(std::toupper(text_[pos_++])));
    return w;
  }

  std::string number_token() {
    skip_ws();
    std::string t;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
          c == '+' || c == '-') {
        t.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Error syntax(const Cursor& c, std::string msg) {
  return make_error(Errc::ParseSyntax, std::move(msg), c.pos());
}
Error semantic(std::size_t offset, std::string msg) {
  return make_error(Errc::ParseSemantic, std::move(msg), offset);
}

Result<Point2> parse_coord(Cursor& c) {
  std::size_t at = c.pos();
  std::string xs = c.number_token();
  auto x = rational_from_decimal(xs);
  if (!x) return syntax(c, "expected x coordinate at offset " +
                               std::to_string(at));
  at = c.pos();
  std::string ys = c.number_token();
  auto y = rational_from_decimal(ys);
  if (!y) return syntax(c, "expected y coordinate at offset " +
                               std::to_string(at));
  return Point2{*x, *y};
}

Result<std::vector<Point2>> parse_point_list(Cursor& c) {
  if (!c.accept('(')) return Error(syntax(c, "expected '('"));
  std::vector<Point2> pts;
  do {
    auto p = parse_coord(c);
    if (!p.ok()) return p.error();
    pts.push_back(p.take());
  } while (c.accept(','));
  if (!c.accept(')')) return Error(syntax(c, "expected ')'"));
  return pts;
}

Result<Geometry> parse_line_body(Cursor& c) {
  std::size_t start = c.pos();
  auto pts = parse_point_list(c);
  if (!pts.ok()) return pts.error();
  if (pts.value().size() < 2)
    return semantic(start, "LINESTRING needs at least 2 points");
  return Geometry::make_line(pts.take());
}

Result<Geometry> parse_polygon_body(Cursor& c) {
  if (!c.accept('(')) return Error(syntax(c, "expected '('"));
  std::vector<Ring> rings;
  do {
    std::size_t start = c.pos();
    auto pts = parse_point_list(c);
    if (!pts.ok()) return pts.error();
    if (pts.value().size() < 4)
      return semantic(start, "polygon ring needs at least 4 points");
    if (pts.value().front() != pts.value().back())
      return semantic(start, "polygon ring is not closed");
    rings.push_back(pts.take());
  } while (c.accept(','));
  if (!c.accept(')')) return Error(syntax(c, "expected ')'"));
  return Geometry::make_polygon(std::move(rings));
}

Result<Geometry> parse_geometry(Cursor& c);

// Body of a MULTI element: parenthesized basic payload or bare EMPTY.
Result<Geometry> parse_multi_element(Cursor& c, GeometryType basic) {
  if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
    std::size_t at = c.pos();
    std::string w = c.word();
    if (w == "EMPTY") return Geometry::make_empty(basic);
    return syntax(c, "unexpected token '" + w + "' at offset " +
                         std::to_string(at));
  }
  switch (basic) {
    case GeometryType::Point: {
      if (!c.accept('(')) return Error(syntax(c, "expected '('"));
      auto p = parse_coord(c);
      if (!p.ok()) return p.error();
      if (!c.accept(')')) return Error(syntax(c, "expected ')'"));
      return Geometry::make_point(p.take());
    }
    case GeometryType::LineString:
      return parse_line_body(c);
    case GeometryType::Polygon:
      return parse_polygon_body(c);
    default:
      return syntax(c, "internal: bad multi element type");
  }
}

Result<Geometry> parse_container_body(Cursor& c, GeometryType type) {
  if (!c.accept('(')) return Error(syntax(c, "expected '('"));
  std::vector<Geometry> elems;
  do {
    if (type == GeometryType::GeometryCollection) {
      if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
        auto e = parse_geometry(c);
        if (!e.ok()) return e.error();
        elems.push_back(e.take());
      } else {
        return syntax(c, "expected geometry in GEOMETRYCOLLECTION");
      }
    } else {
      auto e = parse_multi_element(c, basic_type_of(type));
      if (!e.ok()) return e.error();
      elems.push_back(e.take());
    }
  } while (c.accept(','));
  if (!c.accept(')')) return Error(syntax(c, "expected ')'"));
  return Geometry::make_container(type, std::move(elems));
}

Result<Geometry> parse_geometry(Cursor& c) {
  std::size_t at = c.pos();
  std::string tag = c.word();
  if (tag == "EMPTY") {
    // Bare EMPTY is legal only as a GEOMETRYCOLLECTION element; the caller
    // for MULTI elements never routes here.
    return Geometry::make_empty(GeometryType::GeometryCollection);
  }
  auto type = type_from_tag(tag);
  if (!type)
    return syntax(c, "unknown geometry tag '" + tag + "' at offset " +
                         std::to_string(at));

  if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
    std::size_t kw_at = c.pos();
    std::string w = c.word();
    if (w == "EMPTY") return Geometry::make_empty(*type);
    return syntax(c, "unexpected token '" + w + "' at offset " +
                         std::to_string(kw_at));
  }

  switch (*type) {
    case GeometryType::Point: {
      if (!c.accept('(')) return Error(syntax(c, "expected '('"));
      auto p = parse_coord(c);
      if (!p.ok()) return p.error();
      if (!c.accept(')')) return Error(syntax(c, "expected ')'"));
      return Geometry::make_point(p.take());
    }
    case GeometryType::LineString:
      return parse_line_body(c);
    case GeometryType::Polygon:
      return parse_polygon_body(c);
    default:
      return parse_container_body(c, *type);
  }
}

Status print_coord(const Point2& p, std::string& out) {
  auto xs = rational_to_decimal(p.x);
  auto ys = rational_to_decimal(p.y);
  if (!xs || !ys)
    return make_error(Errc::Unprintable,
                      "coordinate denominator is not of the form 2^a*5^b");
  out += *xs;
  out.push_back(' ');
  out += *ys;
  return Status();
}

Status print_point_list(const std::vector<Point2>& pts, std::string& out) {
  out.push_back('(');
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out.push_back(',');
    if (auto s = print_coord(pts[i], out); !s.ok()) return s;
  }
  out.push_back(')');
  return Status();
}

Status print_body(const Geometry& g, std::string& out);

Status print_geometry(const Geometry& g, std::string& out) {
  out += type_tag(g.type);
  if (g.empty) {
    out += " EMPTY";
    return Status();
  }
  return print_body(g, out);
}

Status print_body(const Geometry& g, std::string& out) {
  switch (g.type) {
    case GeometryType::Point: {
      std::vector<Point2> one{g.point};
      return print_point_list(one, out);
    }
    case GeometryType::LineString:
      return print_point_list(g.path, out);
    case GeometryType::Polygon: {
      out.push_back('(');
      for (std::size_t i = 0; i < g.rings.size(); ++i) {
        if (i) out.push_back(',');
        if (auto s = print_point_list(g.rings[i], out); !s.ok()) return s;
      }
      out.push_back(')');
      return Status();
    }
    case GeometryType::GeometryCollection: {
      out.push_back('(');
      for (std::size_t i = 0; i < g.elements.size(); ++i) {
        if (i) out.push_back(',');
        if (auto s = print_geometry(g.elements[i], out); !s.ok()) return s;
      }
      out.push_back(')');
      return Status();
    }
    default: {  // MULTI*
      out.push_back('(');
      for (std::size_t i = 0; i < g.elements.size(); ++i) {
        if (i) out.push_back(',');
        const Geometry& e = g.elements[i];
        if (e.empty) {
          out += "EMPTY";
        } else if (auto s = print_body(e, out); !s.ok()) {
          return s;
        }
      }
      out.push_back(')');
      return Status();
    }
  }
}

}  // namespace

Result<Geometry> parse_wkt(std::string_view text) {
  Cursor c(text);
  auto g = parse_geometry(c);
  if (!g.ok()) return g;
  if (!c.at_end())
    return Error(
        make_error(Errc::ParseSyntax, "trailing characters after geometry",
                   c.pos()));
  return g;
}

Result<std::string> to_wkt(const Geometry& g) {
  std::string out;
  if (auto s = print_geometry(g, out); !s.ok()) return s.error();
  return out;
}

std::string to_wkt_or_die(const Geometry& g) {
  auto r = to_wkt(g);
  assert(r.ok());
  return r.take();
}

}  // namespace topotwin
