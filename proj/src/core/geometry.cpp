#include "core/geometry.hpp"

#include <array>
#include <cassert>
#include <cctype>

namespace topotwin {

namespace {
constexpr std::array<const char*, 7> kTags = {
    "POINT",           "LINESTRING",      "POLYGON",           "MULTIPOINT",
    "MULTILINESTRING", "MULTIPOLYGON",    "GEOMETRYCOLLECTION"};
}  // namespace

const char* type_tag(GeometryType t) { return kTags[static_cast<int>(t)]; }

std::optional<GeometryType> type_from_tag(std::string_view tag) {
  std::string upper(tag);
  for (char& c : upper) c = static_cast<char>(std::toupper(c));
  for (std::size_t i = 0; i < kTags.size(); ++i)
    if (upper == kTags[i]) return static_cast<GeometryType>(i);
  return std::nullopt;
}

bool is_multi(GeometryType t) {
  return t == GeometryType::MultiPoint || t == GeometryType::MultiLineString ||
         t == GeometryType::MultiPolygon;
}

bool is_container(GeometryType t) {
  return is_multi(t) || t == GeometryType::GeometryCollection;
}

GeometryType basic_type_of(GeometryType t) {
  switch (t) {
    case GeometryType::MultiPoint: return GeometryType::Point;
    case GeometryType::MultiLineString: return GeometryType::LineString;
    case GeometryType::MultiPolygon: return GeometryType::Polygon;
    default: assert(false); return t;
  }
}

GeometryType multi_type_of(GeometryType t) {
  switch (t) {
    case GeometryType::Point: return GeometryType::MultiPoint;
    case GeometryType::LineString: return GeometryType::MultiLineString;
    case GeometryType::Polygon: return GeometryType::MultiPolygon;
    default: assert(false); return t;
  }
}

Geometry Geometry::make_empty(GeometryType t) {
  Geometry g;
  g.type = t;
  g.empty = true;
  return g;
}

Geometry Geometry::make_point(Rational x, Rational y) {
  return make_point(Point2{std::move(x), std::move(y)});
}

Geometry Geometry::make_point(const Point2& p) {
  Geometry g;
  g.type = GeometryType::Point;
  g.empty = false;
  g.point = p;
  return g;
}

Geometry Geometry::make_line(std::vector<Point2> pts) {
  assert(pts.size() >= 2);
  Geometry g;
  g.type = GeometryType::LineString;
  g.empty = false;
  g.path = std::move(pts);
  return g;
}

Geometry Geometry::make_polygon(std::vector<Ring> rings) {
  assert(!rings.empty());
  Geometry g;
  g.type = GeometryType::Polygon;
  g.empty = false;
  g.rings = std::move(rings);
  return g;
}

Geometry Geometry::make_container(GeometryType t, std::vector<Geometry> elems) {
  assert(is_container(t));
  if (elems.empty()) return make_empty(t);
  Geometry g;
  g.type = t;
  g.empty = false;
  g.elements = std::move(elems);
  return g;
}

bool operator==(const Geometry& a, const Geometry& b) {
  if (a.type != b.type || a.empty != b.empty) return false;
  if (a.empty) return true;
  switch (a.type) {
    case GeometryType::Point:
      return a.point == b.point;
    case GeometryType::LineString:
      return a.path == b.path;
    case GeometryType::Polygon:
      return a.rings == b.rings;
    default:
      return a.elements == b.elements;
  }
}

std::optional<int> dimension(const Geometry& g) {
  if (g.empty) return std::nullopt;
  switch (g.type) {
    case GeometryType::Point: return 0;
    case GeometryType::LineString: return 1;
    case GeometryType::Polygon: return 2;
    default: break;
  }
  std::optional<int> dim;
  for (const Geometry& e : g.elements) {
    auto d = dimension(e);
    if (d && (!dim || *d > *dim)) dim = d;
  }
  return dim;
}

bool all_coords(const Geometry& g,
                const std::function<bool(const Rational&)>& pred) {
  bool ok = true;
  for (const Point2& p : collect_points(g))
    ok = ok && pred(p.x) && pred(p.y);
  return ok;
}

Geometry for_each_point(const Geometry& g,
                        const std::function<Point2(const Point2&)>& f) {
  Geometry out = g;
  if (g.empty) return out;
  switch (g.type) {
    case GeometryType::Point:
      out.point = f(g.point);
      break;
    case GeometryType::LineString:
      for (Point2& p : out.path) p = f(p);
      break;
    case GeometryType::Polygon:
      for (Ring& r : out.rings)
        for (Point2& p : r) p = f(p);
      break;
    default:
      for (Geometry& e : out.elements) e = for_each_point(e, f);
      break;
  }
  return out;
}

std::vector<Point2> collect_points(const Geometry& g) {
  std::vector<Point2> out;
  std::function<void(const Geometry&)> walk = [&](const Geometry& v) {
    if (v.empty) return;
    switch (v.type) {
      case GeometryType::Point:
        out.push_back(v.point);
        break;
      case GeometryType::LineString:
        out.insert(out.end(), v.path.begin(), v.path.end());
        break;
      case GeometryType::Polygon:
        for (const Ring& r : v.rings) out.insert(out.end(), r.begin(), r.end());
        break;
      default:
        for (const Geometry& e : v.elements) walk(e);
        break;
    }
  };
  walk(g);
  return out;
}

}  // namespace topotwin
