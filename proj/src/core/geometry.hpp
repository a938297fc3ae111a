#ifndef TOPOTWIN_CORE_GEOMETRY_HPP
#define TOPOTWIN_CORE_GEOMETRY_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/rational.hpp"

namespace topotwin {

struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2& a, const Point2& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
  // Lexicographic (x, y); the order used by canonicalization.
  friend bool operator<(const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

enum class GeometryType {
  Point = 0,
  LineString,
  Polygon,
  MultiPoint,
  MultiLineString,
  MultiPolygon,
  GeometryCollection,
};

const char* type_tag(GeometryType t);                 // "POINT", ...
std::optional<GeometryType> type_from_tag(std::string_view tag);
bool is_multi(GeometryType t);       // MULTI* only
bool is_container(GeometryType t);   // MULTI* or GEOMETRYCOLLECTION
GeometryType basic_type_of(GeometryType multi_type);  // MULTIPOINT -> Point
GeometryType multi_type_of(GeometryType basic_type);  // Point -> MULTIPOINT

using Ring = std::vector<Point2>;  // closed: front() == back(), size >= 4

// One value covering the seven OGC 2D types plus EMPTY at any tag.
// Immutable after construction by convention: all operations return copies.
struct Geometry {
  GeometryType type = GeometryType::Point;
  bool empty = true;

  Point2 point;                    // Point
  std::vector<Point2> path;        // LineString, size >= 2
  std::vector<Ring> rings;         // Polygon, rings[0] is the outer ring
  std::vector<Geometry> elements;  // containers; elements may be EMPTY

  static Geometry make_empty(GeometryType t);
  static Geometry make_point(Rational x, Rational y);
  static Geometry make_point(const Point2& p);
  static Geometry make_line(std::vector<Point2> pts);
  static Geometry make_polygon(std::vector<Ring> rings);
  // Container factory; `t` must be a container type. An empty element list
  // yields the EMPTY geometry of that tag.
  static Geometry make_container(GeometryType t, std::vector<Geometry> elems);

  bool is_empty() const { return empty; }

  friend bool operator==(const Geometry& a, const Geometry& b);
  friend bool operator!=(const Geometry& a, const Geometry& b) {
    return !(a == b);
  }
};

// Structural dimension: 0/1/2 by type tag, max over elements for containers,
// nullopt for a fully empty geometry.
std::optional<int> dimension(const Geometry& g);

// True when every coordinate satisfies pred.
bool all_coords(const Geometry& g,
                const std::function<bool(const Rational&)>& pred);

// Structure-preserving point rewrite; element and ring order unchanged.
Geometry for_each_point(const Geometry& g,
                        const std::function<Point2(const Point2&)>& f);

// Collects every coordinate pair in traversal order.
std::vector<Point2> collect_points(const Geometry& g);

}  // namespace topotwin

#endif
