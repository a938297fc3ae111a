#include "core/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "core/wkt.hpp"

namespace topotwin {

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Point2 midpoint(const Point2& a, const Point2& b) {
  return Point2{(a.x + b.x) / 2, (a.y + b.y) / 2};
}

enum class SegCross { None, Touch, Proper, Overlap };

// Exact intersection classification of two nondegenerate segments.
// Touch: a single shared point involving at least one endpoint.
// Proper: a single shared point strictly inside both segments.
// Overlap: collinear intersection along a positive-length piece.
SegCross seg_intersect(const Segment& s, const Segment& t, Point2* out) {
  const Rational d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
  const Rational d2x = t.b.x - t.a.x, d2y = t.b.y - t.a.y;
  const Rational denom = d1x * d2y - d1y * d2x;
  if (denom != 0) {
    const Rational wx = t.a.x - s.a.x, wy = t.a.y - s.a.y;
    const Rational tn = wx * d2y - wy * d2x;  // param along s, scaled by denom
    const Rational un = wx * d1y - wy * d1x;  // param along t, scaled by denom
    Rational tv = tn / denom;
    Rational uv = un / denom;
    if (tv < 0 || tv > 1 || uv < 0 || uv > 1) return SegCross::None;
    Point2 p{s.a.x + tv * d1x, s.a.y + tv * d1y};
    if (out) *out = p;
    const bool interior_s = tv > 0 && tv < 1;
    const bool interior_t = uv > 0 && uv < 1;
    return (interior_s && interior_t) ? SegCross::Proper : SegCross::Touch;
  }
  // Parallel. Distinct lines never meet.
  if (cross(s.a, s.b, t.a) != 0) return SegCross::None;
  // Collinear: order endpoints lexicographically along the shared line.
  Point2 slo = std::min(s.a, s.b), shi = std::max(s.a, s.b);
  Point2 tlo = std::min(t.a, t.b), thi = std::max(t.a, t.b);
  Point2 lo = std::max(slo, tlo);
  Point2 hi = std::min(shi, thi);
  if (hi < lo) return SegCross::None;
  if (lo == hi) {
    if (out) *out = lo;
    return SegCross::Touch;
  }
  return SegCross::Overlap;
}

bool point_in_rings_even_odd(const Point2& p, const std::vector<Ring>& rings) {
  bool inside = false;
  for (const Ring& ring : rings) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      const Point2& a = ring[i];
      const Point2& b = ring[i + 1];
      if (a == b) continue;
      if ((a.y > p.y) != (b.y > p.y)) {
        // x where the edge crosses the horizontal through p; exact.
        Rational xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (p.x < xint) inside = !inside;
      }
    }
  }
  return inside;
}

void append_ring_segments(const std::vector<Ring>& rings,
                          std::vector<Segment>& out) {
  for (const Ring& ring : rings)
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
      if (ring[i] != ring[i + 1]) out.push_back({ring[i], ring[i + 1]});
}

std::vector<Segment> all_segments(const TopoDecomposition& d) {
  std::vector<Segment> segs = d.segments;
  for (const auto& poly : d.polygons) append_ring_segments(poly.rings, segs);
  return segs;
}

}  // namespace

int orientation(const Point2& a, const Point2& b, const Point2& c) {
  return sign_of(cross(a, b, c));
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (cross(a, b, p) != 0) return false;
  const Point2 lo = std::min(a, b), hi = std::max(a, b);
  return !(p < lo) && !(hi < p);
}

Rational ring_signed_area2(const Ring& ring) {
  Rational acc(0);
  for (std::size_t i = 0; i + 1 < ring.size(); ++i)
    acc += ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y;
  return acc;
}

// ---------------------------------------------------------------------------
// Validity

namespace {

Status validate_polygon(const Geometry& poly) {
  assert(poly.type == GeometryType::Polygon && !poly.empty);
  // Per ring: no repeated consecutive points, simple (no self-contact).
  std::vector<std::vector<Segment>> ring_segs;
  for (const Ring& ring : poly.rings) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
      if (ring[i] == ring[i + 1])
        return make_error(Errc::InvalidGeometry,
                          "ring repeats consecutive points");
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
      segs.push_back({ring[i], ring[i + 1]});
    ring_segs.push_back(std::move(segs));
  }
  for (const auto& segs : ring_segs) {
    const std::size_t k = segs.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const bool adjacent = (j == i + 1) || (i == 0 && j == k - 1);
        SegCross c = seg_intersect(segs[i], segs[j], nullptr);
        if (adjacent) {
          // Sharing exactly the chain vertex is the only legal contact.
          if (c == SegCross::Overlap)
            return make_error(Errc::InvalidGeometry, "ring folds back on itself");
          if (c == SegCross::Proper)
            return make_error(Errc::InvalidGeometry, "ring self-intersects");
        } else if (c != SegCross::None) {
          return make_error(Errc::InvalidGeometry, "ring self-intersects");
        }
      }
    }
  }
  // Distinct rings of one polygon may touch at points but not cross or
  // share a segment.
  for (std::size_t r1 = 0; r1 < ring_segs.size(); ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < ring_segs.size(); ++r2) {
      for (const Segment& s : ring_segs[r1]) {
        for (const Segment& t : ring_segs[r2]) {
          SegCross c = seg_intersect(s, t, nullptr);
          if (c == SegCross::Proper)
            return make_error(Errc::InvalidGeometry, "rings cross");
          if (c == SegCross::Overlap)
            return make_error(Errc::InvalidGeometry, "rings share a segment");
        }
      }
    }
  }
  return Status();
}

}  // namespace

Status validate_geometry(const Geometry& g) {
  if (g.empty) return Status();
  switch (g.type) {
    case GeometryType::Polygon:
      return validate_polygon(g);
    case GeometryType::Point:
    case GeometryType::LineString:
      return Status();
    default:
      for (const Geometry& e : g.elements)
        if (auto s = validate_geometry(e); !s.ok()) return s;
      return Status();
  }
}

// ---------------------------------------------------------------------------
// Decomposition and point classification

TopoDecomposition decompose(const Geometry& g) {
  TopoDecomposition d;
  std::function<void(const Geometry&)> walk = [&](const Geometry& v) {
    if (v.empty) return;
    switch (v.type) {
      case GeometryType::Point:
        d.points.push_back(v.point);
        break;
      case GeometryType::LineString: {
        bool any = false;
        for (std::size_t i = 0; i + 1 < v.path.size(); ++i) {
          if (v.path[i] != v.path[i + 1]) {
            d.segments.push_back({v.path[i], v.path[i + 1]});
            any = true;
          }
        }
        // A fully degenerate line is a single 0-cell.
        if (!any) d.points.push_back(v.path.front());
        break;
      }
      case GeometryType::Polygon:
        d.polygons.push_back({v.rings});
        break;
      default:
        for (const Geometry& e : v.elements) walk(e);
        break;
    }
  };
  walk(g);
  return d;
}

Location locate(const TopoDecomposition& d, const Point2& p) {
  int claims = 0;     // cells whose boundary-or-0-cell contains p
  int bnd_claims = 0; // cells whose boundary contains p
  bool in_closure = false;

  for (const Point2& q : d.points) {
    if (p == q) {
      ++claims;  // a 0-cell has no boundary but still subtracts
      in_closure = true;
    }
  }
  for (const Segment& s : d.segments) {
    if (on_segment(p, s.a, s.b)) {
      in_closure = true;
      if (p == s.a || p == s.b) {
        ++claims;
        ++bnd_claims;
      }
    }
  }
  for (const auto& poly : d.polygons) {
    bool on_ring = false;
    for (const Ring& ring : poly.rings) {
      for (std::size_t i = 0; i + 1 < ring.size() && !on_ring; ++i) {
        if (ring[i] == ring[i + 1]) continue;
        if (on_segment(p, ring[i], ring[i + 1])) on_ring = true;
      }
      if (on_ring) break;
    }
    if (on_ring) {
      ++claims;
      ++bnd_claims;
      in_closure = true;
    } else if (point_in_rings_even_odd(p, poly.rings)) {
      in_closure = true;
    }
  }

  if (!in_closure) return Location::Exterior;
  // Boundary survives only when exactly one cell claims the point.
  if (bnd_claims >= 1 && claims <= 1) return Location::Boundary;
  return Location::Interior;
}

// ---------------------------------------------------------------------------
// Overlay arrangement

namespace {

struct SegmentLess {
  bool operator()(const Segment& s, const Segment& t) const {
    if (s.a != t.a) return s.a < t.a;
    return s.b < t.b;
  }
};

Segment canonical_segment(const Segment& s) {
  return s.b < s.a ? Segment{s.b, s.a} : s;
}

struct Arrangement {
  std::vector<Segment> segments;   // deduplicated, lexicographically oriented
  std::vector<Point2> isolated;    // 0-cells from both inputs
  std::set<Point2> nodes;
  std::vector<Segment> edges;      // open split edges between adjacent nodes
};

Arrangement build_arrangement(const TopoDecomposition& d1,
                              const TopoDecomposition& d2) {
  Arrangement arr;
  std::set<Segment, SegmentLess> uniq;
  for (const auto* d : {&d1, &d2}) {
    for (const Segment& s : all_segments(*d)) uniq.insert(canonical_segment(s));
    for (const Point2& p : d->points) arr.isolated.push_back(p);
  }
  arr.segments.assign(uniq.begin(), uniq.end());

  for (const Segment& s : arr.segments) {
    arr.nodes.insert(s.a);
    arr.nodes.insert(s.b);
  }
  for (const Point2& p : arr.isolated) arr.nodes.insert(p);
  for (std::size_t i = 0; i < arr.segments.size(); ++i) {
    for (std::size_t j = i + 1; j < arr.segments.size(); ++j) {
      Point2 p;
      SegCross c = seg_intersect(arr.segments[i], arr.segments[j], &p);
      if (c == SegCross::Proper || c == SegCross::Touch) arr.nodes.insert(p);
      // Overlap endpoints are segment endpoints, already nodes.
    }
  }

  std::set<Segment, SegmentLess> edge_set;
  std::vector<Point2> on_seg;
  for (const Segment& s : arr.segments) {
    on_seg.clear();
    for (const Point2& n : arr.nodes)
      if (on_segment(n, s.a, s.b)) on_seg.push_back(n);
    std::sort(on_seg.begin(), on_seg.end());
    // Segments are lexicographically oriented, so lexicographic order of the
    // nodes equals their order along the segment.
    for (std::size_t i = 0; i + 1 < on_seg.size(); ++i)
      edge_set.insert({on_seg[i], on_seg[i + 1]});
  }
  arr.edges.assign(edge_set.begin(), edge_set.end());
  return arr;
}

// Walks from the midpoint of `edge` perpendicularly to `side` (+1/-1) into
// the adjacent open face and returns a point strictly inside that face: the
// step is half the distance to the first feature hit by the ray, measured
// exactly.
Point2 face_sample(const Arrangement& arr, const Segment& edge, int side) {
  const Point2 m = midpoint(edge.a, edge.b);
  Rational sx = -(edge.b.y - edge.a.y) * side;
  Rational sy = (edge.b.x - edge.a.x) * side;

  std::optional<Rational> tmin;
  auto consider = [&](const Rational& t) {
    if (t > 0 && (!tmin || t < *tmin)) tmin = t;
  };

  for (const Segment& f : arr.segments) {
    const Rational dx = f.b.x - f.a.x, dy = f.b.y - f.a.y;
    const Rational denom = sx * dy - sy * dx;
    if (denom != 0) {
      const Rational t = ((f.a.x - m.x) * dy - (f.a.y - m.y) * dx) / denom;
      if (t > 0) {
        Point2 hit{m.x + t * sx, m.y + t * sy};
        if (on_segment(hit, f.a, f.b)) consider(t);
      }
    } else if (cross(m, Point2{m.x + sx, m.y + sy}, f.a) == 0) {
      // Collinear with the ray: endpoints are the only hits that matter.
      for (const Point2& e : {f.a, f.b}) {
        Rational t = (sx != 0) ? (e.x - m.x) / sx : (e.y - m.y) / sy;
        consider(t);
      }
    }
  }
  for (const Point2& p : arr.isolated) {
    if (cross(m, Point2{m.x + sx, m.y + sy}, p) == 0) {
      Rational t = (sx != 0) ? (p.x - m.x) / sx : (p.y - m.y) / sy;
      consider(t);
    }
  }

  const Rational step = tmin ? *tmin / 2 : Rational(1);
  return Point2{m.x + step * sx, m.y + step * sy};
}

int loc_index(Location l) {
  switch (l) {
    case Location::Interior: return 0;
    case Location::Boundary: return 1;
    case Location::Exterior: return 2;
  }
  return 2;
}

}  // namespace

Result<DE9IMMatrix> relate(const Geometry& g1, const Geometry& g2) {
  if (auto s = validate_geometry(g1); !s.ok())
    return make_error(Errc::InvalidGeometry,
                      "first geometry: " + s.error().message);
  if (auto s = validate_geometry(g2); !s.ok())
    return make_error(Errc::InvalidGeometry,
                      "second geometry: " + s.error().message);

  const TopoDecomposition d1 = decompose(g1);
  const TopoDecomposition d2 = decompose(g2);
  DE9IMMatrix m;

  Arrangement arr = build_arrangement(d1, d2);
  auto update = [&](const Point2& p, int dim) {
    int r = loc_index(locate(d1, p));
    int c = loc_index(locate(d2, p));
    if (m.at(r, c) < dim) m.at(r, c) = dim;
  };

  for (const Point2& n : arr.nodes) update(n, 0);
  for (const Segment& e : arr.edges) update(midpoint(e.a, e.b), 1);

  // Two-dimensional pieces exist only where a polygon interior is involved;
  // every face of the overlay that borders an edge is sampled from both
  // sides. The unbounded face contributes EE = 2, which holds for any pair
  // of bounded geometries and is set unconditionally below.
  const bool areal1 = !d1.polygons.empty();
  const bool areal2 = !d2.polygons.empty();
  if (areal1 || areal2) {
    int wanted = (areal1 && areal2 ? 1 : 0) + (areal1 ? 1 : 0) +
                 (areal2 ? 1 : 0);
    std::set<std::pair<int, int>> found;
    for (const Segment& e : arr.edges) {
      for (int side : {1, -1}) {
        Point2 q = face_sample(arr, e, side);
        int r = loc_index(locate(d1, q));
        int c = loc_index(locate(d2, q));
        if (m.at(r, c) < 2) m.at(r, c) = 2;
        if ((r == 0 || c == 0) && found.insert({r, c}).second) {
          // fall through; loop exits once every reachable combination of
          // interior faces has been seen
        }
        if (static_cast<int>(found.size()) >= wanted) break;
      }
      if (static_cast<int>(found.size()) >= wanted) break;
    }
  }

  m.at(2, 2) = 2;  // both exteriors share the unbounded face
  return m;
}

Result<bool> named_predicate(PredicateName p, const Geometry& g1,
                             const Geometry& g2) {
  auto m = relate(g1, g2);
  if (!m.ok()) return m.error();
  return evaluate_predicate(p, m.value(), dimension(g1), dimension(g2));
}

bool shapes_equal(const Geometry& a, const Geometry& b) {
  auto m = relate(a, b);
  if (m.ok()) return matches(m.value(), kEqualsPattern);
  return a == b;
}

// ---------------------------------------------------------------------------
// Boundary materialization

Result<Geometry> boundary(const Geometry& g) {
  if (auto s = validate_geometry(g); !s.ok()) return s.error();

  const TopoDecomposition d = decompose(g);
  if (d.is_empty())
    return Geometry::make_empty(GeometryType::GeometryCollection);

  // Self-arrangement of the geometry's own linework.
  Arrangement arr = build_arrangement(d, TopoDecomposition{});

  // 1-dimensional part: ring pieces whose midpoints classify as boundary,
  // reassembled per ring into maximal runs.
  std::vector<std::vector<Point2>> line_parts;
  for (const auto& poly : d.polygons) {
    for (const Ring& ring : poly.rings) {
      // Split the ring into arrangement pieces, in cyclic order.
      std::vector<Segment> pieces;
      std::vector<char> keep;
      std::vector<Point2> on_seg;
      for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        if (ring[i] == ring[i + 1]) continue;
        on_seg.clear();
        for (const Point2& n : arr.nodes)
          if (on_segment(n, ring[i], ring[i + 1])) on_seg.push_back(n);
        std::sort(on_seg.begin(), on_seg.end());
        if (ring[i + 1] < ring[i]) std::reverse(on_seg.begin(), on_seg.end());
        for (std::size_t k = 0; k + 1 < on_seg.size(); ++k) {
          pieces.push_back({on_seg[k], on_seg[k + 1]});
          keep.push_back(
              locate(d, midpoint(on_seg[k], on_seg[k + 1])) ==
              Location::Boundary);
        }
      }
      if (pieces.empty()) continue;
      const std::size_t n = pieces.size();
      bool all = true;
      for (char k : keep) all = all && k;
      if (all) {
        std::vector<Point2> path;
        for (std::size_t i = 0; i < n; ++i) path.push_back(pieces[i].a);
        path.push_back(pieces[n - 1].b);
        line_parts.push_back(std::move(path));
        continue;
      }
      // Maximal kept runs, wrapping across the ring seam.
      for (std::size_t start = 0; start < n; ++start) {
        if (!keep[start] || keep[(start + n - 1) % n]) continue;
        std::vector<Point2> path{pieces[start].a, pieces[start].b};
        std::size_t i = (start + 1) % n;
        while (keep[i]) {
          path.push_back(pieces[i].b);
          i = (i + 1) % n;
        }
        line_parts.push_back(std::move(path));
      }
    }
  }

  // 0-dimensional part: boundary nodes not already covered by a kept piece.
  std::vector<Point2> point_parts;
  for (const Point2& nd : arr.nodes) {
    if (locate(d, nd) != Location::Boundary) continue;
    bool covered = false;
    for (const auto& path : line_parts) {
      for (std::size_t i = 0; i + 1 < path.size() && !covered; ++i)
        covered = on_segment(nd, path[i], path[i + 1]);
      if (covered) break;
    }
    if (!covered) point_parts.push_back(nd);
  }

  std::vector<Geometry> points;
  for (const Point2& p : point_parts) points.push_back(Geometry::make_point(p));
  std::vector<Geometry> lines;
  for (auto& path : line_parts) lines.push_back(Geometry::make_line(std::move(path)));

  if (points.empty() && lines.empty())
    return Geometry::make_empty(GeometryType::GeometryCollection);
  if (lines.empty())
    return Geometry::make_container(GeometryType::MultiPoint, std::move(points));
  if (points.empty())
    return Geometry::make_container(GeometryType::MultiLineString,
                                    std::move(lines));
  std::vector<Geometry> both = std::move(points);
  for (auto& l : lines) both.push_back(std::move(l));
  return Geometry::make_container(GeometryType::GeometryCollection,
                                  std::move(both));
}

}  // namespace topotwin
