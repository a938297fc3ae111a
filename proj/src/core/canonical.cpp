#include "core/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "core/oracle.hpp"
#include "core/wkt.hpp"

namespace topotwin {

namespace {

bool fully_empty(const Geometry& g) { return g.empty; }

std::vector<Point2> collapse_runs(const std::vector<Point2>& pts) {
  std::vector<Point2> out;
  for (const Point2& p : pts)
    if (out.empty() || out.back() != p) out.push_back(p);
  return out;
}

std::size_t distinct_count(const std::vector<Point2>& pts) {
  std::vector<Point2> s = pts;
  std::sort(s.begin(), s.end());
  return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
}

// Rotates a closed path so it starts at its lexicographically least point.
std::vector<Point2> rotate_closed(const std::vector<Point2>& path) {
  // path.front() == path.back(); cycle is path[0..n-2]
  const std::size_t n = path.size() - 1;
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (path[i] < path[best]) best = i;
  if (best == 0) return path;
  std::vector<Point2> out;
  out.reserve(path.size());
  for (std::size_t i = 0; i <= n; ++i) out.push_back(path[(best + i) % n]);
  return out;
}

}  // namespace

Geometry consecutive_duplicate_removal(const Geometry& g) {
  if (g.empty) return g;
  if (g.type == GeometryType::LineString) {
    std::vector<Point2> pts = collapse_runs(g.path);
    if (distinct_count(pts) < 2) return Geometry::make_empty(g.type);
    return Geometry::make_line(std::move(pts));
  }
  if (g.type == GeometryType::Polygon) {
    std::vector<Ring> rings;
    for (const Ring& r : g.rings) {
      Ring c = collapse_runs(r);
      // collapse_runs keeps closure: equal first/last survive as a pair
      // unless the whole ring was one run.
      if (c.size() >= 2 && c.front() == c.back() && distinct_count(c) >= 3)
        rings.push_back(std::move(c));
      // degenerate rings are dropped
    }
    if (rings.empty()) return Geometry::make_empty(g.type);
    return Geometry::make_polygon(std::move(rings));
  }
  return g;
}

Geometry reorder_coords(const Geometry& g) {
  if (g.empty) return g;
  if (g.type == GeometryType::LineString) {
    std::vector<Point2> pts = g.path;
    const bool closed = pts.size() > 2 && pts.front() == pts.back();
    if (closed) {
      pts = rotate_closed(pts);
    } else if (pts.back() < pts.front()) {
      std::reverse(pts.begin(), pts.end());
    }
    return Geometry::make_line(std::move(pts));
  }
  if (g.type == GeometryType::Polygon) {
    std::vector<Ring> rings;
    for (const Ring& r : g.rings) {
      Ring c = r;
      // Every loop clockwise: negative signed area under y-up axes.
      if (ring_signed_area2(c) > 0) std::reverse(c.begin(), c.end());
      c = rotate_closed(c);
      rings.push_back(std::move(c));
    }
    return Geometry::make_polygon(std::move(rings));
  }
  return g;
}

Geometry empty_removal(const Geometry& g) {
  if (g.empty || !is_container(g.type)) return g;
  std::vector<Geometry> kept;
  for (const Geometry& e : g.elements)
    if (!fully_empty(e)) kept.push_back(e);
  return Geometry::make_container(g.type, std::move(kept));
}

Geometry homogenize(const Geometry& g) {
  if (g.empty || !is_container(g.type)) return g;
  std::vector<Geometry> elems;
  if (g.type == GeometryType::GeometryCollection) {
    // Flatten nested containers one level at a time until uniform.
    std::vector<Geometry> work = g.elements;
    while (!work.empty()) {
      Geometry e = std::move(work.back());
      work.pop_back();
      if (!e.empty && is_container(e.type)) {
        for (auto& inner : e.elements) work.push_back(std::move(inner));
      } else {
        elems.push_back(std::move(e));
      }
    }
    std::reverse(elems.begin(), elems.end());  // keep original order
  } else {
    elems = g.elements;
  }

  GeometryType type = g.type;
  if (type == GeometryType::GeometryCollection && !elems.empty()) {
    bool uniform = true;
    for (const Geometry& e : elems)
      uniform = uniform && e.type == elems.front().type &&
                !is_container(e.type);
    if (uniform) type = multi_type_of(elems.front().type);
  }
  if (elems.size() == 1 && type != GeometryType::GeometryCollection)
    return elems.front();
  return Geometry::make_container(type, std::move(elems));
}

Geometry duplicate_removal(const Geometry& g) {
  if (g.empty || !is_container(g.type)) return g;
  const std::size_t n = g.elements.size();
  // Group shape-equal elements; keep the representative with the least
  // canonical text so the survivor does not depend on input order.
  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (group[i] != i) i = group[i] = group[group[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (find(i) != find(j) && shapes_equal(g.elements[i], g.elements[j]))
        group[find(j)] = find(i);

  std::vector<Geometry> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) != i) continue;
    std::size_t best = i;
    auto text = [&](std::size_t k) { return to_wkt_or_die(g.elements[k]); };
    std::string best_text = text(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (find(j) != i) continue;
      std::string t = text(j);
      if (t < best_text) {
        best_text = std::move(t);
        best = j;
      }
    }
    kept.push_back(g.elements[best]);
  }
  return Geometry::make_container(g.type, std::move(kept));
}

Geometry reorder_elements(const Geometry& g) {
  if (g.empty || !is_container(g.type)) return g;
  std::vector<Geometry> elems = g.elements;
  std::stable_sort(elems.begin(), elems.end(),
                   [](const Geometry& a, const Geometry& b) {
                     auto da = dimension(a).value_or(-1);
                     auto db = dimension(b).value_or(-1);
                     if (da != db) return da < db;
                     return to_wkt_or_die(a) < to_wkt_or_die(b);
                   });
  return Geometry::make_container(g.type, std::move(elems));
}

Geometry canonicalize(const Geometry& g) {
  if (g.empty) return g;
  switch (g.type) {
    case GeometryType::Point:
      return g;
    case GeometryType::LineString:
    case GeometryType::Polygon:
      return reorder_coords(consecutive_duplicate_removal(g));
    default: {
      std::vector<Geometry> elems;
      for (const Geometry& e : g.elements) elems.push_back(canonicalize(e));
      Geometry c = Geometry::make_container(g.type, std::move(elems));
      c = empty_removal(c);
      c = homogenize(c);
      c = duplicate_removal(c);
      c = reorder_elements(c);
      // homogenize may collapse to a basic geometry whose value level is
      // already canonical (elements were canonicalized first)
      return c;
    }
  }
}

}  // namespace topotwin
