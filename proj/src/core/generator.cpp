#include "core/generator.hpp"

#include <algorithm>
#include <cassert>

#include "core/oracle.hpp"

namespace topotwin {

namespace {
// EMPTY shapes are a documented bug-inducing pattern, so the random-shape
// strategy emits them deliberately at a fixed small rate.
const Rational kEmptyProbability(1, 20);
// Chance that a collection element is itself a nested collection (depth 2).
const Rational kNestedProbability(1, 10);
}  // namespace

std::size_t SpatialDatabase::total_rows() const {
  std::size_t n = 0;
  for (const auto& t : tables) n += t.rows.size();
  return n;
}

const SpatialTable* SpatialDatabase::find_table(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

int edit_input_count(EditFunction) {
  return 1;  // every Table-1 style edit consumes one stored geometry
}

EditClass edit_class(EditFunction e) {
  switch (e) {
    case EditFunction::SetPoint:
    case EditFunction::Polygonize:
      return EditClass::LineBased;
    case EditFunction::DumpRings:
    case EditFunction::ForcePolygonCW:
      return EditClass::PolygonBased;
    case EditFunction::GeometryN:
    case EditFunction::CollectionExtract:
      return EditClass::MultiDimensional;
    case EditFunction::Boundary:
    case EditFunction::ConvexHull:
      return EditClass::Generic;
  }
  return EditClass::Generic;
}

const char* edit_name(EditFunction e) {
  switch (e) {
    case EditFunction::SetPoint: return "SetPoint";
    case EditFunction::Polygonize: return "Polygonize";
    case EditFunction::DumpRings: return "DumpRings";
    case EditFunction::ForcePolygonCW: return "ForcePolygonCW";
    case EditFunction::GeometryN: return "GeometryN";
    case EditFunction::CollectionExtract: return "CollectionExtract";
    case EditFunction::Boundary: return "Boundary";
    case EditFunction::ConvexHull: return "ConvexHull";
  }
  return "?";
}

GeometryType edit_output_type(EditFunction e, const EditParams& params) {
  switch (e) {
    case EditFunction::SetPoint: return GeometryType::LineString;
    case EditFunction::Polygonize: return GeometryType::GeometryCollection;
    case EditFunction::DumpRings: return GeometryType::MultiLineString;
    case EditFunction::ForcePolygonCW: return GeometryType::Polygon;
    case EditFunction::GeometryN: return GeometryType::GeometryCollection;
    case EditFunction::CollectionExtract:
      return multi_type_of(params.extract_type);
    case EditFunction::Boundary: return GeometryType::GeometryCollection;
    case EditFunction::ConvexHull: return GeometryType::Polygon;
  }
  return GeometryType::GeometryCollection;
}

// ---------------------------------------------------------------------------
// Edits

namespace {

Error failure(std::string why) {
  return make_error(Errc::Unsupported, std::move(why));
}

Result<Geometry> edit_set_point(const Geometry& g, const EditParams& p) {
  if (g.type != GeometryType::LineString || g.empty)
    return failure("SetPoint needs a nonempty LINESTRING");
  if (p.index < 1 || p.index > static_cast<long long>(g.path.size()))
    return failure("SetPoint index out of range");
  std::vector<Point2> pts = g.path;
  pts[static_cast<std::size_t>(p.index - 1)] = p.replacement;
  return Geometry::make_line(std::move(pts));
}

Result<Geometry> edit_polygonize(const Geometry& g) {
  if (g.type != GeometryType::LineString || g.empty)
    return failure("Polygonize needs a nonempty LINESTRING");
  // Only a single closed simple ring polygonizes; anything else fails.
  if (g.path.size() < 4 || g.path.front() != g.path.back())
    return failure("line does not form a closed ring");
  Geometry poly = Geometry::make_polygon({g.path});
  if (!validate_geometry(poly).ok()) return failure("ring is not simple");
  return Geometry::make_container(GeometryType::GeometryCollection, {poly});
}

Result<Geometry> edit_dump_rings(const Geometry& g) {
  if (g.type != GeometryType::Polygon || g.empty)
    return failure("DumpRings needs a nonempty POLYGON");
  std::vector<Geometry> lines;
  for (const Ring& r : g.rings) lines.push_back(Geometry::make_line(r));
  return Geometry::make_container(GeometryType::MultiLineString,
                                  std::move(lines));
}

Geometry force_cw_one(const Geometry& poly) {
  std::vector<Ring> rings;
  for (std::size_t i = 0; i < poly.rings.size(); ++i) {
    Ring r = poly.rings[i];
    const Rational area2 = ring_signed_area2(r);
    // Exterior ring clockwise (negative area, y-up), holes the other way.
    const bool want_cw = i == 0;
    if ((want_cw && area2 > 0) || (!want_cw && area2 < 0))
      std::reverse(r.begin(), r.end());
    rings.push_back(std::move(r));
  }
  return Geometry::make_polygon(std::move(rings));
}

Result<Geometry> edit_force_polygon_cw(const Geometry& g) {
  if (g.empty) return failure("ForcePolygonCW needs a nonempty polygonal input");
  if (g.type == GeometryType::Polygon) return force_cw_one(g);
  if (g.type == GeometryType::MultiPolygon) {
    std::vector<Geometry> elems;
    for (const Geometry& e : g.elements)
      elems.push_back(e.empty ? e : force_cw_one(e));
    return Geometry::make_container(GeometryType::MultiPolygon,
                                    std::move(elems));
  }
  return failure("ForcePolygonCW needs POLYGON or MULTIPOLYGON");
}

Result<Geometry> edit_geometry_n(const Geometry& g, const EditParams& p) {
  if (!is_container(g.type) || g.empty)
    return failure("GeometryN needs a nonempty MULTI or MIXED geometry");
  if (p.index < 1 || p.index > static_cast<long long>(g.elements.size()))
    return failure("GeometryN index out of range");
  Geometry e = g.elements[static_cast<std::size_t>(p.index - 1)];
  if (is_multi(g.type) && e.empty) e = Geometry::make_empty(basic_type_of(g.type));
  return e;
}

void collect_basic(const Geometry& g, GeometryType want,
                   std::vector<Geometry>& out) {
  if (g.empty) return;
  if (g.type == want) {
    out.push_back(g);
    return;
  }
  if (is_container(g.type))
    for (const Geometry& e : g.elements) collect_basic(e, want, out);
}

Result<Geometry> edit_collection_extract(const Geometry& g,
                                         const EditParams& p) {
  if (!is_container(g.type) || g.empty)
    return failure("CollectionExtract needs a MULTI or MIXED geometry");
  std::vector<Geometry> matching;
  collect_basic(g, p.extract_type, matching);
  return Geometry::make_container(multi_type_of(p.extract_type),
                                  std::move(matching));
}

Result<Geometry> edit_boundary(const Geometry& g) { return boundary(g); }

Result<Geometry> edit_convex_hull(const Geometry& g) {
  return convex_hull_of(collect_points(g));
}

}  // namespace

Result<Geometry> convex_hull_of(const std::vector<Point2>& pts) {
  if (pts.empty()) return failure("convex hull of an empty point set");
  std::vector<Point2> s = pts;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() == 1) return Geometry::make_point(s.front());

  // Monotone chain.
  auto build = [&](bool upper) {
    std::vector<Point2> chain;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Point2& p = s[upper ? s.size() - 1 - k : k];
      while (chain.size() >= 2 &&
             orientation(chain[chain.size() - 2], chain.back(), p) <= 0)
        chain.pop_back();
      chain.push_back(p);
    }
    return chain;
  };
  std::vector<Point2> lower = build(false);
  std::vector<Point2> upper = build(true);
  if (lower.size() == 2 && upper.size() == 2)  // all collinear
    return Geometry::make_line({s.front(), s.back()});

  Ring ring = lower;
  ring.insert(ring.end(), upper.begin() + 1, upper.end());  // closes at s[0]
  if (ring.size() < 4) return Geometry::make_line({s.front(), s.back()});
  return Geometry::make_polygon({ring});
}

Result<Geometry> apply_edit(EditFunction e, const std::vector<Geometry>& inputs,
                            const EditParams& params) {
  if (inputs.size() != static_cast<std::size_t>(edit_input_count(e)))
    return failure("wrong input count");
  const Geometry& g = inputs.front();
  switch (e) {
    case EditFunction::SetPoint: return edit_set_point(g, params);
    case EditFunction::Polygonize: return edit_polygonize(g);
    case EditFunction::DumpRings: return edit_dump_rings(g);
    case EditFunction::ForcePolygonCW: return edit_force_polygon_cw(g);
    case EditFunction::GeometryN: return edit_geometry_n(g, params);
    case EditFunction::CollectionExtract:
      return edit_collection_extract(g, params);
    case EditFunction::Boundary: return edit_boundary(g);
    case EditFunction::ConvexHull: return edit_convex_hull(g);
  }
  return failure("unknown edit");
}

// ---------------------------------------------------------------------------
// Random shapes

namespace {

Point2 random_point(Rng& rng, const GeneratorConfig& cfg) {
  return Point2{Rational(rng.range(cfg.coord_min, cfg.coord_max)),
                Rational(rng.range(cfg.coord_min, cfg.coord_max))};
}

Geometry random_line(Rng& rng, const GeneratorConfig& cfg) {
  const int n = static_cast<int>(rng.range(2, cfg.max_points_per_line));
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, cfg));
  return Geometry::make_line(std::move(pts));
}

Geometry random_polygon(Rng& rng, const GeneratorConfig& cfg) {
  const int nrings = static_cast<int>(rng.range(1, cfg.max_rings));
  std::vector<Ring> rings;
  for (int r = 0; r < nrings; ++r) {
    const int npts = static_cast<int>(
        rng.range(3, std::max(3, cfg.max_points_per_line - 1)));
    Ring ring;
    for (int i = 0; i < npts; ++i) ring.push_back(random_point(rng, cfg));
    ring.push_back(ring.front());
    rings.push_back(std::move(ring));
  }
  return Geometry::make_polygon(std::move(rings));
}

Geometry random_basic(Rng& rng, const GeneratorConfig& cfg, GeometryType t) {
  switch (t) {
    case GeometryType::Point: return Geometry::make_point(random_point(rng, cfg));
    case GeometryType::LineString: return random_line(rng, cfg);
    default: return random_polygon(rng, cfg);
  }
}

Geometry random_shape_at(Rng& rng, const GeneratorConfig& cfg, int depth);

Geometry random_container(Rng& rng, const GeneratorConfig& cfg,
                          GeometryType t, int depth) {
  const int n = static_cast<int>(rng.range(1, cfg.max_elements));
  std::vector<Geometry> elems;
  for (int i = 0; i < n; ++i) {
    if (t == GeometryType::GeometryCollection) {
      if (depth < 1 && rng.chance(kNestedProbability)) {
        elems.push_back(random_shape_at(rng, cfg, depth + 1));
      } else if (rng.chance(kEmptyProbability)) {
        elems.push_back(Geometry::make_empty(
            static_cast<GeometryType>(rng.below(3))));
      } else {
        elems.push_back(random_basic(
            rng, cfg, static_cast<GeometryType>(rng.below(3))));
      }
    } else {
      const GeometryType basic = basic_type_of(t);
      if (rng.chance(kEmptyProbability))
        elems.push_back(Geometry::make_empty(basic));
      else
        elems.push_back(random_basic(rng, cfg, basic));
    }
  }
  return Geometry::make_container(t, std::move(elems));
}

Geometry random_shape_at(Rng& rng, const GeneratorConfig& cfg, int depth) {
  if (rng.chance(kEmptyProbability)) {
    return Geometry::make_empty(static_cast<GeometryType>(rng.below(7)));
  }
  const auto t = static_cast<GeometryType>(rng.below(7));
  if (is_container(t)) return random_container(rng, cfg, t, depth);
  return random_basic(rng, cfg, t);
}

}  // namespace

Geometry random_shape(Rng& rng, const GeneratorConfig& cfg) {
  return random_shape_at(rng, cfg, 0);
}

Geometry derive(const SpatialDatabase& sdb, EditFunction e, Rng& rng,
                const GeneratorConfig& cfg) {
  EditParams params;
  params.replacement = random_point(rng, cfg);
  params.index = rng.range(1, std::max(1, cfg.max_elements));
  params.extract_type = static_cast<GeometryType>(rng.below(3));

  const std::size_t total = sdb.total_rows();
  assert(total > 0);
  std::vector<Geometry> inputs;
  for (int k = 0; k < edit_input_count(e); ++k) {
    std::size_t pick = rng.below(total);
    for (const auto& t : sdb.tables) {
      if (pick < t.rows.size()) {
        inputs.push_back(t.rows[pick].geom);
        break;
      }
      pick -= t.rows.size();
    }
  }

  if (e == EditFunction::SetPoint && inputs.front().type ==
          GeometryType::LineString && !inputs.front().empty) {
    params.index =
        rng.range(1, static_cast<long long>(inputs.front().path.size()));
  }

  auto out = apply_edit(e, inputs, params);
  if (out.ok()) return out.take();
  return Geometry::make_empty(edit_output_type(e, params));
}

SpatialDatabase generate(const GeneratorConfig& cfg) {
  assert(cfg.geometry_count >= 1 && cfg.table_count >= 1);
  assert(cfg.coord_min <= cfg.coord_max);
  Rng rng(cfg.seed);

  SpatialDatabase sdb;
  for (std::uint64_t i = 1; i <= cfg.table_count; ++i)
    sdb.tables.push_back({"t" + std::to_string(i), {}});

  auto insert_random = [&](Geometry g) {
    SpatialTable& t = sdb.tables[rng.below(cfg.table_count)];
    t.rows.push_back({static_cast<long long>(t.rows.size() + 1), std::move(g)});
  };

  insert_random(random_shape(rng, cfg));  // nothing exists to derive from yet
  for (std::uint64_t i = 2; i <= cfg.geometry_count; ++i) {
    if (rng.chance(cfg.derivative_probability)) {
      const auto e = static_cast<EditFunction>(rng.below(kEditFunctionCount));
      insert_random(derive(sdb, e, rng, cfg));
    } else {
      insert_random(random_shape(rng, cfg));
    }
  }
  return sdb;
}

}  // namespace topotwin
