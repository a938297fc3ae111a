#ifndef TOPOTWIN_CORE_GENERATOR_HPP
#define TOPOTWIN_CORE_GENERATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/result.hpp"
#include "core/rng.hpp"

namespace topotwin {

struct GeneratorConfig {
  std::uint64_t geometry_count = 50;  // N
  std::uint64_t table_count = 3;      // m
  long long coord_min = 0;
  long long coord_max = 1000;
  int max_points_per_line = 8;
  int max_rings = 2;
  int max_elements = 4;
  Rational derivative_probability = Rational(1, 2);
  std::uint64_t seed = 0;
};

struct Row {
  long long id = 0;
  Geometry geom;
};

struct SpatialTable {
  std::string name;
  std::vector<Row> rows;
};

struct SpatialDatabase {
  std::vector<SpatialTable> tables;

  std::size_t total_rows() const;
  const SpatialTable* find_table(const std::string& name) const;
};

enum class EditFunction {
  SetPoint = 0,
  Polygonize,
  DumpRings,
  ForcePolygonCW,
  GeometryN,
  CollectionExtract,
  Boundary,
  ConvexHull,
};

constexpr int kEditFunctionCount = 8;

enum class EditClass { LineBased, PolygonBased, MultiDimensional, Generic };

// Required input count and dimension class, as configured per edit.
int edit_input_count(EditFunction e);
EditClass edit_class(EditFunction e);
const char* edit_name(EditFunction e);

// Parameters some edits draw from the rng (index for SetPoint/GeometryN,
// replacement point for SetPoint, requested type for CollectionExtract).
struct EditParams {
  long long index = 1;  // 1-based
  Point2 replacement;
  GeometryType extract_type = GeometryType::Point;
};

// Applies the edit to exactly edit_input_count(e) inputs. A class mismatch,
// an out-of-range index, or an undefined result is a Failure (error); the
// caller maps it to EMPTY of the edit's natural output type.
Result<Geometry> apply_edit(EditFunction e, const std::vector<Geometry>& inputs,
                            const EditParams& params);

GeometryType edit_output_type(EditFunction e, const EditParams& params);

// One geometry from the random-shape strategy: uniformly drawn type,
// integer coordinates inside the configured range, EMPTY with small
// probability; semantic validity is deliberately not enforced.
Geometry random_shape(Rng& rng, const GeneratorConfig& cfg);

// One geometry from the derivative strategy: draws the edit's inputs from
// the existing database and falls back to EMPTY when derivation fails.
Geometry derive(const SpatialDatabase& sdb, EditFunction e, Rng& rng,
                const GeneratorConfig& cfg);

// Builds the database: m tables, N geometries, the first always from
// random_shape, the rest choosing a strategy per the configured derivative
// probability. Deterministic given cfg.seed.
SpatialDatabase generate(const GeneratorConfig& cfg);

// Exact convex hull used by the ConvexHull edit; exposed for tests.
// Returns POINT / LINESTRING(min,max) / POLYGON for 0-, 1-, 2-dimensional
// hulls; fails on an empty point set.
Result<Geometry> convex_hull_of(const std::vector<Point2>& pts);

}  // namespace topotwin

#endif
