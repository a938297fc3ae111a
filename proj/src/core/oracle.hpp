#ifndef TOPOTWIN_CORE_ORACLE_HPP
#define TOPOTWIN_CORE_ORACLE_HPP

#include <vector>

#include "core/de9im.hpp"
#include "core/geometry.hpp"
#include "core/result.hpp"

namespace topotwin {

struct Segment {
  Point2 a;
  Point2 b;  // a != b
};

// The geometry reduced to the cells its topology is computed from: isolated
// points (POINT elements and fully degenerate lines), nondegenerate line
// segments, and whole polygons (even-odd region bounded by their rings).
//
// Boundary and interior follow the cell-complex rules: a segment's boundary
// is its endpoints, a polygon's boundary is its rings, a point has none. At
// the complex level a candidate boundary point survives only if exactly one
// cell claims it; a point claimed by two or more cells (a shared chain
// vertex, a ring point that is also a POINT element, a polygon edge shared
// with another polygon) is subtracted and lands in the interior.
struct TopoDecomposition {
  std::vector<Point2> points;
  std::vector<Segment> segments;
  struct PolygonCell {
    std::vector<Ring> rings;
  };
  std::vector<PolygonCell> polygons;

  bool is_empty() const {
    return points.empty() && segments.empty() && polygons.empty();
  }
};

enum class Location { Interior, Boundary, Exterior };

// Rejects semantically invalid shapes: any polygon ring that self-intersects,
// repeats consecutive points, or collides with another ring of the same
// polygon along a segment. Linestrings are never invalid here.
Status validate_geometry(const Geometry& g);

TopoDecomposition decompose(const Geometry& g);

// Classifies a single point against a decomposition. Exact; no tolerances.
Location locate(const TopoDecomposition& d, const Point2& p);

// DE-9IM over exact rationals via a planar overlay: every vertex, pairwise
// segment intersection, split edge, and adjacent face of the combined
// linework is classified against both decompositions and the per-entry
// maximum dimension is kept. Fails with Errc::InvalidGeometry when either
// operand fails validate_geometry.
Result<DE9IMMatrix> relate(const Geometry& g1, const Geometry& g2);

// relate + named pattern evaluation.
Result<bool> named_predicate(PredicateName p, const Geometry& g1,
                             const Geometry& g2);

// Materializes the boundary point set as a geometry: MULTIPOINT,
// MULTILINESTRING, a collection of both, or GEOMETRYCOLLECTION EMPTY.
Result<Geometry> boundary(const Geometry& g);

// Shape equality (point-set equality judged by the oracle). Falls back to
// structural equality when the oracle refuses the operands.
bool shapes_equal(const Geometry& a, const Geometry& b);

// --- exact predicates shared with the generator (hull, orientation) ---

// Sign of the cross product (b-a) x (c-a): >0 left turn, <0 right, 0 collinear.
int orientation(const Point2& a, const Point2& b, const Point2& c);

bool on_segment(const Point2& p, const Point2& a, const Point2& b);

// Twice the signed area of a closed ring (positive = counter-clockwise
// under the y-up convention).
Rational ring_signed_area2(const Ring& ring);

}  // namespace topotwin

#endif
