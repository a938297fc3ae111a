#ifndef TOPOTWIN_CORE_CANONICAL_HPP
#define TOPOTWIN_CORE_CANONICAL_HPP

#include "core/geometry.hpp"

namespace topotwin {

// Full canonical form: elements are canonicalized recursively, then at each
// container level EMPTY removal, homogenization, shape-based duplicate
// removal and dimension/text reordering run in order; every basic piece gets
// consecutive-duplicate removal and coordinate reordering. Idempotent,
// element-permutation invariant, and point-set preserving except for the
// documented degenerate collapse (a line left with fewer than two distinct
// points becomes EMPTY, a ring with fewer than three is dropped).
Geometry canonicalize(const Geometry& g);

// Individual pipeline steps, applied at the top level only (identity on
// types they do not target). canonicalize() composes recursive variants.
Geometry empty_removal(const Geometry& g);
Geometry homogenize(const Geometry& g);
Geometry duplicate_removal(const Geometry& g);
Geometry reorder_elements(const Geometry& g);
Geometry consecutive_duplicate_removal(const Geometry& g);
Geometry reorder_coords(const Geometry& g);

}  // namespace topotwin

#endif
