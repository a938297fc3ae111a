#ifndef TOPOTWIN_CORE_REDUCER_HPP
#define TOPOTWIN_CORE_REDUCER_HPP

#include "core/harness.hpp"

namespace topotwin {

struct ReduceOptions {
  AdapterOptions adapter;
  // Upper bound on geometry-shrink trials after row minimization.
  int shrink_budget = 200;
};

// Minimizes the paired INSERT lists of a discrepancy while the count
// mismatch persists. The reduction unit is the row pair (same table, same
// id, removed from both logs together); delta debugging drives it to
// 1-minimality, then a best-effort per-geometry shrink drops MULTI elements
// and linestring points, rebuilding the twin row through the bundle's
// matrix so the pair invariant holds at every step. CREATE statements for
// empty tables the query does not touch are dropped at the end.
//
// Fails with Errc::NotReproducing when the input does not reproduce.
Result<Discrepancy> reduce(const Discrepancy& d, const ReduceOptions& opts);

}  // namespace topotwin

#endif
