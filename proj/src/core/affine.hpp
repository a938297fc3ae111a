#ifndef TOPOTWIN_CORE_AFFINE_HPP
#define TOPOTWIN_CORE_AFFINE_HPP

#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/result.hpp"
#include "core/rng.hpp"

namespace topotwin {

// Invertible affine map p -> A*p + b over exact rationals, realized as the
// (n+1)x(n+1) augmented matrix acting on homogeneous vectors. n is 2 for all
// geometry work; the matrix math itself also supports n = 3.
class MappingMatrix {
 public:
  // Entries row-major: linear[r*n + c]. det(linear) must be nonzero.
  MappingMatrix(int n, std::vector<Rational> linear,
                std::vector<Rational> translation);

  static MappingMatrix identity(int n);

  int dim() const { return n_; }
  const Rational& a(int r, int c) const { return linear_[r * n_ + c]; }
  const Rational& b(int r) const { return translation_[r]; }

  Rational det() const;

  // Maps one point (n = 2).
  Point2 map(const Point2& p) const;

  // Maps every point of g exactly; structure unchanged; EMPTY stays EMPTY.
  Geometry apply(const Geometry& g) const;

  MappingMatrix inverse() const;

  // Row-major augmented matrix, one row per line, entries as exact
  // integers/fractions separated by spaces. Used in reproduction bundles.
  std::string serialize() const;
  static Result<MappingMatrix> deserialize(std::string_view text);

  friend bool operator==(const MappingMatrix& x, const MappingMatrix& y) {
    return x.n_ == y.n_ && x.linear_ == y.linear_ &&
           x.translation_ == y.translation_;
  }

 private:
  int n_;
  std::vector<Rational> linear_;       // n*n
  std::vector<Rational> translation_;  // n
};

// Draws integer entries from [entry_min, entry_max] until det != 0. A range
// that cannot produce an invertible matrix (e.g. {0}) trips the rejection
// cap and returns an Internal error.
Result<MappingMatrix> generate_mapping_matrix(int n, Rng& rng, long long entry_min,
                                              long long entry_max);

}  // namespace topotwin

#endif
