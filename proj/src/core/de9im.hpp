#ifndef TOPOTWIN_CORE_DE9IM_HPP
#define TOPOTWIN_CORE_DE9IM_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "core/result.hpp"

namespace topotwin {

// 3x3 intersection-dimension matrix, row-major [II IB IE BI BB BE EI EB EE]
// where rows are interior/boundary/exterior of the first geometry and
// columns of the second. Entry -1 encodes F (empty intersection).
struct DE9IMMatrix {
  std::array<int, 9> dims{{-1, -1, -1, -1, -1, -1, -1, -1, -1}};

  int& at(int row, int col) { return dims[row * 3 + col]; }
  int at(int row, int col) const { return dims[row * 3 + col]; }

  // 9-character code over {F,0,1,2}, e.g. "FF21F1102".
  std::string code() const;
  static Result<DE9IMMatrix> from_code(std::string_view code);

  DE9IMMatrix transpose() const;

  friend bool operator==(const DE9IMMatrix& a, const DE9IMMatrix& b) {
    return a.dims == b.dims;
  }
  friend bool operator!=(const DE9IMMatrix& a, const DE9IMMatrix& b) {
    return !(a == b);
  }
};

// Entry-wise mask over {T,F,*,0,1,2}: T matches any dimension, F matches
// empty, * matches anything, digits match exactly.
bool matches(const DE9IMMatrix& m, std::string_view pattern);

enum class PredicateName {
  Intersects,
  Disjoint,
  Contains,
  Within,
  Covers,
  CoveredBy,
  Crosses,
  Overlaps,
  Touches,
  Equals,
};

constexpr std::array<PredicateName, 10> kAllPredicates = {
    PredicateName::Intersects, PredicateName::Disjoint,
    PredicateName::Contains,   PredicateName::Within,
    PredicateName::Covers,     PredicateName::CoveredBy,
    PredicateName::Crosses,    PredicateName::Overlaps,
    PredicateName::Touches,    PredicateName::Equals};

const char* predicate_name(PredicateName p);  // "Intersects", ...
std::optional<PredicateName> predicate_from_name(std::string_view name);

// Pattern evaluation on an already-computed matrix. Crosses and Overlaps
// depend on the operand dimensions (nullopt for fully empty geometries).
bool evaluate_predicate(PredicateName p, const DE9IMMatrix& m,
                        std::optional<int> dim1, std::optional<int> dim2);

inline const char* kEqualsPattern = "T*F**FFF*";

}  // namespace topotwin

#endif
