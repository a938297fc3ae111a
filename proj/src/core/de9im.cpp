#include "core/de9im.hpp"

#include <cctype>

namespace topotwin {

std::string DE9IMMatrix::code() const {
  std::string s(9, 'F');
  for (int i = 0; i < 9; ++i)
    if (dims[i] >= 0) s[i] = static_cast<char>('0' + dims[i]);
  return s;
}

Result<DE9IMMatrix> DE9IMMatrix::from_code(std::string_view code) {
  if (code.size() != 9)
    return make_error(Errc::ParseSyntax, "DE-9IM code must have 9 characters");
  DE9IMMatrix m;
  for (int i = 0; i < 9; ++i) {
    char c = static_cast<char>(std::toupper(code[i]));
    if (c == 'F') m.dims[i] = -1;
    else if (c >= '0' && c <= '2') m.dims[i] = c - '0';
    else return make_error(Errc::ParseSyntax, "bad DE-9IM character", i);
  }
  return m;
}

DE9IMMatrix DE9IMMatrix::transpose() const {
  DE9IMMatrix t;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool matches(const DE9IMMatrix& m, std::string_view pattern) {
  if (pattern.size() != 9) return false;
  for (int i = 0; i < 9; ++i) {
    char p = static_cast<char>(std::toupper(pattern[i]));
    int d = m.dims[i];
    switch (p) {
      case '*': break;
      case 'T':
        if (d < 0) return false;
        break;
      case 'F':
        if (d >= 0) return false;
        break;
      default:
        if (d != p - '0') return false;
        break;
    }
  }
  return true;
}

const char* predicate_name(PredicateName p) {
  switch (p) {
    case PredicateName::Intersects: return "Intersects";
    case PredicateName::Disjoint: return "Disjoint";
    case PredicateName::Contains: return "Contains";
    case PredicateName::Within: return "Within";
    case PredicateName::Covers: return "Covers";
    case PredicateName::CoveredBy: return "CoveredBy";
    case PredicateName::Crosses: return "Crosses";
    case PredicateName::Overlaps: return "Overlaps";
    case PredicateName::Touches: return "Touches";
    case PredicateName::Equals: return "Equals";
  }
  return "?";
}

std::optional<PredicateName> predicate_from_name(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  for (PredicateName p : kAllPredicates) {
    std::string cand = predicate_name(p);
    for (char& c : cand) c = static_cast<char>(std::tolower(c));
    if (cand == lower) return p;
  }
  return std::nullopt;
}

bool evaluate_predicate(PredicateName p, const DE9IMMatrix& m,
                        std::optional<int> dim1, std::optional<int> dim2) {
  auto any = [&](std::initializer_list<const char*> pats) {
    for (const char* pat : pats)
      if (matches(m, pat)) return true;
    return false;
  };
  switch (p) {
    case PredicateName::Disjoint:
      return matches(m, "FF*FF****");
    case PredicateName::Intersects:
      return !matches(m, "FF*FF****");
    case PredicateName::Contains:
      return matches(m, "T*****FF*");
    case PredicateName::Within:
      return matches(m, "T*F**F***");
    case PredicateName::Covers:
      return any({"T*****FF*", "*T****FF*", "***T**FF*", "****T*FF*"});
    case PredicateName::CoveredBy:
      return any({"T*F**F***", "*TF**F***", "**FT*F***", "**F*TF***"});
    case PredicateName::Touches:
      return any({"FT*******", "F**T*****", "F***T****"});
    case PredicateName::Equals:
      return matches(m, kEqualsPattern);
    case PredicateName::Crosses:
      if (!dim1 || !dim2) return false;
      if (*dim1 < *dim2) return matches(m, "T*T******");
      if (*dim1 > *dim2) return matches(m, "T*****T**");
      if (*dim1 == 1) return matches(m, "0********");
      return false;
    case PredicateName::Overlaps:
      if (!dim1 || !dim2 || *dim1 != *dim2) return false;
      if (*dim1 == 1) return matches(m, "1*T***T**");
      return matches(m, "T*T***T**");
  }
  return false;
}

}  // namespace topotwin
