#ifndef TOPOTWIN_CORE_WKT_HPP
#define TOPOTWIN_CORE_WKT_HPP

#include <string>
#include <string_view>

#include "core/geometry.hpp"
#include "core/result.hpp"

namespace topotwin {

// Parses the WKT subset used throughout: the seven 2D tags plus EMPTY,
// integer and plain-decimal coordinates, fully parenthesized MULTI elements,
// case-insensitive tags. Decimals convert exactly (0.2 -> 1/5).
//
// Malformed text fails with Errc::ParseSyntax; well-formed text breaking an
// arity rule (a 1-point line, an open or short ring) fails with
// Errc::ParseSemantic. Both carry the byte offset of the problem.
Result<Geometry> parse_wkt(std::string_view text);

// Serializes with upper-case tags, no Z/M, and exact shortest-decimal
// coordinates. Round-trip law: parse_wkt(to_wkt(g)) == g.
// Fails with Errc::Unprintable when a coordinate's denominator is not of the
// form 2^a*5^b; generated data never hits this (integer matrices over
// integer or decimal inputs stay printable).
Result<std::string> to_wkt(const Geometry& g);

// to_wkt for values known printable (asserts on failure).
std::string to_wkt_or_die(const Geometry& g);

}  // namespace topotwin

#endif
