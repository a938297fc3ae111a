#include "core/affine.hpp"

#include <cassert>
#include <sstream>

namespace topotwin {

MappingMatrix::MappingMatrix(int n, std::vector<Rational> linear,
                             std::vector<Rational> translation)
    : n_(n), linear_(std::move(linear)), translation_(std::move(translation)) {
  assert(n_ == 2 || n_ == 3);
  assert(linear_.size() == static_cast<std::size_t>(n_ * n_));
  assert(translation_.size() == static_cast<std::size_t>(n_));
  assert(det() != 0);
}

MappingMatrix MappingMatrix::identity(int n) {
  std::vector<Rational> lin(n * n, Rational(0));
  for (int i = 0; i < n; ++i) lin[i * n + i] = 1;
  return MappingMatrix(n, std::move(lin), std::vector<Rational>(n, Rational(0)));
}

Rational MappingMatrix::det() const {
  if (n_ == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Point2 MappingMatrix::map(const Point2& p) const {
  assert(n_ == 2);
  return Point2{a(0, 0) * p.x + a(0, 1) * p.y + b(0),
                a(1, 0) * p.x + a(1, 1) * p.y + b(1)};
}

Geometry MappingMatrix::apply(const Geometry& g) const {
  return for_each_point(g, [this](const Point2& p) { return map(p); });
}

MappingMatrix MappingMatrix::inverse() const {
  const Rational d = det();
  assert(d != 0);
  std::vector<Rational> inv(n_ * n_);
  if (n_ == 2) {
    inv[0] = a(1, 1) / d;
    inv[1] = -a(0, 1) / d;
    inv[2] = -a(1, 0) / d;
    inv[3] = a(0, 0) / d;
  } else {
    auto cof = [&](int r, int c) {
      int r0 = (r + 1) % 3, r1 = (r + 2) % 3;
      int c0 = (c + 1) % 3, c1 = (c + 2) % 3;
      return a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
    };
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) inv[r * 3 + c] = cof(c, r) / d;
  }
  // b' = -A^{-1} b
  std::vector<Rational> bt(n_, Rational(0));
  for (int r = 0; r < n_; ++r) {
    Rational acc(0);
    for (int c = 0; c < n_; ++c) acc += inv[r * n_ + c] * b(c);
    bt[r] = -acc;
  }
  return MappingMatrix(n_, std::move(inv), std::move(bt));
}

namespace {
std::string rational_text(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Result<Rational> rational_from_text(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) {
    auto v = rational_from_decimal(tok);
    if (!v) return make_error(Errc::ParseSyntax, "bad matrix entry: " + tok);
    return *v;
  }
  auto num = rational_from_decimal(tok.substr(0, slash));
  auto den = rational_from_decimal(tok.substr(slash + 1));
  if (!num || !den || *den == 0 || !is_integer(*num) || !is_integer(*den))
    return make_error(Errc::ParseSyntax, "bad matrix entry: " + tok);
  return Rational(numerator(*num), numerator(*den));
}
}  // namespace

std::string MappingMatrix::serialize() const {
  std::ostringstream out;
  for (int r = 0; r < n_ + 1; ++r) {
    for (int c = 0; c < n_ + 1; ++c) {
      if (c) out << ' ';
      if (r < n_ && c < n_) out << rational_text(a(r, c));
      else if (r < n_) out << rational_text(b(r));
      else out << (c == n_ ? "1" : "0");
    }
    out << '\n';
  }
  return out.str();
}

Result<MappingMatrix> MappingMatrix::deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Rational> entries;
  std::string tok;
  while (in >> tok) {
    auto v = rational_from_text(tok);
    if (!v.ok()) return v.error();
    entries.push_back(v.take());
  }
  int n;
  if (entries.size() == 9) n = 2;
  else if (entries.size() == 16) n = 3;
  else return make_error(Errc::ParseSyntax, "matrix must be 3x3 or 4x4");

  std::vector<Rational> lin(n * n);
  std::vector<Rational> tr(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) lin[r * n + c] = entries[r * (n + 1) + c];
    tr[r] = entries[r * (n + 1) + n];
  }
  // Last augmented row must be (0,...,0,1).
  for (int c = 0; c <= n; ++c) {
    const Rational& v = entries[n * (n + 1) + c];
    if (v != (c == n ? Rational(1) : Rational(0)))
      return make_error(Errc::ParseSemantic, "last augmented row must be 0..0 1");
  }
  Rational d;
  if (n == 2) {
    d = lin[0] * lin[3] - lin[1] * lin[2];
  } else {
    d = lin[0] * (lin[4] * lin[8] - lin[5] * lin[7]) -
        lin[1] * (lin[3] * lin[8] - lin[5] * lin[6]) +
        lin[2] * (lin[3] * lin[7] - lin[4] * lin[6]);
  }
  if (d == 0) return make_error(Errc::ParseSemantic, "matrix is singular");
  return MappingMatrix(n, std::move(lin), std::move(tr));
}

Result<MappingMatrix> generate_mapping_matrix(int n, Rng& rng,
                                              long long entry_min,
                                              long long entry_max) {
  assert(n == 2 || n == 3);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Rational> lin(n * n);
    std::vector<Rational> tr(n);
    for (auto& v : lin) v = Rational(rng.range(entry_min, entry_max));
    for (auto& v : tr) v = Rational(rng.range(entry_min, entry_max));
    Rational d;
    if (n == 2) {
      d = lin[0] * lin[3] - lin[1] * lin[2];
    } else {
      d = lin[0] * (lin[4] * lin[8] - lin[5] * lin[7]) -
          lin[1] * (lin[3] * lin[8] - lin[5] * lin[6]) +
          lin[2] * (lin[3] * lin[7] - lin[4] * lin[6]);
    }
    if (d != 0) return MappingMatrix(n, std::move(lin), std::move(tr));
  }
  return make_error(Errc::Internal,
                    "could not draw an invertible matrix in 1000 attempts; "
                    "entry range is degenerate");
}

}  // namespace topotwin
