#pragma once

// Points, directions and lines of AG(n,q) and its projective completion.
//
// Canonical forms:
//  * a Direction is a nonzero vector whose first nonzero coordinate is 1;
//  * an AffineLine is (direction, base) with base the lexicographically
//    smallest point of the line;
//  * a Subspace is stored as its reduced row echelon basis.
// With these, equality of geometric objects is plain value equality.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ucycle/gf.hpp"
#include "ucycle/linalg.hpp"

namespace ucycle {

struct AffinePoint {
  Vec coords;

  std::size_t dim() const { return coords.size(); }
  static AffinePoint origin(std::size_t n) { return {Vec(n, 0)}; }
  auto operator<=>(AffinePoint const&) const = default;
};

struct Direction {
  Vec vec;

  std::size_t dim() const { return vec.size(); }
  /// The direction spanned by v (v nonzero).
  static Direction of(Field const& f, Vec const& v) { return {vec::normalize(f, v)}; }
  auto operator<=>(Direction const&) const = default;
};

/// A vertex of a cycle: an affine point or a point at infinity.
class ProjVertex {
 public:
  enum class Kind : std::uint8_t { affine, infinity };

  ProjVertex() = default;
  ProjVertex(AffinePoint p) : kind_(Kind::affine), coords_(std::move(p.coords)) {}
  ProjVertex(Direction d) : kind_(Kind::infinity), coords_(std::move(d.vec)) {}

  static ProjVertex affine(Vec coords) { return ProjVertex(AffinePoint{std::move(coords)}); }
  static ProjVertex infinity(Vec direction) { return ProjVertex(Direction{std::move(direction)}); }

  Kind kind() const { return kind_; }
  bool is_affine() const { return kind_ == Kind::affine; }
  bool is_infinity() const { return kind_ == Kind::infinity; }
  Vec const& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }

  AffinePoint point() const {
    if (!is_affine()) throw std::logic_error("vertex is a point at infinity");
    return {coords_};
  }
  Direction direction() const {
    if (!is_infinity()) throw std::logic_error("vertex is an affine point");
    return {coords_};
  }

  auto operator<=>(ProjVertex const&) const = default;

 private:
  Kind kind_ = Kind::affine;
  Vec coords_;
};

struct AffineLine {
  Direction dir;
  AffinePoint base;

  auto operator<=>(AffineLine const&) const = default;
};

/// W = ker(functional), functional normalized.
struct Hyperplane {
  Vec functional;

  std::size_t dim() const { return functional.size(); }
  bool contains(Field const& f, Vec const& x) const { return vec::dot(f, functional, x) == 0; }
  auto operator<=>(Hyperplane const&) const = default;
};

/// Linear subspace given by its RREF basis.
struct Subspace {
  std::size_t ambient = 0;
  std::vector<Vec> basis;
  std::vector<std::size_t> pivots;

  std::size_t dim() const { return basis.size(); }

  static Subspace span(Field const& f, std::size_t n, std::vector<Vec> const& vectors) {
    for (auto const& v : vectors)
      if (v.size() != n) throw DimensionMismatch("spanning vector has wrong dimension");
    EchelonForm e = rref(f, vectors);
    return {n, std::move(e.rows), std::move(e.pivots)};
  }

  bool contains(Field const& f, Vec const& v) const {
    if (v.size() != ambient) throw DimensionMismatch("vector dimension differs from subspace ambient");
    // Reduce v against the RREF rows; v is inside iff nothing remains.
    Vec r = v;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Code c = r[pivots[i]];
      if (c != 0) r = vec::sub(f, r, vec::scale(f, c, basis[i]));
    }
    return vec::is_zero(r);
  }

  bool operator==(Subspace const& o) const { return ambient == o.ambient && basis == o.basis; }
};

class DegenerateWindow : public std::invalid_argument {
 public:
  explicit DegenerateWindow(std::string const& what) : std::invalid_argument(what) {}
};

/// [n]_q = 1 + q + ... + q^{n-1}.
inline std::uint64_t direction_count(std::size_t n, std::uint64_t q) {
  std::uint64_t s = 0, t = 1;
  for (std::size_t i = 0; i < n; ++i) {
    s += t;
    t *= q;
  }
  return s;
}

/// q^{n-1} [n]_q.
inline std::uint64_t affine_line_count(std::size_t n, std::uint64_t q) {
  std::uint64_t t = 1;
  for (std::size_t i = 1; i < n; ++i) t *= q;
  return t * direction_count(n, q);
}

/// All normalized directions of F_q^n, lexicographic order.
inline std::vector<Direction> enumerate_directions(std::size_t n, Field const& f) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  std::vector<Direction> out;
  out.reserve(direction_count(n, f.q()));
  const std::uint64_t total = vec::space_size(f, n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec v = vec::from_index(f, n, idx);
    if (v[vec::leading_index(v)] == 1) out.push_back({std::move(v)});
  }
  return out;
}

/// The line w + <d> in canonical form. The first nonzero coordinate of d is
/// 1, so sliding along d reaches a point whose coordinate there is 0, and the
/// coordinates in front of it are constant on the line: that point is the
/// lexicographic minimum.
inline AffineLine line_from(Field const& f, AffinePoint const& w, Direction const& d) {
  if (w.dim() != d.dim()) throw DimensionMismatch("point and direction dimensions differ");
  const std::size_t lead = vec::leading_index(d.vec);
  if (lead == d.dim() || d.vec[lead] != 1) throw std::invalid_argument("direction is not normalized");
  AffinePoint base{vec::sub(f, w.coords, vec::scale(f, w.coords[lead], d.vec))};
  return {d, std::move(base)};
}

inline AffineLine line_through(Field const& f, AffinePoint const& a, AffinePoint const& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("point dimensions differ");
  if (a == b) throw DegenerateWindow("window joins a point to itself");
  return line_from(f, a, Direction::of(f, vec::sub(f, b.coords, a.coords)));
}

inline AffineLine decode_window(Field const& f, ProjVertex const& v1, ProjVertex const& v2) {
  if (v1.is_infinity() && v2.is_infinity()) throw DegenerateWindow("window joins two points at infinity");
  if (v1.is_affine() && v2.is_affine()) return line_through(f, v1.point(), v2.point());
  if (v1.is_affine()) return line_from(f, v1.point(), v2.direction());
  return line_from(f, v2.point(), v1.direction());
}

inline bool contains_point(Field const& f, AffineLine const& l, AffinePoint const& x) {
  return line_from(f, x, l.dir) == l;
}

/// W with d1, d2 both transversal to it: the first normalized covector in
/// lexicographic order not vanishing on either direction.
inline Hyperplane complementary_hyperplane(Field const& f, Direction const& d1, Direction const& d2) {
  if (d1 == d2) throw std::invalid_argument("complementary_hyperplane needs distinct directions");
  if (d1.dim() != d2.dim()) throw DimensionMismatch("direction dimensions differ");
  for (auto const& cov : enumerate_directions(d1.dim(), f)) {
    if (vec::dot(f, cov.vec, d1.vec) != 0 && vec::dot(f, cov.vec, d2.vec) != 0) return {cov.vec};
  }
  throw std::logic_error("no common complement found");  // q >= 2 always has one
}

/// Points of W in ascending lexicographic order (0 first).
inline std::vector<AffinePoint> hyperplane_points(Field const& f, Hyperplane const& w) {
  const std::size_t n = w.dim();
  const std::uint64_t total = vec::space_size(f, n);
  std::vector<AffinePoint> out;
  out.reserve(total / f.q());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec x = vec::from_index(f, n, idx);
    if (w.contains(f, x)) out.push_back({std::move(x)});
  }
  return out;
}

/// All q^{n-1} lines with direction d.
inline std::vector<AffineLine> fiber(Field const& f, Direction const& d) {
  // Canonical bases are exactly the points with 0 at d's leading coordinate.
  const std::size_t n = d.dim();
  const std::size_t lead = vec::leading_index(d.vec);
  const std::uint64_t total = vec::space_size(f, n);
  std::vector<AffineLine> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Vec x = vec::from_index(f, n, idx);
    if (x[lead] == 0) out.push_back({d, {std::move(x)}});
  }
  return out;
}

/// The first three directions, in the given order, inside the span of the
/// first two.
inline std::array<Direction, 3> find_coplanar_triplet(Field const& f, std::vector<Direction> const& dirs) {
  if (dirs.size() < 3) throw std::invalid_argument("need at least three directions");
  const Subspace plane = Subspace::span(f, dirs[0].dim(), {dirs[0].vec, dirs[1].vec});
  for (std::size_t i = 2; i < dirs.size(); ++i) {
    if (plane.contains(f, dirs[i].vec)) return {dirs[0], dirs[1], dirs[i]};
  }
  throw std::invalid_argument("no coplanar triplet among the given directions");
}

/// Coordinates on the plane V' = span(d1,d2,d3) in which d1, d2, d3 become
/// <(0,1)>, <(1,0)>, <(1,1)>.
struct PlaneFrame {
  Subspace plane;
  Matrix to_plane;    // 2 x n, valid on V'
  Matrix from_plane;  // n x 2, injective, image V'
};

inline PlaneFrame pgl_normalizer(Field const& f, Direction const& d1, Direction const& d2, Direction const& d3) {
  const std::size_t n = d1.dim();
  if (d2.dim() != n || d3.dim() != n) throw DimensionMismatch("direction dimensions differ");
  if (d1 == d2 || d1 == d3 || d2 == d3) throw std::invalid_argument("directions must be distinct");
  Subspace plane = Subspace::span(f, n, {d1.vec, d2.vec, d3.vec});
  if (plane.dim() != 2) throw std::invalid_argument("directions are not coplanar");

  // d3 = a*v1 + b*v2 with v1 = d2, v2 = d1; both coefficients are nonzero
  // because d3 is distinct from d1 and d2.
  const auto ab = solve_in_span(f, {d2.vec, d1.vec}, d3.vec);
  if (!ab || (*ab)[0] == 0 || (*ab)[1] == 0) throw std::logic_error("degenerate coplanar triple");
  const Vec e1 = vec::scale(f, (*ab)[0], d2.vec);
  const Vec e2 = vec::scale(f, (*ab)[1], d1.vec);
  Matrix from_plane = Matrix::from_columns({e1, e2});

  // Left inverse from the first pair of coordinates with an invertible 2x2
  // minor.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix minor(2, 2);
      minor(0, 0) = from_plane(i, 0);
      minor(0, 1) = from_plane(i, 1);
      minor(1, 0) = from_plane(j, 0);
      minor(1, 1) = from_plane(j, 1);
      if (auto inv = inverse(f, minor)) {
        Matrix to_plane(2, n);
        for (std::size_t r = 0; r < 2; ++r) {
          to_plane(r, i) = (*inv)(r, 0);
          to_plane(r, j) = (*inv)(r, 1);
        }
        return {std::move(plane), std::move(to_plane), std::move(from_plane)};
      }
    }
  }
  throw std::logic_error("plane basis has rank < 2");
}

namespace detail {
inline void hash_combine(std::size_t& seed, std::size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); }
inline std::size_t hash_vec(Vec const& v) {
  std::size_t h = v.size();
  for (Code c : v) hash_combine(h, c);
  return h;
}
}  // namespace detail

struct AffineLineHash {
  std::size_t operator()(AffineLine const& l) const {
    std::size_t h = detail::hash_vec(l.dir.vec);
    detail::hash_combine(h, detail::hash_vec(l.base.coords));
    return h;
  }
};

struct ProjVertexHash {
  std::size_t operator()(ProjVertex const& v) const {
    std::size_t h = detail::hash_vec(v.coords());
    detail::hash_combine(h, static_cast<std::size_t>(v.kind()));
    return h;
  }
};

}  // namespace ucycle
