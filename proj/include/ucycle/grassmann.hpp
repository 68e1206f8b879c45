#pragma once

// Universal cycles on the Grassmannian G_q(2,m) of 2-subspaces of F_q^m.
//
// A GrassCycle is a cyclic sequence of nonzero vectors; each consecutive pair
// spans a 2-subspace. The outer shell of G_q(2,m) (subspaces not inside
// x_m = 0) is in bijection with the affine lines of AG(m-1,q) through
//   tau(w + <v>) = span{(w,1), (v,0)},
// so an affine universal cycle lifts to a shell cycle. Nesting starts from
// the Singer cycle on G_q(2,3) and splices a lifted shell cycle onto each
// level at the vertex e_1.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ucycle/constructions.hpp"
#include "ucycle/cycles.hpp"
#include "ucycle/geometry.hpp"
#include "ucycle/linalg.hpp"

namespace ucycle {

/// 2-subspace as its 2 x m RREF basis.
struct Subspace2 {
  std::array<Vec, 2> rows;

  std::size_t ambient() const { return rows[0].size(); }
  auto operator<=>(Subspace2 const&) const = default;
};

struct GrassCycle {
  std::size_t dim = 0;
  std::vector<Vec> vertices;

  std::size_t size() const { return vertices.size(); }
  bool operator==(GrassCycle const&) const = default;
};

struct Subspace2Hash {
  std::size_t operator()(Subspace2 const& s) const {
    std::size_t h = detail::hash_vec(s.rows[0]);
    detail::hash_combine(h, detail::hash_vec(s.rows[1]));
    return h;
  }
};

/// span{u, v}; throws DegenerateWindow when u, v are dependent.
inline Subspace2 span2(Field const& f, Vec const& u, Vec const& v) {
  EchelonForm e = rref(f, {u, v});
  if (e.rows.size() != 2) throw DegenerateWindow("window vectors are linearly dependent");
  return {{std::move(e.rows[0]), std::move(e.rows[1])}};
}

/// Gaussian binomial [m choose 2]_q.
inline std::uint64_t gaussian_binomial2(std::size_t m, std::uint64_t q) {
  if (m < 2) return 0;
  std::uint64_t qm = 1;
  for (std::size_t i = 0; i < m; ++i) qm *= q;
  return (qm - 1) * (qm / q - 1) / ((q * q - 1) * (q - 1));
}

inline Vec homogenize(Vec x, Code last) {
  x.push_back(last);
  return x;
}

inline Subspace2 tau(Field const& f, AffineLine const& l) {
  return span2(f, homogenize(l.base.coords, 1), homogenize(l.dir.vec, 0));
}

/// Affine vertex x -> (x,1), point at infinity [l] -> (l,0).
inline GrassCycle lift_affine_cycle(Cycle const& c) {
  GrassCycle out{c.dim + 1, {}};
  out.vertices.reserve(c.size());
  for (auto const& v : c.vertices) out.vertices.push_back(homogenize(v.coords(), v.is_affine() ? 1 : 0));
  return out;
}

/// Spanned subspaces in window order.
inline std::vector<Subspace2> grass_windows(Field const& f, GrassCycle const& c) {
  std::vector<Subspace2> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    try {
      out.push_back(span2(f, c.vertices[i], c.vertices[(i + 1) % c.size()]));
    } catch (DegenerateWindow const& e) {
      throw WindowError(i, e.what());
    }
  }
  return out;
}

/// Pad every vertex with zeros up to dimension m (the inclusion
/// F_q^k = {x_{k+1} = ... = x_m = 0}).
inline GrassCycle embed(GrassCycle c, std::size_t m) {
  if (m < c.dim) throw DimensionMismatch("cannot embed into a smaller space");
  for (auto& v : c.vertices) v.resize(m, 0);
  c.dim = m;
  return c;
}

/// GF(q^3) as GF(q)[x]/(g), g the lexicographically smallest monic
/// irreducible cubic over GF(q) (coefficients compared x^0 first). Elements
/// are coordinate vectors in the basis 1, x, x^2.
class CubicExtension {
 public:
  explicit CubicExtension(Field const& base) : base_(base) {
    const Code q = base.q();
    for (std::uint64_t idx = 0; idx < std::uint64_t(q) * q * q; ++idx) {
      // c0 most significant, so the scan is lexicographic low degree first.
      const std::array<Code, 3> c{Code(idx / (q * q)), Code(idx / q % q), Code(idx % q)};
      bool has_root = false;
      for (Code r = 0; r < q && !has_root; ++r) {
        Code v = 1;  // Horner on x^3 + c2 x^2 + c1 x + c0
        v = base.add(base.mul(v, r), c[2]);
        v = base.add(base.mul(v, r), c[1]);
        v = base.add(base.mul(v, r), c[0]);
        has_root = v == 0;
      }
      if (!has_root) {
        modulus_ = c;
        return;
      }
    }
    throw std::logic_error("no irreducible cubic");  // unreachable
  }

  Field const& base() const { return base_; }
  /// Lower coefficients c0, c1, c2 of the monic modulus.
  std::array<Code, 3> const& modulus() const { return modulus_; }

  Vec one() const { return {1, 0, 0}; }

  Vec mul(Vec const& a, Vec const& b) const {
    Field const& f = base_;
    std::array<Code, 5> prod{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
    // x^3 = -(c2 x^2 + c1 x + c0)
    for (std::size_t d = 4; d >= 3; --d) {
      const Code t = prod[d];
      prod[d] = 0;
      for (std::size_t i = 0; i < 3; ++i) prod[d - 3 + i] = f.sub(prod[d - 3 + i], f.mul(t, modulus_[i]));
    }
    return {prod[0], prod[1], prod[2]};
  }

  std::uint64_t multiplicative_order(Vec const& a) const {
    if (vec::is_zero(a)) return 0;
    std::uint64_t ord = 1;
    for (Vec x = a; x != one(); x = mul(x, a)) ++ord;
    return ord;
  }

  /// First element with order q^3 - 1, coordinates read as a base-q number
  /// with the x^0 coefficient least significant.
  Vec primitive_element() const {
    const std::uint64_t q = base_.q();
    const std::uint64_t group = q * q * q - 1;
    for (std::uint64_t idx = 1; idx <= group; ++idx) {
      Vec a{Code(idx % q), Code(idx / q % q), Code(idx / (q * q))};
      if (multiplicative_order(a) == group) return a;
    }
    throw std::logic_error("no primitive element");  // unreachable
  }

 private:
  Field base_;
  std::array<Code, 3> modulus_{};
};

/// Invertible map sending v to e_1 that acts only on the first `active`
/// coordinates (v must be supported there) and fixes the rest. Identity when
/// v is already e_1.
inline Matrix map_to_e1(Field const& f, Vec const& v, std::size_t active) {
  const std::size_t m = v.size();
  // Columns: v, then standard vectors completing it to a basis of the first
  // `active` coordinates; the inverse of that basis matrix sends v to e_1.
  std::vector<Vec> basis{v};
  for (std::size_t j = 0; j < active && basis.size() < active; ++j) {
    Vec e(m, 0);
    e[j] = 1;
    basis.push_back(e);
    if (rank(f, basis) != basis.size()) basis.pop_back();
  }
  for (std::size_t j = active; j < m; ++j) {
    Vec e(m, 0);
    e[j] = 1;
    basis.push_back(e);
  }
  auto inv = inverse(f, Matrix::from_columns(basis));
  if (!inv) throw std::logic_error("basis completion failed");
  return *inv;
}

inline GrassCycle map_grass(Field const& f, GrassCycle const& c, Matrix const& g) {
  GrassCycle out{c.dim, {}};
  out.vertices.reserve(c.size());
  for (auto const& v : c.vertices) out.vertices.push_back(g.apply(f, v));
  return out;
}

/// U_3: the Singer cycle 1 -> a -> a^2 -> ... -> a^{q^2+q} for a primitive
/// a of GF(q^3), in coordinates where 1 is e_1.
inline GrassCycle singer_cycle(Field const& f) {
  const CubicExtension ext(f);
  const Vec alpha = ext.primitive_element();
  const std::uint64_t q = f.q();
  const std::uint64_t length = q * q + q + 1;
  GrassCycle c{3, {}};
  c.vertices.reserve(length);
  Vec x = ext.one();
  for (std::uint64_t i = 0; i < length; ++i) {
    c.vertices.push_back(x);
    x = ext.mul(x, alpha);
  }
  return map_grass(f, c, map_to_e1(f, c.vertices.front(), 3));
}

namespace detail {

inline std::size_t find_vertex(GrassCycle const& c, Vec const& v) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.vertices[i] == v) return i;
  return c.size();
}

inline Vec unit(std::size_t m, std::size_t i) {
  Vec e(m, 0);
  e[i] = 1;
  return e;
}

}  // namespace detail

/// Splice the shell cycle onto the embedded inner cycle at e_1. The inner
/// cycle is rotated to start at e_1 and stays a contiguous block.
inline GrassCycle splice_at_e1(GrassCycle const& inner, GrassCycle const& shell) {
  if (inner.dim != shell.dim) throw DimensionMismatch("inner and shell dimensions differ");
  const Vec e1 = detail::unit(inner.dim, 0);
  const std::size_t i = detail::find_vertex(inner, e1);
  const std::size_t s = detail::find_vertex(shell, e1);
  if (i == inner.size() || s == shell.size()) throw GlueError("cycle does not contain e_1");
  GrassCycle out{inner.dim, {}};
  out.vertices.reserve(inner.size() + shell.size());
  out.vertices.insert(out.vertices.end(), inner.vertices.begin() + i, inner.vertices.end());
  out.vertices.insert(out.vertices.end(), inner.vertices.begin(), inner.vertices.begin() + i);
  out.vertices.insert(out.vertices.end(), shell.vertices.begin() + s, shell.vertices.end());
  out.vertices.insert(out.vertices.end(), shell.vertices.begin(), shell.vertices.begin() + s);
  return out;
}

/// [U_3, ..., U_n]; U_m is a contiguous block of U_{m+1}.
inline std::vector<GrassCycle> nested_cycles(std::size_t n, Field const& f) {
  if (n < 3) throw std::invalid_argument("nested_cycles needs n >= 3");
  std::vector<GrassCycle> levels{singer_cycle(f)};
  for (std::size_t m = 3; m < n; ++m) {
    GrassCycle shell = lift_affine_cycle(universal_cycle(m, f));
    const Vec e1 = detail::unit(m + 1, 0);
    if (detail::find_vertex(shell, e1) == shell.size()) {
      // Move some point-at-infinity lift (v,0) onto e_1 with a map that only
      // touches the first m coordinates, so the shell stays the shell.
      std::size_t k = 0;
      while (k < shell.size() && shell.vertices[k].back() != 0) ++k;
      if (k == shell.size()) throw std::logic_error("shell cycle has no point at infinity");
      shell = map_grass(f, shell, map_to_e1(f, shell.vertices[k], m));
    }
    levels.push_back(splice_at_e1(embed(levels.back(), m + 1), shell));
  }
  return levels;
}

}  // namespace ucycle
