#pragma once

// Universal cycles for unions of direction fibers, and their assembly into a
// universal cycle for every affine line of AG(n,q).
//
// Building blocks:
//   two_fiber_cycle     two fibers sharing a complementary hyperplane W;
//   triple_base_cycle   the three fibers <(0,1)>, <(1,0)>, <(1,1)> of F_q^2;
//   lift_cycle          replicate a cycle on a subspace U across all cosets of
//                       U, stitched at a shared point at infinity;
//   triple_fiber_cycle  any coplanar triple, via a change of coordinates on
//                       the plane followed by lifting.
// universal_cycle pairs up the directions (isolating one coplanar triple when
// their number is odd) and glues every piece at the origin.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ucycle/cycles.hpp"
#include "ucycle/geometry.hpp"

namespace ucycle {

struct FiberPlan {
  std::optional<std::array<Direction, 3>> triplet;
  std::vector<std::pair<Direction, Direction>> pairs;
};

/// Odd q: the index set {0,1,2} handled by the kernel cycle and the pairing of
/// the remaining q-3 field elements into blocks.
struct KernelSpec {
  std::array<Code, 3> kernel;
  std::vector<Code> rest;
  std::vector<std::pair<Code, Code>> pairs;
};

namespace detail {

inline ProjVertex origin_vertex(std::size_t n) { return ProjVertex::affine(Vec(n, 0)); }

inline ProjVertex grid(Code x, Code y) { return ProjVertex::affine({x, y}); }

// Standard plane directions <(0,1)>, <(1,0)>, <(1,1)>.
inline ProjVertex ell1() { return ProjVertex::infinity({0, 1}); }
inline ProjVertex ell2() { return ProjVertex::infinity({1, 0}); }
inline ProjVertex ell3() { return ProjVertex::infinity({1, 1}); }

}  // namespace detail

/// Universal cycle on fiber(d1) + fiber(d2), through the origin. Its affine
/// vertices are the points of W (plus one extra point when q is odd).
inline Cycle two_fiber_cycle(Direction const& d1, Direction const& d2, std::size_t n, Field const& f) {
  if (d1.dim() != n || d2.dim() != n) throw DimensionMismatch("direction dimension differs from n");
  if (d1 == d2) throw std::invalid_argument("two_fiber_cycle needs distinct directions");
  const Hyperplane w = complementary_hyperplane(f, d1, d2);
  std::vector<AffinePoint> points = hyperplane_points(f, w);

  std::optional<Vec> w_star;
  if (points.size() % 2 != 0) {
    // W meets span(d1,d2) in a line; drop its normalized generator w* so an
    // even number of points remains, and cover w*+l1, w*+l2 separately.
    const Subspace span = Subspace::span(f, n, {d1.vec, d2.vec});
    for (auto const& x : points) {
      if (!vec::is_zero(x.coords) && x.coords[vec::leading_index(x.coords)] == 1 && span.contains(f, x.coords)) {
        w_star = x.coords;
        break;
      }
    }
    if (!w_star) throw std::logic_error("W does not meet span(d1,d2)");
    std::erase(points, AffinePoint{*w_star});
  }

  Cycle c{n, {}};
  c.vertices.reserve(2 * points.size() + 2);
  const ProjVertex inf1(d1), inf2(d2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    c.vertices.emplace_back(points[i]);
    if (i == 0 && w_star) {
      // 0 -> a*u1 -> w* -> [l1] in place of 0 -> [l1], where w* = a*u1 + b*u2.
      const auto ab = solve_in_span(f, {d1.vec, d2.vec}, *w_star);
      if (!ab || (*ab)[0] == 0 || (*ab)[1] == 0) throw std::logic_error("w* is not a mixed combination");
      c.vertices.push_back(ProjVertex::affine(vec::scale(f, (*ab)[0], d1.vec)));
      c.vertices.push_back(ProjVertex::affine(*w_star));
    }
    c.vertices.push_back(i % 2 == 0 ? inf1 : inf2);
  }
  return c;
}

/// The fixed nine-window kernel for q = 3.
inline Cycle fixed_kernel_cycle(Field const& f) {
  using namespace detail;
  const Code two = f.from_integer(2);
  return {2,
          {grid(0, 1), grid(0, two), ell3(), grid(two, 0), grid(0, 0), grid(1, 1), ell1(), grid(two, two), ell2()}};
}

/// Target lines of the kernel: x = c, y = c and the <(1,1)>-line through
/// (c,0), for c in {0,1,2}.
inline std::vector<AffineLine> kernel_lines(Field const& f) {
  std::vector<AffineLine> out;
  for (std::int64_t i = 0; i < 3; ++i) {
    const Code c = f.from_integer(i);
    out.push_back(line_from(f, {{c, 0}}, {{0, 1}}));
    out.push_back(line_from(f, {{0, c}}, {{1, 0}}));
    out.push_back(line_from(f, {{c, 0}}, {{1, 1}}));
  }
  return out;
}

/// Depth-first search for a closed 9-window walk through (0,0) over the grid
/// {0,1,2}^2 and the three standard points at infinity whose windows are
/// exactly kernel_lines. Deterministic: candidates are tried in a fixed order.
inline std::optional<Cycle> search_kernel_cycle(Field const& f) {
  if (f.p() == 2) throw std::invalid_argument("kernel cycle needs odd q");
  std::vector<ProjVertex> candidates;
  for (std::int64_t x = 0; x < 3; ++x)
    for (std::int64_t y = 0; y < 3; ++y) candidates.push_back(detail::grid(f.from_integer(x), f.from_integer(y)));
  candidates.push_back(detail::ell1());
  candidates.push_back(detail::ell2());
  candidates.push_back(detail::ell3());

  const std::vector<AffineLine> targets = kernel_lines(f);
  const std::size_t nc = candidates.size();
  // window_target[a][b] = index of the kernel line the window (a,b) covers,
  // or -1 if it is degenerate or covers something else.
  std::vector<std::vector<int>> window_target(nc, std::vector<int>(nc, -1));
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) {
      if (a == b || (candidates[a].is_infinity() && candidates[b].is_infinity())) continue;
      const AffineLine l = decode_window(f, candidates[a], candidates[b]);
      for (std::size_t t = 0; t < targets.size(); ++t)
        if (targets[t] == l) window_target[a][b] = static_cast<int>(t);
    }

  constexpr std::size_t kLength = 9;
  std::vector<std::size_t> path{0};  // candidate 0 is (0,0)
  std::vector<bool> covered(targets.size(), false);

  auto dfs = [&](auto&& self) -> bool {
    const std::size_t last = path.back();
    if (path.size() == kLength) {
      const int t = window_target[last][path.front()];
      return t >= 0 && !covered[t];
    }
    for (std::size_t next = 0; next < nc; ++next) {
      const int t = window_target[last][next];
      if (t < 0 || covered[t]) continue;
      covered[t] = true;
      path.push_back(next);
      if (self(self)) return true;
      path.pop_back();
      covered[t] = false;
    }
    return false;
  };
  if (!dfs(dfs)) return std::nullopt;

  Cycle c{2, {}};
  for (std::size_t i : path) c.vertices.push_back(candidates[i]);
  return c;
}

/// Kernel cycle for odd q: the fixed sequence when q = 3, a searched one
/// otherwise (the fixed sequence misses a line in characteristic >= 5).
inline Cycle kernel_cycle(Field const& f) {
  if (f.q() == 3) return fixed_kernel_cycle(f);
  auto c = search_kernel_cycle(f);
  if (!c) throw std::logic_error("no kernel cycle found");
  return *c;
}

inline KernelSpec kernel_spec(Field const& f) {
  if (f.p() == 2) throw std::invalid_argument("kernel_spec needs odd q");
  KernelSpec spec{{0, 1, f.from_integer(2)}, {}, {}};
  for (Code u = 0; u < f.q(); ++u)
    if (u != spec.kernel[0] && u != spec.kernel[1] && u != spec.kernel[2]) spec.rest.push_back(u);
  for (std::size_t i = 0; i + 1 < spec.rest.size(); i += 2) spec.pairs.emplace_back(spec.rest[i], spec.rest[i + 1]);
  return spec;
}

/// Even q block for the pair {u, u+1}: covers x, y and x-y in {u, u+1}.
inline Cycle even_block_cycle(Field const& f, Code u) {
  using namespace detail;
  const Code u1 = f.add(u, 1);
  return {2, {grid(u, u1), ell1(), grid(u1, 0), ell3(), grid(0, u), ell2()}};
}

/// Odd q block for the pair {u, v}: covers x, y and the x-intercept of the
/// <(1,1)>-line in {u, v}.
inline Cycle odd_block_cycle(Field const& f, Code u, Code v) {
  using namespace detail;
  return {2, {grid(u, u), ell1(), grid(v, 0), ell3(), grid(f.add(u, v), v), ell2()}};
}

/// Universal cycle in F_q^2 for the fibers of <(0,1)>, <(1,0)>, <(1,1)>;
/// 3q windows, through (0,0).
inline Cycle triple_base_cycle(Field const& f) {
  std::vector<Cycle> pieces;
  if (f.p() == 2) {
    // Pairs {u, u+1}: u+1 flips the constant coefficient, so take u with an
    // even code. The u = 0 block passes through (0,0).
    for (Code u = 0; u < f.q(); u += 2) pieces.push_back(even_block_cycle(f, u));
    return glue_cycles(f, pieces, detail::ell1());
  }
  pieces.push_back(kernel_cycle(f));
  for (auto const& [u, v] : kernel_spec(f).pairs) pieces.push_back(odd_block_cycle(f, u, v));
  const auto anchor = std::find_if(pieces.front().vertices.begin(), pieces.front().vertices.end(),
                                   [](ProjVertex const& x) { return x.is_infinity(); });
  if (anchor == pieces.front().vertices.end()) throw std::logic_error("kernel cycle has no point at infinity");
  const ProjVertex at = *anchor;
  return glue_cycles(f, pieces, at);
}

/// Coset representatives of U: vectors supported on the non-pivot
/// coordinates of U's RREF basis, ascending lexicographic order (0 first).
inline std::vector<Vec> coset_representatives(Field const& f, Subspace const& u) {
  std::vector<std::size_t> free_coords;
  for (std::size_t j = 0, p = 0; j < u.ambient; ++j) {
    if (p < u.pivots.size() && u.pivots[p] == j) {
      ++p;
    } else {
      free_coords.push_back(j);
    }
  }
  const std::uint64_t count = vec::space_size(f, free_coords.size());
  std::vector<Vec> reps;
  reps.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const Vec digits = vec::from_index(f, free_coords.size(), idx);
    Vec r(u.ambient, 0);
    for (std::size_t i = 0; i < free_coords.size(); ++i) r[free_coords[i]] = digits[i];
    reps.push_back(std::move(r));
  }
  return reps;
}

/// Extend a universal cycle living in the subspace U to the same directions
/// over all of F_q^n: one translate per coset of U, glued at the first point
/// at infinity of the input.
inline Cycle lift_cycle(Field const& f, Cycle const& base, Subspace const& u, std::size_t n) {
  if (u.ambient != n || base.dim != n) throw DimensionMismatch("lift_cycle dimensions differ");
  if (u.dim() >= n) throw std::invalid_argument("lift_cycle needs a proper subspace");
  for (auto const& v : base.vertices) {
    if (!u.contains(f, v.coords()))
      throw std::invalid_argument(v.is_infinity() ? "cycle uses a direction outside U"
                                                  : "cycle has an affine vertex outside U");
  }
  if (!contains_vertex(base, detail::origin_vertex(n))) throw std::invalid_argument("cycle does not contain 0");
  const auto anchor = std::find_if(base.vertices.begin(), base.vertices.end(),
                                   [](ProjVertex const& x) { return x.is_infinity(); });
  if (anchor == base.vertices.end()) throw std::invalid_argument("cycle has no point at infinity");

  std::vector<Cycle> layers;
  for (auto const& rep : coset_representatives(f, u)) layers.push_back(translate(f, base, rep));
  return glue_cycles(f, layers, *anchor);
}

/// Universal cycle on the three fibers of a coplanar triple, through 0.
inline Cycle triple_fiber_cycle(Direction const& d1, Direction const& d2, Direction const& d3, std::size_t n,
                                Field const& f) {
  const PlaneFrame frame = pgl_normalizer(f, d1, d2, d3);
  Cycle planar = map_linear(f, triple_base_cycle(f), frame.from_plane);
  if (n == 2) return planar;
  return lift_cycle(f, planar, frame.plane, n);
}

inline FiberPlan plan_fibers(std::size_t n, Field const& f) {
  if (n < 2) throw std::invalid_argument("plan_fibers needs n >= 2");
  std::vector<Direction> dirs = enumerate_directions(n, f);
  FiberPlan plan;
  if (dirs.size() % 2 != 0) {
    auto t = find_coplanar_triplet(f, dirs);
    std::erase_if(dirs, [&](Direction const& d) { return d == t[0] || d == t[1] || d == t[2]; });
    plan.triplet = std::move(t);
  }
  for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) plan.pairs.emplace_back(dirs[i], dirs[i + 1]);
  return plan;
}

/// Universal cycle for all affine lines of AG(n,q).
inline Cycle universal_cycle(std::size_t n, Field const& f) {
  if (n < 2) throw std::invalid_argument("universal_cycle needs n >= 2");
  const FiberPlan plan = plan_fibers(n, f);
  std::vector<Cycle> pieces;
  pieces.reserve(plan.pairs.size() + 1);
  if (plan.triplet) {
    auto const& t = *plan.triplet;
    pieces.push_back(triple_fiber_cycle(t[0], t[1], t[2], n, f));
  }
  for (auto const& [a, b] : plan.pairs) pieces.push_back(two_fiber_cycle(a, b, n, f));
  return glue_cycles(f, pieces, detail::origin_vertex(n));
}

}  // namespace ucycle
