#pragma once

// Double-window cycles and segments, and the operations that assemble them.
//
// A window is a consecutive vertex pair; it decodes to the affine line the
// two vertices determine. A cycle has N windows (wrapping around), a segment
// with m+1 vertices has m.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ucycle/geometry.hpp"

namespace ucycle {

struct Cycle {
  std::size_t dim = 0;
  std::vector<ProjVertex> vertices;

  std::size_t size() const { return vertices.size(); }
  std::size_t window_count() const { return vertices.size(); }
  bool operator==(Cycle const&) const = default;
};

struct Segment {
  std::size_t dim = 0;
  std::vector<ProjVertex> vertices;

  std::size_t window_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  ProjVertex const& front() const { return vertices.front(); }
  ProjVertex const& back() const { return vertices.back(); }
  bool operator==(Segment const&) const = default;
};

using LineMultiset = std::map<AffineLine, std::size_t>;

class WindowError : public DegenerateWindow {
 public:
  WindowError(std::size_t index, std::string const& why)
      : DegenerateWindow("window " + std::to_string(index) + ": " + why), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class GlueError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class Fn>
void for_each_window(Field const& f, std::vector<ProjVertex> const& vs, bool cyclic, Fn&& fn) {
  const std::size_t count = cyclic ? vs.size() : (vs.empty() ? 0 : vs.size() - 1);
  for (std::size_t i = 0; i < count; ++i) {
    ProjVertex const& a = vs[i];
    ProjVertex const& b = vs[(i + 1) % vs.size()];
    try {
      fn(i, decode_window(f, a, b));
    } catch (DegenerateWindow const& e) {
      throw WindowError(i, e.what());
    }
  }
}

}  // namespace detail

/// Decoded lines in window order. Throws WindowError on a degenerate window.
inline std::vector<AffineLine> window_lines(Field const& f, Cycle const& c) {
  std::vector<AffineLine> out;
  out.reserve(c.size());
  detail::for_each_window(f, c.vertices, true, [&](std::size_t, AffineLine l) { out.push_back(std::move(l)); });
  return out;
}

inline std::vector<AffineLine> window_lines(Field const& f, Segment const& s) {
  std::vector<AffineLine> out;
  detail::for_each_window(f, s.vertices, false, [&](std::size_t, AffineLine l) { out.push_back(std::move(l)); });
  return out;
}

inline LineMultiset windows(Field const& f, Cycle const& c) {
  LineMultiset m;
  for (auto& l : window_lines(f, c)) ++m[std::move(l)];
  return m;
}

inline LineMultiset windows(Field const& f, Segment const& s) {
  LineMultiset m;
  for (auto& l : window_lines(f, s)) ++m[std::move(l)];
  return m;
}

/// Index of the first window repeating an earlier line, if any.
inline std::optional<std::size_t> first_repeated_window(std::vector<AffineLine> const& lines) {
  std::unordered_set<AffineLine, AffineLineHash> seen;
  seen.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (!seen.insert(lines[i]).second) return i;
  return std::nullopt;
}

/// Full structural check: N >= 2, every window decodes, all lines distinct.
inline bool is_valid(Field const& f, Cycle const& c) {
  if (c.size() < 2) return false;
  try {
    return !first_repeated_window(window_lines(f, c));
  } catch (WindowError const&) {
    return false;
  }
}

inline bool is_valid(Field const& f, Segment const& s) {
  if (s.vertices.size() < 2 || s.front() == s.back()) return false;
  try {
    return !first_repeated_window(window_lines(f, s));
  } catch (WindowError const&) {
    return false;
  }
}

template <class A, class B>
bool is_transversal(Field const& f, A const& a, B const& b) {
  const auto la = window_lines(f, a);
  std::unordered_set<AffineLine, AffineLineHash> seen(la.begin(), la.end());
  for (auto const& l : window_lines(f, b))
    if (seen.count(l)) return false;
  return true;
}

inline bool contains_vertex(Cycle const& c, ProjVertex const& v) {
  return std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end();
}

inline Cycle rotate(Cycle c, std::size_t k) {
  if (!c.vertices.empty()) std::rotate(c.vertices.begin(), c.vertices.begin() + (k % c.size()), c.vertices.end());
  return c;
}

/// Vertex sequences equal up to a cyclic shift.
inline bool same_up_to_rotation(Cycle const& a, Cycle const& b) {
  if (a.dim != b.dim || a.size() != b.size()) return false;
  if (a.vertices.empty()) return true;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b.vertices[k] != a.vertices.front()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a.vertices[i] == b.vertices[(k + i) % b.size()];
    if (ok) return true;
  }
  return false;
}

inline bool same_windows(Field const& f, Cycle const& a, Cycle const& b) { return windows(f, a) == windows(f, b); }

namespace detail {

// Throws GlueError if any line repeats across (or within) the pieces.
template <class Piece>
void require_transversal(Field const& f, std::span<Piece const> pieces) {
  std::unordered_set<AffineLine, AffineLineHash> seen;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (auto const& l : window_lines(f, pieces[i])) {
      if (!seen.insert(l).second)
        throw GlueError("piece " + std::to_string(i) + " repeats a line already covered");
    }
  }
}

}  // namespace detail

/// Splice cycles sharing the vertex `at`: each is rotated to its first
/// occurrence of `at` and the rotations are concatenated in input order.
inline Cycle glue_cycles(Field const& f, std::span<Cycle const> cycles, ProjVertex const& at) {
  if (cycles.empty()) throw GlueError("nothing to glue");
  Cycle out{cycles.front().dim, {}};
  std::size_t total = 0;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (cycles[i].dim != out.dim) throw GlueError("cycles live in different dimensions");
    if (!contains_vertex(cycles[i], at))
      throw GlueError("cycle " + std::to_string(i) + " does not contain the glue vertex");
    total += cycles[i].size();
  }
  detail::require_transversal(f, cycles);
  out.vertices.reserve(total);
  for (auto const& c : cycles) {
    const auto start = std::find(c.vertices.begin(), c.vertices.end(), at);
    out.vertices.insert(out.vertices.end(), start, c.vertices.end());
    out.vertices.insert(out.vertices.end(), c.vertices.begin(), start);
  }
  return out;
}

inline Cycle glue_cycles(Field const& f, std::vector<Cycle> const& cycles, ProjVertex const& at) {
  return glue_cycles(f, std::span<Cycle const>(cycles), at);
}

/// Join segments into one cycle along an Eulerian circuit of the multigraph
/// whose vertices are segment endpoints and whose edges are the segments.
/// Requires even endpoint multiplicity everywhere and a connected multigraph.
inline Cycle glue_segments(Field const& f, std::span<Segment const> segments) {
  if (segments.empty()) throw GlueError("nothing to glue");
  const std::size_t dim = segments.front().dim;

  std::map<ProjVertex, std::size_t> ids;
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    auto const& s = segments[i];
    if (s.dim != dim) throw GlueError("segments live in different dimensions");
    if (s.vertices.size() < 2 || s.front() == s.back())
      throw GlueError("segment " + std::to_string(i) + " does not have two distinct endpoints");
    auto id = [&](ProjVertex const& v) { return ids.try_emplace(v, ids.size()).first->second; };
    const std::size_t a = id(s.front());
    const std::size_t b = id(s.back());
    ends.emplace_back(a, b);
  }
  detail::require_transversal(f, segments);

  const std::size_t nv = ids.size();
  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t e = 0; e < ends.size(); ++e) {
    incident[ends[e].first].push_back(e);
    incident[ends[e].second].push_back(e);
  }
  for (auto const& [v, id] : ids) {
    if (incident[id].size() % 2 != 0) throw GlueError("odd endpoint multiplicity at a vertex");
  }

  // Connectivity over endpoints.
  {
    std::vector<bool> seen(nv, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t e : incident[v]) {
        const std::size_t w = ends[e].first == v ? ends[e].second : ends[e].first;
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != nv) throw GlueError("segment endpoints form a disconnected graph");
  }

  // Hierholzer, iterative. Each stack frame is (vertex, edge used to arrive,
  // whether that edge was traversed against its stored orientation).
  struct Step {
    std::size_t vertex;
    std::size_t edge;
    bool reversed;
  };
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<bool> used(ends.size(), false);
  std::vector<std::size_t> next(nv, 0);
  std::vector<Step> stack{{ends[0].first, kNone, false}};
  std::vector<Step> circuit;
  while (!stack.empty()) {
    const std::size_t v = stack.back().vertex;
    auto& ptr = next[v];
    while (ptr < incident[v].size() && used[incident[v][ptr]]) ++ptr;
    if (ptr == incident[v].size()) {
      circuit.push_back(stack.back());
      stack.pop_back();
      continue;
    }
    const std::size_t e = incident[v][ptr];
    used[e] = true;
    const bool reversed = ends[e].first != v;
    stack.push_back({reversed ? ends[e].first : ends[e].second, e, reversed});
  }
  // circuit holds the walk backwards; replay forwards.
  std::reverse(circuit.begin(), circuit.end());
  Cycle out{dim, {}};
  for (std::size_t i = 1; i < circuit.size(); ++i) {
    auto const& seg = segments[circuit[i].edge].vertices;
    if (!circuit[i].reversed) {
      out.vertices.insert(out.vertices.end(), seg.begin(), seg.end() - 1);
    } else {
      out.vertices.insert(out.vertices.end(), seg.rbegin(), seg.rend() - 1);
    }
  }
  return out;
}

inline Cycle glue_segments(Field const& f, std::vector<Segment> const& segments) {
  return glue_segments(f, std::span<Segment const>(segments));
}

/// Shift every affine vertex by t; points at infinity are fixed.
inline Cycle translate(Field const& f, Cycle const& c, Vec const& t) {
  if (t.size() != c.dim) throw DimensionMismatch("translation vector has wrong dimension");
  Cycle out{c.dim, {}};
  out.vertices.reserve(c.size());
  for (auto const& v : c.vertices) {
    if (v.is_affine()) {
      out.vertices.push_back(ProjVertex::affine(vec::add(f, v.coords(), t)));
    } else {
      out.vertices.push_back(v);
    }
  }
  return out;
}

/// Apply an injective linear map g (rows = target dimension): affine vertices
/// map by g, points at infinity by the induced projective action.
inline Cycle map_linear(Field const& f, Cycle const& c, Matrix const& g) {
  if (g.cols != c.dim) throw DimensionMismatch("map domain differs from cycle dimension");
  if (rank(f, [&] {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < g.cols; ++j) {
          Vec col(g.rows);
          for (std::size_t i = 0; i < g.rows; ++i) col[i] = g(i, j);
          cols.push_back(std::move(col));
        }
        return cols;
      }()) != g.cols) {
    throw std::invalid_argument("map_linear requires an injective (nonsingular) map");
  }
  Cycle out{g.rows, {}};
  out.vertices.reserve(c.size());
  for (auto const& v : c.vertices) {
    Vec image = g.apply(f, v.coords());
    if (v.is_affine()) {
      out.vertices.push_back(ProjVertex::affine(std::move(image)));
    } else {
      out.vertices.push_back(ProjVertex::infinity(vec::normalize(f, image)));
    }
  }
  return out;
}

}  // namespace ucycle
