#pragma once

// Brute-force coverage oracle.
//
// Nothing here goes through the canonical forms used by the constructions.
// An affine line is identified by its point set, enumerated as a + t*d over
// all t and keyed by its two smallest points (two points fix a line). A
// 2-subspace is identified by the sorted list of all its vectors. The full
// line set comes from enumerating point pairs; the full Grassmannian from
// enumerating RREF pivot patterns.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ucycle/cycles.hpp"
#include "ucycle/geometry.hpp"
#include "ucycle/grassmann.hpp"

namespace ucycle {

inline constexpr std::size_t kReportLimit = 32;

template <class Item>
struct CoverageReport {
  std::uint64_t expected_count = 0;
  std::uint64_t found_count = 0;  // windows that decode
  std::vector<Item> missing;
  std::uint64_t missing_total = 0;
  std::vector<std::pair<Item, std::uint64_t>> duplicated;
  std::uint64_t duplicated_total = 0;
  std::vector<Item> unexpected;  // windows outside the target family
  std::uint64_t unexpected_total = 0;
  std::vector<std::size_t> degenerate_windows;
  std::uint64_t degenerate_total = 0;

  bool passed() const {
    return missing_total == 0 && duplicated_total == 0 && unexpected_total == 0 && degenerate_total == 0 &&
           found_count == expected_count;
  }
};

using AffineReport = CoverageReport<AffineLine>;
using GrassReport = CoverageReport<Subspace2>;

namespace oracle {

using LineKey = std::pair<std::uint64_t, std::uint64_t>;

struct LineKeyHash {
  std::size_t operator()(LineKey const& k) const { return std::hash<std::uint64_t>{}(k.first * 0x9e3779b97f4a7c15ULL ^ k.second); }
};

inline std::uint64_t point_index(Field const& f, Vec const& x) {
  std::uint64_t idx = 0;
  for (Code c : x) idx = idx * f.q() + c;
  return idx;
}

/// Indices of the q points a + t*d.
inline std::vector<std::uint64_t> line_point_indices(Field const& f, Vec const& a, Vec const& d) {
  std::vector<std::uint64_t> pts;
  pts.reserve(f.q());
  Vec x(a.size());
  for (Code t = 0; t < f.q(); ++t) {
    for (std::size_t i = 0; i < a.size(); ++i) x[i] = f.add(a[i], f.mul(t, d[i]));
    pts.push_back(point_index(f, x));
  }
  return pts;
}

inline LineKey key_of_points(std::vector<std::uint64_t> pts) {
  std::partial_sort(pts.begin(), pts.begin() + 2, pts.end());
  return {pts[0], pts[1]};
}

inline std::optional<LineKey> window_key(Field const& f, std::size_t n, ProjVertex const& a, ProjVertex const& b) {
  if (a.dim() != n || b.dim() != n) return std::nullopt;
  if (a.is_infinity() && b.is_infinity()) return std::nullopt;
  if (a.is_affine() && b.is_affine()) {
    if (a.coords() == b.coords()) return std::nullopt;
    Vec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = f.sub(b.coords()[i], a.coords()[i]);
    return key_of_points(line_point_indices(f, a.coords(), d));
  }
  ProjVertex const& point = a.is_affine() ? a : b;
  ProjVertex const& dir = a.is_affine() ? b : a;
  if (vec::is_zero(dir.coords())) return std::nullopt;
  return key_of_points(line_point_indices(f, point.coords(), dir.coords()));
}

inline LineKey key_of_line(Field const& f, AffineLine const& l) {
  return key_of_points(line_point_indices(f, l.base.coords, l.dir.vec));
}

inline AffineLine line_of_key(Field const& f, std::size_t n, LineKey const& k) {
  const Vec a = vec::from_index(f, n, k.first);
  const Vec b = vec::from_index(f, n, k.second);
  return {Direction::of(f, vec::sub(f, b, a)), {a}};
}

/// Every affine line of AG(n,q), keyed, in ascending key order: scan pairs
/// (a,b), a < b, skipping pairs already seen on an earlier line. The first
/// unseen pair of each line is its two smallest points.
inline std::vector<LineKey> all_line_keys(std::size_t n, Field const& f) {
  const std::uint64_t total = vec::space_size(f, n);
  std::vector<LineKey> keys;
  // Pair bitset when it stays within 128 MiB.
  if (total <= (1ULL << 15)) {
    std::vector<bool> seen(total * total, false);
    for (std::uint64_t a = 0; a < total; ++a) {
      const Vec va = vec::from_index(f, n, a);
      for (std::uint64_t b = a + 1; b < total; ++b) {
        if (seen[a * total + b]) continue;
        Vec d = vec::from_index(f, n, b);
        for (std::size_t i = 0; i < n; ++i) d[i] = f.sub(d[i], va[i]);
        const auto pts = line_point_indices(f, va, d);
        for (auto x : pts)
          for (auto y : pts)
            if (x < y) seen[x * total + y] = true;
        keys.push_back(key_of_points(pts));
      }
    }
  } else {
    for (std::uint64_t a = 0; a < total; ++a) {
      const Vec va = vec::from_index(f, n, a);
      for (std::uint64_t b = a + 1; b < total; ++b) {
        Vec d = vec::from_index(f, n, b);
        for (std::size_t i = 0; i < n; ++i) d[i] = f.sub(d[i], va[i]);
        const LineKey k = key_of_points(line_point_indices(f, va, d));
        if (k.first == a && k.second == b) keys.push_back(k);
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

/// Window keys of a vertex sequence, optionally split across worker threads.
/// Chunks are merged in order, so the result does not depend on `jobs`.
inline std::vector<std::optional<LineKey>> window_keys(Field const& f, std::size_t n,
                                                       std::vector<ProjVertex> const& vs, bool cyclic,
                                                       unsigned jobs) {
  const std::size_t count = cyclic ? vs.size() : (vs.empty() ? 0 : vs.size() - 1);
  std::vector<std::optional<LineKey>> keys(count);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) keys[i] = window_key(f, n, vs[i], vs[(i + 1) % vs.size()]);
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 4096) {
    work(0, count);
    return keys;
  }
  std::vector<std::thread> workers;
  const std::size_t chunk = (count + jobs - 1) / jobs;
  for (std::size_t lo = 0; lo < count; lo += chunk) workers.emplace_back(work, lo, std::min(count, lo + chunk));
  for (auto& t : workers) t.join();
  return keys;
}

/// Shared tally: compare window keys against the expected key list.
template <class Key, class Hash, class Item, class ToItem>
CoverageReport<Item> tally(std::vector<Key> expected, std::vector<std::optional<Key>> const& windows,
                           ToItem&& to_item) {
  std::sort(expected.begin(), expected.end());
  CoverageReport<Item> report;
  report.expected_count = expected.size();

  std::unordered_map<Key, std::uint64_t, Hash> counts;
  counts.reserve(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (!windows[i]) {
      ++report.degenerate_total;
      if (report.degenerate_windows.size() < kReportLimit) report.degenerate_windows.push_back(i);
      continue;
    }
    ++report.found_count;
    ++counts[*windows[i]];
  }

  std::unordered_map<Key, bool, Hash> wanted;
  wanted.reserve(expected.size());
  for (auto const& k : expected) wanted.emplace(k, true);

  for (auto const& k : expected) {
    const auto it = counts.find(k);
    const std::uint64_t c = it == counts.end() ? 0 : it->second;
    if (c == 0) {
      ++report.missing_total;
      if (report.missing.size() < kReportLimit) report.missing.push_back(to_item(k));
    } else if (c > 1) {
      ++report.duplicated_total;
      if (report.duplicated.size() < kReportLimit) report.duplicated.emplace_back(to_item(k), c);
    }
  }
  std::vector<Key> extra;
  for (auto const& [k, c] : counts) {
    if (!wanted.count(k)) extra.push_back(k);
  }
  std::sort(extra.begin(), extra.end());
  report.unexpected_total = extra.size();
  for (std::size_t i = 0; i < extra.size() && i < kReportLimit; ++i) report.unexpected.push_back(to_item(extra[i]));
  return report;
}

}  // namespace oracle

/// All q^{n-1} [n]_q affine lines of AG(n,q), from point-pair enumeration.
inline std::vector<AffineLine> all_affine_lines(std::size_t n, Field const& f) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  std::vector<AffineLine> out;
  for (auto const& k : oracle::all_line_keys(n, f)) out.push_back(oracle::line_of_key(f, n, k));
  return out;
}

inline AffineReport verify_subset(Field const& f, std::size_t n, Cycle const& c, std::vector<AffineLine> const& expected,
                                  unsigned jobs = 1) {
  std::vector<oracle::LineKey> keys;
  keys.reserve(expected.size());
  for (auto const& l : expected) keys.push_back(oracle::key_of_line(f, l));
  const auto windows = oracle::window_keys(f, n, c.vertices, true, jobs);
  return oracle::tally<oracle::LineKey, oracle::LineKeyHash, AffineLine>(
      std::move(keys), windows, [&](oracle::LineKey const& k) { return oracle::line_of_key(f, n, k); });
}

inline AffineReport verify_subset(Field const& f, Cycle const& c, std::vector<AffineLine> const& expected,
                                  unsigned jobs = 1) {
  return verify_subset(f, c.dim, c, expected, jobs);
}

inline AffineReport verify_affine(Field const& f, std::size_t n, Cycle const& c, unsigned jobs = 1) {
  const auto windows = oracle::window_keys(f, n, c.vertices, true, jobs);
  return oracle::tally<oracle::LineKey, oracle::LineKeyHash, AffineLine>(
      oracle::all_line_keys(n, f), windows, [&](oracle::LineKey const& k) { return oracle::line_of_key(f, n, k); });
}

namespace oracle {

using SpaceKey = std::vector<std::uint64_t>;

struct SpaceKeyHash {
  std::size_t operator()(SpaceKey const& k) const {
    std::size_t h = k.size();
    for (auto x : k) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Sorted indices of every vector s*u + t*v; nullopt if u, v are dependent.
inline std::optional<SpaceKey> space_key(Field const& f, Vec const& u, Vec const& v) {
  SpaceKey pts;
  pts.reserve(std::size_t(f.q()) * f.q());
  Vec x(u.size());
  for (Code s = 0; s < f.q(); ++s)
    for (Code t = 0; t < f.q(); ++t) {
      for (std::size_t i = 0; i < u.size(); ++i) x[i] = f.add(f.mul(s, u[i]), f.mul(t, v[i]));
      pts.push_back(point_index(f, x));
    }
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) return std::nullopt;
  return pts;
}

}  // namespace oracle

/// Every 2-subspace of F_q^m as a 2 x m RREF matrix: pivot columns i < j,
/// free entries to the right of each pivot except above the other pivot.
inline std::vector<Subspace2> all_2subspaces(std::size_t m, Field const& f) {
  if (m < 2) throw std::invalid_argument("all_2subspaces needs m >= 2");
  std::vector<Subspace2> out;
  const Code q = f.q();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<std::size_t> free0, free1;
      for (std::size_t c = i + 1; c < m; ++c)
        if (c != j) free0.push_back(c);
      for (std::size_t c = j + 1; c < m; ++c) free1.push_back(c);
      const std::size_t nfree = free0.size() + free1.size();
      std::uint64_t combos = 1;
      for (std::size_t t = 0; t < nfree; ++t) combos *= q;
      for (std::uint64_t idx = 0; idx < combos; ++idx) {
        Vec r0(m, 0), r1(m, 0);
        r0[i] = 1;
        r1[j] = 1;
        std::uint64_t x = idx;
        for (auto c : free0) {
          r0[c] = Code(x % q);
          x /= q;
        }
        for (auto c : free1) {
          r1[c] = Code(x % q);
          x /= q;
        }
        out.push_back({{std::move(r0), std::move(r1)}});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline GrassReport verify_grassmann(Field const& f, std::size_t m, GrassCycle const& c) {
  std::map<oracle::SpaceKey, Subspace2> by_key;
  std::vector<oracle::SpaceKey> expected;
  for (auto const& s : all_2subspaces(m, f)) {
    auto k = oracle::space_key(f, s.rows[0], s.rows[1]);
    expected.push_back(*k);
    by_key.emplace(std::move(*k), s);
  }
  std::vector<std::optional<oracle::SpaceKey>> windows(c.size());
  std::map<oracle::SpaceKey, Subspace2> seen;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Vec const& u = c.vertices[i];
    Vec const& v = c.vertices[(i + 1) % c.size()];
    if (u.size() != m || v.size() != m) continue;
    windows[i] = oracle::space_key(f, u, v);
    if (windows[i] && !by_key.count(*windows[i])) seen.emplace(*windows[i], span2(f, u, v));
  }
  return oracle::tally<oracle::SpaceKey, oracle::SpaceKeyHash, Subspace2>(
      std::move(expected), windows, [&](oracle::SpaceKey const& k) {
        auto it = by_key.find(k);
        return it != by_key.end() ? it->second : seen.at(k);
      });
}

/// inner occurs, in order and contiguously, somewhere in the cyclic vertex
/// sequence of outer.
inline bool verify_nesting(GrassCycle const& inner, GrassCycle const& outer) {
  if (inner.dim != outer.dim) throw DimensionMismatch("nesting check needs a common ambient dimension");
  if (inner.size() > outer.size()) return false;
  if (inner.vertices.empty()) return true;
  for (std::size_t start = 0; start < outer.size(); ++start) {
    bool ok = true;
    for (std::size_t i = 0; i < inner.size() && ok; ++i)
      ok = outer.vertices[(start + i) % outer.size()] == inner.vertices[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace ucycle
