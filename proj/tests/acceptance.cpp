// Acceptance suite: one PASS/FAIL line per criterion; exits 1 if any fails.
//
// usage: acceptance [work_dir]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ucycle/ucycle.hpp"

using namespace ucycle;
namespace fs = std::filesystem;

namespace {

struct Grid {
  std::uint64_t p;
  unsigned k;
};

const std::vector<Grid> kFields{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};
const std::vector<std::size_t> kDims{2, 3, 4};

// Independent line count q^{n-1} (q^n - 1) / (q - 1).
std::uint64_t line_count(std::size_t n, std::uint64_t q) {
  std::uint64_t qn1 = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) qn1 *= q;
  return qn1 * (qn1 * q - 1) / (q - 1);
}

std::vector<AffineLine> fibers(Field const& f, std::vector<Direction> const& dirs) {
  std::vector<AffineLine> out;
  for (auto const& d : dirs)
    for (auto& l : fiber(f, d)) out.push_back(std::move(l));
  return out;
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(std::string const& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void run(int id, std::string const& name, double limit_s, std::function<void(Outcome&)> const& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (std::exception const& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    std::ostringstream s;
    s << "runtime " << secs << " s exceeds " << limit_s << " s";
    o.fail(s.str());
  }
  std::printf("[%s] %d. %s (%.2f s%s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              limit_s > 0 ? (", limit " + std::to_string(int(limit_s)) + " s").c_str() : "",
              o.ok ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
  failures += !o.ok;
}

std::string tag(std::size_t n, std::uint64_t q) { return "AG(" + std::to_string(n) + "," + std::to_string(q) + ")"; }

void criterion1(Outcome& o) {
  const Field gf2 = Field::make(2);
  const Cycle c = universal_cycle(2, gf2);
  if (c.window_count() != 6) o.fail("generated cycle has " + std::to_string(c.window_count()) + " windows");
  const AffineReport r = verify_affine(gf2, 2, c);
  if (!r.passed() || r.found_count != 6) o.fail("generated cycle does not cover the 6 lines once");
  if (!verify_affine(gf2, 2, fixtures::ag22_cycle()).passed()) o.fail("fixture cycle fails");
}

void criterion2(Outcome& o) {
  for (auto g : kFields)
    for (std::size_t n : kDims) {
      const Field f = Field::make(g.p, g.k);
      const Cycle c = universal_cycle(n, f);
      const AffineReport r = verify_affine(f, n, c, 4);
      if (c.window_count() != line_count(n, f.q()) || !r.passed()) o.fail(tag(n, f.q()) + " fails");
    }
}

void criterion3(Outcome& o) {
  std::mt19937 rng(3);
  for (auto g : kFields)
    for (std::size_t n : kDims) {
      const Field f = Field::make(g.p, g.k);
      const auto dirs = enumerate_directions(n, f);
      std::uniform_int_distribution<std::size_t> pick(0, dirs.size() - 1);
      std::uint64_t qn1 = 1;
      for (std::size_t i = 0; i + 1 < n; ++i) qn1 *= f.q();
      for (int s = 0; s < 50; ++s) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        while (j == i) j = pick(rng);
        const Cycle c = two_fiber_cycle(dirs[i], dirs[j], n, f);
        const bool ok = c.window_count() == 2 * qn1 && contains_vertex(c, ProjVertex::affine(Vec(n, 0))) &&
                        verify_subset(f, c, fibers(f, {dirs[i], dirs[j]})).passed();
        if (!ok) o.fail(tag(n, f.q()) + " pair " + std::to_string(i) + "," + std::to_string(j));
      }
    }
}

void criterion4(Outcome& o) {
  const std::vector<Direction> ref{Direction{{0, 1}}, Direction{{1, 0}}, Direction{{1, 1}}};
  for (auto g : kFields) {
    const Field f = Field::make(g.p, g.k);
    const Cycle c = triple_base_cycle(f);
    if (c.window_count() != 3 * f.q() || !verify_subset(f, c, fibers(f, ref)).passed())
      o.fail("triple base q=" + std::to_string(f.q()));
    if (f.q() % 2 == 1 && f.q() >= 5) {
      const auto k = search_kernel_cycle(f);
      if (!k || !verify_subset(f, *k, kernel_lines(f)).passed()) o.fail("searched kernel q=" + std::to_string(f.q()));
    }
  }
  const Field gf3 = Field::make(3);
  auto A = [](Code x, Code y) { return ProjVertex::affine({x, y}); };
  const Cycle literal{2, {A(0, 1), A(0, 2), ProjVertex::infinity({1, 1}), A(2, 0), A(0, 0), A(1, 1),
                          ProjVertex::infinity({0, 1}), A(2, 2), ProjVertex::infinity({1, 0})}};
  if (fixed_kernel_cycle(gf3) != literal) o.fail("fixed kernel differs from the literal sequence");
  if (!verify_subset(gf3, literal, kernel_lines(gf3)).passed()) o.fail("fixed kernel fails at q=3");
}

void criterion5(Outcome& o) {
  for (auto g : kFields)
    for (std::size_t n : {std::size_t(3), std::size_t(4)}) {
      const Field f = Field::make(g.p, g.k);
      const std::uint64_t cosets = vec::space_size(f, n - 2);
      const auto dirs = enumerate_directions(n, f);

      // Triple base in a plane.
      const auto t = find_coplanar_triplet(f, dirs);
      const PlaneFrame fr = pgl_normalizer(f, t[0], t[1], t[2]);
      const Cycle tb = map_linear(f, triple_base_cycle(f), fr.from_plane);
      const Cycle tl = lift_cycle(f, tb, fr.plane, n);
      if (tl.window_count() != tb.window_count() * cosets || !verify_subset(f, tl, fibers(f, {t[0], t[1], t[2]})).passed())
        o.fail("triple lift " + tag(n, f.q()));

      // Planar two-fiber cycle placed in span(d1, d2).
      const Direction& d1 = dirs.front();
      const Direction& d2 = dirs.back();
      const Matrix to_space = Matrix::from_columns({d1.vec, d2.vec});
      const Cycle pb = map_linear(f, two_fiber_cycle(Direction{{1, 0}}, Direction{{0, 1}}, 2, f), to_space);
      const Cycle pl = lift_cycle(f, pb, Subspace::span(f, n, {d1.vec, d2.vec}), n);
      if (pl.window_count() != pb.window_count() * cosets || !verify_subset(f, pl, fibers(f, {d1, d2})).passed())
        o.fail("two-fiber lift " + tag(n, f.q()));
    }
}

// Cut c at distinct random positions into segments with distinct endpoints.
std::vector<Segment> cut(Cycle const& c, std::size_t cuts, std::mt19937& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::size_t> at(c.size());
    for (std::size_t i = 0; i < at.size(); ++i) at[i] = i;
    std::shuffle(at.begin(), at.end(), rng);
    at.resize(std::min(cuts, c.size()));
    std::sort(at.begin(), at.end());
    std::vector<Segment> out;
    bool ok = true;
    for (std::size_t i = 0; i < at.size() && ok; ++i) {
      const std::size_t to = i + 1 < at.size() ? at[i + 1] : at[0] + c.size();
      Segment s{c.dim, {}};
      for (std::size_t j = at[i]; j <= to; ++j) s.vertices.push_back(c.vertices[j % c.size()]);
      ok = s.front() != s.back();
      out.push_back(std::move(s));
    }
    if (ok) return out;
  }
  return {};
}

void criterion6(Outcome& o) {
  std::mt19937 rng(6);
  const std::vector<Grid> fields{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}};
  for (int trial = 0; trial < 200; ++trial) {
    const Grid g = fields[trial % fields.size()];
    const Field f = Field::make(g.p, g.k);
    const std::size_t n = 2 + trial % 2;
    auto dirs = enumerate_directions(n, f);
    std::shuffle(dirs.begin(), dirs.end(), rng);
    const std::size_t pairs = 1 + rng() % (dirs.size() / 2);
    std::vector<Cycle> family;
    LineMultiset expected;
    for (std::size_t i = 0; i < pairs; ++i) {
      family.push_back(two_fiber_cycle(dirs[2 * i], dirs[2 * i + 1], n, f));
      for (auto const& [l, m] : windows(f, family.back())) expected[l] += m;
    }
    const Cycle glued = glue_cycles(f, family, ProjVertex::affine(Vec(n, 0)));
    if (windows(f, glued) != expected) o.fail("glue_cycles trial " + std::to_string(trial));

    auto segs = cut(glued, 2 + rng() % 6, rng);
    if (segs.size() < 2) continue;
    std::shuffle(segs.begin(), segs.end(), rng);
    for (auto& s : segs)
      if (rng() % 2) std::reverse(s.vertices.begin(), s.vertices.end());
    if (windows(f, glue_segments(f, segs)) != expected) o.fail("glue_segments trial " + std::to_string(trial));

    // Dropping a segment leaves two endpoints of odd multiplicity.
    segs.erase(segs.begin() + rng() % segs.size());
    try {
      glue_segments(f, segs);
      o.fail("odd multiplicity accepted, trial " + std::to_string(trial));
    } catch (GlueError const&) {
    }
  }
}

void criterion7(Outcome& o) {
  for (auto g : std::vector<Grid>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const Field f = Field::make(g.p, g.k);
    const GrassCycle u3 = singer_cycle(f);
    const std::uint64_t q = f.q();
    if (u3.size() != q * q + q + 1 || !verify_grassmann(f, 3, u3).passed()) o.fail("singer q=" + std::to_string(q));
  }
  for (auto [p, top] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 5}, {3, 4}}) {
    const Field f = Field::make(p);
    const auto levels = nested_cycles(top, f);
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const std::size_t m = levels[i].dim;
      if (levels[i].size() != gaussian_binomial2(m, p) || !verify_grassmann(f, m, levels[i]).passed())
        o.fail("U_" + std::to_string(m) + " q=" + std::to_string(p));
      if (i > 0 && !verify_nesting(embed(levels[i - 1], m), levels[i]))
        o.fail("nesting U_" + std::to_string(m - 1) + " in U_" + std::to_string(m) + " q=" + std::to_string(p));
    }
  }
  if (gaussian_binomial2(4, 2) != 35 || gaussian_binomial2(4, 3) != 130) o.fail("gaussian binomial");
}

void criterion8(Outcome& o) {
  for (auto g : kFields) {
    const Field f = Field::make(g.p, g.k);
    const Code q = f.q();
    for (Code a = 0; a < q; ++a) {
      bool ok = f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0 && (a == 0 || f.mul(a, f.inv(a)) == 1);
      for (Code b = 0; b < q && ok; ++b) {
        ok = f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
        for (Code c = 0; c < q && ok; ++c)
          ok = f.add(f.add(a, b), c) == f.add(a, f.add(b, c)) && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)) &&
               f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
      }
      if (!ok) o.fail("axioms q=" + std::to_string(q) + " a=" + std::to_string(a));
    }
    // The primitive element's powers reach every nonzero element.
    const Code g0 = f.primitive_element();
    std::vector<bool> seen(q, false);
    Code x = 1;
    for (Code i = 0; i + 1 < q; ++i, x = f.mul(x, g0)) seen[x] = true;
    if (x != 1 || std::count(seen.begin(), seen.end(), true) != std::ptrdiff_t(q - 1))
      o.fail("primitive element q=" + std::to_string(q));
  }
}

std::string slurp(fs::path const& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void criterion9(Outcome& o, fs::path const& work) {
  fs::create_directories(work);
  for (auto g : kFields)
    for (std::size_t n : kDims) {
      std::string out[2];
      for (int run = 0; run < 2; ++run) {
        const fs::path file = work / ("gen_n" + std::to_string(n) + "_p" + std::to_string(g.p) + "_k" +
                                      std::to_string(g.k) + "_" + std::to_string(run) + ".json");
        const std::string cmd = std::string("\"") + UCYCLE_CLI_PATH + "\" gen --n " + std::to_string(n) + " --p " +
                                std::to_string(g.p) + " --k " + std::to_string(g.k) + " --out \"" + file.string() +
                                "\" > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) o.fail("gen exited nonzero: " + cmd);
        out[run] = slurp(file);
      }
      if (out[0].empty() || out[0] != out[1]) o.fail("outputs differ for n=" + std::to_string(n) + " p=" +
                                                     std::to_string(g.p) + " k=" + std::to_string(g.k));
    }
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "ucycle_acceptance";

  run(1, "AG(2,2) ground truth", 1, criterion1);
  run(2, "grid coverage n in {2,3,4}, q in {2,3,4,5,7,8,9}", 60, criterion2);
  run(3, "two-fiber cycles, 50 random pairs per grid point", 30, criterion3);
  run(4, "triple base cycle and kernel repair", 10, criterion4);
  run(5, "lifting multiplies windows by q^(n-2)", 0, criterion5);
  run(6, "gluing conserves windows on 200 random families", 0, criterion6);
  run(7, "Singer and nested Grassmannian cycles", 60, criterion7);
  run(8, "field axioms and primitive elements, q <= 9", 0, criterion8);
  run(9, "gen output is byte-identical across runs", 0, [&](Outcome& o) { criterion9(o, work); });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
