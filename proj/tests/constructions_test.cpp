#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "ucycle/constructions.hpp"
#include "ucycle/verify.hpp"

using namespace ucycle;

namespace {

std::vector<AffineLine> fibers(Field const& f, std::vector<Direction> const& dirs) {
  std::vector<AffineLine> out;
  for (auto const& d : dirs)
    for (auto& l : fiber(f, d)) out.push_back(std::move(l));
  return out;
}

bool has_origin(Cycle const& c) { return contains_vertex(c, ProjVertex::affine(Vec(c.dim, 0))); }

const Direction kL1{{0, 1}}, kL2{{1, 0}}, kL3{{1, 1}};

const std::vector<std::pair<int, unsigned>> kGridFields{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};

}  // namespace

TEST_CASE("two_fiber_cycle, q = 2", "[constructions]") {
  const Field gf2 = Field::make(2);
  const Direction d1{{0, 1}}, d2{{1, 1}};
  const Cycle c = two_fiber_cycle(d1, d2, 2, gf2);
  const Cycle expected{2, {ProjVertex::affine({0, 0}), ProjVertex(d1), ProjVertex::affine({1, 0}), ProjVertex(d2)}};
  CHECK(c == expected);
  CHECK(verify_subset(gf2, c, fibers(gf2, {d1, d2})).passed());
}

TEST_CASE("two_fiber_cycle, q = 3 with the w* repair", "[constructions]") {
  const Field gf3 = Field::make(3);
  const Direction d1{{1, 0}}, d2{{0, 1}};
  const Cycle c = two_fiber_cycle(d1, d2, 2, gf3);
  CHECK(c.window_count() == 6);
  CHECK(has_origin(c));
  const auto report = verify_subset(gf3, c, fibers(gf3, {d1, d2}));
  CHECK(report.passed());
  CHECK_THROWS(two_fiber_cycle(d1, d1, 2, gf3));
}

TEST_CASE("odd-q repair windows decode to the right lines", "[constructions]") {
  for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const Field f = Field::make(p, k);
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto dirs = enumerate_directions(n, f);
      for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) {
        const Direction& d1 = dirs[i];
        const Direction& d2 = dirs[i + 1];
        const Cycle c = two_fiber_cycle(d1, d2, n, f);
        // 0 -> a*u1 -> w* -> [l1]
        REQUIRE(c.vertices[0] == ProjVertex::affine(Vec(n, 0)));
        REQUIRE(c.vertices[1].is_affine());
        REQUIRE(c.vertices[2].is_affine());
        REQUIRE(c.vertices[3] == ProjVertex(d1));
        const AffinePoint w_star = c.vertices[2].point();
        const Hyperplane w = complementary_hyperplane(f, d1, d2);
        REQUIRE(w.contains(f, w_star.coords));
        REQUIRE(decode_window(f, c.vertices[0], c.vertices[1]) == line_from(f, AffinePoint::origin(n), d1));
        REQUIRE(decode_window(f, c.vertices[1], c.vertices[2]) == line_from(f, w_star, d2));
        REQUIRE(decode_window(f, c.vertices[2], c.vertices[3]) == line_from(f, w_star, d1));
      }
    }
  }
}

TEST_CASE("two-fiber cycles on every pair, small fields", "[constructions][property]") {
  for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{2, 1}, {3, 1}, {2, 2}}) {
    const Field f = Field::make(p, k);
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto dirs = enumerate_directions(n, f);
      for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = 0; j < dirs.size(); ++j) {
          if (i == j) continue;
          const Cycle c = two_fiber_cycle(dirs[i], dirs[j], n, f);
          REQUIRE(c.window_count() == 2 * vec::space_size(f, n - 1));
          REQUIRE(has_origin(c));
          REQUIRE(verify_subset(f, c, fibers(f, {dirs[i], dirs[j]})).passed());
        }
    }
  }
}

TEST_CASE("triple_base_cycle, q = 2 is the single block", "[constructions]") {
  const Field gf2 = Field::make(2);
  const Cycle c = triple_base_cycle(gf2);
  const Cycle block{2,
                    {ProjVertex::affine({0, 1}), ProjVertex(kL1), ProjVertex::affine({1, 0}), ProjVertex(kL3),
                     ProjVertex::affine({0, 0}), ProjVertex(kL2)}};
  CHECK(same_up_to_rotation(c, block));
  CHECK(verify_affine(gf2, 2, c).passed());
  CHECK(same_windows(gf2, c, fixtures::ag22_cycle()));
}

TEST_CASE("fixed kernel: exact for q = 3, misses a line in characteristic >= 5", "[constructions]") {
  const Field gf3 = Field::make(3);
  const Cycle fixed = fixed_kernel_cycle(gf3);
  const Cycle literal{2,
                      {ProjVertex::affine({0, 1}), ProjVertex::affine({0, 2}), ProjVertex(kL3),
                       ProjVertex::affine({2, 0}), ProjVertex::affine({0, 0}), ProjVertex::affine({1, 1}),
                       ProjVertex(kL1), ProjVertex::affine({2, 2}), ProjVertex(kL2)}};
  CHECK(fixed == literal);
  CHECK(triple_base_cycle(gf3) == glue_cycles(gf3, {literal}, ProjVertex(kL3)));
  CHECK(verify_subset(gf3, fixed, kernel_lines(gf3)).passed());
  CHECK(verify_subset(gf3, fixed, fibers(gf3, {kL1, kL2, kL3})).passed());

  for (Code p : {5u, 7u, 11u}) {
    const Field f = Field::make(p);
    const auto report = verify_subset(f, fixed_kernel_cycle(f), kernel_lines(f));
    CHECK_FALSE(report.passed());
    REQUIRE(report.missing.size() == 1);
    // The <(1,1)>-line through (1,0) is the one left out.
    CHECK(report.missing[0] == line_from(f, {{1, 0}}, kL3));
  }
}

TEST_CASE("searched kernels", "[constructions]") {
  for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}}) {
    const Field f = Field::make(p, k);
    const auto c = search_kernel_cycle(f);
    REQUIRE(c);
    CHECK(c->window_count() == 9);
    CHECK(has_origin(*c));
    CHECK(verify_subset(f, *c, kernel_lines(f)).passed());
  }
  CHECK_THROWS(search_kernel_cycle(Field::make(2, 2)));
}

TEST_CASE("kernel spec pairs the remaining elements", "[constructions]") {
  const Field gf5 = Field::make(5);
  const KernelSpec s = kernel_spec(gf5);
  CHECK(s.rest == std::vector<Code>{3, 4});
  CHECK(s.pairs == std::vector<std::pair<Code, Code>>{{3, 4}});

  const Field gf9 = Field::make(3, 2);
  const KernelSpec s9 = kernel_spec(gf9);
  CHECK(s9.kernel == std::array<Code, 3>{0, 1, 2});
  CHECK(s9.rest.size() == 6);
  CHECK(s9.pairs.size() == 3);
}

TEST_CASE("triple_base_cycle covers the three reference fibers", "[constructions]") {
  for (auto [p, k] : kGridFields) {
    const Field f = Field::make(p, k);
    const Cycle c = triple_base_cycle(f);
    CHECK(c.window_count() == 3 * f.q());
    CHECK(has_origin(c));
    CHECK(verify_subset(f, c, fibers(f, {kL1, kL2, kL3})).passed());
  }
}

TEST_CASE("lift_cycle", "[constructions]") {
  const Field gf2 = Field::make(2);
  // The AG(2,2) cycle placed in the plane x3 = 0 of F_2^3.
  Cycle plane{3, {}};
  for (auto const& v : fixtures::ag22_cycle().vertices) {
    Vec x = v.coords();
    x.push_back(0);
    plane.vertices.push_back(v.is_affine() ? ProjVertex::affine(x) : ProjVertex::infinity(x));
  }
  const Subspace u = Subspace::span(gf2, 3, {{1, 0, 0}, {0, 1, 0}});
  const Cycle lifted = lift_cycle(gf2, plane, u, 3);
  CHECK(lifted.window_count() == 12);
  CHECK(has_origin(lifted));
  CHECK(verify_subset(gf2, lifted, fibers(gf2, {Direction{{1, 0, 0}}, Direction{{0, 1, 0}}, Direction{{1, 1, 0}}}))
            .passed());

  const Subspace whole = Subspace::span(gf2, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS(lift_cycle(gf2, plane, whole, 3));
  const Subspace other = Subspace::span(gf2, 3, {{1, 0, 0}, {0, 0, 1}});
  CHECK_THROWS(lift_cycle(gf2, plane, other, 3));
  CHECK_THROWS(lift_cycle(gf2, translate(gf2, plane, {0, 0, 1}), u, 3));  // off the plane, misses 0
}

TEST_CASE("lifting multiplies windows by the coset count", "[constructions][property]") {
  for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const Field f = Field::make(p, k);
    for (std::size_t n = 3; n <= 4; ++n) {
      const auto dirs = enumerate_directions(n, f);
      const auto t = find_coplanar_triplet(f, dirs);
      const PlaneFrame fr = pgl_normalizer(f, t[0], t[1], t[2]);
      const Cycle base = map_linear(f, triple_base_cycle(f), fr.from_plane);
      const Cycle lifted = lift_cycle(f, base, fr.plane, n);
      REQUIRE(lifted.window_count() == base.window_count() * vec::space_size(f, n - 2));
      REQUIRE(verify_subset(f, lifted, fibers(f, {t[0], t[1], t[2]})).passed());
      REQUIRE(has_origin(lifted));
    }
  }
}

TEST_CASE("triple_fiber_cycle", "[constructions]") {
  const Field gf2 = Field::make(2);
  const Direction a{{1, 0, 0}}, b{{0, 1, 0}}, c{{1, 1, 0}};
  const Cycle t = triple_fiber_cycle(a, b, c, 3, gf2);
  CHECK(t.window_count() == 12);
  CHECK(verify_subset(gf2, t, fibers(gf2, {a, b, c})).passed());
  CHECK_THROWS(triple_fiber_cycle(a, b, Direction{{0, 0, 1}}, 3, gf2));

  const Field gf3 = Field::make(3);
  const Cycle planar = triple_fiber_cycle(Direction{{0, 1}}, Direction{{1, 0}}, Direction{{1, 2}}, 2, gf3);
  CHECK(planar.window_count() == 9);
  CHECK(verify_subset(gf3, planar, fibers(gf3, {Direction{{0, 1}}, Direction{{1, 0}}, Direction{{1, 2}}})).passed());
}

TEST_CASE("plan_fibers", "[constructions]") {
  const FiberPlan p23 = plan_fibers(2, Field::make(3));
  CHECK_FALSE(p23.triplet);
  CHECK(p23.pairs.size() == 2);

  const FiberPlan p22 = plan_fibers(2, Field::make(2));
  CHECK(p22.triplet);
  CHECK(p22.pairs.empty());

  const FiberPlan p33 = plan_fibers(3, Field::make(3));
  CHECK(p33.triplet);
  CHECK(p33.pairs.size() == 5);

  CHECK_THROWS(plan_fibers(1, Field::make(3)));

  // Every direction exactly once.
  for (auto [p, k] : kGridFields) {
    const Field f = Field::make(p, k);
    for (std::size_t n = 2; n <= 3; ++n) {
      const FiberPlan plan = plan_fibers(n, f);
      std::multiset<Direction> used;
      if (plan.triplet)
        for (auto const& d : *plan.triplet) used.insert(d);
      for (auto const& [a, b] : plan.pairs) {
        used.insert(a);
        used.insert(b);
      }
      const auto all = enumerate_directions(n, f);
      CHECK(used == std::multiset<Direction>(all.begin(), all.end()));
      CHECK(plan.triplet.has_value() == (all.size() % 2 == 1));
    }
  }
}

TEST_CASE("universal_cycle small cases", "[constructions]") {
  CHECK(universal_cycle(2, Field::make(2)).window_count() == 6);
  CHECK(universal_cycle(2, Field::make(3)).window_count() == 12);
  CHECK(universal_cycle(3, Field::make(2)).window_count() == 28);
  CHECK_THROWS(universal_cycle(1, Field::make(2)));

  for (auto [p, k] : kGridFields) {
    const Field f = Field::make(p, k);
    for (std::size_t n = 2; n <= 3; ++n) {
      const Cycle c = universal_cycle(n, f);
      CHECK(has_origin(c));
      CHECK(verify_affine(f, n, c).passed());
      CHECK(universal_cycle(n, f) == c);
    }
  }
}
