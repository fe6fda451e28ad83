#include <doctest.h>

#include <functional>
#include <random>

#include "pretzelkh/khcube.hpp"
#include "pretzelkh/twist.hpp"
#include "random_complex.hpp"

using namespace pretzelkh;

namespace {

const auto V = Smoothing::Vertical;
const auto E = Smoothing::Horizontal;

HomologyTable oracle(const PretzelParams& params, std::optional<OrientationPattern> pat = std::nullopt) {
  return homology(build_reduced_complex(build_pretzel_pd(params, pat)));
}

}  // namespace

TEST_CASE("tangle morphism relations") {
  const auto s = TangleMorphism::saddle(V, E);
  const auto t = TangleMorphism::saddle(E, V);
  // Neck cutting: S S = u + v.
  CHECK(compose(t, s) == TangleMorphism{V, V, {0, 1, 1, 0}});
  CHECK(compose(s, t) == TangleMorphism{E, E, {0, 1, 1, 0}});
  // A dot slides through a saddle.
  CHECK(compose(s, TangleMorphism::dots(V, 1, 0)) == TangleMorphism{V, E, {0, 1, 0, 0}});
  CHECK(compose(s, TangleMorphism::dots(V, 0, 1)) == TangleMorphism{V, E, {0, 1, 0, 0}});
  CHECK(compose(TangleMorphism::dots(E, 1, -1), s).is_zero());
  const TangleMorphism sd{V, E, {0, 1, 0, 0}};
  CHECK(compose(t, sd) == TangleMorphism{V, V, {0, 0, 0, 1}});
  CHECK(compose(TangleMorphism{E, V, {0, 1, 0, 0}}, sd).is_zero());
  // Two dots on one arc vanish.
  const auto u = TangleMorphism::dots(E, 1, 0);
  CHECK(compose(u, u).is_zero());
  CHECK(compose(TangleMorphism::dots(E, 0, 1), u) == TangleMorphism{E, E, {0, 0, 0, 1}});
  CHECK(TangleMorphism::identity(V).is_unit());
  CHECK((-TangleMorphism::identity(V)).is_unit());
  CHECK_FALSE(s.is_unit());
  CHECK(to_string(TangleMorphism::dots(E, 1, -1)) == "=->=:u-v");
  CHECK_THROWS_AS(compose(s, s), std::invalid_argument);
}

TEST_CASE("twist complexes, small n") {
  const auto one = twist_complex(1, TwistSign::Positive);
  CHECK(one.objects.size() == 2);
  REQUIRE(one.maps.size() == 1);
  CHECK(one.maps[0] == TangleMorphism::saddle(V, E));

  const auto two = twist_complex(2, TwistSign::Positive);
  CHECK(two.objects.size() == 3);
  CHECK(two.terminal_sign() == -1);

  const auto three = twist_complex(3, TwistSign::Positive);
  CHECK(three.objects.size() == 4);
  CHECK(compose(three.maps[2], three.maps[1]).is_zero());
  CHECK(three.composites_vanish());
  CHECK(three.terminal_sign() == 1);

  const auto neg = twist_complex(3, TwistSign::Negative);
  CHECK(neg.objects.front().shape == E);
  CHECK(neg.objects.back().shape == V);
  CHECK(neg.maps.back() == TangleMorphism::saddle(E, V));
  CHECK_THROWS(twist_complex(0, TwistSign::Positive));
}

TEST_CASE("closed form agrees with crossing-by-crossing reduction") {
  for (auto sign : {TwistSign::Positive, TwistSign::Negative}) {
    for (int n = 1; n <= 8; ++n) {
      const auto closed = twist_complex(n, sign);
      const auto built = reduce_twist_by_stacking(n, sign);
      CHECK(closed.composites_vanish());
      CHECK(same_up_to_signs(closed, built));
      // Object gradings are part of the shape.
      CHECK(closed.objects == built.objects);
    }
  }
}

TEST_CASE("twist cube shape") {
  CHECK(build_twist_cube(1, 1, 1).nodes.size() == 8);
  const auto cube = build_twist_cube(2, 3, 4);
  CHECK(cube.nodes.size() == 60);
  // Each node has one outgoing edge per column that is not at its end.
  CHECK(cube.edges.size() == 2 * 4 * 5 + 3 * 3 * 5 + 3 * 4 * 4);
  bool saw_basepoint_zero = false;
  for (const auto& e : cube.edges) {
    if (e.kind != CubeEdgeKind::Dots) continue;
    for (const auto& t : e.dots) CHECK(t.circle != cube.nodes[e.from].basepoint_circle);
    if (e.dots.empty()) saw_basepoint_zero = true;
  }
  CHECK(saw_basepoint_zero);
  CHECK(dump_cube(cube).find("nodes 60") != std::string::npos);
}

TEST_CASE("free complexes from cubes square to zero") {
  for (PretzelParams params : {PretzelParams{-1, 1, 1}, PretzelParams{-2, 3, 4}, PretzelParams{-4, 4, 5},
                               PretzelParams{3, -2, 2}, PretzelParams{-3, -1, 2}, PretzelParams{0, 2, -3}}) {
    const auto pd = build_pretzel_pd(params, valid_orientation_patterns(params).front());
    const auto fc = to_free_complex(build_twist_cube(params), pd.counts());
    CHECK_NOTHROW(fc.check());
    CHECK_NOTHROW(check_complex(fc.to_graded()));
  }
}

TEST_CASE("anchor generator gradings") {
  for (int p : {2, 3, 4}) {
    for (auto pat : valid_orientation_patterns(p, p + 1, p + 3)) {
      const auto cube = build_twist_cube(p, p + 1, p + 3);
      const auto c = crossing_counts(pat, p, p + 1, p + 3);
      const auto fc = to_free_complex(cube, pat);
      const int node = cube.node_index(p, 0, 0);
      const auto& n = cube.nodes[node];
      CHECK(n.circles == 3);
      bool found = false;
      for (const auto& g : fc.gens) {
        if (g.from.node != node || g.from.labels != (1U << n.circles) - 1U) continue;
        found = true;
        CHECK(g.h == p - c.n_minus);
        CHECK(g.q == -2 + p + c.n_plus - 2 * c.n_minus);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("fast route against the oracle") {
  CHECK(fast_homology({-1, 1, 1}, std::nullopt) == oracle({-1, 1, 1}));
  CHECK(fast_homology(2, 3, 3, OrientationPattern::PlusMinus) ==
        oracle({-2, 3, 3}, OrientationPattern::PlusMinus));
  CHECK(fast_homology({-3, 4, 5}, std::nullopt) == oracle({-3, 4, 5}));
  for (auto pat : valid_orientation_patterns(2, 2, 4)) {
    CHECK(fast_homology(2, 2, 4, pat) == oracle({-2, 2, 4}, pat));
  }
  // Outside the P(-p,q,r) family too.
  CHECK(fast_homology({2, -3, 3}, std::nullopt) == oracle({2, -3, 3}));
  CHECK(fast_homology({-2, -3, 4}, std::nullopt) == oracle({-2, -3, 4}));
  CHECK(fast_homology({0, 3, 2}, std::nullopt) == oracle({0, 3, 2}));
}

TEST_CASE("fast route examples") {
  CHECK(delta_collapse(fast_homology({-3, 3, 3}, std::nullopt)).ranks == std::map<int, long long>{{0, 9}});
  const auto big = delta_collapse(fast_homology({-4, 9, 11}, std::nullopt)).ranks;
  REQUIRE(big.size() == 2);
  CHECK(big.rbegin()->second == 16);
  CHECK(big.begin()->second == 35);
  CHECK(big.rbegin()->first - big.begin()->first == 2);
}

TEST_CASE("Gaussian elimination") {
  FreeComplex iso;
  iso.gens = {{0, 0, {}}, {1, 0, {}}};
  iso.out = {{{1, Integer(-1)}}, {}};
  CHECK(gaussian_eliminate(iso).size() == 0);

  const auto pd = build_pretzel_pd({-2, 3, 3});
  const auto reduced = gaussian_eliminate(to_free_complex(build_twist_cube(2, 3, 3), pd.counts()));
  CHECK(reduced.size() == 5);
  CHECK(reduced.nonzeros() == 0);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = testing::random_known_complex(rng);
    CHECK(homology(k.complex) == k.expected);
    const auto elim = gaussian_eliminate(from_graded(k.complex));
    CHECK_NOTHROW(elim.check());
    CHECK(homology(elim.to_graded()) == k.expected);
  }
}

TEST_CASE("path signs: colour rule") {
  CHECK(path_sign_from_colors("BOBO") == 1);
  // The three w' -> f' paths.
  CHECK(path_sign_from_colors("BBOB") + path_sign_from_colors("OBOB") + path_sign_from_colors("OBBB") == -1);
  CHECK_THROWS(path_sign_from_colors("BXO"));
  // The colour rule is the height-signed floor rule for paths ending on the floor.
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 7);
    GridPoint start{k - 1, static_cast<int>(rng() % 4), static_cast<int>(rng() % 4)};
    std::vector<Step> steps;
    for (int i = 0; i < k; ++i) {
      if (i > 0) steps.push_back(Step::Down);
      steps.push_back(rng() % 2 ? Step::X : Step::Y);
    }
    CHECK(path_sign(start, steps) == path_sign_from_colors(path_colors(start, steps)));
  }
}

TEST_CASE("path signs: counts") {
  for (int p = 1; p <= 6; ++p) {
    for (int y0 = 0; y0 < 2; ++y0) {
      GridPoint s{p, y0, 0};
      GridPoint e{0, y0 + p, 1};
      CHECK(signed_path_count(s, e, Step::Y) == signed_path_count_bruteforce(s, e, Step::Y));
      CHECK(std::llabs(signed_path_count(s, e, Step::Y)) == p % 2);
    }
  }
  CHECK(signed_path_count({2, 0, 0}, {0, 5, 5}, Step::X) == 0);
  CHECK_THROWS(signed_path_count({1, 0, 0}, {0, 1, 1}, Step::Down));
}
