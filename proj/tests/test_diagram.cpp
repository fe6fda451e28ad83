#include <doctest.h>

#include <algorithm>

#include "pretzelkh/diagram.hpp"

using namespace pretzelkh;

TEST_CASE("standard pretzel diagrams") {
  const auto d = build_pretzel_pd({-3, 4, 5});
  CHECK(d.crossing_count() == 12);
  CHECK(d.components() == 1);
  CHECK(build_pretzel_pd({-1, 1, 1}).crossing_count() == 3);
  CHECK(build_pretzel_pd({-1, 1, 1}).components() == 1);
  const auto l = build_pretzel_pd({-2, 2, 2}, OrientationPattern::PlusMinus);
  CHECK(l.crossing_count() == 6);
  CHECK(l.components() == 3);
  CHECK_THROWS_AS(build_pretzel_pd({0, 0, 0}), DiagramError);
}

TEST_CASE("component count by tracing") {
  // Two or more even columns give a link; otherwise a knot.
  for (int p = 1; p <= 5; ++p) {
    for (int q = 1; q <= 5; ++q) {
      for (int r = 1; r <= 5; ++r) {
        const int evens = (p % 2 == 0) + (q % 2 == 0) + (r % 2 == 0);
        const int expected = evens == 0 ? 1 : (evens == 1 ? 1 : evens);
        CHECK(pretzel_components({-p, q, r}) == expected);
      }
    }
  }
}

TEST_CASE("knot orientation patterns") {
  CHECK(knot_orientation_pattern(3, 4, 5) == OrientationPattern::PlusPlus);
  CHECK(knot_orientation_pattern(3, 5, 7) == OrientationPattern::MinusPlus);
  CHECK(knot_orientation_pattern(2, 3, 5) == OrientationPattern::PlusMinus);
  CHECK(knot_orientation_pattern(3, 5, 6) == OrientationPattern::MinusMinus);
  CHECK_THROWS_AS(knot_orientation_pattern(2, 4, 5), DiagramError);
}

TEST_CASE("valid orientation patterns") {
  CHECK(valid_orientation_patterns(3, 4, 5) == std::vector{OrientationPattern::PlusPlus});
  CHECK(valid_orientation_patterns(2, 2, 2).size() == 4);
  CHECK(valid_orientation_patterns(2, 2, 3).size() == 2);
  for (int p = 1; p <= 6; ++p) {
    for (int q = p; q <= 7; ++q) {
      for (int r = q; r <= 8; ++r) {
        const auto pats = valid_orientation_patterns(p, q, r);
        const int comps = pretzel_components({-p, q, r});
        CHECK(pats.size() == (comps == 1 ? 1U : (comps == 2 ? 2U : 4U)));
        if (comps == 1) CHECK(pats.front() == knot_orientation_pattern(p, q, r));
        for (auto pat : pats) {
          const auto c = crossing_counts(pat, p, q, r);
          CHECK(c.n_plus + c.n_minus == p + q + r);
          // The built diagram carries the same signs as the table.
          CHECK(build_pretzel_pd({-p, q, r}, pat).counts() == c);
        }
      }
    }
  }
}

TEST_CASE("crossing count table") {
  CHECK(crossing_counts(OrientationPattern::PlusPlus, 3, 4, 5) == CrossingCounts{5, 7});
  CHECK(crossing_counts(OrientationPattern::PlusMinus, 2, 3, 5) == CrossingCounts{10, 0});
  CHECK(crossing_counts(OrientationPattern::MinusPlus, 3, 5, 7) == CrossingCounts{3, 12});
  CHECK(crossing_counts(OrientationPattern::MinusMinus, 3, 5, 6) == CrossingCounts{5, 9});
  CHECK_THROWS(crossing_counts(OrientationPattern::PlusPlus, 3, 5, 7));
}

TEST_CASE("pattern text") {
  for (auto pat : kAllPatterns) CHECK(parse_pattern(to_string(pat)) == pat);
  CHECK_THROWS_AS(parse_pattern("+"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("+*"), std::invalid_argument);
}

TEST_CASE("classification") {
  CHECK(classify(1, 5, 7) == Classification::QuasiAlternating);
  CHECK(classify(1, 9, 9) == Classification::QuasiAlternating);
  CHECK(classify(3, 3, 7) == Classification::ThinNonQA);
  CHECK(classify(2, 2, 5) == Classification::ThickNonQA);
  CHECK(classify(2, 3, 4) == Classification::ThickNonQA);
  CHECK(classify(5, 3, 7) == Classification::QuasiAlternating);
  CHECK_THROWS_AS(classify(0, 3, 3), DiagramError);
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; q <= 8; ++q) {
      for (int r = 1; r <= 8; ++r) CHECK(classify(p, q, r) == classify(p, r, q));
    }
  }
}

TEST_CASE("normalization is explicit") {
  const auto a = normalize({-3, 5, 4});
  CHECK(a.p == 3);
  CHECK(a.q == 4);
  CHECK(a.r == 5);
  CHECK(a.permuted);
  CHECK_FALSE(a.mirrored);
  const auto b = normalize({3, -4, -5});
  CHECK(b.mirrored);
  CHECK(b.p == 3);
  const auto c = normalize({2, 1, 3});
  CHECK(c.alternating);
  const auto d = normalize({-2, 3, 4});
  CHECK_FALSE(d.permuted);
  CHECK_FALSE(d.mirrored);
}
