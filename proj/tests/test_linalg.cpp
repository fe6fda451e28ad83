#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "pretzelkh/linalg.hpp"

using namespace pretzelkh;

namespace {

SparseIntMatrix dense(const std::vector<std::vector<long long>>& rows) {
  SparseIntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j]) m.add(static_cast<int>(i), static_cast<int>(j), Integer(static_cast<std::int64_t>(rows[i][j])));
    }
  }
  m.finalize();
  return m;
}

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("sparse matrix bookkeeping") {
  SparseIntMatrix m(2, 3);
  m.add(0, 1, 5);
  m.add(0, 1, -5);
  m.add(1, 2, 3);
  m.add(1, 2, 4);
  CHECK_FALSE(m.finalized());
  CHECK_THROWS_AS(m.entries(), std::logic_error);
  m.finalize();
  CHECK(m.nonzeros() == 1);
  CHECK(m.at(1, 2) == Integer(7));
  CHECK(m.at(0, 1).is_zero());
  const auto p = dense({{1, 2}, {3, 4}}) * dense({{0, 1}, {1, 0}});
  CHECK(p == dense({{2, 1}, {4, 3}}));
}

TEST_CASE("Smith normal form examples") {
  auto id = smith_normal_form(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(id.factors == ints({1, 1, 1}));
  CHECK(id.rank == 3);
  auto a = smith_normal_form(dense({{2, 4}, {6, 8}}));
  CHECK(a.factors == ints({2, 4}));
  CHECK(a.rank == 2);
  auto z = smith_normal_form(SparseIntMatrix(3, 4));
  CHECK(z.factors.empty());
  CHECK(z.rank == 0);
  auto b = smith_normal_form(dense({{2, 0, 0}, {0, 3, 0}, {0, 0, 0}}));
  CHECK(b.factors == ints({1, 6}));
  auto c = smith_normal_form(dense({{6, 10, 15}}));
  CHECK(c.factors == ints({1}));
}

TEST_CASE("Smith form with entries beyond 64 bits") {
  const Integer big(std::string("100000000000000000000000000000"));
  SparseIntMatrix m(2, 2, {{0, 0, big}, {1, 1, big * Integer(3)}});
  const auto s = smith_normal_form(m);
  REQUIRE(s.factors.size() == 2);
  CHECK(s.factors[0] == big);
  CHECK(s.factors[1] == big * Integer(3));
}

TEST_CASE("Smith form is invariant under row and column permutations") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 2 + trial % 5;
    const int cols = 2 + (trial / 5) % 5;
    std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
    for (auto& row : a) {
      for (auto& x : row) x = (rng() % 3 == 0) ? val(rng) : 0;
    }
    std::vector<int> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    std::vector<std::vector<long long>> b(rows, std::vector<long long>(cols));
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) b[i][j] = a[rp[i]][cp[j]];
    }
    const auto sa = smith_normal_form(dense(a));
    const auto sb = smith_normal_form(dense(b));
    CHECK(sa.factors == sb.factors);
    CHECK(sa.rank == sb.rank);
    for (std::size_t k = 1; k < sa.factors.size(); ++k) {
      CHECK(Integer::divexact(sa.factors[k], sa.factors[k - 1]) * sa.factors[k - 1] == sa.factors[k]);
    }
  }
}

TEST_CASE("homology of small complexes") {
  GradedComplex unknot;
  unknot.qgrades = {{0}};
  auto t = homology(unknot);
  CHECK(t.size() == 1);
  CHECK(t[{0, 0}].free_rank == 1);
  CHECK(delta_collapse(t).ranks == std::map<int, long long>{{0, 1}});

  // Z --2--> Z gives Z/2 in degree 1.
  GradedComplex c;
  c.h_min = 0;
  c.qgrades = {{3}, {3}};
  c.differentials.push_back(dense({{2}}));
  t = homology(c);
  CHECK(t.size() == 1);
  CHECK(t[{1, 3}].free_rank == 0);
  CHECK(t[{1, 3}].torsion == ints({2}));
  CHECK_FALSE(torsion_free(t));
  CHECK(delta_collapse(t).torsion.at(1) == ints({2}));

  // Torsion is reported as invariant factors: Z/3 + Z/4 = Z/12.
  GradedComplex s;
  s.qgrades = {{0, 0}, {0, 0}};
  s.differentials.push_back(dense({{3, 0}, {0, 4}}));
  t = homology(s);
  CHECK(t[{1, 0}].torsion == ints({12}));
}

TEST_CASE("integrity errors") {
  GradedComplex c;
  c.qgrades = {{0}, {0}, {0}};
  c.differentials = {dense({{1}}), dense({{1}})};
  CHECK_THROWS_AS(homology(c), IntegrityError);

  GradedComplex q;
  q.qgrades = {{0}, {2}};
  q.differentials = {dense({{1}})};
  CHECK_THROWS_AS(check_complex(q), IntegrityError);

  GradedComplex shape;
  shape.qgrades = {{0, 0}, {0}};
  shape.differentials = {dense({{1}})};
  CHECK_THROWS_AS(check_complex(shape), IntegrityError);
}

TEST_CASE("Euler characteristic survives homology") {
  // q = 0 is acyclic; q = 2 leaves Z/3 in degree 0.
  GradedComplex c;
  c.h_min = -1;
  c.qgrades = {{0, 2}, {0, 2, 2}, {2}};
  c.differentials = {dense({{1, 0}, {0, 0}, {0, 3}}), dense({{0, 1, 0}})};
  check_complex(c);
  const auto t = homology(c);
  CHECK(euler_characteristic(c) == euler_characteristic(t));
  CHECK(total_rank(t) == 0);
  CHECK(t.at({0, 2}).torsion == ints({3}));
}
