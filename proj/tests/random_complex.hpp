#ifndef PRETZELKH_TESTS_RANDOM_COMPLEX_HPP
#define PRETZELKH_TESTS_RANDOM_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "pretzelkh/linalg.hpp"

namespace pretzelkh::testing {

// A random based complex with known homology: a direct sum of Z[h] pieces
// and Z --m--> Z pieces, hidden by random unimodular changes of basis in
// every (h, q) block.
struct KnownComplex {
  GradedComplex complex;
  HomologyTable expected;
};

inline KnownComplex random_known_complex(std::mt19937& rng) {
  const int degrees = 2 + static_cast<int>(rng() % 4);
  const int h_min = -static_cast<int>(rng() % 3);
  std::vector<std::vector<int>> q(degrees);
  // Dense differentials, d[i] is (size of i+1) x (size of i).
  std::vector<std::vector<std::vector<long long>>> d(degrees - 1);
  KnownComplex out;
  std::map<std::pair<int, int>, std::vector<long long>> orders;

  // New generators get zero rows/columns in the adjacent differentials.
  auto grow = [&](int deg, int qq) {
    q[deg].push_back(qq);
    for (int i = 0; i + 1 < degrees; ++i) {
      d[i].resize(q[i + 1].size());
      for (auto& row : d[i]) row.resize(q[i].size(), 0);
    }
    return static_cast<int>(q[deg].size()) - 1;
  };

  const int pieces = 1 + static_cast<int>(rng() % 7);
  const int multipliers[] = {1, -1, 1, 2, 3, -2, 4};
  for (int k = 0; k < pieces; ++k) {
    const int deg = static_cast<int>(rng() % degrees);
    const int qq = 2 * static_cast<int>(rng() % 3);
    if (deg + 1 < degrees && rng() % 2 == 0) {
      const long long m = multipliers[rng() % 7];
      const int a = grow(deg, qq);
      const int b = grow(deg + 1, qq);
      d[deg][b][a] = m;
      if (m != 1 && m != -1) {
        orders[{h_min + deg + 1, qq}].push_back(m < 0 ? -m : m);
      }
    } else {
      grow(deg, qq);
      out.expected[{h_min + deg, qq}].free_rank += 1;
    }
  }
  // Invariant factors: replace any non-dividing pair by (gcd, lcm), so
  // Z/3 + Z/4 is reported as Z/12.
  for (auto& [key, v] : orders) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        const long long g = std::gcd(v[i], v[j]);
        const long long l = v[i] / g * v[j];
        v[i] = g;
        v[j] = l;
      }
    }
    for (long long o : v) {
      if (o != 1) out.expected[key].torsion.push_back(Integer(static_cast<std::int64_t>(o)));
    }
  }
  for (auto it = out.expected.begin(); it != out.expected.end();) {
    it = (it->second.free_rank == 0 && it->second.torsion.empty()) ? out.expected.erase(it) : std::next(it);
  }

  // Unimodular change of basis E = I + k e_ij inside one (h, q) block:
  // d_{h-1} <- E d_{h-1} and d_h <- d_h E^{-1}.
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 40; ++step) {
    const int deg = static_cast<int>(rng() % degrees);
    const int n = static_cast<int>(q[deg].size());
    if (n < 2) continue;
    const int i = static_cast<int>(rng() % n);
    const int j = static_cast<int>(rng() % n);
    if (i == j || q[deg][i] != q[deg][j]) continue;
    const long long k = coef(rng);
    if (k == 0) continue;
    // E = I + k e_ij: row i of E d_{h-1} gains k * row j.
    if (deg > 0) {
      for (std::size_t c = 0; c < d[deg - 1][i].size(); ++c) d[deg - 1][i][c] += k * d[deg - 1][j][c];
    }
    // E^{-1} = I - k e_ij: column j of d_h E^{-1} loses k * column i.
    if (deg + 1 < degrees) {
      for (auto& row : d[deg]) row[j] -= k * row[i];
    }
  }

  out.complex.h_min = h_min;
  out.complex.qgrades = q;
  for (int i = 0; i + 1 < degrees; ++i) {
    SparseIntMatrix m(static_cast<int>(q[i + 1].size()), static_cast<int>(q[i].size()));
    for (std::size_t r = 0; r < d[i].size(); ++r) {
      for (std::size_t c = 0; c < d[i][r].size(); ++c) {
        if (d[i][r][c] != 0) m.add(static_cast<int>(r), static_cast<int>(c), Integer(static_cast<std::int64_t>(d[i][r][c])));
      }
    }
    m.finalize();
    out.complex.differentials.push_back(std::move(m));
  }
  return out;
}

}  // namespace pretzelkh::testing

#endif  // PRETZELKH_TESTS_RANDOM_COMPLEX_HPP
