#ifndef PRETZELKH_POLY_HPP
#define PRETZELKH_POLY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pretzelkh/linalg.hpp"

namespace pretzelkh {

// Polynomial in one variable x; coeffs[n] multiplies x^n.
using UniPoly = std::vector<long long>;

// Laurent polynomial in Q (quantum) and H (homological). Zero
// coefficients are never stored.
class BigradedPoly {
 public:
  using Key = std::pair<int, int>;  // (Q exponent, H exponent)

  BigradedPoly() = default;
  static BigradedPoly monomial(int q, int h, long long coeff = 1);
  // Q^q H^h * f(Q^2 H).
  static BigradedPoly shifted(int q, int h, const UniPoly& f);
  // Poincare polynomial of the free part of a homology table.
  static BigradedPoly from_table(const HomologyTable& table);

  void add(int q, int h, long long coeff);
  BigradedPoly& operator+=(const BigradedPoly& other);
  friend BigradedPoly operator+(BigradedPoly a, const BigradedPoly& b) { return a += b; }
  friend BigradedPoly operator*(long long k, const BigradedPoly& p);

  long long coeff(int q, int h) const;
  const std::map<Key, long long>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  long long total() const;
  bool nonnegative() const;

  // Substitutes Q^a H^b -> 2delta = a - 2b and sums coefficients.
  std::map<int, long long> delta_collapse() const;

  std::string to_string() const;

  friend bool operator==(const BigradedPoly&, const BigradedPoly&) = default;

 private:
  std::map<Key, long long> terms_;
};

// 1 + x + ... + x^n (empty when n < 0).
UniPoly geometric(int n);

}  // namespace pretzelkh

#endif  // PRETZELKH_POLY_HPP
