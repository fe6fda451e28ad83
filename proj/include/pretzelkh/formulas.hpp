#ifndef PRETZELKH_FORMULAS_HPP
#define PRETZELKH_FORMULAS_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "pretzelkh/diagram.hpp"
#include "pretzelkh/poly.hpp"

namespace pretzelkh {

// Raised for inputs outside the closed formulas (p = 1, unsorted input,
// links passed to the knot formula, ...).
class FormulaScopeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// 2*delta -> rank; zero ranks omitted.
using DeltaTable = std::map<int, long long>;

// Staircase pattern 1,2,...,q-p-2, (q-p-1) x (r-q+1), q-p-2,...,1.
// Empty unless q >= p+2.
UniPoly phi_poly(int p, int q, int r);

// Doubled pattern 1,1,2,2,...,peak,...,2,2,1,1 of length 2k-1 (empty for
// k <= 0). The peak is k/2 three times for even k, (k+1)/2 once for odd k.
UniPoly psi_poly(int k);

// delta-graded homology of P(-p,q,r), 2 <= p <= q <= r.
DeltaTable theorem2_delta(int p, int q, int r, OrientationPattern pattern);

struct FloorContribs {
  BigradedPoly a1, a2, a3;
  BigradedPoly circle4;   // one dot of circle (4)
  BigradedPoly circle56;  // one dot of circles (5)/(6)
  BigradedPoly f2;
};

struct WallContribs {
  BigradedPoly b1, b2, b3, b4, b5;
  BigradedPoly w12;  // one of w1, w2
  BigradedPoly w34;  // one of w3, w4
  BigradedPoly w56;  // one of w5, w6
};

FloorContribs floor_contribs(int p, int q, int r, OrientationPattern pattern);
WallContribs wall_contribs(int p, int q, int r, OrientationPattern pattern);

// The ten exhaustive cases of the bigraded formula.
enum class BigradedCase {
  EvenGeneric,       // p even, q >= p+2
  OddGeneric,        // p odd,  q >= p+2
  EvenQNextRLarger,  // p even, q = p+1 < r
  OddQNextRLarger,   // p odd,  q = p+1 < r
  EvenQRNext,        // p even, q = r = p+1
  OddQRNext,         // p odd,  q = r = p+1
  EvenQEqualRFar,    // p even, q = p, r > p+1
  EvenQEqualRNext,   // p even, q = p, r = p+1
  EvenAllEqual,      // p even, p = q = r
  OddQEqual,         // p odd,  q = p
};

BigradedCase bigraded_case(int p, int q, int r);
std::string to_string(BigradedCase c);

// Bigraded Poincare polynomial of the reduced homology, 2 <= p <= q <= r.
BigradedPoly theorem3_bigraded(int p, int q, int r, OrientationPattern pattern);

// delta-graded homology of the knot P(-p,q,r) without reference to an
// orientation; q and r need not be ordered but p <= q, r.
DeltaTable theorem1_knot(int p, int q, int r);

}  // namespace pretzelkh

#endif  // PRETZELKH_FORMULAS_HPP
