#include "pretzelkh/formulas.hpp"

#include <algorithm>

namespace pretzelkh {

namespace {

void require_scope(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1) throw FormulaScopeError("p, q, r must be positive");
  if (p == 1) throw FormulaScopeError("quasi-alternating: use alternating-link tools");
  if (!(p <= q && q <= r)) throw FormulaScopeError("formulas expect p <= q <= r");
}

// Offsets shared by every term: Q^{n+ - 2n-} H^{-n-}.
struct Shift {
  int q = 0;
  int h = 0;
};

Shift shift_of(OrientationPattern pattern, int p, int q, int r) {
  const CrossingCounts c = crossing_counts(pattern, p, q, r);
  return {c.n_plus - 2 * c.n_minus, -c.n_minus};
}

}  // namespace

UniPoly phi_poly(int p, int q, int r) {
  if (q < p + 2 || r < q) return {};
  UniPoly c;
  for (int v = 1; v <= q - p - 2; ++v) c.push_back(v);
  for (int i = 0; i < r - q + 1; ++i) c.push_back(q - p - 1);
  for (int v = q - p - 2; v >= 1; --v) c.push_back(v);
  return c;
}

UniPoly psi_poly(int k) {
  if (k <= 0) return {};
  UniPoly c;
  const int rungs = (k % 2 == 0) ? k / 2 - 1 : (k - 1) / 2;
  for (int v = 1; v <= rungs; ++v) c.insert(c.end(), {v, v});
  if (k % 2 == 0) {
    c.insert(c.end(), {k / 2, k / 2, k / 2});
  } else {
    c.push_back((k + 1) / 2);
  }
  for (int v = rungs; v >= 1; --v) c.insert(c.end(), {v, v});
  return c;
}

DeltaTable theorem2_delta(int p, int q, int r, OrientationPattern pattern) {
  require_scope(p, q, r);
  const int n_plus = crossing_counts(pattern, p, q, r).n_plus;
  const int upper = -p + n_plus;
  const int lower = -2 - p + n_plus;
  const long long pp = static_cast<long long>(p) * p;
  const long long qr = static_cast<long long>(q - p) * (r - p);
  const bool even = p % 2 == 0;

  long long hi = 0;
  long long lo = 0;
  if (q == p) {
    if (!even) {
      hi = pp;
    } else if (r > p) {
      hi = pp + r - p;
      lo = r - p;
    } else {
      hi = pp + 1;
      lo = 1;
    }
  } else if (!even && q == p + 1 && r == p + 1) {
    hi = pp;
    lo = 1;
  } else {
    // Generic shape; also covers q = p+1 outside the listed specials.
    hi = even ? pp : pp - 1;
    lo = even ? qr : qr - 1;
  }
  DeltaTable t;
  if (hi) t[upper] = hi;
  if (lo) t[lower] = lo;
  return t;
}

FloorContribs floor_contribs(int p, int q, int r, OrientationPattern pattern) {
  require_scope(p, q, r);
  const Shift s = shift_of(pattern, p, q, r);
  const int Q0 = 3 * p + s.q;
  const int H0 = 2 * p + s.h;
  FloorContribs f;
  f.a1 = BigradedPoly::shifted(6 + Q0, H0 + 4, phi_poly(p, q, r));
  f.a2 = BigradedPoly::shifted(4 + Q0, H0 + 3, geometric(r - p - 3));
  f.a3 = BigradedPoly::shifted(4 + Q0, H0 + 3, geometric(q - p - 3));
  f.circle4 = BigradedPoly::monomial(Q0, H0 + 1);
  f.circle56 = BigradedPoly::monomial(2 + Q0, H0 + 2);
  f.f2 = BigradedPoly::monomial(-2 + Q0, H0);
  return f;
}

WallContribs wall_contribs(int p, int q, int r, OrientationPattern pattern) {
  require_scope(p, q, r);
  const Shift s = shift_of(pattern, p, q, r);
  WallContribs w;
  w.b1 = BigradedPoly::shifted(-p + s.q, s.h, geometric(p - 2)) +
         BigradedPoly::monomial(p + s.q, p + s.h);
  w.b2 = BigradedPoly::shifted(4 + p + s.q, 2 + p + s.h, geometric(p - 4));
  w.b3 = BigradedPoly::shifted(2 + p + s.q, 1 + p + s.h, geometric(p - 3));
  w.b4 = BigradedPoly::shifted(6 - p + s.q, 3 + s.h, psi_poly(p - 2));
  w.b5 = BigradedPoly::shifted(4 - p + s.q, 2 + s.h, psi_poly(p - 2));
  const int Q0 = 3 * p + s.q;
  const int H0 = 2 * p + s.h;
  w.w12 = BigradedPoly::monomial(2 + Q0, 1 + H0);
  w.w34 = BigradedPoly::monomial(Q0, H0);
  w.w56 = BigradedPoly::monomial(-2 + Q0, -1 + H0);
  return w;
}

BigradedCase bigraded_case(int p, int q, int r) {
  require_scope(p, q, r);
  const bool even = p % 2 == 0;
  if (q >= p + 2) return even ? BigradedCase::EvenGeneric : BigradedCase::OddGeneric;
  if (q == p + 1) {
    if (r > q) return even ? BigradedCase::EvenQNextRLarger : BigradedCase::OddQNextRLarger;
    return even ? BigradedCase::EvenQRNext : BigradedCase::OddQRNext;
  }
  // q == p
  if (!even) return BigradedCase::OddQEqual;
  if (r > p + 1) return BigradedCase::EvenQEqualRFar;
  if (r == p + 1) return BigradedCase::EvenQEqualRNext;
  return BigradedCase::EvenAllEqual;
}

std::string to_string(BigradedCase c) {
  switch (c) {
    case BigradedCase::EvenGeneric: return "p even, q >= p+2";
    case BigradedCase::OddGeneric: return "p odd, q >= p+2";
    case BigradedCase::EvenQNextRLarger: return "p even, q = p+1 < r";
    case BigradedCase::OddQNextRLarger: return "p odd, q = p+1 < r";
    case BigradedCase::EvenQRNext: return "p even, q = r = p+1";
    case BigradedCase::OddQRNext: return "p odd, q = r = p+1";
    case BigradedCase::EvenQEqualRFar: return "p even, q = p, r > p+1";
    case BigradedCase::EvenQEqualRNext: return "p even, q = p, r = p+1";
    case BigradedCase::EvenAllEqual: return "p even, p = q = r";
    case BigradedCase::OddQEqual: return "p odd, q = p";
  }
  return "?";
}

BigradedPoly theorem3_bigraded(int p, int q, int r, OrientationPattern pattern) {
  const BigradedCase which = bigraded_case(p, q, r);
  const FloorContribs f = floor_contribs(p, q, r, pattern);
  const WallContribs w = wall_contribs(p, q, r, pattern);
  const Shift s = shift_of(pattern, p, q, r);
  const int Q0 = 3 * p + s.q;
  const int H0 = 2 * p + s.h;
  auto T = [&](int dq, int dh, long long c = 1) { return BigradedPoly::monomial(Q0 + dq, H0 + dh, c); };

  const BigradedPoly bsum = w.b1 + w.b2 + w.b3 + w.b4 + w.b5;
  // The doubled w5/w6 term loses w5 when p = 2.
  const long long w56 = p == 2 ? 1 : 2;

  switch (which) {
    case BigradedCase::EvenGeneric:
      return f.a1 + f.a2 + f.a3 + bsum + T(2, 2, 2) + T(-2, 0) + T(2, 1) + T(-2, -1, w56);
    case BigradedCase::OddGeneric:
      return f.a1 + f.a2 + f.a3 + bsum + T(2, 2) + T(0, 1) + T(0, 0) + T(-2, -1);
    case BigradedCase::EvenQNextRLarger:
      return f.a2 + bsum + T(2, 2) + T(-2, 0) + T(2, 1) + T(-2, -1, w56);
    case BigradedCase::OddQNextRLarger:
      return f.a2 + bsum + T(0, 1) + T(0, 0) + T(-2, -1);
    case BigradedCase::EvenQRNext:
      return bsum + T(-2, 0) + T(2, 1) + T(-2, -1, w56);
    case BigradedCase::OddQRNext:
      // Printed with H^{-1+2p+n-}; the sign of n- is corrected here.
      return bsum + T(0, 1) + T(0, 0) + T(-2, -1) + T(2, 1);
    case BigradedCase::EvenQEqualRFar:
      return f.a2 + bsum + T(-2, 0) + T(2, 2) +
             BigradedPoly::shifted(Q0 + 2, H0 + 1, geometric(r - p - 1)) + T(0, 0) +
             T(-2, -1, w56);
    case BigradedCase::EvenQEqualRNext:
      return bsum + T(-2, 0) + T(2, 1) + T(0, 0) + T(-2, -1, w56);
    case BigradedCase::EvenAllEqual:
      return bsum + T(-2, 0) + T(0, 0, 2) + T(-2, -1, w56);
    case BigradedCase::OddQEqual:
      return bsum + T(-2, -1) + T(0, 0) + T(2 * (r - p), r - p);
  }
  throw FormulaScopeError("unreachable bigraded case");
}

DeltaTable theorem1_knot(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1) throw FormulaScopeError("p, q, r must be positive");
  if (p == 1) throw FormulaScopeError("quasi-alternating: use alternating-link tools");
  if (p > q || p > r) throw FormulaScopeError("knot formula expects p <= q, r");
  const int evens = (p % 2 == 0) + (q % 2 == 0) + (r % 2 == 0);
  if (evens >= 2) throw FormulaScopeError("P(-p,q,r) is a link; use the link formula");

  const long long pp = static_cast<long long>(p) * p;
  const long long qr = static_cast<long long>(q - p) * (r - p);
  int upper = 0;
  long long hi = 0;
  long long lo = 0;
  if (p % 2 == 0) {
    upper = q + r;
    hi = pp;
    lo = qr;
  } else {
    if (q % 2 == 0) {
      upper = r - p;
    } else if (r % 2 == 0) {
      upper = q - p;  // q and r exchanged
    } else {
      upper = 0;
    }
    hi = pp - 1;
    lo = qr - 1;
    if (lo < 0) {  // p = q or p = r
      lo = 0;
      hi += 1;
    }
  }
  DeltaTable t;
  if (hi) t[upper] = hi;
  if (lo) t[upper - 2] = lo;
  return t;
}

}  // namespace pretzelkh
