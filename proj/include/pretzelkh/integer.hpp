#ifndef PRETZELKH_INTEGER_HPP
#define PRETZELKH_INTEGER_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace pretzelkh {

// Arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64 never touch GMP; an operation that would
// overflow is redone in mpz arithmetic and the result is demoted again
// whenever it fits.
class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(implicit)
  Integer(int v) : small_(v) {}           // NOLINT(implicit)
  explicit Integer(const mpz_class& v);
  explicit Integer(const std::string& decimal);

  Integer(const Integer& other);
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&&) noexcept = default;
  ~Integer() = default;

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_unit() const { return !big_ && (small_ == 1 || small_ == -1); }
  int sign() const;

  // Throws std::overflow_error when the value does not fit.
  std::int64_t to_int64() const;
  mpz_class to_mpz() const;
  std::string to_string() const;

  Integer operator-() const;
  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);

  friend Integer operator+(Integer lhs, const Integer& rhs) { return lhs += rhs; }
  friend Integer operator-(Integer lhs, const Integer& rhs) { return lhs -= rhs; }
  friend Integer operator*(Integer lhs, const Integer& rhs) { return lhs *= rhs; }

  friend bool operator==(const Integer& a, const Integer& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Integer& a, const Integer& b) { return compare(a, b) != 0; }
  friend bool operator<(const Integer& a, const Integer& b) { return compare(a, b) < 0; }
  friend bool operator>(const Integer& a, const Integer& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Integer& a, const Integer& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Integer& a, const Integer& b) { return compare(a, b) >= 0; }

  static int compare(const Integer& a, const Integer& b);

  // Quotient rounded to nearest (ties toward zero); |a - q*b| <= |b|/2.
  static Integer nearest_quotient(const Integer& a, const Integer& b);
  static Integer gcd(const Integer& a, const Integer& b);
  static Integer abs(const Integer& a);
  // Exact division; the caller guarantees b divides a.
  static Integer divexact(const Integer& a, const Integer& b);

 private:
  void set_big(mpz_class v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace pretzelkh

#endif  // PRETZELKH_INTEGER_HPP
