#include "pretzelkh/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace pretzelkh {

namespace {

static_assert(sizeof(long) == sizeof(std::int64_t), "mpz_class interop assumes LP64");

mpz_class mpz_of(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

Integer::Integer(const mpz_class& v) { set_big(v); }

Integer::Integer(const std::string& decimal) {
  mpz_class v;
  if (v.set_str(decimal, 10) != 0) {
    throw std::invalid_argument("not a decimal integer: " + decimal);
  }
  set_big(std::move(v));
}

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_) big_ = std::make_unique<mpz_class>(*other.big_);
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  small_ = other.small_;
  if (other.big_) {
    big_ = std::make_unique<mpz_class>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

void Integer::set_big(mpz_class v) {
  if (v.fits_slong_p()) {
    small_ = v.get_si();
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_unique<mpz_class>(std::move(v));
  }
}

int Integer::sign() const {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

std::int64_t Integer::to_int64() const {
  if (big_) throw std::overflow_error("Integer does not fit in int64: " + to_string());
  return small_;
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : mpz_of(small_); }

std::string Integer::to_string() const {
  return big_ ? big_->get_str(10) : std::to_string(small_);
}

Integer Integer::operator-() const {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return Integer(-small_);
  return Integer(mpz_class(-to_mpz()));
}

Integer& Integer::operator+=(const Integer& rhs) {
  std::int64_t out = 0;
  if (!big_ && !rhs.big_ && !__builtin_add_overflow(small_, rhs.small_, &out)) {
    small_ = out;
    return *this;
  }
  set_big(to_mpz() + rhs.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  std::int64_t out = 0;
  if (!big_ && !rhs.big_ && !__builtin_sub_overflow(small_, rhs.small_, &out)) {
    small_ = out;
    return *this;
  }
  set_big(to_mpz() - rhs.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  std::int64_t out = 0;
  if (!big_ && !rhs.big_ && !__builtin_mul_overflow(small_, rhs.small_, &out)) {
    small_ = out;
    return *this;
  }
  set_big(to_mpz() * rhs.to_mpz());
  return *this;
}

int Integer::compare(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return (a.small_ > b.small_) - (a.small_ < b.small_);
  return cmp(a.to_mpz(), b.to_mpz());
}

Integer Integer::nearest_quotient(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
      b.small_ != std::numeric_limits<std::int64_t>::min()) {
    std::int64_t q = a.small_ / b.small_;
    const std::int64_t r = a.small_ % b.small_;
    const std::int64_t ar = r < 0 ? -r : r;
    const std::int64_t ab = b.small_ < 0 ? -b.small_ : b.small_;
    if (ar > ab - ar) q += ((a.small_ < 0) == (b.small_ < 0)) ? 1 : -1;
    return Integer(q);
  }
  // Truncated quotient, then step toward the nearer multiple.
  mpz_class num = a.to_mpz();
  mpz_class den = b.to_mpz();
  mpz_class q;
  mpz_class r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class twice_r = 2 * ::abs(r);
  if (twice_r > ::abs(den)) {
    // r and num share a sign; move q by sign(num)*sign(den).
    q += sgn(num) * sgn(den);
  }
  return Integer(q);
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
      b.small_ != std::numeric_limits<std::int64_t>::min()) {
    std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    while (y != 0) {
      std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  mpz_class g;
  mpz_class x = a.to_mpz();
  mpz_class y = b.to_mpz();
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Integer(g);
}

Integer Integer::abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer Integer::divexact(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_ && !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
    return Integer(a.small_ / b.small_);
  }
  mpz_class q;
  mpz_class x = a.to_mpz();
  mpz_class y = b.to_mpz();
  mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Integer(q);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

}  // namespace pretzelkh
