#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace norm1lat {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer with an int64 fast path. Values that do not fit in int64 are
// held in a heap-allocated BigInt; every result is normalized back to the
// small representation when it fits.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : small_(v) {}
  Integer(long v) noexcept : small_(v) {}
  Integer(long long v) noexcept : small_(v) {}
  explicit Integer(const BigInt& v) { assign_big(v); }
  explicit Integer(std::string_view decimal);

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<BigInt>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      if (o.big_)
        big_ = std::make_unique<BigInt>(*o.big_);
      else
        big_.reset();
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  bool is_small() const noexcept { return !big_; }
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool is_one() const noexcept { return !big_ && small_ == 1; }
  bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }
  int sign() const noexcept {
    if (big_) return big_->sign();
    return (small_ > 0) - (small_ < 0);
  }
  bool fits_int64() const noexcept { return !big_; }
  // Precondition: fits_int64().
  std::int64_t to_int64() const noexcept { return small_; }
  BigInt to_big() const { return big_ ? *big_ : BigInt(small_); }
  std::string to_string() const;

  Integer& operator+=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    assign_big(to_big() + o.to_big());
    return *this;
  }
  Integer& operator-=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    assign_big(to_big() - o.to_big());
    return *this;
  }
  Integer& operator*=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    assign_big(to_big() * o.to_big());
    return *this;
  }
  // Truncating division, like built-in integers. Divisor must be nonzero.
  Integer& operator/=(const Integer& o);
  Integer& operator%=(const Integer& o);

  // this -= q * o, the inner step of every elimination loop.
  void sub_mul(const Integer& q, const Integer& o) {
    std::int64_t p, r;
    if (!big_ && !q.big_ && !o.big_ && !__builtin_mul_overflow(q.small_, o.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
    assign_big(to_big() - q.to_big() * o.to_big());
  }
  void add_mul(const Integer& q, const Integer& o) {
    std::int64_t p, r;
    if (!big_ && !q.big_ && !o.big_ && !__builtin_mul_overflow(q.small_, o.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
    assign_big(to_big() + q.to_big() * o.to_big());
  }

  Integer operator-() const {
    if (!big_ && small_ != INT64_MIN) return Integer(-small_);
    return Integer(BigInt(-to_big()));
  }
  void negate() { *this = -*this; }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
  friend Integer operator%(Integer a, const Integer& b) { return a %= b; }

  friend int compare(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return (a.small_ > b.small_) - (a.small_ < b.small_);
    return a.to_big().compare(b.to_big()) < 0 ? -1 : (a.to_big() == b.to_big() ? 0 : 1);
  }
  friend bool operator==(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    return compare(a, b) == 0;
  }
  friend auto operator<=>(const Integer& a, const Integer& b) { return compare(a, b) <=> 0; }

  // |a| < |b|
  friend bool abs_less(const Integer& a, const Integer& b);

 private:
  void assign_big(const BigInt& v);

  std::int64_t small_ = 0;
  std::unique_ptr<BigInt> big_;
};

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
// Floor division and the matching nonnegative remainder (for b > 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

struct ExtendedGcd {
  Integer g;  // g = s*a + t*b, g >= 0
  Integer s;
  Integer t;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace norm1lat
