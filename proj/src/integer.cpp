#include "norm1lat/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace norm1lat {

namespace {

const BigInt& int64_min_big() {
  static const BigInt v(std::numeric_limits<std::int64_t>::min());
  return v;
}
const BigInt& int64_max_big() {
  static const BigInt v(std::numeric_limits<std::int64_t>::max());
  return v;
}

}  // namespace

Integer::Integer(std::string_view decimal) {
  std::string s(decimal);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad integer literal: " + s);
  if (s[0] == '+') s.erase(0, 1);
  assign_big(BigInt(s));
}

void Integer::assign_big(const BigInt& v) {
  if (v >= int64_min_big() && v <= int64_max_big()) {
    small_ = static_cast<std::int64_t>(v);
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_unique<BigInt>(v);
  }
}

Integer& Integer::operator/=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("integer division by zero");
  if (!big_ && !o.big_ && !(small_ == INT64_MIN && o.small_ == -1)) {
    small_ /= o.small_;
    return *this;
  }
  assign_big(to_big() / o.to_big());
  return *this;
}

Integer& Integer::operator%=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("integer division by zero");
  if (!big_ && !o.big_) {
    small_ = (o.small_ == -1) ? 0 : small_ % o.small_;
    return *this;
  }
  assign_big(to_big() % o.to_big());
  return *this;
}

std::string Integer::to_string() const {
  if (!big_) return std::to_string(small_);
  return big_->str();
}

bool abs_less(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_ && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
    std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    return x < y;
  }
  return boost::multiprecision::abs(a.to_big()) < boost::multiprecision::abs(b.to_big());
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer gcd(const Integer& a, const Integer& b) {
  if (a.fits_int64() && b.fits_int64() && a.to_int64() != INT64_MIN &&
      b.to_int64() != INT64_MIN) {
    std::int64_t x = a.to_int64() < 0 ? -a.to_int64() : a.to_int64();
    std::int64_t y = b.to_int64() < 0 ? -b.to_int64() : b.to_int64();
    while (y != 0) {
      std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  return Integer(BigInt(boost::multiprecision::gcd(a.to_big(), b.to_big())));
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (!r.is_zero() && (r.sign() != b.sign())) q -= Integer(1);
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) { return a - floor_div(a, b) * b; }

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (!r.is_zero()) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r.sign() < 0) {
    old_r.negate();
    old_s.negate();
    old_t.negate();
  }
  return {old_r, old_s, old_t};
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

}  // namespace norm1lat
