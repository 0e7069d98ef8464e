#include "bethe/rational.h"

#include <charconv>
#include <limits>
#include <ostream>

namespace bethe {

namespace {

using wide = __int128;

constexpr wide kMax = std::numeric_limits<std::int64_t>::max();
constexpr wide kMin = std::numeric_limits<std::int64_t>::min();

wide wide_abs(wide x) { return x < 0 ? -x : x; }

wide wide_gcd(wide a, wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  *this = from_wide(n, d);
}

Rational Rational::from_wide(wide n, wide d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    return Rational();
  }
  wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < kMin || d > kMax) {
    throw RationalOverflow("rational arithmetic overflowed int64");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text));
  }
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::inverse() const {
  if (num_ == 0) {
    throw std::domain_error("inverse of zero rational");
  }
  return from_wide(den_, num_);
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) {
    return inverse().pow(-exponent);
  }
  Rational result(1);
  Rational base = *this;
  while (exponent > 0) {
    if (exponent & 1) {
      result *= base;
    }
    exponent >>= 1;
    if (exponent > 0) {
      base *= base;
    }
  }
  return result;
}

Rational Rational::operator-() const { return from_wide(-static_cast<wide>(num_), den_); }

Rational& Rational::operator+=(const Rational& other) {
  if (den_ == 1 && other.den_ == 1) {
    *this = from_wide(static_cast<wide>(num_) + other.num_, 1);
    return *this;
  }
  wide n = static_cast<wide>(num_) * other.den_ + static_cast<wide>(other.num_) * den_;
  wide d = static_cast<wide>(den_) * other.den_;
  *this = from_wide(n, d);
  return *this;
}

Rational& Rational::operator-=(const Rational& other) { return *this += -other; }

Rational& Rational::operator*=(const Rational& other) {
  if (num_ == 0 || other.num_ == 0) {
    *this = Rational();
    return *this;
  }
  *this = from_wide(static_cast<wide>(num_) * other.num_, static_cast<wide>(den_) * other.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& other) { return *this *= other.inverse(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  wide lhs = static_cast<wide>(a.num_) * b.den_;
  wide rhs = static_cast<wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
  if (q.is_integer()) {
    return os << q.num();
  }
  return os << q.num() << '/' << q.den();
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0;
  }
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::int64_t factorial(int n) {
  std::int64_t result = 1;
  for (int i = 2; i <= n; ++i) {
    result *= i;
  }
  return result;
}

}  // namespace bethe
