#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bethe {

// Thrown when an intermediate numerator or denominator leaves the int64 range.
class RationalOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Exact rational with int64 numerator and positive int64 denominator, always
// in lowest terms. Arithmetic goes through __int128 and throws on overflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  // Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }

  // Canonical "p/q" form, q > 0, also for integers ("3/1").
  std::string str() const;

  Rational inverse() const;
  Rational pow(int exponent) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

std::int64_t binomial(int n, int k);
std::int64_t factorial(int n);

}  // namespace bethe

template <>
struct std::hash<bethe::Rational> {
  std::size_t operator()(const bethe::Rational& q) const noexcept {
    return std::hash<std::int64_t>{}(q.num()) * 1000003u ^ std::hash<std::int64_t>{}(q.den());
  }
};
