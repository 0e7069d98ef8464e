#pragma once

#include <concepts>

#include "bethe/rational.h"

namespace bethe {

// Minimal coefficient-ring interface shared by series and tensors.
template <class R>
concept CoefficientRing = requires(const R& ring, typename R::value_type& acc,
                                   const typename R::value_type& a, const Rational& q) {
  { ring.zero() } -> std::convertible_to<typename R::value_type>;
  { ring.one() } -> std::convertible_to<typename R::value_type>;
  { ring.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.sub(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.neg(a) } -> std::convertible_to<typename R::value_type>;
  { ring.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { ring.scale(q, a) } -> std::convertible_to<typename R::value_type>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
  ring.add_to(acc, a);
};

struct RationalRing {
  using value_type = Rational;

  Rational zero() const { return Rational(); }
  Rational one() const { return Rational(1); }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational scale(const Rational& q, const Rational& a) const { return q * a; }
  bool is_zero(const Rational& a) const { return a.is_zero(); }
  void add_to(Rational& acc, const Rational& a) const { acc += a; }
};

template <CoefficientRing R>
typename R::value_type ring_from_rational(const R& ring, const Rational& q) {
  return ring.scale(q, ring.one());
}

}  // namespace bethe
