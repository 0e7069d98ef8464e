#pragma once

#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "bethe/rational.h"
#include "bethe/ring.h"

namespace bethe {

class SingularLeadingTerm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// sum_{s <= trunc} c_s u^{-s} + O(u^{-(trunc+1)}).
template <class V>
struct TruncatedSeries {
  std::vector<V> coeffs;

  int trunc() const { return static_cast<int>(coeffs.size()) - 1; }
  const V& operator[](int s) const { return coeffs.at(s); }
  V& operator[](int s) { return coeffs.at(s); }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;
};

template <CoefficientRing R>
TruncatedSeries<typename R::value_type> series_constant(const R& ring,
                                                        const typename R::value_type& c, int trunc) {
  TruncatedSeries<typename R::value_type> s;
  s.coeffs.assign(trunc + 1, ring.zero());
  s.coeffs[0] = c;
  return s;
}

template <CoefficientRing R>
TruncatedSeries<typename R::value_type> series_zero(const R& ring, int trunc) {
  return series_constant(ring, ring.zero(), trunc);
}

// Ring of truncated series over a base ring.
template <CoefficientRing R>
class SeriesRing {
 public:
  using base_value = typename R::value_type;
  using value_type = TruncatedSeries<base_value>;

  SeriesRing(const R& base, int trunc) : base_(&base), trunc_(trunc) {
    if (trunc < 0) throw std::invalid_argument("truncation order must be >= 0");
  }

  const R& base() const { return *base_; }
  int trunc() const { return trunc_; }

  value_type zero() const { return series_zero(*base_, trunc_); }
  value_type one() const { return series_constant(*base_, base_->one(), trunc_); }
  value_type constant(const base_value& c) const { return series_constant(*base_, c, trunc_); }

  value_type add(const value_type& a, const value_type& b) const {
    value_type out = a;
    add_to(out, b);
    return out;
  }
  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }
  value_type neg(const value_type& a) const {
    check(a);
    value_type out = a;
    for (auto& c : out.coeffs) c = base_->neg(c);
    return out;
  }
  void add_to(value_type& acc, const value_type& b) const {
    check(acc);
    check(b);
    for (int s = 0; s <= trunc_; ++s) base_->add_to(acc.coeffs[s], b.coeffs[s]);
  }
  value_type mul(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    value_type out = zero();
    for (int r = 0; r <= trunc_; ++r) {
      if (base_->is_zero(a.coeffs[r])) continue;
      for (int s = 0; r + s <= trunc_; ++s) {
        if (base_->is_zero(b.coeffs[s])) continue;
        base_->add_to(out.coeffs[r + s], base_->mul(a.coeffs[r], b.coeffs[s]));
      }
    }
    return out;
  }
  value_type scale(const Rational& q, const value_type& a) const {
    check(a);
    value_type out = a;
    for (auto& c : out.coeffs) c = base_->scale(q, c);
    return out;
  }
  bool is_zero(const value_type& a) const {
    for (const auto& c : a.coeffs) {
      if (!base_->is_zero(c)) return false;
    }
    return true;
  }
  // Multiplies every coefficient by a rational series.
  value_type scale_series(const TruncatedSeries<Rational>& f, const value_type& a) const {
    check(a);
    value_type out = zero();
    for (int r = 0; r <= trunc_; ++r) {
      if (f.coeffs.at(r).is_zero()) continue;
      for (int s = 0; r + s <= trunc_; ++s) {
        base_->add_to(out.coeffs[r + s], base_->scale(f.coeffs[r], a.coeffs[s]));
      }
    }
    return out;
  }

  value_type truncate(const value_type& a) const {
    if (a.trunc() < trunc_) throw std::invalid_argument("series truncated below ring order");
    value_type out;
    out.coeffs.assign(a.coeffs.begin(), a.coeffs.begin() + trunc_ + 1);
    return out;
  }

 private:
  void check(const value_type& a) const {
    if (a.trunc() != trunc_) throw std::invalid_argument("series truncation mismatch");
  }

  const R* base_;
  int trunc_;
};

// Coefficients of (a u + b)^{-r} expanded in u^{-1}: entry s is the
// coefficient of u^{-s}, for s <= trunc.
std::vector<Rational> affine_power_expansion(const Rational& a, const Rational& b, int r, int trunc);

// s(a u + b) re-expanded in u^{-1}.
template <CoefficientRing R>
TruncatedSeries<typename R::value_type> substitute_affine(const R& ring,
                                                          const TruncatedSeries<typename R::value_type>& s,
                                                          const Rational& a, const Rational& b) {
  if (a.is_zero()) throw std::invalid_argument("substitute_affine needs a != 0");
  const int D = s.trunc();
  auto out = series_zero(ring, D);
  out.coeffs[0] = s.coeffs[0];
  for (int r = 1; r <= D; ++r) {
    if (ring.is_zero(s.coeffs[r])) continue;
    auto e = affine_power_expansion(a, b, r, D);
    for (int t = r; t <= D; ++t) {
      if (!e[t].is_zero()) ring.add_to(out.coeffs[t], ring.scale(e[t], s.coeffs[r]));
    }
  }
  return out;
}

namespace detail {
template <class V>
bool leading_is_one(const V& c, const V& one) {
  return c == one;
}
}  // namespace detail

// Inverse series. Rational leading terms need only be nonzero; in any other
// ring the leading coefficient must equal the identity.
template <CoefficientRing R>
TruncatedSeries<typename R::value_type> invert(const R& ring,
                                               const TruncatedSeries<typename R::value_type>& s) {
  using V = typename R::value_type;
  const int D = s.trunc();
  auto out = series_zero(ring, D);
  Rational lead_inv(1);
  if constexpr (std::is_same_v<V, Rational>) {
    if (s.coeffs[0].is_zero()) throw SingularLeadingTerm("series with zero leading term");
    lead_inv = s.coeffs[0].inverse();
  } else {
    if (!detail::leading_is_one(s.coeffs[0], ring.one())) {
      throw SingularLeadingTerm("series leading coefficient is not the identity");
    }
  }
  out.coeffs[0] = ring.scale(lead_inv, ring.one());
  for (int t = 1; t <= D; ++t) {
    V acc = ring.zero();
    for (int r = 1; r <= t; ++r) {
      if (ring.is_zero(s.coeffs[r])) continue;
      ring.add_to(acc, ring.mul(s.coeffs[r], out.coeffs[t - r]));
    }
    out.coeffs[t] = ring.scale(-lead_inv, acc);
  }
  return out;
}

// Quotient of polynomials in u (ascending coefficient lists).
struct RationalFactor {
  std::vector<Rational> numerator;
  std::vector<Rational> denominator;

  static RationalFactor constant(const Rational& c) { return {{c}, {Rational(1)}}; }
};

int poly_degree(const std::vector<Rational>& p);

// Taylor expansion at u = infinity.
TruncatedSeries<Rational> expand_rational(const RationalFactor& f, int trunc);

// theta(u) = 1 + N/(1 - 2u) for symplectic, 1 for orthogonal.
RationalFactor theta_factor(int N, bool symplectic);

}  // namespace bethe
