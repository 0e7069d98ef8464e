#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "bethe/rational.h"
#include "bethe/ring.h"
#include "bethe/series.h"

namespace bethe {

// Finite Laurent sum  sum c_{a,b} u^a v^b  with coefficients of type V.
template <class V>
struct Bivariate {
  std::map<std::pair<int, int>, V> terms;
};

// Bivariate Laurent polynomials in (u, v) over a base ring. Products drop
// every term with u-exponent below min_u or v-exponent below min_v; callers
// choose the bounds so that the exponents they inspect are exact.
template <CoefficientRing R>
class BivariateRing {
 public:
  using base_value = typename R::value_type;
  using value_type = Bivariate<base_value>;

  BivariateRing(const R& base, int min_u, int min_v) : base_(&base), min_u_(min_u), min_v_(min_v) {}

  const R& base() const { return *base_; }

  value_type zero() const { return {}; }
  value_type one() const { return constant(base_->one()); }
  value_type constant(const base_value& c) const { return monomial(0, 0, c); }
  value_type monomial(int a, int b, const base_value& c) const {
    value_type out;
    accumulate(out, {a, b}, c);
    return out;
  }
  // sum_r s_r u^{-r}.
  value_type from_u_series(const TruncatedSeries<base_value>& s) const { return from_series(s, true); }
  value_type from_v_series(const TruncatedSeries<base_value>& s) const { return from_series(s, false); }

  value_type add(const value_type& a, const value_type& b) const {
    value_type out = a;
    add_to(out, b);
    return out;
  }
  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }
  value_type neg(const value_type& a) const {
    value_type out = a;
    for (auto& [key, c] : out.terms) c = base_->neg(c);
    return out;
  }
  void add_to(value_type& acc, const value_type& b) const {
    for (const auto& [key, c] : b.terms) accumulate(acc, key, c);
  }
  value_type mul(const value_type& a, const value_type& b) const {
    value_type out;
    for (const auto& [ka, ca] : a.terms) {
      for (const auto& [kb, cb] : b.terms) {
        std::pair<int, int> key{ka.first + kb.first, ka.second + kb.second};
        if (key.first < min_u_ || key.second < min_v_) continue;
        accumulate(out, key, base_->mul(ca, cb));
      }
    }
    return out;
  }
  value_type scale(const Rational& q, const value_type& a) const {
    value_type out;
    for (const auto& [key, c] : a.terms) accumulate(out, key, base_->scale(q, c));
    return out;
  }
  bool is_zero(const value_type& a) const {
    for (const auto& [key, c] : a.terms) {
      if (!base_->is_zero(c)) return false;
    }
    return true;
  }
  base_value coefficient(const value_type& a, int eu, int ev) const {
    auto it = a.terms.find({eu, ev});
    return it == a.terms.end() ? base_->zero() : it->second;
  }

 private:
  value_type from_series(const TruncatedSeries<base_value>& s, bool in_u) const {
    value_type out;
    for (int r = 0; r <= s.trunc(); ++r) {
      accumulate(out, in_u ? std::pair<int, int>{-r, 0} : std::pair<int, int>{0, -r}, s.coeffs[r]);
    }
    return out;
  }
  void accumulate(value_type& acc, const std::pair<int, int>& key, const base_value& c) const {
    if (base_->is_zero(c)) return;
    auto [it, inserted] = acc.terms.try_emplace(key, c);
    if (!inserted) {
      base_->add_to(it->second, c);
      if (base_->is_zero(it->second)) acc.terms.erase(it);
    }
  }

  const R* base_;
  int min_u_;
  int min_v_;
};

}  // namespace bethe
