#include "bethe/series.h"

namespace bethe {

std::vector<Rational> affine_power_expansion(const Rational& a, const Rational& b, int r, int trunc) {
  std::vector<Rational> out(trunc + 1);
  if (r == 0) {
    out[0] = Rational(1);
    return out;
  }
  // (a u + b)^{-r} = a^{-r} u^{-r} sum_m C(-r, m) (b/a)^m u^{-m},
  // C(-r, m) = (-1)^m C(r+m-1, m).
  const Rational lead = a.pow(-r);
  const Rational ratio = b / a;
  Rational power(1);
  for (int m = 0; r + m <= trunc; ++m) {
    Rational c = lead * power * Rational(binomial(r + m - 1, m));
    out[r + m] = (m % 2 == 0) ? c : -c;
    power *= ratio;
  }
  return out;
}

int poly_degree(const std::vector<Rational>& p) {
  for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d) {
    if (!p[d].is_zero()) return d;
  }
  return -1;
}

TruncatedSeries<Rational> expand_rational(const RationalFactor& f, int trunc) {
  const int dn = poly_degree(f.numerator);
  const int dd = poly_degree(f.denominator);
  if (dd < 0) throw std::invalid_argument("rational factor with zero denominator");
  if (dn > dd) throw std::invalid_argument("rational factor not expandable at infinity");

  // With w = 1/u: f = n(w) / d(w), n_k = numerator[dd - k], d_k = denominator[dd - k].
  auto in_w = [dd](const std::vector<Rational>& p, int k) {
    int idx = dd - k;
    if (idx < 0 || idx >= static_cast<int>(p.size())) return Rational();
    return p[idx];
  };
  const Rational d0_inv = in_w(f.denominator, 0).inverse();
  TruncatedSeries<Rational> out;
  out.coeffs.assign(trunc + 1, Rational());
  for (int s = 0; s <= trunc; ++s) {
    Rational acc = in_w(f.numerator, s);
    for (int k = 1; k <= std::min(s, dd); ++k) acc -= in_w(f.denominator, k) * out.coeffs[s - k];
    out.coeffs[s] = acc * d0_inv;
  }
  return out;
}

RationalFactor theta_factor(int N, bool symplectic) {
  if (!symplectic) return RationalFactor::constant(Rational(1));
  // 1 + N/(1 - 2u) = (N + 1 - 2u) / (1 - 2u).
  return {{Rational(N + 1), Rational(-2)}, {Rational(1), Rational(-2)}};
}

}  // namespace bethe
