#pragma once

#include <random>
#include <vector>

#include "bethe/algebra.h"
#include "bethe/rational.h"
#include "bethe/series.h"

namespace bethe::testing {

// Deterministic generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Rational rational(int bound = 5) {
    int den = integer(1, 3);
    return Rational(integer(-bound, bound), den);
  }
  GenIndex generator(const IndexSet& set, int max_level) {
    const auto& labels = set.labels();
    return {labels[integer(0, static_cast<int>(labels.size()) - 1)],
            labels[integer(0, static_cast<int>(labels.size()) - 1)], integer(1, max_level)};
  }
  Monomial word(const IndexSet& set, int max_len, int max_level) {
    Monomial w;
    const int len = integer(1, max_len);
    for (int i = 0; i < len; ++i) w.push_back(generator(set, max_level));
    return w;
  }
  TruncatedSeries<Rational> series(int D, bool unit_lead = false) {
    TruncatedSeries<Rational> s;
    for (int r = 0; r <= D; ++r) s.coeffs.push_back(rational());
    if (unit_lead) s.coeffs[0] = Rational(1);
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

inline TruncatedSeries<Rational> rseries(std::vector<Rational> c) { return TruncatedSeries<Rational>{std::move(c)}; }

}  // namespace bethe::testing
