#include "bethe/bivariate.h"
#include "bethe/identities.h"
#include "bethe/tensor.h"
#include "doctest.h"
#include "support.h"

using namespace bethe;

namespace {

const RationalRing kQ;
using RT = TensorRing<RationalRing>;
using Bi = BivariateRing<RT>;

// a u + b v + c for tensor coefficients (a, b scalars times identity).
Bi::value_type affine(const Bi& bi, const RT& rt, const Rational& a, const Rational& b, const RationalTensor& c) {
  auto out = bi.monomial(1, 0, rt.scale(a, rt.one()));
  bi.add_to(out, bi.monomial(0, 1, rt.scale(b, rt.one())));
  bi.add_to(out, bi.monomial(0, 0, c));
  return out;
}

RationalTensor minus_embedded(const RationalTensor& x, std::vector<int> sites, int n) {
  return tensor_scale(Rational(-1), embed(x, sites, n));
}

std::vector<IndexSet> signed_sets() {
  return {IndexSet::signed_set(2, FormType::symplectic), IndexSet::signed_set(3, FormType::orthogonal),
          IndexSet::signed_set(4, FormType::orthogonal), IndexSet::signed_set(4, FormType::symplectic)};
}

}  // namespace

TEST_CASE("Yang R-matrix") {
  SUBCASE("N=1 is the scalar u - 1") {
    auto set = IndexSet::plain(1);
    auto r = yang_r(set);
    REQUIRE(r.coeffs.size() == 2);
    CHECK(r.coeffs[1] == identity_tensor(set, 2));
    CHECK(r.coeffs[0] == tensor_scale(Rational(-1), identity_tensor(set, 2)));
  }
  SUBCASE("unitarity R(u) R(-u) = 1 - u^2") {
    for (int N : {2, 3}) {
      auto set = IndexSet::plain(N);
      auto lhs = upoly_mul(yang_r(set), upoly_substitute(yang_r(set), Rational(-1), Rational(0)));
      CHECK(lhs == upoly_scalar(set, 2, {Rational(1), Rational(0), Rational(-1)}));
    }
  }
  SUBCASE("flip entries") {
    auto set = IndexSet::plain(2);
    TensorCodec codec(set, 2);
    auto p = flip(set);
    CHECK(p.entries.size() == 4);
    for (int a : {1, 2}) {
      for (int b : {1, 2}) CHECK(p.entries.at({codec.encode({b, a}), codec.encode({a, b})}) == Rational(1));
    }
  }
}

TEST_CASE("twisted R-matrix") {
  CHECK_THROWS_AS(r_tilde(IndexSet::plain(2)), std::invalid_argument);
  for (const auto& set : signed_sets()) {
    const int N = set.size();
    auto lhs = upoly_mul(r_tilde(set), upoly_substitute(r_tilde(set), Rational(-1), Rational(N)));
    CHECK(lhs == upoly_scalar(set, 2, {Rational(0), Rational(N), Rational(-1)}));
    // Q e_a (x) e_b vanishes unless b = -a.
    TensorCodec codec(set, 2);
    for (const auto& [key, c] : prime_flip(set).entries) {
      auto col = codec.decode(key.second);
      CHECK(col[1] == -col[0]);
    }
  }
}

TEST_CASE("antisymmetrizer") {
  auto set3 = IndexSet::plain(3);
  CHECK(antisymmetrizer(1, set3) == identity_tensor(set3, 1));
  auto set2 = IndexSet::plain(2);
  auto h2 = tensor_scale(Rational(1, 2), tensor_add(identity_tensor(set2, 2), tensor_scale(Rational(-1), flip(set2))));
  CHECK(antisymmetrizer(2, set2) == h2);
  CHECK(tensor_trace(antisymmetrizer(2, set3)) == Rational(3));
  for (int N = 1; N <= 4; ++N) {
    auto set = IndexSet::plain(N);
    for (int k = 1; k <= N; ++k) {
      auto res = antisymmetrizer_certified(k, set);
      CHECK(tensor_trace(res.h) == Rational(binomial(N, k)));
      CHECK(tensor_mul(res.h, res.h) == res.h);
      CHECK((res.leftward_matches || res.rightward_matches));
      CHECK(in_fused_subalgebra(res.h));
    }
    CHECK(tensor_trace(antisymmetrizer(N, set)) == Rational(1));
  }
  // Beyond N the projector onto the k-th exterior power is zero.
  auto h3 = antisymmetrizer(3, set2);
  CHECK(h3.entries.empty());
}

TEST_CASE("embedding") {
  auto set = IndexSet::plain(2);
  CHECK(embed(identity_tensor(set, 1), {2}, 3) == identity_tensor(set, 3));
  auto e = embed(matrix_unit(set, 1, 2), {2}, 2);
  TensorCodec codec(set, 2);
  CHECK(e.entries.size() == 2);
  for (int a : {1, 2}) CHECK(e.entries.at({codec.encode({a, 1}), codec.encode({a, 2})}) == Rational(1));
  auto p13 = embed(flip(set), {1, 3}, 3);
  CHECK(tensor_mul(p13, p13) == identity_tensor(set, 3));
  CHECK_THROWS_AS(embed(flip(set), {1, 4}, 3), std::invalid_argument);
  CHECK_THROWS_AS(embed(flip(set), {2, 1}, 3), std::invalid_argument);

  bethe::testing::Gen gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    RationalTensor x{2, set, {}}, y{2, set, {}};
    for (int k = 0; k < 6; ++k) {
      x.entries[{static_cast<std::uint32_t>(gen.integer(0, 3)), static_cast<std::uint32_t>(gen.integer(0, 3))}] =
          Rational(gen.integer(1, 4));
      y.entries[{static_cast<std::uint32_t>(gen.integer(0, 3)), static_cast<std::uint32_t>(gen.integer(0, 3))}] =
          Rational(gen.integer(1, 4));
    }
    CHECK(embed(tensor_mul(x, y), {1, 3}, 3) == tensor_mul(embed(x, {1, 3}, 3), embed(y, {1, 3}, 3)));
    CHECK(tensor_trace(embed(x, {2, 3}, 3)) == Rational(2) * tensor_trace(x));
  }
}

TEST_CASE("traces") {
  for (int N = 1; N <= 3; ++N) {
    auto set = IndexSet::plain(N);
    CHECK(tensor_trace(identity_tensor(set, 2)) == Rational(N * N));
    for (int i = 1; i <= N; ++i) {
      for (int j = 1; j <= N; ++j) CHECK(tensor_trace(matrix_unit(set, i, j)) == Rational(i == j ? 1 : 0));
    }
  }
}

TEST_CASE("prime transposition on a site") {
  auto so4 = IndexSet::signed_set(4, FormType::orthogonal);
  CHECK(site_prime(matrix_unit(so4, 1, 2), 1) == matrix_unit(so4, -2, -1));
  auto sp2 = IndexSet::signed_set(2, FormType::symplectic);
  CHECK(site_prime(matrix_unit(sp2, 1, -1), 1) == tensor_scale(Rational(-1), matrix_unit(sp2, 1, -1)));
  CHECK_THROWS_AS(site_prime(matrix_unit(IndexSet::plain(2), 1, 2), 1), std::invalid_argument);
  for (const auto& set : signed_sets()) {
    auto q = prime_flip(set);
    CHECK(site_prime(site_prime(q, 2), 2) == q);
    // Q is the flip primed on one site, and priming either site agrees.
    CHECK(site_prime(flip(set), 1) == q);
    CHECK(site_prime(flip(set), 2) == q);
  }
}

TEST_CASE("Yang-Baxter equation") {
  for (int N = 1; N <= 3; ++N) {
    auto set = IndexSet::plain(N);
    RT rt(kQ, set, 3);
    Bi bi(rt, -100, -100);
    const auto p = flip(set);
    auto r12 = affine(bi, rt, 1, 0, minus_embedded(p, {1, 2}, 3));
    auto r13 = affine(bi, rt, 1, 1, minus_embedded(p, {1, 3}, 3));
    auto r23 = affine(bi, rt, 0, 1, minus_embedded(p, {2, 3}, 3));
    CHECK(bi.is_zero(bi.sub(bi.mul(bi.mul(r12, r13), r23), bi.mul(bi.mul(r23, r13), r12))));
  }
}

TEST_CASE("mixed Yang-Baxter relations") {
  for (const auto& set : {IndexSet::signed_set(3, FormType::orthogonal), IndexSet::signed_set(2, FormType::symplectic)}) {
    RT rt(kQ, set, 3);
    Bi bi(rt, -100, -100);
    const auto p = flip(set);
    const auto q = prime_flip(set);
    auto R = [&](std::vector<int> s) { return affine(bi, rt, 1, 0, minus_embedded(p, s, 3)); };
    auto Rt_v = [&](std::vector<int> s) { return affine(bi, rt, 0, 1, minus_embedded(q, s, 3)); };
    auto Rt_uv = [&](std::vector<int> s) { return affine(bi, rt, 1, 1, minus_embedded(q, s, 3)); };
    auto check = [&](const Bi::value_type& a, const Bi::value_type& b, const Bi::value_type& c) {
      return bi.is_zero(bi.sub(bi.mul(bi.mul(a, b), c), bi.mul(bi.mul(c, b), a)));
    };
    CHECK(check(R({1, 2}), Rt_v({1, 3}), Rt_uv({2, 3})));
    CHECK(check(R({1, 3}), Rt_v({1, 2}), Rt_uv({2, 3})));
    CHECK(check(R({2, 3}), Rt_v({1, 2}), Rt_uv({1, 3})));
  }
}

TEST_CASE("fused subalgebra predicate") {
  auto set = IndexSet::plain(2);
  CHECK(in_fused_subalgebra(identity_tensor(set, 2)));
  CHECK(in_fused_subalgebra(flip(set)));
  // E_11 (x) E_22 is not of the required form.
  CHECK_FALSE(in_fused_subalgebra(tensor_mul(embed(matrix_unit(set, 1, 1), {1}, 2), embed(matrix_unit(set, 2, 2), {2}, 2))));
}

TEST_CASE("identity reports") {
  auto r = verify_r_identities({IndexSet::plain(2), IndexSet::signed_set(3, FormType::orthogonal)});
  CHECK(r.passed());
  CHECK(r.details.size() == 3);
  auto y = verify_yang_baxter({IndexSet::plain(2), IndexSet::signed_set(2, FormType::symplectic)});
  CHECK(y.passed());
  CHECK(y.details.size() == 5);
  auto h = verify_antisymmetrizers(3);
  CHECK(h.passed());
  CHECK(h.details.size() == 18);
  CHECK(h.conventions.count("h_k_orientation") == 1);
}
