#include "bethe/evalmap.h"
#include "bethe/yangian.h"
#include "doctest.h"
#include "support.h"

using namespace bethe;

namespace {

IndexSet sp2() { return IndexSet::signed_set(2, FormType::symplectic); }
IndexSet so3() { return IndexSet::signed_set(3, FormType::orthogonal); }

void require_passed(const Report& rep) {
  for (const auto& d : rep.details) {
    INFO(rep.check << ": " << d.item << " -> " << d.residual);
    CHECK(d.residual_zero);
  }
  CHECK(rep.passed());
}

RationalMatrix unit(int N, int a, int b) {
  RationalMatrix m(N, std::vector<Rational>(N));
  m[a][b] = Rational(1);
  return m;
}

}  // namespace

TEST_CASE("evaluation homomorphism pi") {
  const auto set = IndexSet::plain(2);
  Algebra y = Algebra::yangian(set);
  Algebra env = Algebra::enveloping(set);
  CHECK(pi_apply(env, y.generator(1, 2, 1)) == env.generator(1, 2));
  CHECK(pi_apply(env, y.generator(1, 2, 2)).is_zero());
  CHECK(pi_apply(env, y.one()) == env.one());
  CHECK_THROWS_AS(pi_apply(y, y.generator(1, 1, 1)), std::invalid_argument);

  SUBCASE("B_2 coefficient against the substituted quantum determinant") {
    // B_2(u) is the quantum determinant with arguments u-1, u-2, and
    // pi(T(u)) = 1 + E u^-1, so its image is
    // (1 + E11 (u-1)^-1)(1 + E22 (u-2)^-1) - E21 (u-1)^-1 E12 (u-2)^-1.
    // The u^-2 coefficient is E11 + 2 E22 + E11 E22 - E21 E12.
    ZMatrix z = ZMatrix::diagonal(set, {Rational(1), Rational(2)}, ZSymmetry::none);
    auto b = bethe_series(y, 2, z, 2);
    auto expected = env.generator(1, 1) + env.generator(2, 2) * Rational(2) +
                    env.mul(env.generator(1, 1), env.generator(2, 2)) -
                    env.mul(env.generator(2, 1), env.generator(1, 2));
    CHECK(pi_apply(env, b.coeffs[2]) == expected);
    CHECK(pi_apply(env, b.coeffs[1]) == env.generator(1, 1) + env.generator(2, 2));
  }
  SUBCASE("multiplicative on random products") {
    testing::Gen gen(5);
    const auto set3 = IndexSet::plain(3);
    Algebra y3 = Algebra::yangian(set3);
    Algebra env3 = Algebra::enveloping(set3);
    for (int trial = 0; trial < 30; ++trial) {
      auto a = y3.normal_order(gen.word(set3, 2, 2), gen.rational());
      auto b = y3.normal_order(gen.word(set3, 2, 2), gen.rational());
      CHECK(pi_apply(env3, y3.mul(a, b)) == env3.mul(pi_apply(env3, a), pi_apply(env3, b)));
    }
  }
  SUBCASE("commutator report") {
    require_passed(verify_pi_homomorphism(set, 3));
    require_passed(verify_pi_homomorphism(IndexSet::plain(3), 2));
  }
}

TEST_CASE("twisted evaluation homomorphism rho") {
  SUBCASE("generator images") {
    for (const auto& set : {sp2(), so3()}) {
      Algebra env = Algebra::enveloping(set);
      FreeSAlgebra f(set);
      const Rational half(set.form() == FormType::orthogonal ? -1 : 1, 2);
      for (int i : set.labels()) {
        for (int j : set.labels()) {
          auto F = env.generator(i, j) - env.generator(-j, -i) * Rational(set.epsilon(i, j));
          CHECK(f_generator(env, i, j) == F);
          CHECK(rho_apply(env, f.generator(i, j, 1)) == F);
          CHECK(rho_apply(env, f.generator(i, j, 2)) == F * half);
          CHECK(rho_apply(env, f.generator(i, j, 3)) == F * half * half);
        }
      }
    }
  }
  SUBCASE("sp_2 sign") {
    // (u - 1/2)^{-1} = u^-1 + (1/2) u^-2 + ...
    CHECK(rho_weight(sp2(), 2) == Rational(1, 2));
    CHECK(rho_weight(so3(), 2) == Rational(-1, 2));
    CHECK(rho_weight(so3(), 1) == Rational(1));
  }
  SUBCASE("rho kills the symmetry and reflection residuals") {
    require_passed(verify_rho_homomorphism(sp2(), 3));
    require_passed(verify_rho_homomorphism(so3(), 3));
  }
  SUBCASE("the opposite shift breaks the symmetry relation") {
    const auto set = sp2();
    Algebra env = Algebra::enveloping(set);
    // With the so shift the order-2 symmetry residual for sp_2 survives.
    FreeSAlgebra f(set);
    auto lhs = f_generator(env, 1, 1) * Rational(-1, 2) -
               f_generator(env, -1, -1) * Rational(-1, 2) * Rational(set.epsilon(1, 1)) -
               f_generator(env, 1, 1);
    CHECK_FALSE(lhs.is_zero());
  }
}

TEST_CASE("defining representation") {
  const auto set = IndexSet::plain(3);
  Algebra env = Algebra::enveloping(set);
  CHECK(defining_rep(env.one(), set) == RationalMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto p = AlgebraElement::from_monomial({GenIndex{1, 2, 1}, GenIndex{2, 1, 1}});
  CHECK(defining_rep(p, set) == unit(3, 0, 0));
  CHECK(defining_rep(env.mul(env.generator(1, 2), env.generator(2, 1)), set) == unit(3, 0, 0));
  AlgebraElement casimir;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) casimir += env.mul(env.generator(i, j), env.generator(j, i));
  }
  CHECK(defining_rep(casimir, set) == RationalMatrix{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}});
  SUBCASE("algebra map on random products") {
    testing::Gen gen(17);
    for (int trial = 0; trial < 30; ++trial) {
      auto a = env.normal_order(gen.word(set, 3, 1), gen.rational());
      auto b = env.normal_order(gen.word(set, 3, 1), gen.rational());
      CHECK(defining_rep(env.mul(a, b), set) == matrix_product(defining_rep(a, set), defining_rep(b, set)));
    }
  }
}

TEST_CASE("image commutativity") {
  SUBCASE("negative control") {
    const auto set = IndexSet::plain(2);
    Algebra env = Algebra::enveloping(set);
    auto rep = verify_image_commutativity(env, {{"E12", env.generator(1, 2)}, {"E21", env.generator(2, 1)}});
    CHECK_FALSE(rep.passed());
  }
  SUBCASE("pi of Bethe coefficients, N=3") {
    const auto set = IndexSet::plain(3);
    Algebra env = Algebra::enveloping(set);
    ZMatrix z = ZMatrix::diagonal(set, {Rational(1), Rational(2), Rational(3)}, ZSymmetry::none);
    auto images = pi_bethe_images(env, z, 3);
    CHECK(images.size() == 9);
    require_passed(verify_image_commutativity(env, images));
  }
  SUBCASE("rho of twisted Bethe coefficients") {
    Algebra env2 = Algebra::enveloping(sp2());
    require_passed(verify_image_commutativity(
        env2, rho_twisted_images(env2, ZMatrix::diagonal(sp2(), {Rational(-1)}, ZSymmetry::prime_skew), 3)));
    Algebra env3 = Algebra::enveloping(so3());
    require_passed(verify_image_commutativity(
        env3, rho_twisted_images(env3, ZMatrix::diagonal(so3(), {Rational(-1)}, ZSymmetry::prime_skew), 3)));
  }
}
