#include "bethe/evalmap.h"
#include "bethe/poisson.h"
#include "doctest.h"
#include "support.h"

using namespace bethe;

namespace {

IndexSet sp2() { return IndexSet::signed_set(2, FormType::symplectic); }
IndexSet so3() { return IndexSet::signed_set(3, FormType::orthogonal); }
IndexSet so4() { return IndexSet::signed_set(4, FormType::orthogonal); }

ZMatrix z_sp2() { return ZMatrix::diagonal(sp2(), {Rational(-1)}, ZSymmetry::prime_skew); }
ZMatrix z_so3() { return ZMatrix::diagonal(so3(), {Rational(-1)}, ZSymmetry::prime_skew); }
ZMatrix z_so4() { return ZMatrix::diagonal(so4(), {Rational(1), Rational(2)}, ZSymmetry::prime_skew); }
ZMatrix z_plain(int N) {
  std::vector<Rational> v;
  for (int i = 1; i <= N; ++i) v.push_back(Rational(i));
  return ZMatrix::diagonal(IndexSet::plain(N), v, ZSymmetry::none);
}

Polynomial x(int i, int j, int r) { return Polynomial::variable(symbol_var(i, j, r)); }

void require_passed(const Report& rep) {
  for (const auto& d : rep.details) {
    INFO(rep.check << ": " << d.item << " -> " << d.residual);
    CHECK(d.residual_zero);
  }
  CHECK(rep.passed());
}

// Linear polynomial in level-1 coordinates mapped to U(gl_N) through a
// per-coordinate image.
template <typename F>
AlgebraElement linear_image(const Algebra& env, const Polynomial& p, F image) {
  AlgebraElement out;
  for (const auto& [m, c] : p.terms()) {
    REQUIRE(m.size() == 1);
    REQUIRE(m[0].second == 1);
    auto parts = split_symbol_var(m[0].first);
    out += image(parts.i, parts.j) * c;
  }
  return out;
}

}  // namespace

TEST_CASE("coordinate brackets") {
  for (int M : {1, 2, 3}) {
    auto ctx = PoissonContext::plain(IndexSet::plain(2), M);
    CHECK(ctx.bracket(x(1, 1, 1), x(1, 2, 1)) == x(1, 2, 1));
    CHECK(ctx.bracket(x(1, 2, 1), x(1, 2, 1)).is_zero());
    Polynomial f = x(1, 1, 1) * x(2, 1, M) + x(1, 2, 1);
    CHECK(ctx.bracket(f, f).is_zero());
  }

  SUBCASE("plain M = 1 is the Lie-Poisson bracket of gl_N") {
    const auto set = IndexSet::plain(3);
    auto ctx = PoissonContext::plain(set, 1);
    Algebra env = Algebra::enveloping(set);
    for (int i : set.labels()) {
      for (int j : set.labels()) {
        for (int k : set.labels()) {
          for (int l : set.labels()) {
            auto br = ctx.bracket(x(i, j, 1), x(k, l, 1));
            auto lhs = linear_image(env, br, [&](int a, int b) { return env.generator(a, b); });
            CHECK(lhs == env.commutator(env.generator(i, j), env.generator(k, l)));
          }
        }
      }
    }
  }

  SUBCASE("twisted M = 1 is the Lie-Poisson bracket of the fixed-point subalgebra") {
    for (const auto& set : {sp2(), so3(), so4()}) {
      auto ctx = PoissonContext::twisted(set, 1);
      Algebra env = Algebra::enveloping(set);
      for (VarId a : ctx.coordinates()) {
        for (VarId b : ctx.coordinates()) {
          auto p = split_symbol_var(a), q = split_symbol_var(b);
          auto br = ctx.coordinate_bracket(a, b);
          auto lhs = linear_image(env, br, [&](int i, int j) { return f_generator(env, i, j); });
          INFO(set.describe() << " " << var_name(a, 'y') << " " << var_name(b, 'y'));
          CHECK(lhs == env.commutator(f_generator(env, p.i, p.j), f_generator(env, q.i, q.j)));
        }
      }
    }
  }

  SUBCASE("reduction to the fundamental domain") {
    auto ctx = PoissonContext::twisted(sp2(), 2);
    // y_{i,-i}^(r) vanishes when eps_{i,-i} (-1)^r = -1.
    CHECK(ctx.variable(1, -1, 2).is_zero());
    CHECK_FALSE(ctx.variable(1, -1, 1).is_zero());
    CHECK(ctx.variable(1, 1, 3).is_zero());
    CHECK(ctx.variable(1, 1, 0) == Polynomial(Rational(1)));
    CHECK(ctx.variable(1, 1, 1) == -ctx.variable(-1, -1, 1));
    CHECK(ctx.variable(1, 1, 2) == ctx.variable(-1, -1, 2));
    CHECK(ctx.reduce(x(1, 1, 1) + x(-1, -1, 1)).is_zero());
    auto so = PoissonContext::twisted(so3(), 2);
    CHECK(so.variable(0, 0, 1).is_zero());
    CHECK_FALSE(so.variable(0, 0, 2).is_zero());
  }

  SUBCASE("coordinates outside the context are rejected") {
    auto ctx = PoissonContext::plain(IndexSet::plain(2), 1);
    CHECK_THROWS_AS(ctx.bracket(x(1, 1, 2), x(1, 1, 1)), std::invalid_argument);
    auto tw = PoissonContext::twisted(sp2(), 1);
    CHECK_THROWS_AS(tw.bracket(x(1, 1, 1), tw.variable(1, -1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(PoissonContext::twisted(IndexSet::plain(2), 1), std::invalid_argument);
  }
}

TEST_CASE("Jacobi identity on seeded triples") {
  for (int N : {2, 3}) {
    for (int M : {1, 2}) require_passed(verify_poisson_jacobi(PoissonContext::plain(IndexSet::plain(N), M), 11, 30));
  }
  for (const auto& set : {sp2(), so3()}) {
    for (int M : {1, 2}) require_passed(verify_poisson_jacobi(PoissonContext::twisted(set, M), 12, 30));
  }
  require_passed(verify_poisson_jacobi(PoissonContext::twisted(so4(), 2), 13, 30));
}

TEST_CASE("symbol map is a Poisson homomorphism") {
  for (int M : {2, 3}) require_passed(verify_symbol_homomorphism(2, M, 7, 50));
  require_passed(verify_symbol_homomorphism(3, 2, 8, 10));
}

TEST_CASE("Bethe polynomials") {
  SUBCASE("N = 2, M = 1 from the 2x2 determinant") {
    const auto set = IndexSet::plain(2);
    auto ctx = PoissonContext::plain(set, 1);
    const Rational z1(3), z2(5);
    auto z = ZMatrix::diagonal(set, {z1, z2}, ZSymmetry::none);
    auto b1 = bethe_poly(ctx, 1, z);
    REQUIRE(b1.size() == 2);
    CHECK(b1[0] == Polynomial((z1 + z2) / Rational(2)));
    CHECK(b1[1] == (x(1, 1, 1) * z2 + x(2, 2, 1) * z1) * Rational(1, 2));
    auto b2 = bethe_poly(ctx, 2, z);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0] == Polynomial(Rational(1)));
    CHECK(b2[1] == x(1, 1, 1) + x(2, 2, 1));
    CHECK(b2[2] == x(1, 1, 1) * x(2, 2, 1) - x(1, 2, 1) * x(2, 1, 1));
    CHECK_THROWS_AS(bethe_poly(ctx, 0, z), std::invalid_argument);
    CHECK_THROWS_AS(bethe_poly(ctx, 3, z), std::invalid_argument);
  }

  SUBCASE("three routes agree") {
    for (int N : {2, 3}) {
      for (int M : {1, 2}) require_passed(verify_laplace_consistency(PoissonContext::plain(IndexSet::plain(N), M), z_plain(N)));
    }
    for (int M : {1, 2, 3}) require_passed(verify_laplace_consistency(PoissonContext::twisted(sp2(), M), z_sp2()));
    for (int M : {1, 2}) require_passed(verify_laplace_consistency(PoissonContext::twisted(so3(), M), z_so3()));
  }

  SUBCASE("parity of twisted coefficients") {
    for (int M : {1, 2, 3}) require_passed(verify_twisted_parity(PoissonContext::twisted(sp2(), M), z_sp2()));
    for (int M : {1, 2, 3}) require_passed(verify_twisted_parity(PoissonContext::twisted(so3(), M), z_so3()));
    require_passed(verify_twisted_parity(PoissonContext::twisted(so4(), 2), z_so4()));
    // sp_2, k = 1: a_1^(r) survives only for odd r.
    auto a1 = bethe_poly(PoissonContext::twisted(sp2(), 3), 1, z_sp2());
    CHECK(a1[0].is_zero());
    CHECK_FALSE(a1[1].is_zero());
    CHECK(a1[2].is_zero());
    CHECK_FALSE(a1[3].is_zero());
  }

  SUBCASE("classical determinant coefficients") {
    const auto set = IndexSet::plain(1);
    auto ctx = PoissonContext::plain(set, 1);
    auto z = ZMatrix::diagonal(set, {Rational(7)}, ZSymmetry::none);
    auto c = classical_det_poly(ctx, z);
    REQUIRE(c.size() == 3);
    CHECK(c.at({1, 0}) == Polynomial(Rational(1)));
    CHECK(c.at({0, 0}) == x(1, 1, 1));
    CHECK(c.at({0, 1}) == Polynomial(Rational(7)));
    CHECK_THROWS_AS(classical_det_poly(PoissonContext::plain(set, 2), z), std::invalid_argument);
    auto sym = ZMatrix::diagonal(so4(), {Rational(1), Rational(2)}, ZSymmetry::prime_symmetric);
    CHECK_THROWS_AS(classical_det_poly(PoissonContext::twisted(so4(), 1), sym), std::invalid_argument);
  }
}

TEST_CASE("involution and centrality") {
  for (int N : {2, 3}) {
    for (int M : {1, 2}) require_passed(verify_poisson_involution(PoissonContext::plain(IndexSet::plain(N), M), z_plain(N)));
  }
  for (int M : {1, 3}) {
    require_passed(verify_poisson_involution(PoissonContext::twisted(sp2(), M), z_sp2()));
    require_passed(verify_poisson_involution(PoissonContext::twisted(so3(), M), z_so3()));
  }
  require_passed(verify_poisson_involution(PoissonContext::twisted(so4(), 2), z_so4()));
}

TEST_CASE("principal nilpotents") {
  auto entry = [](const RationalMatrix& e, const IndexSet& set, int i, int j) {
    return e[set.position(i)][set.position(j)];
  };
  auto count = [](const RationalMatrix& e) {
    int c = 0;
    for (const auto& row : e) {
      for (const auto& q : row) c += q.is_zero() ? 0 : 1;
    }
    return c;
  };
  {
    const auto set = IndexSet::plain(3);
    auto e = principal_nilpotent(set);
    CHECK(entry(e, set, 2, 1) == Rational(1));
    CHECK(entry(e, set, 3, 2) == Rational(1));
    CHECK(count(e) == 2);
  }
  {
    const auto set = sp2();
    auto e = principal_nilpotent(set);
    CHECK(entry(e, set, 1, -1) == Rational(1));
    CHECK(count(e) == 1);
  }
  {
    const auto set = so3();
    auto e = principal_nilpotent(set);
    CHECK(entry(e, set, 1, 0) == Rational(1));
    CHECK(entry(e, set, 0, -1) == Rational(-1));
    CHECK(count(e) == 2);
  }
  {
    const auto set = so4();
    auto e = principal_nilpotent(set, NilpotentVariant::classical_so_even);
    CHECK(entry(e, set, 2, 1) == Rational(1));
    CHECK(entry(e, set, -1, -2) == Rational(-1));
    CHECK(entry(e, set, 2, -1) == Rational(1));
    CHECK(entry(e, set, 1, -2) == Rational(-1));
    CHECK(count(e) == 4);
  }
  CHECK_THROWS_AS(principal_nilpotent(sp2(), NilpotentVariant::classical_so_even), std::invalid_argument);
  CHECK_THROWS_AS(principal_nilpotent(IndexSet::plain(2), NilpotentVariant::classical_so_even), std::invalid_argument);
  // Even M puts E at a level where so_3 coordinates are symmetric.
  CHECK_THROWS_AS(nilpotent_point(PoissonContext::twisted(so3(), 2), principal_nilpotent(so3())),
                  std::invalid_argument);
}

TEST_CASE("slices and restriction") {
  const auto set = IndexSet::plain(3);
  for (int M : {1, 2}) {
    auto ctx = PoissonContext::plain(set, M);
    auto s = make_slice(ctx, principal_nilpotent(set));
    CHECK(static_cast<int>(s.free.size()) == dim_t_slice(3, M));
    CHECK(restrict_to_slice(x(1, 2, 1), s) == x(1, 2, 1));
    CHECK(restrict_to_slice(x(2, 1, M), s) == Polynomial(Rational(1)));
    for (int r = 1; r <= M; ++r) CHECK(restrict_to_slice(x(3, 1, r), s).is_zero());
    if (M == 2) CHECK(restrict_to_slice(x(2, 1, 1), s).is_zero());
    CHECK_THROWS_AS(restrict_to_slice(x(1, 2, M + 1), s), std::invalid_argument);
  }
  RationalMatrix upper(3, std::vector<Rational>(3));
  upper[0][1] = Rational(1);
  CHECK_THROWS_AS(make_slice(PoissonContext::plain(set, 1), upper), std::invalid_argument);
}

TEST_CASE("ranks") {
  CHECK(exact_rank({}) == 0);
  CHECK(exact_rank({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
  CHECK(exact_rank({{Rational(1, 2), Rational(1, 3)}, {Rational(1, 3), Rational(1, 4)}}) == 2);
  CHECK(jacobian_rank({Polynomial(Rational(3))}, {symbol_var(1, 1, 1)}, {}) == 0);
  {
    auto ctx = PoissonContext::plain(IndexSet::plain(2), 2);
    CHECK(poisson_rank_at(ctx, {}) == 0);
  }

  SUBCASE("rank against an independent elimination") {
    testing::Gen gen(5);
    for (int t = 0; t < 20; ++t) {
      RationalMatrix m(4, std::vector<Rational>(5));
      for (auto& row : m) {
        for (auto& q : row) q = gen.rational(3);
      }
      // Row 3 depends on rows 0 and 1 half the time.
      if (t % 2 == 0) {
        for (int c = 0; c < 5; ++c) m[3][c] = m[0][c] * Rational(2) - m[1][c];
      }
      // Oracle: Gaussian elimination over the rationals.
      RationalMatrix a = m;
      int rank = 0;
      for (int c = 0; c < 5 && rank < 4; ++c) {
        int p = rank;
        while (p < 4 && a[p][c].is_zero()) ++p;
        if (p == 4) continue;
        std::swap(a[p], a[rank]);
        for (int i = 0; i < 4; ++i) {
          if (i == rank || a[i][c].is_zero()) continue;
          const Rational f = a[i][c] / a[rank][c];
          for (int j = 0; j < 5; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
      }
      CHECK(exact_rank(m) == rank);
    }
  }

  SUBCASE("plain Jacobian and Poisson ranks") {
    for (auto [N, M] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
      auto ctx = PoissonContext::plain(IndexSet::plain(N), M);
      auto jac = verify_jacobian(ctx, z_plain(N), 1);
      require_passed(jac);
      CHECK(jac.params["certificate"]["achieved_rank"] == M * N * (N + 1) / 2);
      auto pr = verify_poisson_rank(ctx, 2, 3);
      require_passed(pr);
      CHECK(pr.params["rank_at_E"] == M * (N * N - N));
    }
    CHECK(plain_rank_bound(2, 2) == 4);
    CHECK(dim_t_slice(2, 1) == 3);
  }

  SUBCASE("twisted dimension tables") {
    CHECK(twisted_slice_dim(sp2(), 1) == 2);
    CHECK(twisted_slice_dim(so3(), 1) == 2);
    CHECK(twisted_slice_dim(so3(), 3) == 8);
    CHECK(twisted_slice_dim(sp2(), 3) == 5);
    CHECK(twisted_slice_dim(so4(), 2) == 10);
    CHECK(twisted_half_rank(so4(), 2) == 6);
    CHECK_THROWS_AS(twisted_slice_dim(so4(), 1), std::invalid_argument);
    CHECK_THROWS_AS(twisted_slice_dim(sp2(), 2), std::invalid_argument);
    // dim f = dim s + D for every table entry.
    for (int M : {1, 3, 5}) {
      for (const auto& set : {sp2(), so3(), IndexSet::signed_set(4, FormType::symplectic),
                              IndexSet::signed_set(5, FormType::orthogonal)}) {
        CHECK(twisted_space_dim(set, M) == twisted_slice_dim(set, M) + twisted_half_rank(set, M));
      }
    }
    for (int M : {2, 4}) CHECK(twisted_space_dim(so4(), M) == twisted_slice_dim(so4(), M) + twisted_half_rank(so4(), M));
  }

  SUBCASE("twisted Jacobian and Poisson ranks") {
    for (int M : {1, 3}) {
      require_passed(verify_jacobian(PoissonContext::twisted(sp2(), M), z_sp2(), 1));
      require_passed(verify_jacobian(PoissonContext::twisted(so3(), M), z_so3(), 1));
      require_passed(verify_poisson_rank(PoissonContext::twisted(sp2(), M), 1, 3));
      require_passed(verify_poisson_rank(PoissonContext::twisted(so3(), M), 1, 3));
    }
    require_passed(verify_jacobian(PoissonContext::twisted(so4(), 2), z_so4(), 1));
    auto pr = verify_poisson_rank(PoissonContext::twisted(so4(), 2), 1, 3);
    require_passed(pr);
    CHECK(pr.params["rank_at_E"] == 12);
  }

  SUBCASE("classical so_4") {
    auto rep = verify_classical_so_even(2, z_so4(), 3);
    require_passed(rep);
    CHECK(rep.params["certificate"]["achieved_rank"] == 4);
  }

  SUBCASE("certificates are reproducible") {
    auto ctx = PoissonContext::plain(IndexSet::plain(3), 2);
    CHECK(verify_jacobian(ctx, z_plain(3), 9).to_json(true) == verify_jacobian(ctx, z_plain(3), 9).to_json(true));
    auto s = make_slice(ctx, principal_nilpotent(IndexSet::plain(3)));
    CHECK(random_slice_point(s, 4) == random_slice_point(s, 4));
    CHECK(random_slice_point(s, 4) != random_slice_point(s, 5));
  }
}
