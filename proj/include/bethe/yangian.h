#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bethe/algebra.h"
#include "bethe/linalg.h"
#include "bethe/report.h"
#include "bethe/series.h"
#include "bethe/tensor.h"
#include "bethe/zmatrix.h"

namespace bethe {

template <class V>
using SeriesMatrix = std::vector<std::vector<TruncatedSeries<V>>>;
template <class V>
using TensorSeries = TruncatedSeries<TensorElement<V>>;
using AlgSeries = TruncatedSeries<AlgebraElement>;

// Entry (a, b) (label positions) is delta_ab + sum_{r=1}^{D} T_ab^(r) u^{-r}.
SeriesMatrix<AlgebraElement> t_matrix(const Algebra& alg, int D);

// sum_{ab} E_ab (x) m_ab(u) as a one-site tensor series.
template <CoefficientRing R>
TensorSeries<typename R::value_type> to_tensor_series(const R& ring, const IndexSet& set,
                                                      const SeriesMatrix<typename R::value_type>& m) {
  const int N = set.size();
  const int D = m.at(0).at(0).trunc();
  TensorRing<R> tr(ring, set, 1);
  TensorSeries<typename R::value_type> out;
  out.coeffs.assign(D + 1, tr.zero());
  for (int r = 0; r <= D; ++r) {
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        const auto& c = m[a][b].coeffs.at(r);
        if (!ring.is_zero(c)) out.coeffs[r].entries.emplace(TensorKey(a, b), c);
      }
    }
  }
  return out;
}

// Entries re-expanded at the argument a u + b.
template <CoefficientRing R>
SeriesMatrix<typename R::value_type> substitute_matrix(const R& ring, const SeriesMatrix<typename R::value_type>& m,
                                                       const Rational& a, const Rational& b) {
  SeriesMatrix<typename R::value_type> out = m;
  for (auto& row : out) {
    for (auto& s : row) s = substitute_affine(ring, s, a, b);
  }
  return out;
}

// A multi-site tensor series x(a u + b) placed on the given sites of n.
template <CoefficientRing R>
TensorSeries<typename R::value_type> place_series(const R& ring, const TensorSeries<typename R::value_type>& x,
                                                  const std::vector<int>& sites, int n, const Rational& a,
                                                  const Rational& b) {
  const int src = x.coeffs.at(0).sites;
  TensorRing<R> small(ring, x.coeffs[0].index_set, src);
  auto shifted = substitute_affine(small, x, a, b);
  TensorSeries<typename R::value_type> out;
  for (const auto& c : shifted.coeffs) out.coeffs.push_back(embed_sites(c, sites, n));
  return out;
}

namespace detail {

struct PermutationPrefixes {
  // (g prefix, h prefix) -> sgn g sgn h * product of z over the tail, summed.
  std::map<std::pair<std::vector<int>, std::vector<int>>, Rational> weights;
};

PermutationPrefixes permutation_prefixes(const ZMatrix& z, int k);

}  // namespace detail

// B_k(u) from the double permutation sum
//   sum_{g,h} T_{g1 h1}(u-1) ... T_{gk hk}(u-k) z_{g(k+1) h(k+1)} ... z_{gN hN} sgn g sgn h / N!,
// m being the unshifted matrix of series.
template <CoefficientRing R>
TruncatedSeries<typename R::value_type> bethe_by_permutations(const R& ring,
                                                              const SeriesMatrix<typename R::value_type>& m,
                                                              int k, const ZMatrix& z) {
  const int N = z.index_set().size();
  if (k < 0 || k > N) throw std::invalid_argument("k must lie in 0..N");
  const int D = m.at(0).at(0).trunc();
  SeriesRing<R> sr(ring, D);
  std::vector<SeriesMatrix<typename R::value_type>> shifted;
  for (int s = 1; s <= k; ++s) shifted.push_back(substitute_matrix(ring, m, Rational(1), Rational(-s)));
  auto prefixes = detail::permutation_prefixes(z, k);
  auto out = sr.zero();
  const Rational inv = Rational(1, factorial(N));
  for (const auto& [key, w] : prefixes.weights) {
    auto term = sr.constant(ring_from_rational(ring, w * inv));
    for (int s = 0; s < k; ++s) term = sr.mul(term, shifted[s][key.first[s]][key.second[s]]);
    sr.add_to(out, term);
  }
  return out;
}

// B_k(u) = tr(H_N T_1(u-1) ... T_k(u-k) Z_{k+1} ... Z_N), t being the
// unshifted one-site tensor series.
template <CoefficientRing R>
TruncatedSeries<typename R::value_type> bethe_by_trace(const R& ring, const TensorSeries<typename R::value_type>& t,
                                                       int k, const ZMatrix& z) {
  const IndexSet& set = z.index_set();
  const int N = set.size();
  const int D = t.trunc();
  TensorRing<R> tr(ring, set, N);
  SeriesRing<TensorRing<R>> sr(tr, D);
  auto x = sr.one();
  for (int p = 1; p <= k; ++p) x = sr.mul(x, place_series(ring, t, {p}, N, Rational(1), Rational(-p)));
  RationalTensor tail = identity_tensor(set, N);
  for (int q = k + 1; q <= N; ++q) tail = tensor_mul(tail, embed(z.tensor(), {q}, N));
  const auto closing = tr.lift(tensor_mul(tail, antisymmetrizer(N, set)));
  auto out = series_zero(ring, D);
  for (int r = 0; r <= D; ++r) out.coeffs[r] = tr.trace(tr.mul(x.coeffs[r], closing));
  return out;
}

// tr_k(H_k X_k(u-k) ... X_1(u-1) Z_1 ... Z_k) for a one-site series x; the
// inverse-series generators when x is the inverse of T(u). k = 0 gives 1.
template <CoefficientRing R>
TruncatedSeries<typename R::value_type> hat_by_trace(const R& ring, const TensorSeries<typename R::value_type>& x,
                                                     int k, const ZMatrix& z) {
  const IndexSet& set = z.index_set();
  const int D = x.trunc();
  if (k == 0) return series_constant(ring, ring.one(), D);
  TensorRing<R> tr(ring, set, k);
  SeriesRing<TensorRing<R>> sr(tr, D);
  auto prod = sr.one();
  for (int p = k; p >= 1; --p) prod = sr.mul(prod, place_series(ring, x, {p}, k, Rational(1), Rational(-p)));
  RationalTensor tail = identity_tensor(set, k);
  for (int q = 1; q <= k; ++q) tail = tensor_mul(tail, embed(z.tensor(), {q}, k));
  const auto h = tr.lift(antisymmetrizer(k, set));
  const auto zt = tr.lift(tail);
  auto out = series_zero(ring, D);
  for (int r = 0; r <= D; ++r) out.coeffs[r] = tr.trace(tr.mul(tr.mul(h, prod.coeffs[r]), zt));
  return out;
}

// B_k(u) in the Yangian. The permutation sum is the result; the tensor-trace
// route is recomputed and any disagreement throws std::logic_error.
AlgSeries bethe_series(const Algebra& alg, int k, const ZMatrix& z, int D);
AlgSeries bethe_series_trace(const Algebra& alg, int k, const ZMatrix& z, int D);
// sum_g sgn g T_{g(1),1}(u-1) ... T_{g(N),N}(u-N).
AlgSeries quantum_determinant(const Algebra& alg, int D);
// Inverse-series generators; k = 0 gives 1.
AlgSeries hat_bethe_series(const Algebra& alg, int k, const ZMatrix& z, int D);

// R(u-v) T_1(u) T_2(v) = T_2(v) T_1(u) R(u-v), coefficientwise down to
// u^{-D} v^{-D}. Uses whatever rule alg carries.
Report verify_rtt(const Algebra& alg, int D);
// Fusion with the antisymmetrizer, membership of the ordered product in the
// subalgebra {X : H X = H X H}, and for k = N the collapse to H_N (x) B_N(u).
Report verify_fusion(const Algebra& alg, int k, int D);
// [coef_r B_N, T_ij^(s)] = 0 for 1 <= r <= D, 1 <= s <= max_level.
Report verify_centrality(const Algebra& alg, int D, int max_level);
// B_k(u) = B_N(u) Bhat_{N-k}(u-k) / binom(N,k) for k = 1..N. With H_k the
// idempotent antisymmetrizer the constant terms are e_{N-k}(z)/binom(N,k) on
// the left and e_{N-k}(z) on the right, which fixes the scalar.
Report verify_hat_identity(const Algebra& alg, const ZMatrix& z, int D);
// [coef_r B_k, coef_s B_l] = 0 for r, s >= 1 and r + s <= budget.
Report verify_bethe_commutativity(const Algebra& alg, const ZMatrix& z, int budget, int threads = 0);

// Graded image x_ij^(r) -> sum_ab G_ia x_ab^(r) (G^{-1})_bj of a symbol
// polynomial, i.e. the action of conjugation T(u) -> G T(u) G^{-1}.
Polynomial conjugate_symbol(const Polynomial& p, const IndexSet& set, const std::vector<std::vector<Rational>>& g);

}  // namespace bethe
