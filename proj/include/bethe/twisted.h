#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bethe/algebra.h"
#include "bethe/report.h"
#include "bethe/series.h"
#include "bethe/tensor.h"
#include "bethe/yangian.h"
#include "bethe/zmatrix.h"

namespace bethe {

// Word in the free algebra on the symbols S_ij^(r), r >= 1.
using SWord = std::vector<GenIndex>;

// Rational combination of S-words; no rewriting, zero coefficients dropped.
class SElement {
 public:
  using map_type = std::map<SWord, Rational>;

  SElement() = default;
  static SElement scalar(const Rational& c);
  static SElement from_word(SWord w, const Rational& c = Rational(1));

  const map_type& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  void add_term(const SWord& w, const Rational& c);

  SElement& operator+=(const SElement& other);
  SElement& operator-=(const SElement& other);
  SElement& operator*=(const Rational& c);
  SElement operator-() const;
  friend SElement operator+(SElement a, const SElement& b) { return a += b; }
  friend SElement operator-(SElement a, const SElement& b) { return a -= b; }
  friend SElement operator*(SElement a, const Rational& c) { return a *= c; }
  friend SElement operator*(const Rational& c, SElement a) { return a *= c; }
  friend bool operator==(const SElement& a, const SElement& b) = default;

  std::string str() const;

 private:
  map_type terms_;
};

// Free associative algebra on the S-symbols of a signed index set; the
// product concatenates words.
class FreeSAlgebra {
 public:
  using value_type = SElement;

  explicit FreeSAlgebra(IndexSet set);
  const IndexSet& index_set() const { return set_; }

  // S_ij^(r); r = 0 gives delta_ij.
  SElement generator(int i, int j, int r) const;

  SElement zero() const { return {}; }
  SElement one() const { return SElement::scalar(Rational(1)); }
  SElement add(const SElement& a, const SElement& b) const { return a + b; }
  SElement sub(const SElement& a, const SElement& b) const { return a - b; }
  SElement neg(const SElement& a) const { return -a; }
  SElement mul(const SElement& a, const SElement& b) const;
  SElement scale(const Rational& q, const SElement& a) const { return a * q; }
  bool is_zero(const SElement& a) const { return a.is_zero(); }
  void add_to(SElement& acc, const SElement& a) const { acc += a; }

 private:
  IndexSet set_;
};

// Per-worker context for a twisted Yangian: owns the Yangian normal-ordering
// engine and the memo of S-word expansions. Not thread-safe.
class TwistedContext {
 public:
  explicit TwistedContext(IndexSet set);

  const IndexSet& index_set() const { return set_; }
  const Algebra& yangian() const { return yangian_; }
  const FreeSAlgebra& free() const { return free_; }
  // +1 for orthogonal, -1 for symplectic: the upper/lower choice of a double sign.
  int upper_sign() const { return set_.form() == FormType::orthogonal ? 1 : -1; }

  // S_ij^(r) = sum_k sum_{a+b=r} eps_kj (-1)^b T_ik^(a) T_{-j,-k}^(b) in Y(gl_N).
  const AlgebraElement& expand_generator(int i, int j, int r) const;
  AlgebraElement s_expand(const SElement& w) const;
  const AlgebraElement& expand_word(const SWord& w) const;

 private:
  IndexSet set_;
  Algebra yangian_;
  FreeSAlgebra free_;
  mutable std::map<GenIndex, AlgebraElement> generators_;
  mutable std::unordered_map<SWord, AlgebraElement, MonomialHash> words_;
};

// Entry (a, b) is delta_ab + sum_r S_ab^(r) u^{-r}.
SeriesMatrix<SElement> s_matrix(const FreeSAlgebra& free, int D);
// Same in Y(gl_N) through T(u) T~(-u), built from t_matrix.
SeriesMatrix<AlgebraElement> s_matrix_in_yangian(const Algebra& y, int D);

// Arrow semantics for the ordered products defining S(u,k), Z(u,k) and I(u):
// rightward keeps factors with larger indices on the right, leftward
// reverses both the outer and the inner product.

// S(u,k) with omega(u) folded into its R~ factors; k sites.
TensorSeries<SElement> fused_s(const FreeSAlgebra& free, int k, int D,
                               ArrowOrientation o = ArrowOrientation::rightward);
// Z(u + shift, k); requires a prime-symmetric or prime-skew Z. k = 0 gives
// the scalar 1 on zero sites.
TensorSeries<Rational> fused_z(const ZMatrix& z, int k, const Rational& shift, int D,
                               ArrowOrientation o = ArrowOrientation::rightward);
// I(u) on N sites linking the first k sites with the remaining ones.
TensorSeries<Rational> interaction(const IndexSet& set, int k, int D,
                                   ArrowOrientation o = ArrowOrientation::rightward);

// A_k(u) = tr(H_N S_{1..k}(u,k) I(u) Z_{k+1..N}(u + N/2 - k, N - k)).
TruncatedSeries<SElement> twisted_bethe_series(const FreeSAlgebra& free, int k, const ZMatrix& z, int D,
                                               ArrowOrientation o = ArrowOrientation::rightward);
// Ahat_k(u) = tr_k(H_k Shat(u,k) Z(u + N/2, k)); k = 0 gives 1.
TruncatedSeries<SElement> hat_twisted_series(const FreeSAlgebra& free, int k, const ZMatrix& z, int D,
                                             ArrowOrientation o = ArrowOrientation::rightward);
// tr_k(H_k Shat(u,k) Z_1 ... Z_k).
TruncatedSeries<SElement> hat_twisted_simplified(const FreeSAlgebra& free, int k, const ZMatrix& z, int D,
                                                 ArrowOrientation o = ArrowOrientation::rightward);

// Residual families as S-elements. Symmetry: one entry per (i, j, r) with
// r = 1..D. Reflection: per (i, j, k, l) and coefficient u^{-a} v^{-b} with
// -2 <= a, b <= D and a + b <= D.
struct SResidual {
  std::string item;
  SElement value;
};
std::vector<SResidual> symmetry_residuals(const FreeSAlgebra& free, int D);
std::vector<SResidual> reflection_residuals(const FreeSAlgebra& free, int D);

Report verify_symmetry(const TwistedContext& ctx, int D);
Report verify_reflection(const TwistedContext& ctx, int D);
// R(u-v) S_1(u) R~(-u-v) S_2(v) = S_2(v) R~(-u-v) S_1(u) R(u-v) in Y(gl_N).
Report verify_reflection_matrix(const TwistedContext& ctx, int D);
// T~_1(u) R~(u-v) T_2(v) = T_2(v) R~(u-v) T~_1(u) in Y(gl_N).
Report verify_mixed_rtt(const TwistedContext& ctx, int D);
// Membership of S(u,k) and Z(u,k) in the fused subalgebra, the Z exchange
// relation, for both arrow orientations.
Report verify_twisted_fusion(const TwistedContext& ctx, const ZMatrix& z, int D);
// A_N(u) theta(u) = B_N(u) B_N(N + 1 - u), and centrality of A_N.
Report verify_sklyanin(const TwistedContext& ctx, int D, int max_level);
// [coef_r A_k, coef_s A_l] = 0 after expansion, r + s <= budget.
Report verify_twisted_commutativity(const TwistedContext& ctx, const ZMatrix& z, int budget, int threads = 0);
// Ahat_k against the simplified trace form, and A_k against A_N Ahat_{N-k}(u-k).
// Scalar polynomial f(u) (ascending) with Z_1 R~(u) Z_2 H_2 = f(u) Z_1 Z_2 H_2,
// or nullopt when the left side is not such a multiple.
std::optional<std::vector<Rational>> two_site_exchange_factor(const ZMatrix& z);

Report verify_twisted_hat(const TwistedContext& ctx, const ZMatrix& z, int D);

// Arrow orientation certified for S(u,k): membership at k = 2 and the
// determinant identity; returns the names of the orientations that pass.
std::vector<std::string> certified_twisted_orientations(const TwistedContext& ctx, int D);

}  // namespace bethe
