#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bethe/index_set.h"
#include "bethe/rational.h"
#include "bethe/ring.h"

namespace bethe {

// Multi-indices are packed as base-N digit strings of label positions, site 1
// being the most significant digit.
class TensorCodec {
 public:
  TensorCodec(const IndexSet& set, int sites);

  int base() const { return base_; }
  int sites() const { return sites_; }
  std::uint32_t volume() const { return volume_; }

  std::uint32_t encode(const std::vector<int>& labels) const;
  std::vector<int> decode(std::uint32_t code) const;
  // Position digit of a site (1-based) inside a code.
  int digit(std::uint32_t code, int site) const;
  std::uint32_t with_digit(std::uint32_t code, int site, int pos) const;

 private:
  const IndexSet* set_;
  int base_;
  int sites_;
  std::uint32_t volume_;
  std::vector<std::uint32_t> weights_;
};

using TensorKey = std::pair<std::uint32_t, std::uint32_t>;

// Sparse element of End(C^N)^{(x) sites} with coefficients of type V.
// Entry ((a),(b)) is the coefficient of E_{a1 b1} (x) ... (x) E_{an bn}.
template <class V>
struct TensorElement {
  int sites = 0;
  IndexSet index_set;
  std::map<TensorKey, V> entries;

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.sites == b.sites && a.index_set == b.index_set && a.entries == b.entries;
  }
};

using RationalTensor = TensorElement<Rational>;

template <CoefficientRing R>
class TensorRing {
 public:
  using base_value = typename R::value_type;
  using value_type = TensorElement<base_value>;

  TensorRing(const R& base, IndexSet set, int sites) : base_(&base), set_(std::move(set)), sites_(sites) {
    if (sites < 0) throw std::invalid_argument("negative site count");
  }

  const R& base() const { return *base_; }
  const IndexSet& index_set() const { return set_; }
  int sites() const { return sites_; }

  value_type zero() const { return value_type{sites_, set_, {}}; }
  value_type one() const { return scalar(base_->one()); }
  value_type scalar(const base_value& c) const {
    value_type out = zero();
    if (base_->is_zero(c)) return out;
    TensorCodec codec(set_, sites_);
    for (std::uint32_t d = 0; d < codec.volume(); ++d) out.entries.emplace(TensorKey{d, d}, c);
    return out;
  }
  // Embeds a rational tensor with scalar entries.
  value_type lift(const RationalTensor& x) const {
    check_shape(x.sites, x.index_set);
    value_type out = zero();
    const base_value one = base_->one();
    for (const auto& [key, c] : x.entries) out.entries.emplace(key, base_->scale(c, one));
    return out;
  }

  value_type add(const value_type& a, const value_type& b) const {
    value_type out = a;
    add_to(out, b);
    return out;
  }
  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }
  value_type neg(const value_type& a) const {
    check(a);
    value_type out = a;
    for (auto& [key, v] : out.entries) v = base_->neg(v);
    return out;
  }
  void add_to(value_type& acc, const value_type& b) const {
    check(acc);
    check(b);
    for (const auto& [key, v] : b.entries) accumulate(acc, key, v);
  }
  value_type mul(const value_type& a, const value_type& b) const {
    check(a);
    check(b);
    value_type out = zero();
    for (const auto& [ka, va] : a.entries) {
      auto it = b.entries.lower_bound(TensorKey{ka.second, 0});
      for (; it != b.entries.end() && it->first.first == ka.second; ++it) {
        base_value prod = base_->mul(va, it->second);
        if (base_->is_zero(prod)) continue;
        TensorKey key{ka.first, it->first.second};
        auto [jt, inserted] = out.entries.try_emplace(key, prod);
        if (!inserted) base_->add_to(jt->second, prod);
      }
    }
    prune(out);
    return out;
  }
  value_type scale(const Rational& q, const value_type& a) const {
    check(a);
    if (q.is_zero()) return zero();
    value_type out = a;
    for (auto& [key, v] : out.entries) v = base_->scale(q, v);
    return out;
  }
  bool is_zero(const value_type& a) const {
    for (const auto& [key, v] : a.entries) {
      if (!base_->is_zero(v)) return false;
    }
    return true;
  }
  base_value trace(const value_type& a) const {
    base_value out = base_->zero();
    for (const auto& [key, v] : a.entries) {
      if (key.first == key.second) base_->add_to(out, v);
    }
    return out;
  }
  // Applies f to every entry, dropping zeros.
  template <class F>
  value_type map_entries(const value_type& a, F&& f) const {
    value_type out = zero();
    for (const auto& [key, v] : a.entries) {
      base_value w = f(v);
      if (!base_->is_zero(w)) out.entries.emplace(key, std::move(w));
    }
    return out;
  }

 private:
  void check_shape(int sites, const IndexSet& set) const {
    if (sites != sites_ || !(set == set_)) throw std::invalid_argument("tensor shape mismatch");
  }
  void check(const value_type& a) const { check_shape(a.sites, a.index_set); }
  void accumulate(value_type& acc, const TensorKey& key, const base_value& v) const {
    if (base_->is_zero(v)) return;
    auto [it, inserted] = acc.entries.try_emplace(key, v);
    if (!inserted) {
      base_->add_to(it->second, v);
      if (base_->is_zero(it->second)) acc.entries.erase(it);
    }
  }
  void prune(value_type& a) const {
    for (auto it = a.entries.begin(); it != a.entries.end();) {
      it = base_->is_zero(it->second) ? a.entries.erase(it) : std::next(it);
    }
  }

  const R* base_;
  IndexSet set_;
  int sites_;
};

// Elementary rational tensors.
RationalTensor identity_tensor(const IndexSet& set, int sites);
RationalTensor matrix_unit(const IndexSet& set, int i, int j);
RationalTensor flip(const IndexSet& set);
// Q = sum_ij E_ij' (x) E_ji; signed sets only.
RationalTensor prime_flip(const IndexSet& set);

// Single-site tensor from an N x N matrix indexed by label positions.
RationalTensor matrix_tensor(const IndexSet& set, const std::vector<std::vector<Rational>>& m);

// Generic embedding and prime transposition (work for any entry type).
template <class V>
TensorElement<V> embed_sites(const TensorElement<V>& x, const std::vector<int>& positions, int n) {
  if (static_cast<int>(positions.size()) != x.sites) {
    throw std::invalid_argument("embed: one position per site required");
  }
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] < 1 || positions[k] > n || (k > 0 && positions[k] <= positions[k - 1])) {
      throw std::invalid_argument("embed: positions must be increasing within 1..n");
    }
  }
  TensorCodec small(x.index_set, x.sites);
  TensorCodec big(x.index_set, n);
  std::vector<int> free_sites;
  for (int s = 1; s <= n; ++s) {
    bool named = false;
    for (int p : positions) named = named || p == s;
    if (!named) free_sites.push_back(s);
  }
  const std::uint32_t free_volume = TensorCodec(x.index_set, static_cast<int>(free_sites.size())).volume();
  TensorElement<V> out{n, x.index_set, {}};
  for (const auto& [key, v] : x.entries) {
    std::uint32_t row = 0, col = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      row = big.with_digit(row, positions[k], small.digit(key.first, static_cast<int>(k) + 1));
      col = big.with_digit(col, positions[k], small.digit(key.second, static_cast<int>(k) + 1));
    }
    for (std::uint32_t f = 0; f < free_volume; ++f) {
      std::uint32_t rem = f;
      std::uint32_t r = row, c = col;
      for (auto it = free_sites.rbegin(); it != free_sites.rend(); ++it) {
        int d = static_cast<int>(rem % static_cast<std::uint32_t>(x.index_set.size()));
        rem /= static_cast<std::uint32_t>(x.index_set.size());
        r = big.with_digit(r, *it, d);
        c = big.with_digit(c, *it, d);
      }
      out.entries.emplace(TensorKey{r, c}, v);
    }
  }
  return out;
}

// Prime transposition on one site (1-based): E_ab -> eps_ab E_{-b,-a}.
template <class V, class Scale>
TensorElement<V> prime_site(const TensorElement<V>& x, int site, Scale&& negate) {
  if (!x.index_set.is_signed()) throw std::invalid_argument("site_prime needs a signed index set");
  if (site < 1 || site > x.sites) throw std::invalid_argument("site_prime: site out of range");
  TensorCodec codec(x.index_set, x.sites);
  TensorElement<V> out{x.sites, x.index_set, {}};
  for (const auto& [key, v] : x.entries) {
    int a = x.index_set.label(codec.digit(key.first, site));
    int b = x.index_set.label(codec.digit(key.second, site));
    std::uint32_t row = codec.with_digit(key.first, site, x.index_set.position(-b));
    std::uint32_t col = codec.with_digit(key.second, site, x.index_set.position(-a));
    out.entries.emplace(TensorKey{row, col}, x.index_set.epsilon(a, b) > 0 ? v : negate(v));
  }
  return out;
}

RationalTensor site_prime(const RationalTensor& x, int site);
RationalTensor embed(const RationalTensor& x, const std::vector<int>& positions, int n);

RationalTensor tensor_mul(const RationalTensor& a, const RationalTensor& b);
RationalTensor tensor_add(const RationalTensor& a, const RationalTensor& b);
RationalTensor tensor_scale(const Rational& q, const RationalTensor& a);
Rational tensor_trace(const RationalTensor& a);

// Polynomial in u with tensor coefficients; coeffs[d] multiplies u^d.
struct UPolyTensor {
  std::vector<RationalTensor> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const UPolyTensor& a, const UPolyTensor& b) = default;
};

UPolyTensor upoly_normalize(UPolyTensor p);
UPolyTensor upoly_mul(const UPolyTensor& a, const UPolyTensor& b);
UPolyTensor upoly_sub(const UPolyTensor& a, const UPolyTensor& b);
// p(a u + b).
UPolyTensor upoly_substitute(const UPolyTensor& p, const Rational& a, const Rational& b);
// Scalar polynomial (ascending coefficients) times identity.
UPolyTensor upoly_scalar(const IndexSet& set, int sites, const std::vector<Rational>& poly);
RationalTensor upoly_evaluate(const UPolyTensor& p, const Rational& u);
UPolyTensor upoly_embed(const UPolyTensor& p, const std::vector<int>& positions, int n);

// R(u) = u id - P.
UPolyTensor yang_r(const IndexSet& set);
// R~(u) = u id - Q; signed sets only.
UPolyTensor r_tilde(const IndexSet& set);

// (1/k!) sum_sigma sgn(sigma) P_sigma.
RationalTensor antisymmetrizer_oracle(int k, const IndexSet& set);

enum class ArrowOrientation { leftward, rightward };
std::string orientation_name(ArrowOrientation o);

// Nested ordered product of R_pq(q - p), outer over p, inner over q > p.
// leftward places factors with larger indices further left.
RationalTensor antisymmetrizer_product(int k, const IndexSet& set, ArrowOrientation o);

struct AntisymmetrizerResult {
  RationalTensor h;
  bool leftward_matches = false;
  bool rightward_matches = false;
  std::string orientation;  // "leftward", "rightward", or "both"
};

// H_k with the ordered-product construction certified against the oracle.
// Throws if neither orientation reproduces the oracle.
AntisymmetrizerResult antisymmetrizer_certified(int k, const IndexSet& set);
const RationalTensor& antisymmetrizer(int k, const IndexSet& set);

// Membership in {X : H_k X = H_k X H_k}, k being the site count of x.
bool in_fused_subalgebra(const RationalTensor& x);

std::string tensor_str(const RationalTensor& x);

}  // namespace bethe
