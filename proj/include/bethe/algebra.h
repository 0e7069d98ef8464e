#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bethe/index_set.h"
#include "bethe/polynomial.h"
#include "bethe/rational.h"

namespace bethe {

// Generator T_ij^(level) (or E_ij with level 1 under the gl rule).
struct GenIndex {
  int row = 0;
  int col = 0;
  int level = 1;

  friend bool operator==(const GenIndex& a, const GenIndex& b) = default;
  // Canonical order: (level, row, col) lexicographic.
  friend std::strong_ordering operator<=>(const GenIndex& a, const GenIndex& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

using Monomial = std::vector<GenIndex>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

bool is_normal(const Monomial& m);
int monomial_degree(const Monomial& m);
std::string monomial_str(const Monomial& m, char letter = 'T');

// Linear combination of monomials with rational coefficients; zero
// coefficients are never stored. Elements produced by Algebra are normal.
class AlgebraElement {
 public:
  using map_type = std::map<Monomial, Rational>;

  AlgebraElement() = default;
  static AlgebraElement scalar(const Rational& c);
  static AlgebraElement from_monomial(Monomial m, const Rational& c = Rational(1));

  const map_type& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_scalar() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(const Rational& c);
  AlgebraElement operator-() const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Rational& c) { return a *= c; }
  friend AlgebraElement operator*(const Rational& c, AlgebraElement a) { return a *= c; }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) = default;

  std::string str(char letter = 'T') const;

 private:
  map_type terms_;
};

using RawCombination = std::vector<std::pair<Monomial, Rational>>;

// Supplies [a, b] for generators as a combination of words of length <= 2.
class CommutationRule {
 public:
  virtual ~CommutationRule() = default;
  virtual std::string name() const = 0;
  virtual bool valid_level(int level) const = 0;
  virtual void bracket(const GenIndex& a, const GenIndex& b, RawCombination& out) const = 0;
};

// [T_ij^(p), T_kl^(q)] = sum_{r=1}^{min(p,q)} T_kj^(r-1) T_il^(p+q-r) - T_kj^(p+q-r) T_il^(r-1),
// with T^(0) = delta.
class YangianRule : public CommutationRule {
 public:
  std::string name() const override { return "yangian"; }
  bool valid_level(int level) const override { return level >= 1; }
  void bracket(const GenIndex& a, const GenIndex& b, RawCombination& out) const override;
};

// [E_ij, E_kl] = delta_kj E_il - delta_il E_kj.
class GlRule : public CommutationRule {
 public:
  std::string name() const override { return "gl"; }
  bool valid_level(int level) const override { return level == 1; }
  void bracket(const GenIndex& a, const GenIndex& b, RawCombination& out) const override;
};

std::shared_ptr<const CommutationRule> yangian_rule();
std::shared_ptr<const CommutationRule> gl_rule();

enum class RewriteStrategy { leftmost, rightmost };

// Normal-ordering engine for one rule over one index set. Products are
// memoized; an instance is not thread-safe, so each worker owns its own.
class Algebra {
 public:
  using value_type = AlgebraElement;

  Algebra(std::shared_ptr<const CommutationRule> rule, IndexSet index_set);

  static Algebra yangian(IndexSet index_set) { return Algebra(yangian_rule(), std::move(index_set)); }
  static Algebra enveloping(IndexSet index_set) { return Algebra(gl_rule(), std::move(index_set)); }

  const IndexSet& index_set() const { return index_set_; }
  const CommutationRule& rule() const { return *rule_; }
  std::shared_ptr<const CommutationRule> rule_ptr() const { return rule_; }

  AlgebraElement generator(int row, int col, int level = 1) const;
  void validate(const GenIndex& g) const;
  void validate(const AlgebraElement& a) const;

  AlgebraElement normal_order(const Monomial& word, const Rational& c = Rational(1)) const;
  // Independent reference rewriter: repeatedly swaps one adjacent inversion,
  // picked by the strategy. With trace set, asserts that every step strictly
  // decreases (degree, inversion count) lexicographically.
  AlgebraElement normal_order_naive(const Monomial& word, const Rational& c,
                                    RewriteStrategy strategy, bool trace = false) const;

  AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) const;

  // Ring interface.
  AlgebraElement zero() const { return {}; }
  AlgebraElement one() const { return AlgebraElement::scalar(Rational(1)); }
  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const { return a + b; }
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const { return a - b; }
  AlgebraElement neg(const AlgebraElement& a) const { return -a; }
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement scale(const Rational& q, const AlgebraElement& a) const { return a * q; }
  bool is_zero(const AlgebraElement& a) const { return a.is_zero(); }
  void add_to(AlgebraElement& acc, const AlgebraElement& a) const { acc += a; }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  struct Key {
    Monomial m;
    GenIndex g;
    friend bool operator==(const Key& a, const Key& b) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  // Normal form of m * g for a normal monomial m.
  const AlgebraElement& insert(const Monomial& m, const GenIndex& g) const;
  // acc += c * NF(m * word), m normal.
  void multiply_into(AlgebraElement& acc, const Monomial& m, const Monomial& word,
                     const Rational& c) const;

  std::shared_ptr<const CommutationRule> rule_;
  IndexSet index_set_;
  mutable std::unordered_map<Key, AlgebraElement, KeyHash> cache_;
};

int filtration_degree(const AlgebraElement& a);

// Image in the degree-d graded component: monomials of total level d become
// products of commuting x_{row,col}^(level); lower monomials vanish.
Polynomial symbol(const AlgebraElement& a, int d);

}  // namespace bethe
