#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bethe/rational.h"

namespace bethe {

// Variable ids. Symbol variables x_ij^(r) / y_ij^(r) pack (r, i, j) with r >= 1;
// ids below 2^16 are auxiliary (formal u, v, w).
using VarId = std::uint32_t;

VarId symbol_var(int i, int j, int r);
bool is_symbol_var(VarId id);
struct SymbolVarParts {
  int i;
  int j;
  int r;
};
SymbolVarParts split_symbol_var(VarId id);

inline constexpr VarId kVarU = 1;
inline constexpr VarId kVarV = 2;
inline constexpr VarId kVarW = 3;

std::string var_name(VarId id, char letter = 'x');

// Sorted (variable, exponent) list, exponents > 0.
using PolyMonomial = std::vector<std::pair<VarId, int>>;

PolyMonomial monomial_product(const PolyMonomial& a, const PolyMonomial& b);

// Sparse commutative polynomial over exact rationals.
class Polynomial {
 public:
  using map_type = std::map<PolyMonomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(implicit)

  static Polynomial variable(VarId id);
  static Polynomial monomial(PolyMonomial m, const Rational& c);

  const map_type& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  void add_term(const PolyMonomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial derivative(VarId var) const;
  int degree_in(VarId var) const;
  int total_degree() const;
  // Sum of terms whose total degree equals d.
  Polynomial homogeneous_part(int d) const;
  // Coefficient of var^power, as a polynomial in the remaining variables.
  Polynomial coefficient(VarId var, int power) const;
  std::set<VarId> variables() const;

  // Substitutes the given variables by rationals; others stay symbolic.
  Polynomial substitute(const std::map<VarId, Rational>& values) const;
  // Substitutes each variable through a callback returning a polynomial.
  template <class F>
  Polynomial substitute_each(F&& f) const;
  // Full evaluation; throws if a variable has no value.
  Rational evaluate(const std::map<VarId, Rational>& values) const;

  std::string str(char letter = 'x') const;

 private:
  map_type terms_;
};

template <class F>
Polynomial Polynomial::substitute_each(F&& f) const {
  std::map<VarId, Polynomial> images;
  Polynomial result;
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    for (const auto& [var, e] : m) {
      auto it = images.find(var);
      if (it == images.end()) {
        it = images.emplace(var, f(var)).first;
      }
      for (int k = 0; k < e; ++k) {
        term = term * it->second;
      }
      if (term.is_zero()) {
        break;
      }
    }
    result += term;
  }
  return result;
}

}  // namespace bethe
