#include "bethe/polynomial.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bethe {

VarId symbol_var(int i, int j, int r) {
  if (r < 1 || r > 0x7fff || i < -127 || i > 127 || j < -127 || j > 127) {
    throw std::invalid_argument("symbol variable out of range");
  }
  return (static_cast<VarId>(r) << 16) | (static_cast<VarId>(i + 128) << 8) |
         static_cast<VarId>(j + 128);
}

bool is_symbol_var(VarId id) { return (id >> 16) != 0; }

SymbolVarParts split_symbol_var(VarId id) {
  if (!is_symbol_var(id)) {
    throw std::invalid_argument("not a symbol variable");
  }
  return {static_cast<int>((id >> 8) & 0xff) - 128, static_cast<int>(id & 0xff) - 128,
          static_cast<int>(id >> 16)};
}

std::string var_name(VarId id, char letter) {
  if (id == kVarU) return "u";
  if (id == kVarV) return "v";
  if (id == kVarW) return "w";
  if (!is_symbol_var(id)) return "t" + std::to_string(id);
  auto p = split_symbol_var(id);
  std::ostringstream os;
  os << letter << '[' << p.i << ',' << p.j << "]^" << p.r;
  return os.str();
}

PolyMonomial monomial_product(const PolyMonomial& a, const PolyMonomial& b) {
  PolyMonomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      out.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

Polynomial::Polynomial(const Rational& c) {
  if (!c.is_zero()) {
    terms_.emplace(PolyMonomial{}, c);
  }
}

Polynomial Polynomial::variable(VarId id) { return monomial({{id, 1}}, Rational(1)); }

Polynomial Polynomial::monomial(PolyMonomial m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(PolyMonomial{});
  return it == terms_.end() ? Rational() : it->second;
}

void Polynomial::add_term(const PolyMonomial& m, const Rational& c) {
  if (c.is_zero()) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) {
    add_term(m, c);
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) {
    add_term(m, -c);
  }
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) {
    coeff *= c;
  }
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) {
    c = -c;
  }
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(monomial_product(ma, mb), ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::derivative(VarId var) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k].first != var) {
        continue;
      }
      PolyMonomial dm = m;
      int e = dm[k].second;
      if (e == 1) {
        dm.erase(dm.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        dm[k].second = e - 1;
      }
      out.add_term(dm, c * Rational(e));
    }
  }
  return out;
}

int Polynomial::degree_in(VarId var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) {
      if (v == var && e > d) {
        d = e;
      }
    }
  }
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (const auto& [v, e] : m) {
      t += e;
    }
    d = std::max(d, t);
  }
  return d;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (const auto& [v, e] : m) {
      t += e;
    }
    if (t == d) {
      out.terms_.emplace(m, c);
    }
  }
  return out;
}

Polynomial Polynomial::coefficient(VarId var, int power) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    int e = 0;
    PolyMonomial rest;
    for (const auto& entry : m) {
      if (entry.first == var) {
        e = entry.second;
      } else {
        rest.push_back(entry);
      }
    }
    if (e == power) {
      out.add_term(rest, c);
    }
  }
  return out;
}

std::set<VarId> Polynomial::variables() const {
  std::set<VarId> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) {
      out.insert(v);
    }
  }
  return out;
}

Polynomial Polynomial::substitute(const std::map<VarId, Rational>& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    PolyMonomial rest;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest.emplace_back(v, e);
      } else {
        coeff *= it->second.pow(e);
      }
    }
    out.add_term(rest, coeff);
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<VarId, Rational>& values) const {
  Rational total;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) {
        throw std::invalid_argument("no value for variable " + var_name(v));
      }
      term *= it->second.pow(e);
    }
    total += term;
  }
  return total;
}

std::string Polynomial::str(char letter) const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << c;
    for (const auto& [v, e] : m) {
      os << '*' << var_name(v, letter);
      if (e > 1) {
        os << "^^" << e;
      }
    }
  }
  return os.str();
}

}  // namespace bethe
