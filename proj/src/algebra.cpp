#include "bethe/algebra.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bethe {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t gen_hash(const GenIndex& g) {
  return (static_cast<std::size_t>(g.level) << 20) ^ (static_cast<std::size_t>(g.row + 512) << 10) ^
         static_cast<std::size_t>(g.col + 512);
}

void push_word(RawCombination& out, int i1, int j1, int l1, int i2, int j2, int l2,
               const Rational& c) {
  // Level-0 factors are Kronecker deltas.
  Monomial w;
  if (l1 == 0) {
    if (i1 != j1) return;
  } else {
    w.push_back({i1, j1, l1});
  }
  if (l2 == 0) {
    if (i2 != j2) return;
  } else {
    w.push_back({i2, j2, l2});
  }
  out.emplace_back(std::move(w), c);
}

int inversions(const Monomial& w) {
  int count = 0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      if (w[b] < w[a]) ++count;
    }
  }
  return count;
}

}  // namespace

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = m.size();
  for (const auto& g : m) {
    h = mix(h, gen_hash(g));
  }
  return h;
}

bool is_normal(const Monomial& m) { return std::is_sorted(m.begin(), m.end()); }

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& g : m) d += g.level;
  return d;
}

std::string monomial_str(const Monomial& m, char letter) {
  std::ostringstream os;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) os << '*';
    os << letter << '[' << m[k].row << ',' << m[k].col << ']';
    if (letter != 'E') os << '^' << m[k].level;
  }
  return os.str();
}

AlgebraElement AlgebraElement::scalar(const Rational& c) {
  AlgebraElement a;
  a.add_term({}, c);
  return a;
}

AlgebraElement AlgebraElement::from_monomial(Monomial m, const Rational& c) {
  AlgebraElement a;
  a.add_term(m, c);
  return a;
}

bool AlgebraElement::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational AlgebraElement::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational() : it->second;
}

void AlgebraElement::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

std::string AlgebraElement::str(char letter) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (!m.empty()) os << '*' << monomial_str(m, letter);
  }
  return os.str();
}

void YangianRule::bracket(const GenIndex& a, const GenIndex& b, RawCombination& out) const {
  const int i = a.row, j = a.col, k = b.row, l = b.col;
  const int p = a.level, q = b.level;
  for (int r = 1; r <= std::min(p, q); ++r) {
    push_word(out, k, j, r - 1, i, l, p + q - r, Rational(1));
    push_word(out, k, j, p + q - r, i, l, r - 1, Rational(-1));
  }
}

void GlRule::bracket(const GenIndex& a, const GenIndex& b, RawCombination& out) const {
  if (b.row == a.col) out.emplace_back(Monomial{{a.row, b.col, 1}}, Rational(1));
  if (a.row == b.col) out.emplace_back(Monomial{{b.row, a.col, 1}}, Rational(-1));
}

std::shared_ptr<const CommutationRule> yangian_rule() {
  static const auto rule = std::make_shared<const YangianRule>();
  return rule;
}

std::shared_ptr<const CommutationRule> gl_rule() {
  static const auto rule = std::make_shared<const GlRule>();
  return rule;
}

std::size_t Algebra::KeyHash::operator()(const Key& k) const noexcept {
  return mix(MonomialHash{}(k.m), gen_hash(k.g));
}

Algebra::Algebra(std::shared_ptr<const CommutationRule> rule, IndexSet index_set)
    : rule_(std::move(rule)), index_set_(std::move(index_set)) {
  if (!rule_) throw std::invalid_argument("algebra needs a commutation rule");
}

void Algebra::validate(const GenIndex& g) const {
  if (!index_set_.contains(g.row) || !index_set_.contains(g.col)) {
    throw std::invalid_argument("generator index outside " + index_set_.describe());
  }
  if (!rule_->valid_level(g.level)) {
    throw std::invalid_argument("generator level " + std::to_string(g.level) +
                                " not allowed under the " + rule_->name() + " rule");
  }
}

void Algebra::validate(const AlgebraElement& a) const {
  for (const auto& [m, c] : a.terms()) {
    for (const auto& g : m) validate(g);
  }
}

AlgebraElement Algebra::generator(int row, int col, int level) const {
  GenIndex g{row, col, level};
  validate(g);
  return AlgebraElement::from_monomial({g});
}

const AlgebraElement& Algebra::insert(const Monomial& m, const GenIndex& g) const {
  Key key{m, g};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  AlgebraElement result;
  if (m.empty() || !(g < m.back())) {
    Monomial w = m;
    w.push_back(g);
    result.add_term(w, Rational(1));
  } else {
    // m = m' a with a > g: m' a g = m' g a + m' [a, g].
    const GenIndex a = m.back();
    Monomial prefix(m.begin(), m.end() - 1);
    AlgebraElement head = insert(prefix, g);
    for (const auto& [t, c] : head.terms()) {
      const AlgebraElement& tail = insert(t, a);
      for (const auto& [t2, c2] : tail.terms()) result.add_term(t2, c * c2);
    }
    RawCombination corr;
    rule_->bracket(a, g, corr);
    for (const auto& [w, c] : corr) multiply_into(result, prefix, w, c);
  }
  return cache_.emplace(std::move(key), std::move(result)).first->second;
}

void Algebra::multiply_into(AlgebraElement& acc, const Monomial& m, const Monomial& word,
                            const Rational& c) const {
  if (c.is_zero()) return;
  if (word.empty()) {
    acc.add_term(m, c);
    return;
  }
  AlgebraElement current = AlgebraElement::from_monomial(m, c);
  for (const auto& g : word) {
    AlgebraElement next;
    for (const auto& [t, ct] : current.terms()) {
      const AlgebraElement& part = insert(t, g);
      for (const auto& [t2, c2] : part.terms()) next.add_term(t2, ct * c2);
    }
    current = std::move(next);
  }
  acc += current;
}

AlgebraElement Algebra::normal_order(const Monomial& word, const Rational& c) const {
  for (const auto& g : word) validate(g);
  AlgebraElement out;
  multiply_into(out, {}, word, c);
  return out;
}

AlgebraElement Algebra::normal_order_naive(const Monomial& word, const Rational& c,
                                           RewriteStrategy strategy, bool trace) const {
  for (const auto& g : word) validate(g);
  std::map<Monomial, Rational> pending;
  AlgebraElement done;
  if (!c.is_zero()) pending.emplace(word, c);
  while (!pending.empty()) {
    auto it = pending.begin();
    Monomial w = it->first;
    Rational coeff = it->second;
    pending.erase(it);
    if (coeff.is_zero()) continue;

    int pos = -1;
    for (int k = 0; k + 1 < static_cast<int>(w.size()); ++k) {
      if (w[k + 1] < w[k]) {
        pos = k;
        if (strategy == RewriteStrategy::leftmost) break;
      }
    }
    if (pos < 0) {
      done.add_term(w, coeff);
      continue;
    }

    auto emit = [&](Monomial nw, const Rational& nc) {
      if (trace) {
        auto before = std::make_pair(monomial_degree(w), inversions(w));
        auto after = std::make_pair(monomial_degree(nw), inversions(nw));
        if (!(after < before)) {
          throw std::logic_error("rewrite step failed to decrease (degree, inversions)");
        }
      }
      auto [jt, inserted] = pending.try_emplace(std::move(nw), nc);
      if (!inserted) jt->second += nc;
    };

    Monomial swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    emit(std::move(swapped), coeff);

    RawCombination corr;
    rule_->bracket(w[pos], w[pos + 1], corr);
    for (const auto& [mid, cc] : corr) {
      Monomial nw(w.begin(), w.begin() + pos);
      nw.insert(nw.end(), mid.begin(), mid.end());
      nw.insert(nw.end(), w.begin() + pos + 2, w.end());
      emit(std::move(nw), coeff * cc);
    }
  }
  return done;
}

AlgebraElement Algebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  AlgebraElement out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) multiply_into(out, ma, mb, ca * cb);
  }
  return out;
}

AlgebraElement Algebra::commutator(const AlgebraElement& a, const AlgebraElement& b) const {
  validate(a);
  validate(b);
  return mul(a, b) - mul(b, a);
}

int filtration_degree(const AlgebraElement& a) {
  if (a.is_zero()) throw std::domain_error("filtration degree of zero is undefined");
  int d = 0;
  for (const auto& [m, c] : a.terms()) d = std::max(d, monomial_degree(m));
  return d;
}

Polynomial symbol(const AlgebraElement& a, int d) {
  if (!a.is_zero() && filtration_degree(a) > d) {
    throw std::invalid_argument("symbol degree below the filtration degree");
  }
  Polynomial out;
  for (const auto& [m, c] : a.terms()) {
    if (monomial_degree(m) != d) continue;
    Polynomial term(c);
    for (const auto& g : m) term = term * Polynomial::variable(symbol_var(g.row, g.col, g.level));
    out += term;
  }
  return out;
}

}  // namespace bethe
