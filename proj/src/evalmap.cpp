#include "bethe/evalmap.h"

#include <sstream>

#include "bethe/yangian.h"

namespace bethe {

namespace {

void require_enveloping(const Algebra& env) {
  if (env.rule().name() != "gl") throw std::invalid_argument("target must be the enveloping algebra");
}

AlgebraElement word_image(const Algebra& env, const std::vector<AlgebraElement>& letters) {
  AlgebraElement out = env.one();
  for (const auto& l : letters) {
    if (l.is_zero()) return env.zero();
    out = env.mul(out, l);
  }
  return out;
}

}  // namespace

AlgebraElement pi_apply(const Algebra& env, const AlgebraElement& a) {
  require_enveloping(env);
  AlgebraElement out;
  for (const auto& [word, c] : a.terms()) {
    std::vector<AlgebraElement> letters;
    for (const auto& g : word) letters.push_back(g.level == 1 ? env.generator(g.row, g.col) : env.zero());
    out += word_image(env, letters) * c;
  }
  return out;
}

AlgebraElement f_generator(const Algebra& env, int i, int j) {
  const IndexSet& set = env.index_set();
  return env.generator(i, j) - env.generator(-j, -i) * Rational(set.epsilon(i, j));
}

Rational rho_weight(const IndexSet& set, int r) {
  if (!set.is_signed()) throw std::invalid_argument("rho needs a signed index set");
  const Rational c(set.form() == FormType::orthogonal ? 1 : -1, 2);
  return (-c).pow(r - 1);
}

AlgebraElement rho_apply(const Algebra& env, const SElement& w) {
  require_enveloping(env);
  const IndexSet& set = env.index_set();
  AlgebraElement out;
  for (const auto& [word, c] : w.terms()) {
    std::vector<AlgebraElement> letters;
    for (const auto& g : word) letters.push_back(f_generator(env, g.row, g.col) * rho_weight(set, g.level));
    out += word_image(env, letters) * c;
  }
  return out;
}

RationalMatrix defining_rep(const AlgebraElement& e, const IndexSet& set) {
  const int N = set.size();
  RationalMatrix out(N, std::vector<Rational>(N));
  for (const auto& [word, c] : e.terms()) {
    // A word of matrix units is a single unit or zero.
    int row = -1, col = -1;
    bool alive = true;
    for (const auto& g : word) {
      if (g.level != 1) throw std::invalid_argument("defining_rep expects enveloping-algebra elements");
      const int a = set.position(g.row), b = set.position(g.col);
      if (row < 0) {
        row = a;
      } else if (col != a) {
        alive = false;
        break;
      }
      col = b;
    }
    if (!alive) continue;
    if (row < 0) {
      for (int a = 0; a < N; ++a) out[a][a] += c;
    } else {
      out[row][col] += c;
    }
  }
  return out;
}

Report verify_image_commutativity(const Algebra& env, const std::vector<NamedElement>& elements) {
  require_enveloping(env);
  Stopwatch clock;
  Report rep;
  rep.check = "image-commute";
  rep.params = {{"index_set", env.index_set().describe()}, {"elements", elements.size()}};
  std::vector<RationalMatrix> mats;
  for (const auto& [name, e] : elements) mats.push_back(defining_rep(e, env.index_set()));
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = a + 1; b < elements.size(); ++b) {
      auto c = env.commutator(elements[a].second, elements[b].second);
      const bool mats_commute = matrix_product(mats[a], mats[b]) == matrix_product(mats[b], mats[a]);
      std::string residual;
      if (!c.is_zero()) residual = c.str('E');
      if (!mats_commute) residual += (residual.empty() ? "" : "; ") + std::string("matrices do not commute");
      rep.add("[" + elements[a].first + ", " + elements[b].first + "]", c.is_zero() && mats_commute, residual);
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

std::vector<NamedElement> pi_bethe_images(const Algebra& env, const ZMatrix& z, int levels) {
  const IndexSet& set = env.index_set();
  Algebra y = Algebra::yangian(set);
  std::vector<NamedElement> out;
  for (int k = 1; k <= set.size(); ++k) {
    auto b = bethe_series(y, k, z, levels);
    for (int r = 1; r <= levels; ++r) {
      out.emplace_back("pi(B" + std::to_string(k) + "^(" + std::to_string(r) + "))", pi_apply(env, b.coeffs[r]));
    }
  }
  return out;
}

std::vector<NamedElement> rho_twisted_images(const Algebra& env, const ZMatrix& z, int D) {
  const IndexSet& set = env.index_set();
  FreeSAlgebra free(set);
  std::vector<NamedElement> out;
  for (int k = 1; k <= set.size(); ++k) {
    auto a = twisted_bethe_series(free, k, z, D);
    for (int r = 1; r <= D; ++r) {
      out.emplace_back("rho(A" + std::to_string(k) + "^(" + std::to_string(r) + "))", rho_apply(env, a.coeffs[r]));
    }
  }
  return out;
}

Report verify_pi_homomorphism(const IndexSet& set, int max_level) {
  Stopwatch clock;
  Report rep;
  rep.check = "pi-hom";
  rep.params = {{"index_set", set.describe()}, {"max_level", max_level}};
  Algebra y = Algebra::yangian(set);
  Algebra env = Algebra::enveloping(set);
  std::vector<GenIndex> gens;
  for (int r = 1; r <= max_level; ++r) {
    for (int i : set.labels()) {
      for (int j : set.labels()) gens.push_back({i, j, r});
    }
  }
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      const auto x = y.generator(gens[a].row, gens[a].col, gens[a].level);
      const auto w = y.generator(gens[b].row, gens[b].col, gens[b].level);
      auto diff = pi_apply(env, y.commutator(x, w)) - env.commutator(pi_apply(env, x), pi_apply(env, w));
      rep.add("[" + x.str() + ", " + w.str() + "]", diff.is_zero(), diff.str('E'));
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_rho_homomorphism(const IndexSet& set, int D) {
  Stopwatch clock;
  Report rep;
  rep.check = "rho-hom";
  rep.params = {{"index_set", set.describe()}, {"D", D}};
  Algebra env = Algebra::enveloping(set);
  FreeSAlgebra free(set);
  for (const auto& res : symmetry_residuals(free, D + 1)) {
    auto x = rho_apply(env, res.value);
    rep.add("symmetry " + res.item, x.is_zero(), x.str('E'));
  }
  for (const auto& res : reflection_residuals(free, D)) {
    auto pos = res.item.find(") ");
    const std::string item = "reflection " + res.item.substr(pos + 2);
    auto x = rho_apply(env, res.value);
    auto it = std::find_if(rep.details.begin(), rep.details.end(), [&](const ReportItem& d) { return d.item == item; });
    if (it == rep.details.end()) {
      rep.add(item, true);
      it = rep.details.end() - 1;
    }
    if (!x.is_zero() && it->residual_zero) {
      it->residual_zero = false;
      it->residual = clip(res.item.substr(0, pos + 1) + ": " + x.str('E'));
    }
  }
  rep.conventions["rho_shift"] = set.form() == FormType::orthogonal ? "u+1/2" : "u-1/2";
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

}  // namespace bethe
