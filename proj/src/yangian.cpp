#include "bethe/yangian.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bethe/bivariate.h"
#include "bethe/parallel.h"

namespace bethe {

namespace {

int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

std::string series_item(const std::string& what, int r) {
  std::ostringstream os;
  os << what << " u^-" << r;
  return os.str();
}

TensorSeries<AlgebraElement> t_tensor(const Algebra& alg, int D) {
  return to_tensor_series(alg, alg.index_set(), t_matrix(alg, D));
}

void check_k(int k, int N) {
  if (k < 1 || k > N) throw std::invalid_argument("k must lie in 1..N");
}

}  // namespace

namespace detail {

PermutationPrefixes permutation_prefixes(const ZMatrix& z, int k) {
  const int N = z.index_set().size();
  PermutationPrefixes out;
  std::vector<int> g(N);
  std::iota(g.begin(), g.end(), 0);
  do {
    const int sg = permutation_sign(g);
    std::vector<int> h(N);
    std::iota(h.begin(), h.end(), 0);
    do {
      Rational w(sg * permutation_sign(h));
      for (int t = k; t < N && !w.is_zero(); ++t) w *= z.entries()[g[t]][h[t]];
      if (w.is_zero()) continue;
      std::pair<std::vector<int>, std::vector<int>> key{{g.begin(), g.begin() + k}, {h.begin(), h.begin() + k}};
      Rational& slot = out.weights[key];
      slot += w;
    } while (std::next_permutation(h.begin(), h.end()));
  } while (std::next_permutation(g.begin(), g.end()));
  for (auto it = out.weights.begin(); it != out.weights.end();) {
    it = it->second.is_zero() ? out.weights.erase(it) : std::next(it);
  }
  return out;
}

}  // namespace detail

SeriesMatrix<AlgebraElement> t_matrix(const Algebra& alg, int D) {
  if (D < 0) throw std::invalid_argument("D must be >= 0");
  const IndexSet& set = alg.index_set();
  const int N = set.size();
  SeriesMatrix<AlgebraElement> m(N, std::vector<AlgSeries>(N));
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      m[a][b] = series_constant(alg, a == b ? alg.one() : alg.zero(), D);
      for (int r = 1; r <= D; ++r) m[a][b].coeffs[r] = alg.generator(set.label(a), set.label(b), r);
    }
  }
  return m;
}

AlgSeries bethe_series_trace(const Algebra& alg, int k, const ZMatrix& z, int D) {
  check_k(k, alg.index_set().size());
  if (!(z.index_set() == alg.index_set())) throw std::invalid_argument("Z and algebra use different index sets");
  return bethe_by_trace(alg, t_tensor(alg, D), k, z);
}

AlgSeries bethe_series(const Algebra& alg, int k, const ZMatrix& z, int D) {
  check_k(k, alg.index_set().size());
  if (!(z.index_set() == alg.index_set())) throw std::invalid_argument("Z and algebra use different index sets");
  AlgSeries by_sum = bethe_by_permutations(alg, t_matrix(alg, D), k, z);
  AlgSeries by_trace = bethe_series_trace(alg, k, z, D);
  for (int r = 0; r <= D; ++r) {
    if (!(by_sum.coeffs[r] == by_trace.coeffs[r])) {
      std::ostringstream os;
      os << "Bethe series routes disagree at k=" << k << ", u^-" << r << ": permutation sum "
         << clip(by_sum.coeffs[r].str()) << " vs trace " << clip(by_trace.coeffs[r].str());
      throw std::logic_error(os.str());
    }
  }
  return by_sum;
}

AlgSeries quantum_determinant(const Algebra& alg, int D) {
  const IndexSet& set = alg.index_set();
  const int N = set.size();
  auto m = t_matrix(alg, D);
  std::vector<SeriesMatrix<AlgebraElement>> shifted;
  for (int s = 1; s <= N; ++s) shifted.push_back(substitute_matrix(alg, m, Rational(1), Rational(-s)));
  SeriesRing<Algebra> sr(alg, D);
  auto out = sr.zero();
  std::vector<int> g(N);
  std::iota(g.begin(), g.end(), 0);
  do {
    auto term = sr.constant(AlgebraElement::scalar(Rational(permutation_sign(g))));
    for (int s = 0; s < N; ++s) term = sr.mul(term, shifted[s][g[s]][s]);
    sr.add_to(out, term);
  } while (std::next_permutation(g.begin(), g.end()));
  return out;
}

AlgSeries hat_bethe_series(const Algebra& alg, int k, const ZMatrix& z, int D) {
  const IndexSet& set = alg.index_set();
  if (k < 0 || k > set.size()) throw std::invalid_argument("k must lie in 0..N");
  TensorRing<Algebra> tr(alg, set, 1);
  auto inverse = invert(tr, t_tensor(alg, D));
  return hat_by_trace(alg, inverse, k, z);
}

Report verify_rtt(const Algebra& alg, int D) {
  Stopwatch clock;
  Report rep;
  rep.check = "rtt";
  rep.params = {{"index_set", alg.index_set().describe()}, {"D", D}, {"rule", alg.rule().name()}};
  const IndexSet& set = alg.index_set();
  TensorRing<Algebra> tr(alg, set, 2);
  const int floor = -(D + 2);
  BivariateRing<TensorRing<Algebra>> br(tr, floor, floor);
  auto t = t_tensor(alg, D + 1);
  auto t1 = br.from_u_series(place_series(alg, t, {1}, 2, Rational(1), Rational(0)));
  auto t2 = br.from_v_series(place_series(alg, t, {2}, 2, Rational(1), Rational(0)));
  auto id = tr.one();
  auto r = br.monomial(1, 0, id);
  br.add_to(r, br.monomial(0, 1, tr.neg(id)));
  br.add_to(r, br.monomial(0, 0, tr.neg(tr.lift(flip(set)))));
  auto lhs = br.mul(br.mul(r, t1), t2);
  auto rhs = br.mul(br.mul(t2, t1), r);
  auto diff = br.sub(lhs, rhs);
  for (int a = 1; a >= -D; --a) {
    for (int b = 1; b >= -D; --b) {
      auto c = br.coefficient(diff, a, b);
      std::ostringstream item;
      item << "u^" << a << " v^" << b;
      std::string residual;
      if (!tr.is_zero(c)) residual = clip(c.entries.begin()->second.str());
      rep.add(item.str(), tr.is_zero(c), residual);
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_fusion(const Algebra& alg, int k, int D) {
  Stopwatch clock;
  const IndexSet& set = alg.index_set();
  check_k(k, set.size());
  Report rep;
  rep.check = "fusion";
  rep.params = {{"index_set", set.describe()}, {"k", k}, {"D", D}};
  TensorRing<Algebra> tr(alg, set, k);
  SeriesRing<TensorRing<Algebra>> sr(tr, D);
  auto t = t_tensor(alg, D);
  std::vector<TensorSeries<AlgebraElement>> factors;
  for (int p = 1; p <= k; ++p) factors.push_back(place_series(alg, t, {p}, k, Rational(1), Rational(-p)));
  auto forward = sr.one();
  for (int p = 0; p < k; ++p) forward = sr.mul(forward, factors[p]);
  auto backward = sr.one();
  for (int p = k - 1; p >= 0; --p) backward = sr.mul(backward, factors[p]);
  const auto h = sr.constant(tr.lift(antisymmetrizer(k, set)));
  auto hx = sr.mul(h, forward);
  auto fused = sr.sub(hx, sr.mul(backward, h));
  auto member = sr.sub(hx, sr.mul(hx, h));
  for (int r = 0; r <= D; ++r) rep.add(series_item("fusion", r), tr.is_zero(fused.coeffs[r]));
  for (int r = 0; r <= D; ++r) rep.add(series_item("membership", r), tr.is_zero(member.coeffs[r]));
  if (k == set.size()) {
    auto qdet = quantum_determinant(alg, D);
    const RationalTensor& hn = antisymmetrizer(k, set);
    for (int r = 0; r <= D; ++r) {
      auto expected = tr.zero();
      for (const auto& [key, c] : hn.entries) {
        auto v = qdet.coeffs[r] * c;
        if (!v.is_zero()) expected.entries.emplace(key, std::move(v));
      }
      rep.add(series_item("determinant collapse", r), tr.is_zero(tr.sub(hx.coeffs[r], expected)));
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_centrality(const Algebra& alg, int D, int max_level) {
  Stopwatch clock;
  const IndexSet& set = alg.index_set();
  Report rep;
  rep.check = "centrality";
  rep.params = {{"index_set", set.describe()}, {"D", D}, {"max_level", max_level}};
  auto qdet = quantum_determinant(alg, D);
  for (int r = 1; r <= D; ++r) {
    for (int s = 1; s <= max_level; ++s) {
      for (int i : set.labels()) {
        for (int j : set.labels()) {
          auto c = alg.commutator(qdet.coeffs[r], alg.generator(i, j, s));
          std::ostringstream item;
          item << "[qdet^(" << r << "), T[" << i << "," << j << "]^(" << s << ")]";
          rep.add(item.str(), c.is_zero(), c.str());
        }
      }
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_hat_identity(const Algebra& alg, const ZMatrix& z, int D) {
  Stopwatch clock;
  const IndexSet& set = alg.index_set();
  const int N = set.size();
  Report rep;
  rep.check = "hat-identity";
  rep.params = {{"index_set", set.describe()}, {"Z", z.describe()}, {"D", D}};
  SeriesRing<Algebra> sr(alg, D);
  auto qdet = quantum_determinant(alg, D);
  for (int k = 1; k <= N; ++k) {
    auto b = bethe_series(alg, k, z, D);
    auto hat = substitute_affine(alg, hat_bethe_series(alg, N - k, z, D), Rational(1), Rational(-k));
    auto product = sr.mul(qdet, hat);
    auto diff = sr.sub(b, sr.scale(Rational(1, binomial(N, k)), product));
    for (int r = 0; r <= D; ++r) {
      std::ostringstream item;
      item << "k=" << k << " u^-" << r;
      rep.add(item.str(), diff.coeffs[r].is_zero(), diff.coeffs[r].str());
    }
    if (binomial(N, k) != 1 && sr.is_zero(sr.sub(b, sr.scale(Rational(binomial(N, k)), product)))) {
      rep.notes.push_back("k=" + std::to_string(k) + ": the factor binom(N,k) also matches");
    }
  }
  rep.conventions["hat_identity_factor"] = "1/binom(N,k)";
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_bethe_commutativity(const Algebra& alg, const ZMatrix& z, int budget, int threads) {
  Stopwatch clock;
  const IndexSet& set = alg.index_set();
  const int N = set.size();
  Report rep;
  rep.check = "bethe-commute";
  rep.params = {{"index_set", set.describe()}, {"Z", z.describe()}, {"budget", budget}};
  const int D = std::max(1, budget - 1);
  std::vector<AlgSeries> series;
  for (int k = 1; k <= N; ++k) series.push_back(bethe_series(alg, k, z, D));
  struct Task {
    int k, l, r, s;
  };
  std::vector<Task> tasks;
  for (int k = 1; k <= N; ++k) {
    for (int l = k; l <= N; ++l) {
      for (int r = 1; r < budget; ++r) {
        for (int s = 1; r + s <= budget; ++s) {
          if (k == l && s <= r) continue;
          tasks.push_back({k, l, r, s});
        }
      }
    }
  }
  std::vector<AlgebraElement> results(tasks.size());
  parallel_for(
      tasks.size(), threads, [&]() { return Algebra(alg.rule_ptr(), set); },
      [&](std::size_t i, Algebra& local) {
        const Task& t = tasks[i];
        results[i] = local.commutator(series[t.k - 1].coeffs[t.r], series[t.l - 1].coeffs[t.s]);
      });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    std::ostringstream item;
    item << "[B" << t.k << "^(" << t.r << "), B" << t.l << "^(" << t.s << ")]";
    rep.add(item.str(), results[i].is_zero(), results[i].str());
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Polynomial conjugate_symbol(const Polynomial& p, const IndexSet& set, const std::vector<std::vector<Rational>>& g) {
  const auto ginv = matrix_inverse(g);
  const int N = set.size();
  return p.substitute_each([&](VarId v) {
    if (!is_symbol_var(v)) return Polynomial::variable(v);
    auto parts = split_symbol_var(v);
    const int i = set.position(parts.i);
    const int j = set.position(parts.j);
    Polynomial out;
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        Rational c = g[i][a] * ginv[b][j];
        if (!c.is_zero()) out += Polynomial::monomial({{symbol_var(set.label(a), set.label(b), parts.r), 1}}, c);
      }
    }
    return out;
  });
}

}  // namespace bethe
