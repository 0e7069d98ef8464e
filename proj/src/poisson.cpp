#include "bethe/poisson.h"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "bethe/yangian.h"

namespace bethe {

namespace {

Polynomial var_poly(VarId id) { return Polynomial::variable(id); }

Polynomial u_power(int e) { return e == 0 ? Polynomial(Rational(1)) : Polynomial::monomial({{kVarU, e}}, Rational(1)); }

bool lower_triangular_label(int i, int j) { return i > j; }

// Missing coordinates count as zero.
Rational evaluate_at(const Polynomial& p, const CurrentPoint& point) {
  Rational total;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (const auto& [v, e] : m) {
      auto it = point.find(v);
      if (it == point.end()) {
        term = Rational();
        break;
      }
      term *= it->second.pow(e);
    }
    total += term;
  }
  return total;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

nlohmann::json point_json(const CurrentPoint& p, char letter) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [v, q] : p) j[var_name(v, letter)] = rational_str(q);
  return j;
}

// Determinant of a small polynomial matrix by expansion along rows, memoized
// on the set of used columns.
Polynomial poly_determinant(const std::vector<std::vector<Polynomial>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::optional<Polynomial>> memo(1u << n);
  std::function<Polynomial(int, unsigned)> minor = [&](int row, unsigned used) -> Polynomial {
    if (row == n) return Polynomial(Rational(1));
    if (memo[used]) return *memo[used];
    Polynomial out;
    int sign_count = 0;
    for (int c = 0; c < n; ++c) {
      if (used & (1u << c)) {
        ++sign_count;
        continue;
      }
      if (m[row][c].is_zero()) continue;
      // Sign of choosing column c among the unused ones.
      const int position = c - sign_count;
      Polynomial term = m[row][c] * minor(row + 1, used | (1u << c));
      out += position % 2 == 0 ? term : -term;
    }
    memo[used] = out;
    return out;
  };
  return minor(0, 0);
}

using PolySeries = std::vector<Polynomial>;

PolySeries series_mul(const PolySeries& a, const PolySeries& b) {
  PolySeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

void require_same_set(const PoissonContext& ctx, const ZMatrix& z) {
  if (!(ctx.index_set() == z.index_set())) throw std::invalid_argument("Z and context use different index sets");
}

std::string coefficient_name(const PoissonContext& ctx, int k, int r) {
  return std::string(1, ctx.is_twisted() ? 'a' : 'b') + "_" + std::to_string(k) + "^(" + std::to_string(r) + ")";
}

}  // namespace

PoissonContext::PoissonContext(IndexSet set, int M, bool twisted) : set_(std::move(set)), M_(M), twisted_(twisted) {
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  if (twisted && !set_.is_signed()) throw std::invalid_argument("twisted contexts need a signed index set");
  for (int r = 1; r <= M_; ++r) {
    for (int i : set_.labels()) {
      for (int j : set_.labels()) {
        Polynomial v = variable(i, j, r);
        if (v.size() == 1 && v.terms().begin()->second.is_one()) {
          const auto& m = v.terms().begin()->first;
          if (m.size() == 1 && m[0].first == symbol_var(i, j, r)) coords_.push_back(m[0].first);
        }
      }
    }
  }
  std::sort(coords_.begin(), coords_.end());
}

PoissonContext PoissonContext::plain(IndexSet set, int M) { return PoissonContext(std::move(set), M, false); }

PoissonContext PoissonContext::twisted(IndexSet set, int M) { return PoissonContext(std::move(set), M, true); }

std::string PoissonContext::describe() const {
  return std::string(twisted_ ? "twisted " : "plain ") + set_.describe() + ", M=" + std::to_string(M_);
}

Polynomial PoissonContext::variable(int i, int j, int r) const {
  if (!set_.contains(i) || !set_.contains(j) || r < 0) throw std::invalid_argument("invalid coordinate index");
  if (r == 0) return Polynomial(Rational(i == j ? 1 : 0));
  if (r > M_) return Polynomial();
  if (!twisted_) return var_poly(symbol_var(i, j, r));
  const int sign = set_.epsilon(i, j) * (r % 2 == 0 ? 1 : -1);
  const std::pair<int, int> self{i, j}, partner{-j, -i};
  if (self == partner) return sign == 1 ? var_poly(symbol_var(i, j, r)) : Polynomial();
  if (self < partner) return var_poly(symbol_var(i, j, r));
  return var_poly(symbol_var(-j, -i, r)) * Rational(sign);
}

Polynomial PoissonContext::reduce(const Polynomial& p) const {
  return p.substitute_each([&](VarId v) {
    if (!is_symbol_var(v)) return var_poly(v);
    auto parts = split_symbol_var(v);
    return variable(parts.i, parts.j, parts.r);
  });
}

Polynomial PoissonContext::raw_bracket(int i, int j, int p, int k, int l, int q) const {
  Polynomial out;
  const int lo = std::max(1, p + q - M_), hi = std::min(p, q);
  for (int r = lo; r <= hi; ++r) {
    out += variable(k, j, r - 1) * variable(i, l, p + q - r);
    out -= variable(k, j, p + q - r) * variable(i, l, r - 1);
    if (twisted_) {
      Polynomial extra = variable(i, -k, r - 1) * variable(-j, l, p + q - r) * Rational(set_.epsilon(k, -j)) -
                         variable(k, -i, p + q - r) * variable(-l, j, r - 1) * Rational(set_.epsilon(i, -l));
      out += (p + r - 1) % 2 == 0 ? extra : -extra;
    }
  }
  return out;
}

Polynomial PoissonContext::coordinate_bracket(VarId a, VarId b) const {
  auto key = std::make_pair(a, b);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto x = split_symbol_var(a), y = split_symbol_var(b);
  Polynomial out = raw_bracket(x.i, x.j, x.r, y.i, y.j, y.r);
  cache_.emplace(key, out);
  return out;
}

Polynomial PoissonContext::bracket(const Polynomial& f, const Polynomial& g) const {
  std::vector<std::pair<VarId, Polynomial>> df, dg;
  auto collect = [&](const Polynomial& p, std::vector<std::pair<VarId, Polynomial>>& out) {
    for (VarId v : p.variables()) {
      if (!is_symbol_var(v)) continue;
      if (!std::binary_search(coords_.begin(), coords_.end(), v)) {
        throw std::invalid_argument("variable " + var_name(v, letter()) + " is not a coordinate of " + describe());
      }
      out.emplace_back(v, p.derivative(v));
    }
  };
  collect(f, df);
  collect(g, dg);
  Polynomial out;
  for (const auto& [a, da] : df) {
    for (const auto& [b, db] : dg) {
      Polynomial c = coordinate_bracket(a, b);
      if (!c.is_zero()) out += da * db * c;
    }
  }
  return out;
}

std::vector<Polynomial> bethe_poly(const PoissonContext& ctx, int k, const ZMatrix& z) {
  require_same_set(ctx, z);
  const IndexSet& set = ctx.index_set();
  const int N = set.size(), M = ctx.M();
  if (k < 1 || k > N) throw std::invalid_argument("k must lie in 1..N");
  std::vector<std::vector<Polynomial>> m(N, std::vector<Polynomial>(N));
  for (int a : set.labels()) {
    for (int b : set.labels()) {
      Polynomial e = a == b ? u_power(M) : Polynomial();
      for (int r = 1; r <= M; ++r) e += ctx.variable(a, b, r) * u_power(M - r);
      e += Polynomial::variable(kVarV) * z.at(a, b);
      m[set.position(a)][set.position(b)] = e;
    }
  }
  const Polynomial vk = poly_determinant(m).coefficient(kVarV, N - k);
  const Rational scale(1, binomial(N, k));
  std::vector<Polynomial> out;
  for (int r = 0; r <= k * M; ++r) out.push_back(vk.coefficient(kVarU, k * M - r) * scale);
  return out;
}

std::vector<Polynomial> bethe_poly_by_permutations(const PoissonContext& ctx, int k, const ZMatrix& z) {
  require_same_set(ctx, z);
  const IndexSet& set = ctx.index_set();
  const int N = set.size(), M = ctx.M(), D = k * M;
  if (k < 1 || k > N) throw std::invalid_argument("k must lie in 1..N");
  std::vector<std::vector<PolySeries>> s(N, std::vector<PolySeries>(N, PolySeries(D + 1)));
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      for (int r = 0; r <= std::min(D, M); ++r) s[a][b][r] = ctx.variable(set.label(a), set.label(b), r);
    }
  }
  PolySeries total(D + 1);
  PolySeries unit(D + 1);
  unit[0] = Polynomial(Rational(1));
  // Positions are filled in order; inversions are counted as values are placed.
  std::function<void(int, unsigned, unsigned, int, const PolySeries&)> walk =
      [&](int p, unsigned used_g, unsigned used_h, int inversions, const PolySeries& acc) {
        if (p == N) {
          for (int r = 0; r <= D; ++r) {
            if (!acc[r].is_zero()) total[r] += inversions % 2 == 0 ? acc[r] : -acc[r];
          }
          return;
        }
        for (int g = 0; g < N; ++g) {
          if (used_g & (1u << g)) continue;
          const int ig = std::popcount(used_g >> g);
          for (int h = 0; h < N; ++h) {
            if (used_h & (1u << h)) continue;
            const int ih = std::popcount(used_h >> h);
            if (p < k) {
              walk(p + 1, used_g | (1u << g), used_h | (1u << h), inversions + ig + ih, series_mul(acc, s[g][h]));
            } else {
              const Rational zv = z.entries()[g][h];
              if (zv.is_zero()) continue;
              PolySeries next = acc;
              for (auto& c : next) c *= zv;
              walk(p + 1, used_g | (1u << g), used_h | (1u << h), inversions + ig + ih, next);
            }
          }
        }
      };
  walk(0, 0, 0, 0, unit);
  Rational factorial(1);
  for (int i = 2; i <= N; ++i) factorial *= Rational(i);
  for (auto& c : total) c *= Rational(1) / factorial;
  return total;
}

Polynomial twisted_symbol(const PoissonContext& ctx, const SElement& w, int d) {
  if (!ctx.is_twisted()) throw std::invalid_argument("twisted symbols need a twisted context");
  Polynomial out;
  for (const auto& [word, c] : w.terms()) {
    int level = 0;
    for (const auto& g : word) level += g.level;
    if (level > d) throw std::invalid_argument("word above the requested degree");
    if (level < d) continue;
    Polynomial term(c);
    for (const auto& g : word) term = term * ctx.variable(g.row, g.col, g.level);
    out += term;
  }
  return out;
}

std::vector<Polynomial> bethe_poly_from_symbols(const PoissonContext& ctx, int k, const ZMatrix& z) {
  require_same_set(ctx, z);
  const IndexSet& set = ctx.index_set();
  const int D = k * ctx.M();
  std::vector<Polynomial> out;
  if (ctx.is_twisted()) {
    FreeSAlgebra free(set);
    auto a = twisted_bethe_series(free, k, z, D);
    for (int r = 0; r <= D; ++r) out.push_back(twisted_symbol(ctx, a.coeffs[r], r));
  } else {
    Algebra y = Algebra::yangian(set);
    auto b = bethe_series(y, k, z, D);
    for (int r = 0; r <= D; ++r) out.push_back(ctx.reduce(symbol(b.coeffs[r], r)));
  }
  return out;
}

std::map<std::pair<int, int>, Polynomial> classical_det_poly(const PoissonContext& ctx, const ZMatrix& z) {
  require_same_set(ctx, z);
  if (ctx.M() != 1) throw std::invalid_argument("the classical determinant uses the M = 1 context");
  if (ctx.is_twisted() && z.tag() != ZSymmetry::prime_skew) throw std::invalid_argument("twisted kinds need Z' = -Z");
  const IndexSet& set = ctx.index_set();
  const int N = set.size();
  std::vector<std::vector<Polynomial>> m(N, std::vector<Polynomial>(N));
  for (int a : set.labels()) {
    for (int b : set.labels()) {
      Polynomial e = a == b ? u_power(1) : Polynomial();
      e += ctx.variable(a, b, 1);
      e += Polynomial::variable(kVarV) * z.at(a, b);
      m[set.position(a)][set.position(b)] = e;
    }
  }
  const Polynomial det = poly_determinant(m);
  std::map<std::pair<int, int>, Polynomial> out;
  for (int a = 0; a <= N; ++a) {
    for (int b = 0; a + b <= N; ++b) out.emplace(std::make_pair(a, b), det.coefficient(kVarU, a).coefficient(kVarV, b));
  }
  return out;
}

RationalMatrix principal_nilpotent(const IndexSet& set, NilpotentVariant variant) {
  const int N = set.size();
  RationalMatrix e(N, std::vector<Rational>(N));
  auto put = [&](int i, int j, int c) { e[set.position(i)][set.position(j)] += Rational(c); };
  if (!set.is_signed()) {
    if (variant != NilpotentVariant::borel_slice) throw std::invalid_argument("variant needs an even orthogonal set");
    for (int i = 1; i < N; ++i) put(i + 1, i, 1);
    return e;
  }
  const int n = set.half();
  const bool so_even = set.form() == FormType::orthogonal && N % 2 == 0;
  if (variant == NilpotentVariant::classical_so_even) {
    if (!so_even || n < 2) throw std::invalid_argument("variant needs so_{2n} with n >= 2");
    for (int i = 2; i <= n; ++i) {
      put(i, i - 1, 1);
      put(1 - i, -i, -1);
    }
    put(2, -1, 1);
    put(1, -2, -1);
    return e;
  }
  for (int i = 2; i <= n; ++i) {
    put(i, i - 1, 1);
    put(1 - i, -i, so_even ? 1 : -1);
  }
  if (set.form() == FormType::orthogonal && N % 2 == 1) {
    put(1, 0, 1);
    put(0, -1, -1);
  } else {
    put(1, -1, 1);
  }
  return e;
}

CurrentPoint nilpotent_point(const PoissonContext& ctx, const RationalMatrix& e) {
  const IndexSet& set = ctx.index_set();
  const int M = ctx.M();
  if (ctx.is_twisted()) {
    for (int i : set.labels()) {
      for (int j : set.labels()) {
        const Rational expected = e[set.position(-j)][set.position(-i)] *
                                  Rational(set.epsilon(i, j) * (M % 2 == 0 ? 1 : -1));
        if (e[set.position(i)][set.position(j)] != expected) {
          throw std::invalid_argument("E does not lie in the twisted space at level M");
        }
      }
    }
  }
  CurrentPoint p;
  for (VarId v : ctx.coordinates()) {
    auto parts = split_symbol_var(v);
    const Rational value = parts.r == M ? e[set.position(parts.i)][set.position(parts.j)] : Rational();
    if (!value.is_zero()) p[v] = value;
  }
  return p;
}

Slice make_slice(const PoissonContext& ctx, const RationalMatrix& e) {
  const IndexSet& set = ctx.index_set();
  for (int i : set.labels()) {
    for (int j : set.labels()) {
      if (!lower_triangular_label(i, j) && !e[set.position(i)][set.position(j)].is_zero()) {
        throw std::invalid_argument("E must be strictly lower triangular");
      }
    }
  }
  const CurrentPoint base = nilpotent_point(ctx, e);
  Slice s;
  s.name = (ctx.is_twisted() ? "s" : "t") + std::string("_{M,N}, ") + ctx.describe();
  for (VarId v : ctx.coordinates()) {
    auto parts = split_symbol_var(v);
    if (lower_triangular_label(parts.i, parts.j)) {
      auto it = base.find(v);
      s.fixed[v] = it == base.end() ? Rational() : it->second;
    } else {
      s.free.push_back(v);
    }
  }
  return s;
}

Polynomial restrict_to_slice(const Polynomial& p, const Slice& s) {
  for (VarId v : p.variables()) {
    if (is_symbol_var(v) && !s.fixed.count(v) && std::find(s.free.begin(), s.free.end(), v) == s.free.end()) {
      throw std::invalid_argument("variable " + var_name(v) + " is not a coordinate of the slice");
    }
  }
  return p.substitute(s.fixed);
}

CurrentPoint random_slice_point(const Slice& s, std::uint64_t seed, int bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  CurrentPoint p;
  for (VarId v : s.free) p[v] = Rational(dist(rng));
  return p;
}

CurrentPoint random_point(const PoissonContext& ctx, std::uint64_t seed, int bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  CurrentPoint p;
  for (VarId v : ctx.coordinates()) p[v] = Rational(dist(rng));
  return p;
}

int exact_rank(const RationalMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (const auto& q : m[i]) l = lcm(l, mpz_class(static_cast<long>(q.den())));
    for (std::size_t j = 0; j < cols; ++j) {
      a[i][j] = mpz_class(static_cast<long>(m[i][j].num())) * (l / mpz_class(static_cast<long>(m[i][j].den())));
    }
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[i][j] * a[rank][c] - a[i][c] * a[rank][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return static_cast<int>(rank);
}

int jacobian_rank(const std::vector<Polynomial>& fs, const std::vector<VarId>& vars, const CurrentPoint& p) {
  RationalMatrix m;
  for (const auto& f : fs) {
    std::vector<Rational> row;
    for (VarId v : vars) row.push_back(evaluate_at(f.derivative(v), p));
    m.push_back(std::move(row));
  }
  return exact_rank(m);
}

int poisson_rank_at(const PoissonContext& ctx, const CurrentPoint& p) {
  const auto& coords = ctx.coordinates();
  RationalMatrix m(coords.size(), std::vector<Rational>(coords.size()));
  for (std::size_t a = 0; a < coords.size(); ++a) {
    for (std::size_t b = 0; b < coords.size(); ++b) m[a][b] = evaluate_at(ctx.coordinate_bracket(coords[a], coords[b]), p);
  }
  return exact_rank(m);
}

int dim_t_slice(int N, int M) { return M * N * (N + 1) / 2; }

int plain_rank_bound(int N, int M) { return M * (N * N - N); }

namespace {

struct TwistedShape {
  int n;
  int m;
  enum { so_odd, sp, so_even } kind;
};

TwistedShape twisted_shape(const IndexSet& set, int M) {
  if (!set.is_signed()) throw std::invalid_argument("twisted dimensions need a signed index set");
  const int N = set.size(), n = set.half();
  if (set.form() == FormType::orthogonal && N % 2 == 0) {
    if (M % 2 != 0) throw std::invalid_argument("so_{2n} needs even M");
    return {n, M / 2, TwistedShape::so_even};
  }
  if (M % 2 != 1) throw std::invalid_argument("so_{2n+1} and sp_{2n} need odd M");
  return {n, (M - 1) / 2, set.form() == FormType::orthogonal ? TwistedShape::so_odd : TwistedShape::sp};
}

}  // namespace

int twisted_slice_dim(const IndexSet& set, int M) {
  auto s = twisted_shape(set, M);
  const int n = s.n, m = s.m;
  switch (s.kind) {
    case TwistedShape::so_odd:
      return (2 * m * n + m + n) * (n + 1);
    case TwistedShape::sp:
      return (2 * m * n + m + n + 1) * n;
    case TwistedShape::so_even:
      return (2 * n + 1) * m * n;
  }
  return 0;
}

int twisted_half_rank(const IndexSet& set, int M) {
  auto s = twisted_shape(set, M);
  const int n = s.n, m = s.m;
  switch (s.kind) {
    case TwistedShape::so_odd:
      return (2 * m * n + m + n) * n;
    case TwistedShape::sp:
      return (2 * m * n - m + n) * n;
    case TwistedShape::so_even:
      return (2 * n - 1) * m * n;
  }
  return 0;
}

int twisted_space_dim(const IndexSet& set, int M) {
  if (!set.is_signed()) throw std::invalid_argument("twisted dimensions need a signed index set");
  const int N = set.size();
  const int fixed = set.form() == FormType::orthogonal ? N * (N - 1) / 2 : N * (N + 1) / 2;
  int total = 0;
  for (int r = 1; r <= M; ++r) total += r % 2 == 1 ? fixed : N * N - fixed;
  return total;
}

std::vector<std::pair<std::string, Polynomial>> twisted_generators(const PoissonContext& ctx, const ZMatrix& z) {
  const int N = ctx.index_set().size();
  std::vector<std::pair<std::string, Polynomial>> out;
  for (int k = 1; k <= N; ++k) {
    auto a = bethe_poly(ctx, k, z);
    for (int r = 1; r <= k * ctx.M(); ++r) {
      if ((N - k + r) % 2 == 0) out.emplace_back(coefficient_name(ctx, k, r), a[r]);
    }
  }
  return out;
}

std::vector<std::pair<std::string, Polynomial>> plain_generators(const PoissonContext& ctx, const ZMatrix& z) {
  const int N = ctx.index_set().size();
  std::vector<std::pair<std::string, Polynomial>> out;
  for (int k = 1; k <= N; ++k) {
    auto b = bethe_poly(ctx, k, z);
    for (int r = 1; r <= k * ctx.M(); ++r) out.emplace_back(coefficient_name(ctx, k, r), b[r]);
  }
  return out;
}

Report verify_poisson_jacobi(const PoissonContext& ctx, std::uint64_t seed, int trials) {
  Stopwatch clock;
  Report rep;
  rep.check = "poisson-jacobi";
  rep.params = {{"context", ctx.describe()}, {"seed", seed}, {"trials", trials}};
  std::mt19937_64 rng(seed);
  const auto& coords = ctx.coordinates();
  std::uniform_int_distribution<std::size_t> pick(0, coords.size() - 1);
  const char letter = ctx.letter();
  for (int t = 0; t < trials; ++t) {
    const Polynomial a = var_poly(coords[pick(rng)]), b = var_poly(coords[pick(rng)]), c = var_poly(coords[pick(rng)]);
    const Polynomial jac = ctx.bracket(a, ctx.bracket(b, c)) + ctx.bracket(b, ctx.bracket(c, a)) +
                           ctx.bracket(c, ctx.bracket(a, b));
    const Polynomial anti = ctx.bracket(a, b) + ctx.bracket(b, a);
    std::ostringstream item;
    item << "(" << a.str(letter) << ", " << b.str(letter) << ", " << c.str(letter) << ")";
    rep.add("Jacobi " + item.str(), jac.is_zero(), jac.str(letter));
    rep.add("antisymmetry " + item.str(), anti.is_zero(), anti.str(letter));
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_symbol_homomorphism(int N, int M, std::uint64_t seed, int pairs) {
  Stopwatch clock;
  const IndexSet set = IndexSet::plain(N);
  auto ctx = PoissonContext::plain(set, M);
  Algebra y = Algebra::yangian(set);
  Report rep;
  rep.check = "symbol-hom";
  rep.params = {{"N", N}, {"M", M}, {"seed", seed}, {"pairs", pairs}, {"max_level", 3}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> label(1, N), level(1, 3), len(1, 2), coeff(-4, 4);
  auto random_element = [&]() {
    AlgebraElement out;
    while (out.is_zero()) {
      for (int t = 0; t < 2; ++t) {
        Monomial w;
        const int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back({label(rng), label(rng), level(rng)});
        out += y.normal_order(w, Rational(coeff(rng)));
      }
    }
    return out;
  };
  for (int t = 0; t < pairs; ++t) {
    const AlgebraElement a = random_element(), b = random_element();
    const int p = filtration_degree(a), q = filtration_degree(b);
    const Polynomial lhs = ctx.reduce(symbol(y.commutator(a, b), p + q - 1));
    const Polynomial rhs = ctx.bracket(ctx.reduce(symbol(a, p)), ctx.reduce(symbol(b, q)));
    const Polynomial diff = lhs - rhs;
    rep.add("pair " + std::to_string(t) + " (degrees " + std::to_string(p) + "," + std::to_string(q) + ")",
            diff.is_zero(), diff.str());
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_laplace_consistency(const PoissonContext& ctx, const ZMatrix& z) {
  Stopwatch clock;
  Report rep;
  rep.check = "laplace";
  rep.params = {{"context", ctx.describe()}, {"Z", z.describe()}};
  const int N = ctx.index_set().size();
  for (int k = 1; k <= N; ++k) {
    auto det = bethe_poly(ctx, k, z);
    auto perm = bethe_poly_by_permutations(ctx, k, z);
    auto sym = bethe_poly_from_symbols(ctx, k, z);
    for (int r = 0; r <= k * ctx.M(); ++r) {
      const std::string name = coefficient_name(ctx, k, r);
      rep.add(name + ": determinant = permutation sum", det[r] == perm[r], (det[r] - perm[r]).str(ctx.letter()));
      rep.add(name + ": determinant = symbol of the quantum generator", det[r] == sym[r],
              (det[r] - sym[r]).str(ctx.letter()));
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_poisson_involution(const PoissonContext& ctx, const ZMatrix& z) {
  Stopwatch clock;
  Report rep;
  rep.check = "poisson-involution";
  rep.params = {{"context", ctx.describe()}, {"Z", z.describe()}};
  const int N = ctx.index_set().size();
  std::vector<std::pair<std::string, Polynomial>> gens;
  for (int k = 1; k <= N; ++k) {
    auto c = bethe_poly(ctx, k, z);
    for (int r = 1; r <= k * ctx.M(); ++r) {
      if (!c[r].is_zero()) gens.emplace_back(coefficient_name(ctx, k, r), c[r]);
    }
  }
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      auto br = ctx.bracket(gens[a].second, gens[b].second);
      rep.add("{" + gens[a].first + ", " + gens[b].first + "}", br.is_zero(), clip(br.str(ctx.letter())));
    }
  }
  auto top = bethe_poly(ctx, N, z);
  for (int r = 1; r <= N * ctx.M(); ++r) {
    if (top[r].is_zero()) continue;
    bool central = true;
    std::string residual;
    for (VarId v : ctx.coordinates()) {
      auto br = ctx.bracket(top[r], var_poly(v));
      if (!br.is_zero()) {
        central = false;
        residual = var_name(v, ctx.letter()) + ": " + clip(br.str(ctx.letter()));
        break;
      }
    }
    rep.add(coefficient_name(ctx, N, r) + " is central", central, residual);
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

namespace {

struct RankCertificate {
  int achieved = -1;
  std::uint64_t seed_used = 0;
  int attempts = 0;
  CurrentPoint point;
};

// Up to five seeded points; stops at the first one reaching `expected`.
RankCertificate certify_rank(const std::vector<Polynomial>& fs, const Slice& slice, std::uint64_t seed, int expected) {
  RankCertificate best;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    CurrentPoint p = random_slice_point(slice, s);
    const int rank = jacobian_rank(fs, slice.free, p);
    ++best.attempts;
    if (rank > best.achieved) {
      best.achieved = rank;
      best.seed_used = s;
      best.point = p;
    }
    if (rank >= expected) break;
  }
  return best;
}

void add_certificate(Report& rep, const RankCertificate& c, int expected, const std::vector<std::string>& names,
                     char letter) {
  rep.params["certificate"] = {{"point", point_json(c.point, letter)},
                               {"seed", c.seed_used},
                               {"attempts", c.attempts},
                               {"functions", names},
                               {"achieved_rank", c.achieved},
                               {"expected_rank", expected}};
}

}  // namespace

Report verify_jacobian(const PoissonContext& ctx, const ZMatrix& z, std::uint64_t seed) {
  Stopwatch clock;
  Report rep;
  rep.check = "jacobian";
  rep.params = {{"context", ctx.describe()}, {"Z", z.describe()}, {"seed", seed}};
  const IndexSet& set = ctx.index_set();
  const int N = set.size(), M = ctx.M();
  auto gens = ctx.is_twisted() ? twisted_generators(ctx, z) : plain_generators(ctx, z);
  const int expected = ctx.is_twisted() ? twisted_slice_dim(set, M) : dim_t_slice(N, M);
  const Slice slice = make_slice(ctx, principal_nilpotent(set));
  rep.add("slice dimension equals " + std::to_string(expected), static_cast<int>(slice.free.size()) == expected,
          std::to_string(slice.free.size()));
  rep.add("generator count equals slice dimension", static_cast<int>(gens.size()) == expected,
          std::to_string(gens.size()));
  if (ctx.is_twisted()) {
    const int dim_f = twisted_space_dim(set, M);
    rep.add("coordinate count equals dim f_{M,N} = " + std::to_string(dim_f),
            static_cast<int>(ctx.coordinates().size()) == dim_f, std::to_string(ctx.coordinates().size()));
  }
  std::vector<Polynomial> restricted;
  std::vector<std::string> names;
  for (const auto& [name, f] : gens) {
    restricted.push_back(restrict_to_slice(f, slice));
    names.push_back(name);
  }
  auto cert = certify_rank(restricted, slice, seed, expected);
  rep.add("Jacobian rank on the slice equals " + std::to_string(expected), cert.achieved == expected,
          "rank " + std::to_string(cert.achieved));
  add_certificate(rep, cert, expected, names, ctx.letter());
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_poisson_rank(const PoissonContext& ctx, std::uint64_t seed, int samples) {
  Stopwatch clock;
  Report rep;
  rep.check = "poisson-rank";
  rep.params = {{"context", ctx.describe()}, {"seed", seed}, {"samples", samples}};
  const IndexSet& set = ctx.index_set();
  const int expected =
      ctx.is_twisted() ? 2 * twisted_half_rank(set, ctx.M()) : plain_rank_bound(set.size(), ctx.M());
  if (ctx.is_twisted()) {
    const int dim_f = twisted_space_dim(set, ctx.M());
    rep.add("coordinate count equals dim f_{M,N} = " + std::to_string(dim_f),
            static_cast<int>(ctx.coordinates().size()) == dim_f, std::to_string(ctx.coordinates().size()));
  }
  const CurrentPoint e = nilpotent_point(ctx, principal_nilpotent(set));
  const int at_e = poisson_rank_at(ctx, e);
  rep.add("rank at E^(M) equals " + std::to_string(expected), at_e == expected, "rank " + std::to_string(at_e));
  for (int s = 0; s < samples; ++s) {
    const int r = poisson_rank_at(ctx, random_point(ctx, seed + static_cast<std::uint64_t>(s)));
    rep.add("rank at random point " + std::to_string(s) + " is at most " + std::to_string(expected), r <= expected,
            "rank " + std::to_string(r));
  }
  rep.params["expected_rank"] = expected;
  rep.params["rank_at_E"] = at_e;
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_twisted_parity(const PoissonContext& ctx, const ZMatrix& z) {
  if (!ctx.is_twisted()) throw std::invalid_argument("parity applies to twisted contexts");
  Stopwatch clock;
  Report rep;
  rep.check = "twisted-parity";
  rep.params = {{"context", ctx.describe()}, {"Z", z.describe()}};
  const int N = ctx.index_set().size();
  for (int k = 1; k <= N; ++k) {
    auto a = bethe_poly(ctx, k, z);
    for (int r = 0; r <= k * ctx.M(); ++r) {
      const bool should_vanish = (N - k + r) % 2 != 0;
      rep.add(coefficient_name(ctx, k, r) + (should_vanish ? " vanishes" : " is nonzero"),
              a[r].is_zero() == should_vanish, should_vanish ? clip(a[r].str('y')) : "");
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_classical_so_even(int n, const ZMatrix& z, std::uint64_t seed) {
  Stopwatch clock;
  const IndexSet set = IndexSet::signed_set(2 * n, FormType::orthogonal);
  auto ctx = PoissonContext::twisted(set, 1);
  Report rep;
  rep.check = "classical-so2n";
  rep.params = {{"n", n}, {"Z", z.describe()}, {"seed", seed}};
  auto coeffs = classical_det_poly(ctx, z);
  const Slice slice = make_slice(ctx, principal_nilpotent(set, NilpotentVariant::classical_so_even));
  const int expected = n * n;
  rep.add("slice dimension equals n^2 = " + std::to_string(expected), static_cast<int>(slice.free.size()) == expected,
          std::to_string(slice.free.size()));
  std::vector<Polynomial> restricted;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, Polynomial>> nonzero;
  for (const auto& [key, f] : coeffs) {
    std::string name = "[u^" + std::to_string(key.first) + " v^" + std::to_string(key.second) + "]";
    if (!f.is_zero()) nonzero.emplace_back(name, f);
    restricted.push_back(restrict_to_slice(f, slice));
    names.push_back(name);
  }
  auto cert = certify_rank(restricted, slice, seed, expected);
  rep.add("Jacobian rank on s_{2n} equals " + std::to_string(expected), cert.achieved == expected,
          "rank " + std::to_string(cert.achieved));
  for (std::size_t a = 0; a < nonzero.size(); ++a) {
    for (std::size_t b = a + 1; b < nonzero.size(); ++b) {
      auto br = ctx.bracket(nonzero[a].second, nonzero[b].second);
      rep.add("{" + nonzero[a].first + ", " + nonzero[b].first + "}", br.is_zero(), clip(br.str('y')));
    }
  }
  add_certificate(rep, cert, expected, names, 'y');
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

}  // namespace bethe
