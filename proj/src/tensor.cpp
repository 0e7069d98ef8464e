#include "bethe/tensor.h"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <tuple>
#include <sstream>

namespace bethe {

namespace {

const RationalRing kQ;

TensorRing<RationalRing> ring_for(const RationalTensor& x) {
  return TensorRing<RationalRing>(kQ, x.index_set, x.sites);
}

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  for (std::size_t a = 0; a < perm.size(); ++a) {
    for (std::size_t b = a + 1; b < perm.size(); ++b) {
      if (perm[b] < perm[a]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

TensorCodec::TensorCodec(const IndexSet& set, int sites) : set_(&set), base_(set.size()), sites_(sites) {
  weights_.assign(sites + 1, 1);
  std::uint64_t v = 1;
  for (int s = sites; s >= 1; --s) {
    weights_[s] = static_cast<std::uint32_t>(v);
    v *= static_cast<std::uint64_t>(base_);
    if (v > 0xffffffffULL) throw std::invalid_argument("tensor too large to index");
  }
  volume_ = static_cast<std::uint32_t>(v);
}

std::uint32_t TensorCodec::encode(const std::vector<int>& labels) const {
  if (static_cast<int>(labels.size()) != sites_) throw std::invalid_argument("multi-index length mismatch");
  std::uint32_t code = 0;
  for (int s = 1; s <= sites_; ++s) code += weights_[s] * static_cast<std::uint32_t>(set_->position(labels[s - 1]));
  return code;
}

std::vector<int> TensorCodec::decode(std::uint32_t code) const {
  std::vector<int> out(sites_);
  for (int s = 1; s <= sites_; ++s) out[s - 1] = set_->label(digit(code, s));
  return out;
}

int TensorCodec::digit(std::uint32_t code, int site) const {
  return static_cast<int>((code / weights_[site]) % static_cast<std::uint32_t>(base_));
}

std::uint32_t TensorCodec::with_digit(std::uint32_t code, int site, int pos) const {
  return code - weights_[site] * static_cast<std::uint32_t>(digit(code, site)) +
         weights_[site] * static_cast<std::uint32_t>(pos);
}

RationalTensor identity_tensor(const IndexSet& set, int sites) {
  return TensorRing<RationalRing>(kQ, set, sites).one();
}

RationalTensor matrix_unit(const IndexSet& set, int i, int j) {
  RationalTensor out{1, set, {}};
  out.entries.emplace(TensorKey{static_cast<std::uint32_t>(set.position(i)),
                                static_cast<std::uint32_t>(set.position(j))},
                      Rational(1));
  return out;
}

RationalTensor flip(const IndexSet& set) {
  TensorCodec codec(set, 2);
  RationalTensor out{2, set, {}};
  for (int a : set.labels()) {
    for (int b : set.labels()) out.entries.emplace(TensorKey{codec.encode({b, a}), codec.encode({a, b})}, Rational(1));
  }
  return out;
}

RationalTensor prime_flip(const IndexSet& set) {
  if (!set.is_signed()) throw std::invalid_argument("prime_flip needs a signed index set");
  TensorCodec codec(set, 2);
  RationalTensor out{2, set, {}};
  for (int i : set.labels()) {
    for (int j : set.labels()) {
      out.entries.emplace(TensorKey{codec.encode({-j, j}), codec.encode({-i, i})}, Rational(set.epsilon(i, j)));
    }
  }
  return out;
}

RationalTensor matrix_tensor(const IndexSet& set, const std::vector<std::vector<Rational>>& m) {
  RationalTensor out{1, set, {}};
  for (int a = 0; a < set.size(); ++a) {
    for (int b = 0; b < set.size(); ++b) {
      if (!m.at(a).at(b).is_zero()) {
        out.entries.emplace(TensorKey{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}, m[a][b]);
      }
    }
  }
  return out;
}

RationalTensor site_prime(const RationalTensor& x, int site) {
  return prime_site(x, site, [](const Rational& q) { return -q; });
}

RationalTensor embed(const RationalTensor& x, const std::vector<int>& positions, int n) {
  return embed_sites(x, positions, n);
}

RationalTensor tensor_mul(const RationalTensor& a, const RationalTensor& b) { return ring_for(a).mul(a, b); }
RationalTensor tensor_add(const RationalTensor& a, const RationalTensor& b) { return ring_for(a).add(a, b); }
RationalTensor tensor_scale(const Rational& q, const RationalTensor& a) { return ring_for(a).scale(q, a); }
Rational tensor_trace(const RationalTensor& a) { return ring_for(a).trace(a); }

UPolyTensor upoly_normalize(UPolyTensor p) {
  while (!p.coeffs.empty() && p.coeffs.back().entries.empty()) p.coeffs.pop_back();
  return p;
}

UPolyTensor upoly_mul(const UPolyTensor& a, const UPolyTensor& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  auto ring = ring_for(a.coeffs[0]);
  UPolyTensor out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, ring.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) ring.add_to(out.coeffs[i + j], ring.mul(a.coeffs[i], b.coeffs[j]));
  }
  return upoly_normalize(std::move(out));
}

UPolyTensor upoly_sub(const UPolyTensor& a, const UPolyTensor& b) {
  const RationalTensor& shape = a.coeffs.empty() ? b.coeffs.at(0) : a.coeffs[0];
  auto ring = ring_for(shape);
  UPolyTensor out;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), ring.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) ring.add_to(out.coeffs[i], a.coeffs[i]);
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) ring.add_to(out.coeffs[i], ring.neg(b.coeffs[i]));
  return upoly_normalize(std::move(out));
}

UPolyTensor upoly_substitute(const UPolyTensor& p, const Rational& a, const Rational& b) {
  if (p.coeffs.empty()) return {};
  auto ring = ring_for(p.coeffs[0]);
  UPolyTensor out;
  out.coeffs.assign(p.coeffs.size(), ring.zero());
  for (int d = 0; d <= p.degree(); ++d) {
    // (a u + b)^d = sum_m C(d, m) a^m b^(d-m) u^m
    for (int m = 0; m <= d; ++m) {
      Rational c = Rational(binomial(d, m)) * a.pow(m) * b.pow(d - m);
      if (!c.is_zero()) ring.add_to(out.coeffs[m], ring.scale(c, p.coeffs[d]));
    }
  }
  return upoly_normalize(std::move(out));
}

UPolyTensor upoly_scalar(const IndexSet& set, int sites, const std::vector<Rational>& poly) {
  UPolyTensor out;
  RationalTensor id = identity_tensor(set, sites);
  for (const auto& c : poly) out.coeffs.push_back(tensor_scale(c, id));
  return upoly_normalize(std::move(out));
}

RationalTensor upoly_evaluate(const UPolyTensor& p, const Rational& u) {
  if (p.coeffs.empty()) throw std::invalid_argument("cannot evaluate the empty polynomial without shape");
  auto ring = ring_for(p.coeffs[0]);
  RationalTensor out = ring.zero();
  Rational power(1);
  for (const auto& c : p.coeffs) {
    ring.add_to(out, ring.scale(power, c));
    power *= u;
  }
  return out;
}

UPolyTensor upoly_embed(const UPolyTensor& p, const std::vector<int>& positions, int n) {
  UPolyTensor out;
  for (const auto& c : p.coeffs) out.coeffs.push_back(embed(c, positions, n));
  return out;
}

UPolyTensor yang_r(const IndexSet& set) {
  return {{tensor_scale(Rational(-1), flip(set)), identity_tensor(set, 2)}};
}

UPolyTensor r_tilde(const IndexSet& set) {
  return {{tensor_scale(Rational(-1), prime_flip(set)), identity_tensor(set, 2)}};
}

RationalTensor antisymmetrizer_oracle(int k, const IndexSet& set) {
  if (k < 1) throw std::invalid_argument("antisymmetrizer needs k >= 1");
  TensorCodec codec(set, k);
  auto ring = TensorRing<RationalRing>(kQ, set, k);
  RationalTensor out = ring.zero();
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  const Rational norm = Rational(1, factorial(k));
  do {
    const Rational c = norm * Rational(permutation_sign(sigma));
    RationalTensor p = ring.zero();
    for (std::uint32_t code = 0; code < codec.volume(); ++code) {
      std::vector<int> a = codec.decode(code);
      std::vector<int> b(k);
      for (int s = 0; s < k; ++s) b[s] = a[sigma[s]];
      p.entries.emplace(TensorKey{codec.encode(b), code}, c);
    }
    ring.add_to(out, p);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::string orientation_name(ArrowOrientation o) {
  return o == ArrowOrientation::leftward ? "leftward" : "rightward";
}

RationalTensor antisymmetrizer_product(int k, const IndexSet& set, ArrowOrientation o) {
  auto ring = TensorRing<RationalRing>(kQ, set, k);
  const RationalTensor p2 = flip(set);
  auto factor = [&](int p, int q) {
    RationalTensor r = tensor_scale(Rational(-1), embed(p2, {p, q}, k));
    ring.add_to(r, tensor_scale(Rational(q - p), ring.one()));
    return r;
  };
  RationalTensor out = ring.one();
  for (int p = 1; p < k; ++p) {
    RationalTensor block = ring.one();
    for (int q = p + 1; q <= k; ++q) {
      block = o == ArrowOrientation::leftward ? ring.mul(factor(p, q), block) : ring.mul(block, factor(p, q));
    }
    out = o == ArrowOrientation::leftward ? ring.mul(block, out) : ring.mul(out, block);
  }
  return out;
}

AntisymmetrizerResult antisymmetrizer_certified(int k, const IndexSet& set) {
  RationalTensor oracle = antisymmetrizer_oracle(k, set);
  std::int64_t norm = 1;
  for (int j = 1; j <= k; ++j) norm *= factorial(j);
  RationalTensor scaled = tensor_scale(Rational(norm), oracle);
  AntisymmetrizerResult res;
  res.h = oracle;
  res.leftward_matches = antisymmetrizer_product(k, set, ArrowOrientation::leftward) == scaled;
  res.rightward_matches = antisymmetrizer_product(k, set, ArrowOrientation::rightward) == scaled;
  if (res.leftward_matches && res.rightward_matches) {
    res.orientation = "both";
  } else if (res.leftward_matches) {
    res.orientation = "leftward";
  } else if (res.rightward_matches) {
    res.orientation = "rightward";
  } else {
    throw std::logic_error("no ordered R-matrix product reproduces the antisymmetrizer for k=" +
                           std::to_string(k));
  }
  return res;
}

const RationalTensor& antisymmetrizer(int k, const IndexSet& set) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, RationalTensor> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(k, set.size(), static_cast<int>(set.form()));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, antisymmetrizer_certified(k, set).h).first;
  return it->second;
}

bool in_fused_subalgebra(const RationalTensor& x) {
  const RationalTensor& h = antisymmetrizer(x.sites, x.index_set);
  RationalTensor hx = tensor_mul(h, x);
  return hx == tensor_mul(hx, h);
}

std::string tensor_str(const RationalTensor& x) {
  TensorCodec codec(x.index_set, x.sites);
  std::ostringstream os;
  for (const auto& [key, c] : x.entries) {
    os << c << " * E(";
    auto a = codec.decode(key.first);
    auto b = codec.decode(key.second);
    for (int s = 0; s < x.sites; ++s) os << (s ? " | " : "") << a[s] << ',' << b[s];
    os << ")\n";
  }
  return os.str();
}

}  // namespace bethe
