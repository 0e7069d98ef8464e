#include "bethe/zmatrix.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bethe {

std::string symmetry_name(ZSymmetry s) {
  switch (s) {
    case ZSymmetry::none:
      return "none";
    case ZSymmetry::prime_symmetric:
      return "prime_symmetric";
    case ZSymmetry::prime_skew:
      return "prime_skew";
  }
  return "?";
}

ZMatrix::ZMatrix(IndexSet set, std::vector<std::vector<Rational>> entries, ZSymmetry tag)
    : set_(std::move(set)), entries_(std::move(entries)), tag_(tag) {
  const int N = set_.size();
  if (static_cast<int>(entries_.size()) != N) throw std::invalid_argument("Z must be N x N");
  for (const auto& row : entries_) {
    if (static_cast<int>(row.size()) != N) throw std::invalid_argument("Z must be N x N");
  }
  if (tag_ != ZSymmetry::none) {
    if (!set_.is_signed()) throw std::invalid_argument("Z symmetry tags need a signed index set");
    ZMatrix p = prime();
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        Rational expected = tag_ == ZSymmetry::prime_symmetric ? entries_[a][b] : -entries_[a][b];
        if (p.entries_[a][b] != expected) {
          throw std::invalid_argument("Z does not satisfy the declared " + symmetry_name(tag_) + " symmetry");
        }
      }
    }
  }
  if (is_diagonal()) {
    bool distinct = true;
    for (int a = 0; a < N; ++a) {
      for (int b = a + 1; b < N; ++b) distinct = distinct && entries_[a][a] != entries_[b][b];
    }
    simple_spectrum_ = distinct;
  }
}

ZMatrix ZMatrix::diagonal(const IndexSet& set, const std::vector<Rational>& values, ZSymmetry tag) {
  const int N = set.size();
  std::vector<std::vector<Rational>> m(N, std::vector<Rational>(N));
  if (!set.is_signed()) {
    if (static_cast<int>(values.size()) != N) throw std::invalid_argument("diag needs N values");
    for (int a = 0; a < N; ++a) m[a][a] = values[a];
    return ZMatrix(set, m, tag);
  }
  const int n = set.half();
  const bool odd = set.size() % 2 == 1;
  // Odd sets take z_0 first when n + 1 values are given; otherwise z_0 = 0.
  const bool has_zero = odd && static_cast<int>(values.size()) == n + 1;
  if (static_cast<int>(values.size()) != n && !has_zero) {
    throw std::invalid_argument(odd ? "diag on an odd signed set needs values for labels 1..n or 0..n"
                                    : "diag on a signed set needs values for labels 1..n");
  }
  if (tag == ZSymmetry::none) throw std::invalid_argument("signed diagonal Z needs a symmetry tag");
  const int offset = has_zero ? 1 : 0;
  if (has_zero) m[set.position(0)][set.position(0)] = values[0];
  // Z' for diagonal Z has (Z')_{-i,-i} = z_i, so the tag fixes z_{-i}.
  for (int i = 1; i <= n; ++i) {
    const Rational z = values[i - 1 + offset];
    m[set.position(i)][set.position(i)] = z;
    m[set.position(-i)][set.position(-i)] = tag == ZSymmetry::prime_symmetric ? z : -z;
  }
  return ZMatrix(set, m, tag);
}

ZMatrix ZMatrix::parse(const std::string& text, const IndexSet& set, ZSymmetry tag) {
  if (text.rfind("diag:", 0) == 0) {
    std::vector<Rational> values;
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(Rational::parse(item));
    return diagonal(set, values, tag);
  }
  if (text.rfind("json:", 0) == 0) {
    std::ifstream in(text.substr(5));
    if (!in) throw std::invalid_argument("cannot open Z file " + text.substr(5));
    nlohmann::json j = nlohmann::json::parse(in);
    std::vector<std::vector<Rational>> m;
    for (const auto& row : j) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(v.is_string() ? Rational::parse(v.get<std::string>()) : Rational(v.get<std::int64_t>()));
      m.push_back(std::move(r));
    }
    return ZMatrix(set, m, tag);
  }
  throw std::invalid_argument("Z must be given as diag:... or json:<path>");
}

Rational ZMatrix::at(int i, int j) const { return entries_[set_.position(i)][set_.position(j)]; }

bool ZMatrix::is_diagonal() const {
  for (std::size_t a = 0; a < entries_.size(); ++a) {
    for (std::size_t b = 0; b < entries_.size(); ++b) {
      if (a != b && !entries_[a][b].is_zero()) return false;
    }
  }
  return true;
}

bool ZMatrix::is_singular() const { return determinant(entries_).is_zero(); }

ZMatrix ZMatrix::prime() const {
  // (Z')_{ab} = eps_{-b,-a} z_{-b,-a}
  const int N = set_.size();
  ZMatrix out;
  out.set_ = set_;
  out.entries_.assign(N, std::vector<Rational>(N));
  for (int a : set_.labels()) {
    for (int b : set_.labels()) {
      out.entries_[set_.position(a)][set_.position(b)] = Rational(set_.epsilon(-b, -a)) * at(-b, -a);
    }
  }
  return out;
}

std::string ZMatrix::describe() const {
  std::ostringstream os;
  if (is_diagonal()) {
    os << "diag(";
    for (std::size_t a = 0; a < entries_.size(); ++a) os << (a ? "," : "") << entries_[a][a];
    os << ")";
  } else {
    os << "[";
    for (std::size_t a = 0; a < entries_.size(); ++a) {
      os << (a ? ";" : "");
      for (std::size_t b = 0; b < entries_.size(); ++b) os << (b ? "," : "") << entries_[a][b];
    }
    os << "]";
  }
  return os.str();
}

}  // namespace bethe
