#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bethe/index_set.h"
#include "bethe/linalg.h"
#include "bethe/polynomial.h"
#include "bethe/report.h"
#include "bethe/twisted.h"
#include "bethe/zmatrix.h"

namespace bethe {

// Values of coordinate functions; twisted points list fundamental-domain
// coordinates only.
using CurrentPoint = std::map<VarId, Rational>;

// Polynomial functions on the truncated current space g_{M,N} (plain) or on
// its twisted subspace f_{M,N}, with the graded Poisson bracket. Twisted
// polynomials are kept in a fundamental domain of y_ij^(r) = eps_ij (-1)^r
// y_{-j,-i}^(r). Brackets of coordinates are memoized, so an instance is
// not thread-safe.
class PoissonContext {
 public:
  static PoissonContext plain(IndexSet set, int M);
  static PoissonContext twisted(IndexSet set, int M);

  const IndexSet& index_set() const { return set_; }
  int M() const { return M_; }
  bool is_twisted() const { return twisted_; }
  char letter() const { return twisted_ ? 'y' : 'x'; }
  std::string describe() const;

  // Coordinate (i, j, r) in reduced form: delta_ij for r = 0, zero for r > M.
  Polynomial variable(int i, int j, int r) const;
  // Sorted fundamental-domain coordinates.
  const std::vector<VarId>& coordinates() const { return coords_; }
  // Drops levels above M and rewrites twisted variables into the domain.
  Polynomial reduce(const Polynomial& p) const;

  Polynomial coordinate_bracket(VarId a, VarId b) const;
  Polynomial bracket(const Polynomial& f, const Polynomial& g) const;

 private:
  PoissonContext(IndexSet set, int M, bool twisted);
  Polynomial raw_bracket(int i, int j, int p, int k, int l, int q) const;

  IndexSet set_;
  int M_;
  bool twisted_;
  std::vector<VarId> coords_;
  mutable std::map<std::pair<VarId, VarId>, Polynomial> cache_;
};

// Coefficients r = 0..kM of b_k(u) (plain) or a_k(u) (twisted) read off the
// Laplace expansion of det(u^M + X(u) + Z v) and divided by binom(N, k).
std::vector<Polynomial> bethe_poly(const PoissonContext& ctx, int k, const ZMatrix& z);
// Same coefficients from the permutation sum over pairs (g, h) of products of
// the symbol series, reduced modulo levels above M.
std::vector<Polynomial> bethe_poly_by_permutations(const PoissonContext& ctx, int k, const ZMatrix& z);
// Same coefficients as top-degree symbols of the quantum generators B_k or
// A_k, reduced modulo levels above M.
std::vector<Polynomial> bethe_poly_from_symbols(const PoissonContext& ctx, int k, const ZMatrix& z);

// Top-degree symbol of a combination of S-words in the twisted context.
Polynomial twisted_symbol(const PoissonContext& ctx, const SElement& w, int d);

// All coefficients at u^a v^b, a + b <= N, of det(u + Y + Z v) in the M = 1
// context; keys are (a, b).
std::map<std::pair<int, int>, Polynomial> classical_det_poly(const PoissonContext& ctx, const ZMatrix& z);

enum class NilpotentVariant { borel_slice, classical_so_even };

// Principal nilpotent E by label positions. Plain sets: sum of E_{i+1,i}.
// Signed sets: the lower-triangular element adapted to the form; the
// classical_so_even variant exists only for even orthogonal sets.
RationalMatrix principal_nilpotent(const IndexSet& set, NilpotentVariant variant = NilpotentVariant::borel_slice);

// E^(M) + (upper triangular part of the context space).
struct Slice {
  std::string name;
  CurrentPoint fixed;
  std::vector<VarId> free;
};

Slice make_slice(const PoissonContext& ctx, const RationalMatrix& e);
// E^(M) as a point of the context space.
CurrentPoint nilpotent_point(const PoissonContext& ctx, const RationalMatrix& e);
Polynomial restrict_to_slice(const Polynomial& p, const Slice& s);
CurrentPoint random_slice_point(const Slice& s, std::uint64_t seed, int bound = 9);
CurrentPoint random_point(const PoissonContext& ctx, std::uint64_t seed, int bound = 9);

// Exact rank by fraction-free elimination over big integers.
int exact_rank(const RationalMatrix& m);
int jacobian_rank(const std::vector<Polynomial>& fs, const std::vector<VarId>& vars, const CurrentPoint& p);
int poisson_rank_at(const PoissonContext& ctx, const CurrentPoint& p);

// Dimension formulas. Twisted ones take the half rank n and the M parameter
// m (M = 2m + 1 for so_{2n+1} and sp_{2n}, M = 2m for so_{2n}).
int dim_t_slice(int N, int M);
int plain_rank_bound(int N, int M);
int twisted_slice_dim(const IndexSet& set, int M);
int twisted_half_rank(const IndexSet& set, int M);
// dim f_{M,N} from the dimensions of the two eigenspaces of sigma.
int twisted_space_dim(const IndexSet& set, int M);

// Twisted coefficients a_k^(r) with 1 <= r <= kM and N - k + r even.
std::vector<std::pair<std::string, Polynomial>> twisted_generators(const PoissonContext& ctx, const ZMatrix& z);
// Plain coefficients b_k^(r) with 1 <= r <= kM.
std::vector<std::pair<std::string, Polynomial>> plain_generators(const PoissonContext& ctx, const ZMatrix& z);

Report verify_poisson_jacobi(const PoissonContext& ctx, std::uint64_t seed, int trials);
Report verify_symbol_homomorphism(int N, int M, std::uint64_t seed, int pairs);
Report verify_laplace_consistency(const PoissonContext& ctx, const ZMatrix& z);
Report verify_poisson_involution(const PoissonContext& ctx, const ZMatrix& z);
Report verify_jacobian(const PoissonContext& ctx, const ZMatrix& z, std::uint64_t seed);
Report verify_poisson_rank(const PoissonContext& ctx, std::uint64_t seed, int samples);
Report verify_twisted_parity(const PoissonContext& ctx, const ZMatrix& z);
Report verify_classical_so_even(int n, const ZMatrix& z, std::uint64_t seed);

}  // namespace bethe
