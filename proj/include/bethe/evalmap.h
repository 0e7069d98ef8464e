#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bethe/algebra.h"
#include "bethe/linalg.h"
#include "bethe/report.h"
#include "bethe/twisted.h"
#include "bethe/zmatrix.h"

namespace bethe {

using NamedElement = std::pair<std::string, AlgebraElement>;

// Evaluation maps into U(gl_N); `env` is Algebra::enveloping over the same
// index set as the source algebra.

// T_ij^(1) -> E_ij, T_ij^(r) -> 0 for r >= 2.
AlgebraElement pi_apply(const Algebra& env, const AlgebraElement& a);

// F_ij = E_ij - eps_ij E_{-j,-i}.
AlgebraElement f_generator(const Algebra& env, int i, int j);
// Coefficient of u^{-r} in (u + c)^{-1}, with c = 1/2 for orthogonal and
// c = -1/2 for symplectic forms.
Rational rho_weight(const IndexSet& set, int r);
// S_ij^(r) -> rho_weight(r) F_ij.
AlgebraElement rho_apply(const Algebra& env, const SElement& w);

// E_ij -> matrix unit; products go to matrix products.
RationalMatrix defining_rep(const AlgebraElement& e, const IndexSet& set);

// Pairwise commutators vanish in PBW form and in the defining representation.
Report verify_image_commutativity(const Algebra& env, const std::vector<NamedElement>& elements);

// Coefficients u^-1..u^-levels of pi(B_k), k = 1..N.
std::vector<NamedElement> pi_bethe_images(const Algebra& env, const ZMatrix& z, int levels);
// Coefficients u^-1..u^-D of rho(A_k), k = 1..N.
std::vector<NamedElement> rho_twisted_images(const Algebra& env, const ZMatrix& z, int D);

// pi([a, b]) = [pi(a), pi(b)] for generator pairs with levels <= max_level.
Report verify_pi_homomorphism(const IndexSet& set, int max_level);
// rho kills the symmetry residuals up to order D + 1 and the reflection
// residuals up to total order D, taken as free S-words.
Report verify_rho_homomorphism(const IndexSet& set, int D);

}  // namespace bethe
