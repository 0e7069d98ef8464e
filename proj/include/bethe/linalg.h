#pragma once

#include <optional>
#include <vector>

#include "bethe/rational.h"

namespace bethe {

using RationalMatrix = std::vector<std::vector<Rational>>;

Rational determinant(const RationalMatrix& m);
RationalMatrix matrix_product(const RationalMatrix& a, const RationalMatrix& b);
// Throws std::domain_error when m is singular.
RationalMatrix matrix_inverse(const RationalMatrix& m);

struct LinearSolution {
  std::vector<Rational> x;  // free variables set to zero
  int rank = 0;
  bool unique = false;
};
// Solves A x = b exactly; nullopt when inconsistent.
std::optional<LinearSolution> solve_linear(const RationalMatrix& a, const std::vector<Rational>& b);

}  // namespace bethe
