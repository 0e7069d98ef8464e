#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bethe/index_set.h"
#include "bethe/linalg.h"
#include "bethe/rational.h"
#include "bethe/tensor.h"

namespace bethe {

enum class ZSymmetry { none, prime_symmetric, prime_skew };

std::string symmetry_name(ZSymmetry s);

// Parameter matrix Z over an index set, stored by label positions.
class ZMatrix {
 public:
  ZMatrix() = default;
  // Checks Z' = Z or Z' = -Z when tagged.
  ZMatrix(IndexSet set, std::vector<std::vector<Rational>> entries, ZSymmetry tag);

  // Plain: one value per label. Signed: values for labels 1..n, or 0..n on odd
  // sets; the negative labels follow the tag (z_{-i} = z_i or -z_i) and z_0
  // defaults to 0.
  static ZMatrix diagonal(const IndexSet& set, const std::vector<Rational>& values, ZSymmetry tag);
  // Grammar: "diag:z1,z2,..." or "json:<path>" (nested array by label order).
  static ZMatrix parse(const std::string& text, const IndexSet& set, ZSymmetry tag);

  const IndexSet& index_set() const { return set_; }
  ZSymmetry tag() const { return tag_; }
  // Entry by labels.
  Rational at(int i, int j) const;
  const std::vector<std::vector<Rational>>& entries() const { return entries_; }
  bool is_diagonal() const;
  // Recorded only for diagonal Z.
  std::optional<bool> simple_spectrum() const { return simple_spectrum_; }
  bool is_singular() const;

  RationalTensor tensor() const { return matrix_tensor(set_, entries_); }
  ZMatrix prime() const;
  std::string describe() const;

 private:
  IndexSet set_;
  std::vector<std::vector<Rational>> entries_;
  ZSymmetry tag_ = ZSymmetry::none;
  std::optional<bool> simple_spectrum_;
};

}  // namespace bethe
