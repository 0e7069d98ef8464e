#pragma once

#include <string>
#include <vector>

namespace bethe {

enum class FormType { none, orthogonal, symplectic };

// Index labels of C^N. Plain sets use 1..N. Signed sets use -n..-1, (0), 1..n
// and carry the bilinear form that defines the prime transposition
// E_ij' = eps_ij E_{-j,-i}.
class IndexSet {
 public:
  IndexSet() = default;

  static IndexSet plain(int N);
  static IndexSet signed_set(int N, FormType form);

  bool is_signed() const { return form_ != FormType::none; }
  FormType form() const { return form_; }
  int size() const { return N_; }
  int half() const { return N_ / 2; }

  // Labels in canonical order (ascending integer value).
  const std::vector<int>& labels() const { return labels_; }
  bool contains(int label) const;
  // 0-based position of a label in canonical order; throws on invalid label.
  int position(int label) const;
  int label(int position) const { return labels_.at(position); }

  // eps_ij: sgn(i)sgn(j) for symplectic, 1 for orthogonal. Throws for plain sets.
  int epsilon(int i, int j) const;

  std::string describe() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.N_ == b.N_ && a.form_ == b.form_;
  }

 private:
  int N_ = 0;
  FormType form_ = FormType::none;
  std::vector<int> labels_;
};

}  // namespace bethe
