#include "bethe/index_set.h"

#include <stdexcept>

namespace bethe {

IndexSet IndexSet::plain(int N) {
  if (N < 1) {
    throw std::invalid_argument("index set needs N >= 1");
  }
  IndexSet s;
  s.N_ = N;
  for (int i = 1; i <= N; ++i) {
    s.labels_.push_back(i);
  }
  return s;
}

IndexSet IndexSet::signed_set(int N, FormType form) {
  if (N < 1) {
    throw std::invalid_argument("index set needs N >= 1");
  }
  if (form == FormType::none) {
    throw std::invalid_argument("signed index set needs a bilinear form");
  }
  if (form == FormType::symplectic && N % 2 != 0) {
    throw std::invalid_argument("symplectic form needs even N");
  }
  IndexSet s;
  s.N_ = N;
  s.form_ = form;
  int n = N / 2;
  for (int i = -n; i <= n; ++i) {
    if (i == 0 && N % 2 == 0) {
      continue;
    }
    s.labels_.push_back(i);
  }
  return s;
}

bool IndexSet::contains(int label) const {
  if (!is_signed()) {
    return label >= 1 && label <= N_;
  }
  int n = N_ / 2;
  if (label == 0) {
    return N_ % 2 == 1;
  }
  return label >= -n && label <= n;
}

int IndexSet::position(int label) const {
  if (!contains(label)) {
    throw std::invalid_argument("index " + std::to_string(label) + " outside " + describe());
  }
  if (!is_signed()) {
    return label - 1;
  }
  int n = N_ / 2;
  if (N_ % 2 == 1 || label < 0) {
    return label + n;
  }
  return label + n - 1;
}

int IndexSet::epsilon(int i, int j) const {
  if (!is_signed()) {
    throw std::invalid_argument("epsilon is defined only on signed index sets");
  }
  if (form_ == FormType::orthogonal) {
    return 1;
  }
  auto sgn = [](int x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  return sgn(i) * sgn(j);
}

std::string IndexSet::describe() const {
  switch (form_) {
    case FormType::none:
      return "gl_" + std::to_string(N_);
    case FormType::orthogonal:
      return "so_" + std::to_string(N_);
    case FormType::symplectic:
      return "sp_" + std::to_string(N_);
  }
  return "?";
}

}  // namespace bethe
