#include "bethe/identities.h"

#include <sstream>

#include "bethe/bivariate.h"
#include "bethe/tensor.h"

namespace bethe {

namespace {

const RationalRing kQ;
using RT = TensorRing<RationalRing>;
using Bi = BivariateRing<RT>;

// a u + b v - x on three sites, with x embedded at the given sites.
Bi::value_type affine(const Bi& bi, const RT& rt, int a, int b, const RationalTensor& x, std::vector<int> sites) {
  auto out = bi.monomial(1, 0, rt.scale(Rational(a), rt.one()));
  bi.add_to(out, bi.monomial(0, 1, rt.scale(Rational(b), rt.one())));
  bi.add_to(out, bi.monomial(0, 0, tensor_scale(Rational(-1), embed(x, sites, 3))));
  return out;
}

bool braid_holds(const Bi& bi, const Bi::value_type& a, const Bi::value_type& b, const Bi::value_type& c) {
  return bi.is_zero(bi.sub(bi.mul(bi.mul(a, b), c), bi.mul(bi.mul(c, b), a)));
}

std::string sites_str(const std::vector<int>& s) {
  std::string out;
  for (int x : s) out += std::to_string(x);
  return out;
}

}  // namespace

Report verify_r_identities(const std::vector<IndexSet>& sets) {
  Stopwatch clock;
  Report rep;
  rep.check = "r-matrix";
  rep.params = {{"sets", nlohmann::json::array()}};
  for (const auto& set : sets) {
    rep.params["sets"].push_back(set.describe());
    const int N = set.size();
    auto plain = upoly_mul(yang_r(set), upoly_substitute(yang_r(set), Rational(-1), Rational(0)));
    auto expected = upoly_scalar(set, 2, {Rational(1), Rational(0), Rational(-1)});
    rep.add(set.describe() + ": R(u) R(-u) = 1 - u^2", plain == expected, "identity fails");
    if (set.is_signed()) {
      auto tw = upoly_mul(r_tilde(set), upoly_substitute(r_tilde(set), Rational(-1), Rational(N)));
      auto tw_expected = upoly_scalar(set, 2, {Rational(0), Rational(N), Rational(-1)});
      rep.add(set.describe() + ": R~(u) R~(N - u) = N u - u^2", tw == tw_expected, "identity fails");
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_yang_baxter(const std::vector<IndexSet>& sets) {
  Stopwatch clock;
  Report rep;
  rep.check = "yang-baxter";
  rep.params = {{"sets", nlohmann::json::array()}};
  for (const auto& set : sets) {
    rep.params["sets"].push_back(set.describe());
    RT rt(kQ, set, 3);
    Bi bi(rt, -100, -100);
    const auto p = flip(set);
    const bool ybe = braid_holds(bi, affine(bi, rt, 1, 0, p, {1, 2}), affine(bi, rt, 1, 1, p, {1, 3}),
                                 affine(bi, rt, 0, 1, p, {2, 3}));
    rep.add(set.describe() + ": R_12(u) R_13(u+v) R_23(v) braid relation", ybe, "relation fails");
    if (!set.is_signed()) continue;
    const auto q = prime_flip(set);
    // R(u) on one pair, R~(v) and R~(u+v) on the other two, in the order
    // fixed by which pair carries R.
    const std::vector<std::vector<std::vector<int>>> layouts = {
        {{1, 2}, {1, 3}, {2, 3}}, {{1, 3}, {1, 2}, {2, 3}}, {{2, 3}, {1, 2}, {1, 3}}};
    for (const auto& l : layouts) {
      const bool ok = braid_holds(bi, affine(bi, rt, 1, 0, p, l[0]), affine(bi, rt, 0, 1, q, l[1]),
                                  affine(bi, rt, 1, 1, q, l[2]));
      rep.add(set.describe() + ": mixed relation R_" + sites_str(l[0]) + "(u) R~_" + sites_str(l[1]) + "(v) R~_" +
                  sites_str(l[2]) + "(u+v)",
              ok, "relation fails");
    }
  }
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

Report verify_antisymmetrizers(int max_N) {
  Stopwatch clock;
  Report rep;
  rep.check = "antisymmetrizer";
  rep.params = {{"max_N", max_N}};
  std::string orientation;
  for (int N = 1; N <= max_N; ++N) {
    const IndexSet set = IndexSet::plain(N);
    for (int k = 1; k <= N; ++k) {
      const std::string tag = "N=" + std::to_string(N) + ", k=" + std::to_string(k);
      const auto oracle = antisymmetrizer_oracle(k, set);
      // The R-product equals 1! 2! ... k! times the permutation sum.
      std::string here = "none";
      try {
        here = antisymmetrizer_certified(k, set).orientation;
      } catch (const std::logic_error&) {
      }
      rep.add(tag + ": normalized ordered product equals the permutation sum", here != "none",
              "neither orientation matches");
      if (here != "both" && here != "none") {
        orientation = orientation.empty() || orientation == here ? here : "inconsistent";
      }
      rep.add(tag + ": H^2 = H", tensor_mul(oracle, oracle) == oracle, "not idempotent");
      const Rational trace = tensor_trace(oracle);
      std::ostringstream trace_str;
      trace_str << "trace " << trace;
      rep.add(tag + ": trace H = binom(N, k)", trace == Rational(binomial(N, k)), trace_str.str());
    }
  }
  rep.conventions["h_k_orientation"] = orientation.empty() ? "both" : orientation;
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

}  // namespace bethe
