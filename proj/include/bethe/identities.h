#pragma once

#include <vector>

#include "bethe/index_set.h"
#include "bethe/report.h"

namespace bethe {

// R(u) R(-u) = (1 - u^2) id on plain sets and R~(u) R~(N - u) = (N u - u^2) id
// on signed sets, as exact polynomial identities in u.
Report verify_r_identities(const std::vector<IndexSet>& sets);

// R_12(u) R_13(u+v) R_23(v) = R_23(v) R_13(u+v) R_12(u) on plain sets; on
// signed sets also the three mixed relations pairing R with R~(v) and
// R~(u+v) on every choice of the site carrying R.
Report verify_yang_baxter(const std::vector<IndexSet>& sets);

// For N <= max_N and k <= N: the ordered R-product divided by 1! 2! ... k!
// equals the permutation sum, H_k^2 = H_k and trace H_k = binom(N, k). Records the certified
// orientation.
Report verify_antisymmetrizers(int max_N);

}  // namespace bethe
