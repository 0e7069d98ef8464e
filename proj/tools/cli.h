#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bethe/index_set.h"
#include "bethe/report.h"
#include "bethe/zmatrix.h"
#include "json.hpp"

namespace bethe::cli {

// Bad flags, unknown names or inconsistent kinds; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unset numeric fields are negative or zero and take per-command defaults.
struct RunConfig {
  std::string kind = "gl";
  int N = 0;
  int n = 0;
  std::string z;
  std::string z_symmetry;  // "skew", "symmetric" or empty for the default
  int D = -1;
  int budget = -1;
  int M = 1;
  int k = 0;
  int levels = -1;
  int trials = -1;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  int threads = 0;
  bool reproducible = false;
};

const std::vector<std::string>& verify_checks();
const std::vector<std::string>& compute_objects();

// gl: N labels 1..N. sp: N = 2n. so: N given directly, or N = 2n + 1 from n.
IndexSet make_index_set(const RunConfig& c);
ZMatrix make_z(const RunConfig& c, const IndexSet& set, const std::string& check = {});

Report cmd_verify(const RunConfig& c, const std::string& check);
nlohmann::json cmd_compute(const RunConfig& c, const std::string& object);

// Report or table as text: JSON (indented) or the short text form.
std::string render_report(const Report& r, const RunConfig& c);
std::string render_table(const nlohmann::json& t);

// Full command line; returns the exit code (0 pass, 1 verification failure,
// 2 usage or I/O error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bethe::cli
