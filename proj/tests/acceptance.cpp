// Runs every acceptance criterion through the CLI entry points and prints one
// line per criterion. Exit status 0 only when all criteria pass.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "bethe/yangian.h"
#include "cli.h"

using namespace bethe;

namespace {

struct Run {
  std::string kind;
  int N = 0;
  int n = 0;
  std::string check;
  std::function<void(cli::RunConfig&)> tweak;
};

cli::RunConfig config(const Run& r) {
  cli::RunConfig c;
  c.kind = r.kind;
  c.N = r.N;
  c.n = r.n;
  c.threads = 0;
  if (r.tweak) r.tweak(c);
  return c;
}

struct Outcome {
  bool passed = true;
  std::string detail;
};

Outcome run_all(const std::vector<Run>& runs) {
  Outcome o;
  for (const auto& r : runs) {
    Report rep = cli::cmd_verify(config(r), r.check);
    if (rep.details.empty()) {
      o.passed = false;
      o.detail += (o.detail.empty() ? "" : "; ") + r.check + ": no items checked";
    } else if (!rep.passed()) {
      o.passed = false;
      std::ostringstream os;
      os << r.check << " " << rep.params.dump() << ": " << rep.failures() << " nonzero";
      for (const auto& d : rep.details) {
        if (!d.residual_zero) {
          os << " [" << d.item << "]";
          break;
        }
      }
      o.detail += (o.detail.empty() ? "" : "; ") + os.str();
    }
  }
  return o;
}

auto with_d(int D) {
  return [D](cli::RunConfig& c) { c.D = D; };
}
auto with_m(int M) {
  return [M](cli::RunConfig& c) { c.M = M; };
}

// B_k by the permutation sum and by the tensor trace agree for every k.
Outcome dual_path() {
  Outcome o;
  for (auto [N, D] : std::vector<std::pair<int, int>>{{2, 5}, {3, 4}}) {
    const IndexSet set = IndexSet::plain(N);
    Algebra y = Algebra::yangian(set);
    std::vector<Rational> zs;
    for (int i = 1; i <= N; ++i) zs.push_back(Rational(i));
    const ZMatrix z = ZMatrix::diagonal(set, zs, ZSymmetry::none);
    for (int k = 1; k <= N; ++k) {
      // bethe_series itself recomputes the trace route; compare explicitly too.
      const auto perm = bethe_series(y, k, z, D);
      const auto trace = bethe_series_trace(y, k, z, D);
      if (perm.coeffs != trace.coeffs) {
        o.passed = false;
        o.detail += "N=" + std::to_string(N) + " k=" + std::to_string(k) + " differs; ";
      }
    }
  }
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Repeated CLI runs with fixed seeds write byte-identical files.
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "bethe_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> runs = {
      {"verify", "jacobian", "--kind", "so", "--N", "4", "--M", "2", "--seed", "5", "--reproducible"},
      {"verify", "symbol-hom", "--kind", "gl", "--N", "2", "--M", "3", "--seed", "5", "--reproducible"},
      {"verify", "poisson-rank", "--kind", "gl", "--N", "3", "--M", "2", "--seed", "5", "--reproducible"},
      {"verify", "bethe-commute", "--kind", "gl", "--N", "2", "--budget", "4", "--reproducible"},
      {"verify", "twisted-commute", "--kind", "so", "--n", "1", "--budget", "3", "--reproducible"},
      {"compute", "bethe", "--kind", "gl", "--N", "3", "--D", "3"},
      {"compute", "twisted-bethe", "--kind", "sp", "--n", "1", "--D", "3"},
      {"compute", "poisson-bethe", "--kind", "so", "--N", "4", "--M", "2"}};
  int index = 0;
  for (const auto& args : runs) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir / ("run" + std::to_string(index) + "_" + std::to_string(rep) + ".json");
      std::vector<std::string> full = {"bethe"};
      full.insert(full.end(), args.begin(), args.end());
      full.push_back("--out");
      full.push_back(path.string());
      std::vector<const char*> argv;
      for (const auto& a : full) argv.push_back(a.c_str());
      std::ostringstream out, err;
      const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      const std::string bytes = read_file(path);
      if (code != 0 || bytes.empty()) {
        o.passed = false;
        o.detail += args[1] + " exit " + std::to_string(code) + "; ";
      }
      if (rep == 0) {
        first = bytes;
      } else if (bytes != first) {
        o.passed = false;
        o.detail += args[1] + " output differs; ";
      }
    }
    ++index;
  }
  std::filesystem::remove_all(dir);
  return o;
}

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "R-matrix unitarity and twisted R~ identities", 1,
       [] {
         return run_all({{"gl", 2, 0, "r-matrix", {}}, {"gl", 3, 0, "r-matrix", {}}, {"gl", 4, 0, "r-matrix", {}},
                         {"so", 3, 0, "r-matrix", {}}, {"so", 4, 0, "r-matrix", {}}, {"sp", 2, 0, "r-matrix", {}},
                         {"sp", 4, 0, "r-matrix", {}}});
       }},
      {2, "Yang-Baxter and mixed Yang-Baxter relations", 10,
       [] {
         return run_all({{"gl", 2, 0, "yang-baxter", {}}, {"gl", 3, 0, "yang-baxter", {}},
                         {"so", 3, 0, "yang-baxter", {}}, {"sp", 2, 0, "yang-baxter", {}}});
       }},
      {3, "antisymmetrizers: product, idempotence, trace, orientation", 10,
       [] { return run_all({{"gl", 4, 0, "antisymmetrizer", {}}}); }},
      {4, "RTT relation N=2 D=4, N=3 D=3", 60,
       [] { return run_all({{"gl", 2, 0, "rtt", with_d(4)}, {"gl", 3, 0, "rtt", with_d(3)}}); }},
      {5, "fusion N=2,3 orders <= 3", 60,
       [] { return run_all({{"gl", 2, 0, "fusion", with_d(3)}, {"gl", 3, 0, "fusion", with_d(3)}}); }},
      {6, "Bethe commutativity", 600,
       [&] {
         return run_all({{"gl", 2, 0, "bethe-commute",
                          [&](cli::RunConfig& c) {
                            c.z = "diag:1,2";
                            c.budget = 5;
                          }},
                         {"gl", 3, 0, "bethe-commute", [&](cli::RunConfig& c) {
                            c.z = "diag:1,2,3";
                            c.budget = 4;
                          }}});
       }},
      {7, "centrality of the quantum determinant", 120,
       [] {
         auto t = [](cli::RunConfig& c) {
           c.D = 3;
           c.levels = 3;
         };
         return run_all({{"gl", 2, 0, "centrality", t}, {"gl", 3, 0, "centrality", t}});
       }},
      {8, "inverse-series product identity N=2 D=4", 60,
       [&] {
         return run_all({{"gl", 2, 0, "hat-identity", [](cli::RunConfig& c) {
                            c.z = "diag:1,2";
                            c.D = 4;
                          }}});
       }},
      {9, "dual-path equality of B_k", 600, dual_path},
      {10, "twisted symmetry relation orders <= 4", 120,
       [] { return run_all({{"sp", 0, 1, "twisted-symmetry", with_d(4)}, {"so", 0, 1, "twisted-symmetry", with_d(4)}}); }},
      {11, "reflection relation sp_2 D=4, so_3 D=3", 900,
       [] {
         return run_all({{"sp", 0, 1, "twisted-reflection", with_d(4)}, {"so", 0, 1, "twisted-reflection", with_d(3)}});
       }},
      {12, "twisted Bethe commutativity", 1800,
       [] {
         return run_all({{"sp", 0, 1, "twisted-commute",
                          [](cli::RunConfig& c) {
                            c.z = "diag:1";
                            c.budget = 4;
                          }},
                         {"so", 0, 1, "twisted-commute", [](cli::RunConfig& c) {
                            c.z = "diag:1";
                            c.budget = 3;
                          }}});
       }},
      {13, "Sklyanin determinant to order 4 and centrality", 300,
       [] {
         auto t = [](cli::RunConfig& c) {
           c.D = 4;
           c.levels = 2;
         };
         return run_all({{"sp", 0, 1, "sklyanin", t}, {"so", 0, 1, "sklyanin", t}});
       }},
      {14, "inverse twisted series against the simplified trace", 300,
       [] { return run_all({{"sp", 0, 1, "prop36", with_d(3)}, {"so", 0, 1, "prop36", with_d(3)}}); }},
      {15, "rho is a homomorphism", 300,
       [] { return run_all({{"sp", 0, 1, "rho-hom", with_d(3)}, {"so", 0, 1, "rho-hom", with_d(3)}}); }},
      {16, "commutativity of evaluation images", 300,
       [&] {
         return run_all({{"gl", 3, 0, "image-commute",
                          [](cli::RunConfig& c) {
                            c.z = "diag:1,2,3";
                            c.levels = 3;
                          }},
                         {"sp", 0, 1, "image-commute", with_d(3)},
                         {"so", 0, 1, "image-commute", with_d(3)}});
       }},
      {17, "symbol map is a Poisson homomorphism", 300,
       [] {
         auto t = [](int M) {
           return [M](cli::RunConfig& c) {
             c.M = M;
             c.trials = 50;
             c.seed = 17;
           };
         };
         return run_all({{"gl", 2, 0, "symbol-hom", t(2)}, {"gl", 2, 0, "symbol-hom", t(3)}});
       }},
      {18, "Laplace expansion against symbols", 300,
       [] {
         return run_all({{"gl", 2, 0, "laplace", with_m(1)}, {"gl", 2, 0, "laplace", with_m(2)},
                         {"gl", 3, 0, "laplace", with_m(1)}, {"gl", 3, 0, "laplace", with_m(2)},
                         {"sp", 0, 1, "laplace", with_m(1)}, {"sp", 0, 1, "laplace", with_m(2)},
                         {"sp", 0, 1, "laplace", with_m(3)}, {"so", 0, 1, "laplace", with_m(1)},
                         {"so", 0, 1, "laplace", with_m(2)}});
       }},
      {19, "Jacobian rank on t_{M,N}", 120,
       [] {
         return run_all({{"gl", 2, 0, "jacobian", with_m(1)}, {"gl", 2, 0, "jacobian", with_m(2)},
                         {"gl", 3, 0, "jacobian", with_m(1)}, {"gl", 3, 0, "jacobian", with_m(2)}});
       }},
      {20, "Poisson rank at E^(M), plain", 120,
       [] {
         return run_all({{"gl", 2, 0, "poisson-rank", with_m(1)}, {"gl", 2, 0, "poisson-rank", with_m(2)},
                         {"gl", 3, 0, "poisson-rank", with_m(1)}, {"gl", 3, 0, "poisson-rank", with_m(2)}});
       }},
      {21, "Jacobian rank on s_{M,N}", 600,
       [] {
         return run_all({{"so", 0, 1, "jacobian", with_m(1)}, {"so", 0, 1, "jacobian", with_m(3)},
                         {"sp", 0, 1, "jacobian", with_m(1)}, {"sp", 0, 1, "jacobian", with_m(3)},
                         {"so", 4, 0, "jacobian", with_m(2)}});
       }},
      {22, "Poisson rank at E^(M), twisted", 600,
       [] {
         return run_all({{"so", 0, 1, "poisson-rank", with_m(1)}, {"so", 0, 1, "poisson-rank", with_m(3)},
                         {"sp", 0, 1, "poisson-rank", with_m(1)}, {"sp", 0, 1, "poisson-rank", with_m(3)},
                         {"so", 4, 0, "poisson-rank", with_m(2)}});
       }},
      {23, "parity of twisted coefficients", 300,
       [] {
         return run_all({{"sp", 0, 1, "twisted-parity", with_m(1)}, {"sp", 0, 1, "twisted-parity", with_m(3)},
                         {"so", 0, 1, "twisted-parity", with_m(1)}, {"so", 0, 1, "twisted-parity", with_m(3)},
                         {"so", 4, 0, "twisted-parity", with_m(2)}});
       }},
      {24, "classical so_4 Jacobian rank", 300, [] { return run_all({{"so", 0, 2, "classical-so2n", {}}}); }},
  };

  int failures = 0;
  Stopwatch total;
  auto report = [&](int id, const std::string& title, const Outcome& o, double seconds, double limit) {
    const bool in_time = seconds <= limit;
    const bool ok = o.passed && in_time;
    failures += ok ? 0 : 1;
    std::printf("[%s] %2d. %s (%.2fs, limit %.0fs)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), seconds, limit,
                in_time ? "" : " over time", o.detail.empty() ? "" : (" :: " + o.detail).c_str());
    std::fflush(stdout);
  };
  for (const auto& c : criteria) {
    Stopwatch clock;
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    report(c.id, c.title, o, clock.elapsed_ms() / 1000.0, c.limit_s);
  }
  {
    Stopwatch clock;
    Outcome o = determinism();
    const double suite = total.elapsed_ms() / 1000.0;
    if (suite > 3600) {
      o.passed = false;
      o.detail += "suite took " + std::to_string(suite) + "s";
    }
    report(25, "CLI determinism and total suite time under one hour", o, clock.elapsed_ms() / 1000.0, 3600);
  }
  std::printf("%d/25 criteria passed\n", 25 - failures);
  return failures == 0 ? 0 : 1;
}
