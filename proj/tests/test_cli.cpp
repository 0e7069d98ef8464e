#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bethe/yangian.h"
#include "cli.h"
#include "doctest.h"

using namespace bethe;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bethe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run_cli({"verify", "rtt", "--kind", "gl", "--N", "2", "--D", "3"}).code == 0);
  CHECK(run_cli({"verify", "sklyanin", "--kind", "sp", "--n", "1", "--D", "4"}).code == 0);
  CHECK(run_cli({"verify", "bethe-commute", "--kind", "gl", "--N", "2", "--Z", "diag:1,2", "--budget", "5"}).code == 0);
  auto unknown = run_cli({"verify", "no-such-check", "--kind", "gl", "--N", "2"});
  CHECK(unknown.code == 2);
  CHECK_FALSE(unknown.err.empty());
  CHECK(run_cli({"verify", "rtt", "--kind", "sp", "--n", "1"}).code == 2);
  CHECK(run_cli({"verify", "rtt", "--kind", "gl"}).code == 2);
  CHECK(run_cli({"verify", "rtt", "--kind", "gl", "--N", "2", "--Z", "diag:1"}).code == 0);
  CHECK(run_cli({"verify", "hat-identity", "--kind", "gl", "--N", "2", "--Z", "diag:1"}).code == 2);
  CHECK(run_cli({"verify", "prop36", "--kind", "so", "--n", "1", "--Z", "diag:1,2,3"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("verification failures exit 1") {
  // A scalar Z makes the b_1 coefficients dependent, so the rank falls short.
  auto bad = run_cli({"verify", "jacobian", "--kind", "gl", "--N", "2", "--Z", "diag:1,1"});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["result"] == "fail");
  auto rank = run_cli({"verify", "poisson-rank", "--kind", "so", "--N", "4", "--M", "1"});
  CHECK(rank.code == 2);
}

TEST_CASE("report schema") {
  auto r = run_cli({"verify", "rtt", "--kind", "gl", "--N", "2", "--D", "2", "--reproducible"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["check"] == "rtt");
  CHECK(j["result"] == "pass");
  CHECK(j["runtime_ms"] == 0);
  CHECK(j["details"].is_array());
  CHECK(j["details"][0].contains("item"));
  CHECK(j["details"][0]["residual_zero"] == true);
  CHECK(j["conventions"].contains("h_k_orientation"));
  CHECK(j["conventions"].contains("s_uk_orientation"));
  auto tw = nlohmann::json::parse(run_cli({"verify", "twisted-symmetry", "--kind", "so", "--n", "1", "--D", "2"}).out);
  CHECK(tw["conventions"]["s_uk_orientation"] == "rightward");
}

TEST_CASE("compute tables") {
  SUBCASE("quantum determinant has D + 1 coefficients") {
    auto r = run_cli({"compute", "qdet", "--kind", "gl", "--N", "2", "--D", "4"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["series"].size() == 1);
    CHECK(j["series"][0]["k"] == 2);
    CHECK(j["series"][0]["coeffs"].size() == 5);
  }

  SUBCASE("constant term of B_2 for N = 3 is e_1(z) / 3") {
    auto j = nlohmann::json::parse(
        run_cli({"compute", "bethe", "--kind", "gl", "--N", "3", "--Z", "diag:1,2,3", "--k", "2", "--D", "3"}).out);
    auto c0 = j["series"][0]["coeffs"][0];
    REQUIRE(c0.size() == 1);
    CHECK(c0[0]["monomial"].empty());
    CHECK(Rational::parse(c0[0]["coeff"].get<std::string>()) == Rational(2));
  }

  SUBCASE("table round-trips against the library") {
    cli::RunConfig c;
    c.kind = "gl";
    c.N = 2;
    c.z = "diag:1,2";
    c.D = 3;
    c.k = 1;
    auto j = cli::cmd_compute(c, "bethe");
    const auto set = IndexSet::plain(2);
    Algebra y = Algebra::yangian(set);
    auto b = bethe_series(y, 1, ZMatrix::diagonal(set, {Rational(1), Rational(2)}, ZSymmetry::none), 3);
    for (int r = 0; r <= 3; ++r) {
      AlgebraElement back;
      for (const auto& term : j["series"][0]["coeffs"][r]) {
        Monomial m;
        for (const auto& g : term["monomial"]) m.push_back({g[0].get<int>(), g[1].get<int>(), g[2].get<int>()});
        back.add_term(m, Rational::parse(term["coeff"].get<std::string>()));
      }
      CHECK(back == b.coeffs[r]);
    }
  }

  SUBCASE("poisson-bethe for sp_2 shows the parity zeros") {
    auto j = nlohmann::json::parse(run_cli({"compute", "poisson-bethe", "--kind", "sp", "--n", "1", "--M", "1"}).out);
    REQUIRE(j["series"].size() == 2);
    auto a1 = j["series"][0]["coeffs"];
    auto a2 = j["series"][1]["coeffs"];
    CHECK(a1[0].empty());
    CHECK_FALSE(a1[1].empty());
    CHECK_FALSE(a2[0].empty());
    CHECK(a2[1].empty());
    CHECK_FALSE(a2[2].empty());
  }

  SUBCASE("twisted-bethe needs a signed kind") {
    CHECK(run_cli({"compute", "twisted-bethe", "--kind", "gl", "--N", "2"}).code == 2);
    CHECK(run_cli({"compute", "twisted-bethe", "--kind", "sp", "--n", "1", "--D", "2"}).code == 0);
  }
}

TEST_CASE("determinism and output files") {
  const auto dir = std::filesystem::temp_directory_path() / "bethe_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> runs = {
      {"verify", "jacobian", "--kind", "gl", "--N", "3", "--M", "2", "--seed", "4", "--reproducible"},
      {"verify", "symbol-hom", "--kind", "gl", "--N", "2", "--M", "2", "--seed", "9", "--reproducible"},
      {"verify", "twisted-commute", "--kind", "sp", "--n", "1", "--budget", "3", "--threads", "2", "--reproducible"},
      {"compute", "twisted-bethe", "--kind", "so", "--n", "1", "--D", "2"}};
  for (const auto& args : runs) {
    auto a = args, b = args;
    a.push_back("--out");
    a.push_back((dir / "a.json").string());
    b.push_back("--out");
    b.push_back((dir / "b.json").string());
    REQUIRE(run_cli(a).code == 0);
    REQUIRE(run_cli(b).code == 0);
    CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));
    CHECK_FALSE(read_file(dir / "a.json").empty());
  }

  SUBCASE("default output directory from the environment") {
    ::setenv("BETHE_OUTPUT_DIR", dir.string().c_str(), 1);
    auto r = run_cli({"verify", "rtt", "--kind", "gl", "--N", "2", "--D", "2"});
    ::unsetenv("BETHE_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::exists(dir / "rtt.json"));
  }

  SUBCASE("unwritable output is an I/O error") {
    CHECK(run_cli({"compute", "qdet", "--kind", "gl", "--N", "2", "--out", (dir / "missing" / "x.json").string()}).code ==
          2);
  }
  std::filesystem::remove_all(dir);
}
