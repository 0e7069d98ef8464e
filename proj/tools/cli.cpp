#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "bethe/evalmap.h"
#include "bethe/identities.h"
#include "bethe/poisson.h"
#include "bethe/tensor.h"
#include "bethe/twisted.h"
#include "bethe/yangian.h"

namespace bethe::cli {

namespace {

bool is_twisted_kind(const RunConfig& c) { return c.kind == "so" || c.kind == "sp"; }

int or_default(int value, int fallback) { return value >= 0 ? value : fallback; }

void require_kind(const RunConfig& c, bool twisted, const std::string& check) {
  if (twisted != is_twisted_kind(c)) {
    throw UsageError("check '" + check + "' needs --kind " + (twisted ? "so or sp" : "gl"));
  }
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

nlohmann::json monomial_json(const Monomial& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : m) out.push_back({g.row, g.col, g.level});
  return out;
}

nlohmann::json element_json(const AlgebraElement& e) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : e.terms()) out.push_back({{"monomial", monomial_json(m)}, {"coeff", rational_str(c)}});
  return out;
}

nlohmann::json element_json(const SElement& e) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [w, c] : e.terms()) out.push_back({{"monomial", monomial_json(w)}, {"coeff", rational_str(c)}});
  return out;
}

// Commutative monomials list each variable once per power.
nlohmann::json element_json(const Polynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json mono = nlohmann::json::array();
    for (const auto& [v, e] : m) {
      auto parts = split_symbol_var(v);
      for (int t = 0; t < e; ++t) mono.push_back({parts.i, parts.j, parts.r});
    }
    out.push_back({{"monomial", mono}, {"coeff", rational_str(c)}});
  }
  return out;
}

template <typename Seq>
nlohmann::json series_entry(int k, const Seq& coeffs) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : coeffs) list.push_back(element_json(c));
  return {{"k", k}, {"coeffs", list}};
}

std::vector<int> k_range(const RunConfig& c, int N) {
  if (c.k != 0) {
    if (c.k < 1 || c.k > N) throw UsageError("--k must lie in 1..N");
    return {c.k};
  }
  std::vector<int> out;
  for (int k = 1; k <= N; ++k) out.push_back(k);
  return out;
}

PoissonContext poisson_context(const RunConfig& c, const IndexSet& set) {
  if (c.M < 1) throw UsageError("--M must be at least 1");
  return is_twisted_kind(c) ? PoissonContext::twisted(set, c.M) : PoissonContext::plain(set, c.M);
}

// Orientation conventions every report carries.
void fill_conventions(Report& r, const RunConfig& c, const IndexSet& set) {
  if (!r.conventions.count("h_k_orientation")) {
    r.conventions["h_k_orientation"] = set.size() >= 2 ? antisymmetrizer_certified(2, set).orientation : "both";
  }
  if (!r.conventions.count("s_uk_orientation")) {
    r.conventions["s_uk_orientation"] = is_twisted_kind(c) ? "rightward" : "not applicable";
  }
}

Report merge(const std::string& check, std::vector<Report> parts) {
  Report out;
  out.check = check;
  out.params = nlohmann::json::array();
  for (auto& p : parts) {
    const std::string prefix = parts.size() > 1 ? p.check + " " : "";
    for (auto& d : p.details) out.details.push_back({prefix + d.item, d.residual_zero, d.residual});
    out.params.push_back(p.params);
    out.runtime_ms += p.runtime_ms;
    for (auto& [key, value] : p.conventions) out.conventions[key] = value;
    for (auto& n : p.notes) out.notes.push_back(n);
  }
  if (out.params.size() == 1) out.params = out.params[0];
  return out;
}

std::string default_output_path(const std::string& name, const RunConfig& c) {
  const char* dir = std::getenv("BETHE_OUTPUT_DIR");
  if (!c.out.empty()) return c.out;
  if (dir == nullptr || *dir == '\0') return {};
  return (std::filesystem::path(dir) / (name + (c.format == "text" ? ".txt" : ".json"))).string();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path);
}

}  // namespace

const std::vector<std::string>& verify_checks() {
  static const std::vector<std::string> checks = {
      "rtt",          "fusion",       "bethe-commute",  "centrality",     "hat-identity",   "twisted-symmetry",
      "twisted-reflection", "twisted-commute", "sklyanin", "prop36",      "rho-hom",        "image-commute",
      "poisson-jacobi", "symbol-hom", "jacobian",       "poisson-rank",   "classical-so2n", "laplace",
      "poisson-involution", "twisted-parity", "pi-hom", "mixed-rtt",      "reflection-matrix",
      "r-matrix",     "yang-baxter",  "antisymmetrizer"};
  return checks;
}

const std::vector<std::string>& compute_objects() {
  static const std::vector<std::string> objects = {"bethe", "qdet", "twisted-bethe", "poisson-bethe"};
  return objects;
}

IndexSet make_index_set(const RunConfig& c) {
  if (c.kind == "gl") {
    if (c.n != 0) throw UsageError("--n applies to so and sp; use --N for gl");
    if (c.N < 1) throw UsageError("gl needs --N >= 1");
    return IndexSet::plain(c.N);
  }
  if (c.kind != "so" && c.kind != "sp") throw UsageError("--kind must be gl, so or sp");
  if ((c.N != 0) == (c.n != 0)) throw UsageError("give exactly one of --N and --n");
  if (c.kind == "sp") {
    const int N = c.n != 0 ? 2 * c.n : c.N;
    if (N < 2 || N % 2 != 0) throw UsageError("sp needs an even N >= 2");
    return IndexSet::signed_set(N, FormType::symplectic);
  }
  const int N = c.n != 0 ? 2 * c.n + 1 : c.N;
  if (N < 2) throw UsageError("so needs N >= 2");
  return IndexSet::signed_set(N, FormType::orthogonal);
}

ZMatrix make_z(const RunConfig& c, const IndexSet& set, const std::string& check) {
  ZSymmetry tag = ZSymmetry::none;
  if (set.is_signed()) {
    if (c.z_symmetry == "skew") {
      tag = ZSymmetry::prime_skew;
    } else if (c.z_symmetry == "symmetric") {
      tag = ZSymmetry::prime_symmetric;
    } else if (!c.z_symmetry.empty()) {
      throw UsageError("--z-symmetry must be skew or symmetric");
    } else if (check == "prop36") {
      // The simplified trace form needs Z' = -Z for sp and Z' = Z for so.
      tag = set.form() == FormType::symplectic ? ZSymmetry::prime_skew : ZSymmetry::prime_symmetric;
    } else {
      tag = ZSymmetry::prime_skew;
    }
  } else if (!c.z_symmetry.empty()) {
    throw UsageError("--z-symmetry applies to so and sp");
  }
  std::string text = c.z;
  if (text.empty()) {
    const int count = set.is_signed() ? set.half() : set.size();
    text = "diag:";
    for (int i = 1; i <= count; ++i) text += (i > 1 ? "," : "") + std::to_string(i);
  }
  try {
    return ZMatrix::parse(text, set, tag);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --Z: ") + e.what());
  }
}

Report cmd_verify(const RunConfig& c, const std::string& check) {
  const auto& checks = verify_checks();
  if (std::find(checks.begin(), checks.end(), check) == checks.end()) throw UsageError("unknown check '" + check + "'");
  if (check == "classical-so2n") {
    if (c.kind != "so") throw UsageError("classical-so2n needs --kind so");
    const int n = c.n != 0 ? c.n : c.N / 2;
    if (n < 2 || (c.N != 0 && c.N % 2 != 0)) throw UsageError("classical-so2n needs --n >= 2");
    RunConfig even = c;
    even.N = 2 * n;
    even.n = 0;
    const IndexSet set = make_index_set(even);
    Report r = verify_classical_so_even(n, make_z(even, set, check), c.seed);
    fill_conventions(r, c, set);
    return r;
  }
  const IndexSet set = make_index_set(c);
  const int N = set.size();
  const int D = or_default(c.D, 3);
  Report r;
  if (check == "r-matrix") {
    r = verify_r_identities({set});
  } else if (check == "yang-baxter") {
    r = verify_yang_baxter({set});
  } else if (check == "antisymmetrizer") {
    require_kind(c, false, check);
    r = verify_antisymmetrizers(N);
  } else if (check == "rtt") {
    require_kind(c, false, check);
    r = verify_rtt(Algebra::yangian(set), D);
  } else if (check == "fusion") {
    if (is_twisted_kind(c)) {
      r = verify_twisted_fusion(TwistedContext(set), make_z(c, set), D);
    } else {
      Algebra y = Algebra::yangian(set);
      std::vector<Report> parts;
      for (int k : k_range(c, N)) {
        if (k >= 2 || c.k != 0) parts.push_back(verify_fusion(y, k, D));
      }
      r = merge(check, std::move(parts));
    }
  } else if (check == "bethe-commute") {
    require_kind(c, false, check);
    r = verify_bethe_commutativity(Algebra::yangian(set), make_z(c, set), or_default(c.budget, 4), c.threads);
  } else if (check == "centrality") {
    require_kind(c, false, check);
    r = verify_centrality(Algebra::yangian(set), D, or_default(c.levels, 3));
  } else if (check == "hat-identity") {
    require_kind(c, false, check);
    r = verify_hat_identity(Algebra::yangian(set), make_z(c, set), D);
  } else if (check == "twisted-symmetry") {
    require_kind(c, true, check);
    r = verify_symmetry(TwistedContext(set), D);
  } else if (check == "twisted-reflection") {
    require_kind(c, true, check);
    r = verify_reflection(TwistedContext(set), D);
  } else if (check == "reflection-matrix") {
    require_kind(c, true, check);
    r = verify_reflection_matrix(TwistedContext(set), D);
  } else if (check == "mixed-rtt") {
    require_kind(c, true, check);
    r = verify_mixed_rtt(TwistedContext(set), D);
  } else if (check == "twisted-commute") {
    require_kind(c, true, check);
    r = verify_twisted_commutativity(TwistedContext(set), make_z(c, set), or_default(c.budget, 3), c.threads);
  } else if (check == "sklyanin") {
    require_kind(c, true, check);
    r = verify_sklyanin(TwistedContext(set), or_default(c.D, 4), or_default(c.levels, 2));
  } else if (check == "prop36") {
    require_kind(c, true, check);
    r = verify_twisted_hat(TwistedContext(set), make_z(c, set, check), D);
  } else if (check == "rho-hom") {
    require_kind(c, true, check);
    r = verify_rho_homomorphism(set, D);
  } else if (check == "pi-hom") {
    require_kind(c, false, check);
    r = verify_pi_homomorphism(set, or_default(c.levels, 3));
  } else if (check == "image-commute") {
    Algebra env = Algebra::enveloping(set);
    const ZMatrix z = make_z(c, set);
    r = verify_image_commutativity(env, is_twisted_kind(c) ? rho_twisted_images(env, z, D)
                                                           : pi_bethe_images(env, z, or_default(c.levels, D)));
  } else if (check == "poisson-jacobi") {
    r = verify_poisson_jacobi(poisson_context(c, set), c.seed, or_default(c.trials, 30));
  } else if (check == "symbol-hom") {
    require_kind(c, false, check);
    r = verify_symbol_homomorphism(N, c.M, c.seed, or_default(c.trials, 50));
  } else if (check == "jacobian") {
    r = verify_jacobian(poisson_context(c, set), make_z(c, set), c.seed);
  } else if (check == "poisson-rank") {
    r = verify_poisson_rank(poisson_context(c, set), c.seed, or_default(c.trials, 3));
  } else if (check == "laplace") {
    r = verify_laplace_consistency(poisson_context(c, set), make_z(c, set));
  } else if (check == "poisson-involution") {
    r = verify_poisson_involution(poisson_context(c, set), make_z(c, set));
  } else if (check == "twisted-parity") {
    require_kind(c, true, check);
    r = verify_twisted_parity(poisson_context(c, set), make_z(c, set));
  }
  fill_conventions(r, c, set);
  return r;
}

nlohmann::json cmd_compute(const RunConfig& c, const std::string& object) {
  const auto& objects = compute_objects();
  if (std::find(objects.begin(), objects.end(), object) == objects.end()) {
    throw UsageError("unknown object '" + object + "'");
  }
  const IndexSet set = make_index_set(c);
  const int N = set.size();
  const int D = or_default(c.D, 3);
  nlohmann::json config = {{"object", object}, {"kind", c.kind}, {"N", N}};
  nlohmann::json series = nlohmann::json::array();
  if (object == "qdet") {
    require_kind(c, false, object);
    config["D"] = D;
    series.push_back(series_entry(N, quantum_determinant(Algebra::yangian(set), D).coeffs));
  } else if (object == "bethe") {
    require_kind(c, false, object);
    const ZMatrix z = make_z(c, set);
    config["Z"] = z.describe();
    config["D"] = D;
    Algebra y = Algebra::yangian(set);
    for (int k : k_range(c, N)) series.push_back(series_entry(k, bethe_series(y, k, z, D).coeffs));
  } else if (object == "twisted-bethe") {
    require_kind(c, true, object);
    const ZMatrix z = make_z(c, set);
    config["Z"] = z.describe();
    config["Z_symmetry"] = symmetry_name(z.tag());
    config["D"] = D;
    FreeSAlgebra free(set);
    for (int k : k_range(c, N)) series.push_back(series_entry(k, twisted_bethe_series(free, k, z, D).coeffs));
  } else {
    const ZMatrix z = make_z(c, set);
    auto ctx = poisson_context(c, set);
    config["Z"] = z.describe();
    config["M"] = c.M;
    config["context"] = ctx.describe();
    for (int k : k_range(c, N)) series.push_back(series_entry(k, bethe_poly(ctx, k, z)));
  }
  return {{"config", config}, {"series", series}, {"version", kToolVersion}};
}

std::string render_report(const Report& r, const RunConfig& c) {
  if (c.format == "text") return r.to_text();
  return r.to_json(c.reproducible).dump(2) + "\n";
}

std::string render_table(const nlohmann::json& t) { return t.dump(2) + "\n"; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bethe subalgebra generators and exact verification suites"};
  app.require_subcommand(1);
  RunConfig c;
  std::string name;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--kind", c.kind, "Algebra kind")->check(CLI::IsMember({"gl", "so", "sp"}));
    sub->add_option("--N", c.N, "Matrix size");
    sub->add_option("--n", c.n, "Rank: N = 2n for sp, N = 2n + 1 for so");
    sub->add_option("--Z", c.z, "diag:z1,z2,... or json:<path>");
    sub->add_option("--z-symmetry", c.z_symmetry, "Z' = -Z (skew) or Z' = Z (symmetric) for so/sp")
        ->check(CLI::IsMember({"skew", "symmetric"}));
    sub->add_option("--D", c.D, "Truncation order");
    sub->add_option("--budget", c.budget, "Commutator budget r + s");
    sub->add_option("--M", c.M, "Truncation level of the current space");
    sub->add_option("--k", c.k, "Single series index");
    sub->add_option("--levels", c.levels, "Generator level bound");
    sub->add_option("--trials", c.trials, "Random samples");
    sub->add_option("--seed", c.seed, "Seed");
    sub->add_option("--out", c.out, "Output path (default: $BETHE_OUTPUT_DIR/<name>.json or stdout)");
    sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--threads", c.threads, "Worker threads (0: machine parallelism)");
    sub->add_flag("--reproducible", c.reproducible, "Write runtime_ms as 0");
  };
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("check", name, "Check name")->required()->check(CLI::IsMember(verify_checks()));
  add_common(verify);
  CLI::App* compute = app.add_subcommand("compute", "Write a table of series coefficients");
  compute->add_option("object", name, "Object name")->required()->check(CLI::IsMember(compute_objects()));
  add_common(compute);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }
  try {
    if (verify->parsed()) {
      Report r = cmd_verify(c, name);
      emit(render_report(r, c), default_output_path(name, c), out);
      if (!r.passed()) err << name << ": fail (" << r.failures() << " nonzero residuals)\n";
      return r.passed() ? 0 : 1;
    }
    auto table = cmd_compute(c, name);
    emit(render_table(table), default_output_path(name, c), out);
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bethe::cli
