// Command-line front end for the finite-Blaschke-product library: dynamics
// classification, operator-identity verification, basis and transfer-operator
// dumps, and Julia-set sampling.  Exit codes: 0 ok, 2 input error, 3 ambiguous
// classification, 4 identity-verification failure, 5 empirical/analytic
// contradiction.
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blaschke/blaschke.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_ambiguous = 3;
constexpr int exit_identity = 4;
constexpr int exit_contradiction = 5;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt(blaschke::cplx z) { return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")"; }

struct loaded_spec {
  blaschke::product_spec spec;
  blaschke::finite_blaschke_product product;
};

/// Parses and validates a spec file; throws spec_parse_error or
/// invalid_argument (both mapped to exit 2 by the caller).
loaded_spec load(const std::string& path) {
  blaschke::product_spec spec = blaschke::load_product_spec(path);
  return {spec, spec.build()};
}

std::string display_name(const loaded_spec& s) { return s.spec.name.value_or("(unnamed)"); }

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// The default seeded random verification symbol: a bandwidth-b trigonometric
/// polynomial whose coefficients c_k = (2u - 1) + (2u' - 1)i are drawn from
/// splitmix64(7) in frequency order k = -b..b.  Fixed seed, so every run and
/// every platform sees the same symbol.
blaschke::symbol_function random_symbol(int b, std::size_t M) {
  blaschke::splitmix64 rng(7);
  std::map<long, blaschke::cplx> c;
  for (long k = -b; k <= b; ++k) {
    const double re = 2.0 * rng.uniform() - 1.0;
    const double im = 2.0 * rng.uniform() - 1.0;
    c[k] = blaschke::cplx{re, im};
  }
  return blaschke::symbol_function::from_coeffs(c, M);
}

/// Symbol-name grammar shared by verify/transfer: "e<k>" is the harmonic
/// z^k, "rand<b>" the seeded random bandwidth-b polynomial, "k:re:im" a raw
/// Fourier coefficient (repeatable).  Returns nullopt on malformed names.
std::optional<blaschke::symbol_function> parse_symbol_tokens(const std::vector<std::string>& toks,
                                                             std::size_t M, std::string* err) {
  std::map<long, blaschke::cplx> raw;
  bool have_raw = false;
  for (const auto& t : toks) {
    if (t.size() >= 2 && t[0] == 'e' &&
        (std::isdigit(static_cast<unsigned char>(t[1])) || t[1] == '-')) {
      if (toks.size() != 1) {
        *err = "harmonic shorthand '" + t + "' cannot be mixed with other tokens";
        return std::nullopt;
      }
      try {
        return blaschke::symbol_function::harmonic(std::stol(t.substr(1)), M);
      } catch (const std::exception&) {
        *err = "bad harmonic '" + t + "'";
        return std::nullopt;
      }
    }
    if (t.rfind("rand", 0) == 0) {
      if (toks.size() != 1) {
        *err = "random shorthand '" + t + "' cannot be mixed with other tokens";
        return std::nullopt;
      }
      try {
        const int b = std::stoi(t.substr(4));
        if (b < 1 || static_cast<std::size_t>(b) > M / 4) {
          *err = "random bandwidth out of range in '" + t + "'";
          return std::nullopt;
        }
        return random_symbol(b, M);
      } catch (const std::exception&) {
        *err = "bad random symbol '" + t + "'";
        return std::nullopt;
      }
    }
    // raw coefficient k:re:im
    const auto c1 = t.find(':');
    const auto c2 = t.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      *err = "unrecognized symbol token '" + t + "' (want e<k>, rand<b>, or k:re:im)";
      return std::nullopt;
    }
    try {
      const long k = std::stol(t.substr(0, c1));
      const double re = std::stod(t.substr(c1 + 1, c2 - c1 - 1));
      const double im = std::stod(t.substr(c2 + 1));
      raw[k] += blaschke::cplx{re, im};
      have_raw = true;
    } catch (const std::exception&) {
      *err = "unparseable coefficient token '" + t + "'";
      return std::nullopt;
    }
  }
  if (!have_raw) {
    *err = "empty symbol";
    return std::nullopt;
  }
  try {
    return blaschke::symbol_function::from_coeffs(raw, M);
  } catch (const std::exception& e) {
    *err = e.what();
    return std::nullopt;
  }
}

std::string structure_string(const blaschke::algebra_report& rep, int degree) {
  switch (rep.structure) {
    case blaschke::algebra_structure::matrix_algebra_over_circle:
      return "M_q(C(T)) with q = " + std::to_string(rep.rotation_order.value_or(0));
    case blaschke::algebra_structure::crossed_product_by_z:
      return "C(T) x Z crossed product (degree-1 map of infinite order)";
    case blaschke::algebra_structure::cuntz_pimsner:
      return "Cuntz-Pimsner algebra of the degree-" + std::to_string(degree) +
             " correspondence over C(T)";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int run_classify(const std::string& path, double parabolic_tol, int q_max, bool json) {
  loaded_spec ls = load(path);
  const auto& B = ls.product;
  blaschke::tolerances tol;
  tol.parabolic_tol = parabolic_tol;

  const blaschke::algebra_report alg = blaschke::make_algebra_report(B, q_max, tol);

  std::string cls, julia = "na", simple = "na", dw_re = "na", dw_im = "na", mult_re = "na",
              mult_im = "na", second_re = "na", second_im = "na", quotient = "na",
              rotation_order = "na";
  std::optional<blaschke::fixed_point_report> dw;

  if (B.degree() == 1) {
    const auto mb = blaschke::moebius_classify(B, q_max);
    cls = blaschke::to_string(mb.kind);
    if (mb.kind == blaschke::moebius_kind::elliptic_finite_order)
      rotation_order = std::to_string(mb.order);
    if (mb.kind == blaschke::moebius_kind::identity) rotation_order = "1";
    if (mb.kind == blaschke::moebius_kind::parabolic ||
        mb.kind == blaschke::moebius_kind::hyperbolic)
      dw = blaschke::denjoy_wolff(B, tol);
  } else {
    dw = blaschke::denjoy_wolff(B, tol);
    const auto dc = blaschke::classify_dynamics(B, tol);
    cls = blaschke::to_string(dc);
    julia = blaschke::to_string(*alg.julia);
    simple = *alg.simple ? "true" : "false";
    if (alg.quotient_note) quotient = "O_" + std::to_string(B.degree());
  }
  if (dw) {
    dw_re = fmt(dw->point.real());
    dw_im = fmt(dw->point.imag());
    mult_re = fmt(dw->multiplier.real());
    mult_im = fmt(dw->multiplier.imag());
    if (dw->second_derivative) {
      second_re = fmt(dw->second_derivative->real());
      second_im = fmt(dw->second_derivative->imag());
    }
  }

  if (json) {
    std::ostringstream os;
    os << "name=" << display_name(ls) << ";degree=" << B.degree() << ";class=" << cls
       << ";dw_re=" << dw_re << ";dw_im=" << dw_im << ";mult_re=" << mult_re
       << ";mult_im=" << mult_im << ";second_re=" << second_re << ";second_im=" << second_im
       << ";julia=" << julia << ";simple=" << simple << ";structure="
       << (alg.structure == blaschke::algebra_structure::matrix_algebra_over_circle
               ? "matrix_algebra_over_circle"
               : alg.structure == blaschke::algebra_structure::crossed_product_by_z
                     ? "crossed_product_by_z"
                     : "cuntz_pimsner")
       << ";rotation_order=" << rotation_order << ";k0_rank=" << alg.k0.rank
       << ";k0_torsion=" << alg.k0.torsion_order << ";k1_rank=" << alg.k1.rank
       << ";k1_torsion=" << alg.k1.torsion_order << ";id_free="
       << (alg.identity_class ? std::to_string(alg.identity_class->first) : "na")
       << ";id_torsion="
       << (alg.identity_class ? std::to_string(alg.identity_class->second) : "na")
       << ";quotient=" << quotient;
    std::printf("%s\n", os.str().c_str());
    return exit_ok;
  }

  std::printf("name: %s\n", display_name(ls).c_str());
  std::printf("degree: %d\n", B.degree());
  std::printf("class: %s\n", cls.c_str());
  if (rotation_order != "na") std::printf("rotation_order: %s\n", rotation_order.c_str());
  if (dw) {
    std::printf("denjoy_wolff: %s\n", fmt(dw->point).c_str());
    std::printf("multiplier: %s  (|mult| = %s)\n", fmt(dw->multiplier).c_str(),
                fmt(std::abs(dw->multiplier)).c_str());
    if (dw->second_derivative)
      std::printf("second_derivative: %s\n", fmt(*dw->second_derivative).c_str());
    if (dw->third_derivative)
      std::printf("third_derivative: %s\n", fmt(*dw->third_derivative).c_str());
  }
  std::printf("julia: %s\n", julia.c_str());
  std::printf("simple: %s\n", simple.c_str());
  std::printf("structure: %s\n", structure_string(alg, B.degree()).c_str());
  std::printf("K0: %s\n", alg.k0.description.c_str());
  std::printf("K1: %s\n", alg.k1.description.c_str());
  if (alg.identity_class)
    std::printf("identity_class_in_K0: (%d, %d)\n", alg.identity_class->first,
                alg.identity_class->second);
  if (alg.quotient_note) std::printf("quotient_note: %s\n", alg.quotient_note->c_str());
  return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct verify_record {
  std::string identity;
  int cutoff;
  double defect;
  double tolerance;
  bool pass;
};

int run_verify(const std::string& path, int N, std::vector<std::string> symbol_names,
               double tol) {
  if (!is_pow2(N) || N < 32 || N > 2048) {
    std::printf("error: --cutoff must be a power of two in [32, 2048], got %d\n", N);
    return exit_input;
  }
  loaded_spec ls = load(path);
  const auto& B = ls.product;

  if (symbol_names.empty()) symbol_names = {"e1", "e-1", "e2", "rand4"};
  const std::size_t M = static_cast<std::size_t>(std::max(2 * N, 512));

  std::vector<verify_record> records;
  for (const auto& name : symbol_names) {
    std::string err;
    auto a = parse_symbol_tokens({name}, M, &err);
    if (!a) {
      std::printf("error: %s\n", err.c_str());
      return exit_input;
    }
    if (a->bandwidth() > N / 4) {
      std::printf("error: symbol '%s' has bandwidth %ld > N/4 = %d\n", name.c_str(),
                  a->bandwidth(), N / 4);
      return exit_input;
    }
    const double d = blaschke::covariant_defect(B, *a, N);
    records.push_back({"covariant[" + name + "]", N, d, tol, d <= tol});
  }

  try {
    const auto cz = blaschke::cuntz_defect(B, N);
    records.push_back({"cuntz_offdiag", N, cz.offdiag, tol, cz.offdiag <= tol});
    records.push_back({"cuntz_completeness", N, cz.completeness, tol, cz.completeness <= tol});

    const int tm_grid = std::max(N, 64);
    const double tmd = blaschke::tm_orthonormality_defect(B, tm_grid);
    records.push_back({"tm_orthonormality", tm_grid, tmd, tol, tmd <= tol});

    const double gd = blaschke::h2_basis_gram_defect(B, N, 3);
    records.push_back({"h2_gram[kmax=3]", N, gd, tol, gd <= tol});
  } catch (const std::invalid_argument& e) {
    std::printf("error: %s\n", e.what());
    return exit_input;
  }

  std::printf("%-24s %6s %14s %10s %7s\n", "identity", "N", "defect", "tol", "status");
  bool all = true;
  for (const auto& r : records) {
    std::printf("%-24s %6d %14.6e %10.1e %7s\n", r.identity.c_str(), r.cutoff, r.defect,
                r.tolerance, r.pass ? "pass" : "FAIL");
    all = all && r.pass;
  }
  std::printf("overall: %s\n", all ? "pass" : "FAIL");
  return all ? exit_ok : exit_identity;
}

// ---------------------------------------------------------------------------
// julia
// ---------------------------------------------------------------------------

int run_julia(const std::string& path, int count, std::uint64_t seed, int burn_in,
              const std::string& out) {
  loaded_spec ls = load(path);
  const auto& B = ls.product;
  if (B.degree() < 2) {
    std::printf("error: julia requires degree >= 2\n");
    return exit_input;
  }

  const blaschke::julia_class analytic = blaschke::julia_type(B);
  const blaschke::orbit_sample s = blaschke::backward_sample(B, count, seed, burn_in);
  const double gap = blaschke::max_gap(s);

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::printf("error: cannot write '%s'\n", out.c_str());
      return exit_input;
    }
    f << "index,angle_radians\n";
    for (std::size_t i = 0; i < s.angles.size(); ++i)
      f << i << "," << fmt(s.angles[i]) << "\n";
  }

  std::printf("count=%d seed=%llu burn_in=%d\n", count, static_cast<unsigned long long>(seed),
              burn_in);
  std::printf("max_gap=%s\n", fmt(gap).c_str());
  std::printf("analytic_julia=%s\n", blaschke::to_string(analytic));

  if (count >= 10000) {
    if (analytic == blaschke::julia_class::full_circle && gap > 0.2) {
      std::printf("contradiction: gap %s > 0.2 but analytic type is FullCircle\n",
                  fmt(gap).c_str());
      return exit_contradiction;
    }
    if (analytic == blaschke::julia_class::cantor && gap < 0.05) {
      std::printf("contradiction: gap %s < 0.05 but analytic type is Cantor\n", fmt(gap).c_str());
      return exit_contradiction;
    }
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// basis
// ---------------------------------------------------------------------------

int run_basis(const std::string& path, int grid, const std::string& out) {
  if (grid < 64) {
    std::printf("error: --grid must be >= 64, got %d\n", grid);
    return exit_input;
  }
  loaded_spec ls = load(path);
  const auto& B = ls.product;
  const blaschke::tm_basis basis(B);

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::printf("error: cannot write '%s'\n", out.c_str());
      return exit_input;
    }
    f << "i,node_angle,re(u_i),im(u_i)\n";
    for (int i = 1; i <= basis.size(); ++i)
      for (int j = 0; j < grid; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / grid;
        const blaschke::cplx u = basis.evaluate(i, blaschke::cplx{std::cos(ang), std::sin(ang)});
        f << i << "," << fmt(ang) << "," << fmt(u.real()) << "," << fmt(u.imag()) << "\n";
      }
  }

  const double defect = blaschke::tm_orthonormality_defect(B, static_cast<std::size_t>(grid));
  std::printf("orthonormality_defect=%s\n", fmt(defect).c_str());
  return defect <= 1e-8 ? exit_ok : exit_identity;
}

// ---------------------------------------------------------------------------
// transfer
// ---------------------------------------------------------------------------

int run_transfer(const std::string& path, const std::vector<std::string>& symbol_tokens, int grid,
                 const std::string& out) {
  if (grid < 64 || !is_pow2(grid)) {
    std::printf("error: --grid must be a power of two >= 64, got %d\n", grid);
    return exit_input;
  }
  loaded_spec ls = load(path);
  const auto& B = ls.product;

  std::string err;
  const std::vector<std::string> toks = symbol_tokens.empty()
                                            ? std::vector<std::string>{"e0"}
                                            : symbol_tokens;
  auto a = parse_symbol_tokens(toks, static_cast<std::size_t>(grid), &err);
  if (!a) {
    std::printf("error: %s\n", err.c_str());
    return exit_input;
  }
  if (a->bandwidth() > grid / 4) {
    std::printf("error: symbol bandwidth %ld exceeds grid/4 = %d\n", a->bandwidth(), grid / 4);
    return exit_input;
  }

  const blaschke::symbol_function g = blaschke::aleksandrov_grid(B, *a);

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::printf("error: cannot write '%s'\n", out.c_str());
      return exit_input;
    }
    f << "kind,index,angle_or_freq,re,im\n";
    for (std::size_t j = 0; j < g.grid_size(); ++j) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(g.grid_size());
      f << "sample," << j << "," << fmt(ang) << "," << fmt(g.samples()[j].real()) << ","
        << fmt(g.samples()[j].imag()) << "\n";
    }
    const long half = static_cast<long>(g.grid_size()) / 2;
    std::size_t row = 0;
    for (long k = -half + 1; k <= half; ++k, ++row) {
      const blaschke::cplx c = g.coeff(k);
      f << "coeff," << row << "," << k << "," << fmt(c.real()) << "," << fmt(c.imag()) << "\n";
    }
  }

  // Poisson-mass identity check with a = 1 on every output node.
  double worst = 0.0;
  for (std::size_t j = 0; j < g.grid_size(); ++j) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(g.grid_size());
    worst = std::max(worst, blaschke::poisson_mass_residual(
                                B, blaschke::cplx{std::cos(ang), std::sin(ang)}));
  }
  std::printf("poisson_residual=%s\n", fmt(worst).c_str());
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite Blaschke products: boundary dynamics, transfer operators, and\n"
      "truncated Hardy-space operator identities.\n\n"
      "Input spec files are line-oriented text:\n"
      "    name   = <identifier>     (optional)\n"
      "    lambda = [<re>, <im>]     (unimodular, required once)\n"
      "    zero   = [<re>, <im>]     (|zero| < 1, one line per zero)\n"
      "with '#' comments.  Exit codes: 0 ok, 2 input error, 3 ambiguous\n"
      "classification, 4 identity-verification failure, 5 empirical/analytic\n"
      "contradiction."};
  app.require_subcommand(1);

  std::string spec_path, out_path;
  double parabolic_tol = 1e-8, tol = 1e-6;
  int q_max = 10000, cutoff = 256, count = 10000, burn_in = 100, grid = 256;
  std::uint64_t seed = 1;
  bool json = false;
  std::vector<std::string> symbols;

  auto* c_classify = app.add_subcommand(
      "classify",
      "Dynamics class, Julia type, and operator-algebra report.\n"
      "--json prints one line 'key=value;...' with keys, in order: name, degree,\n"
      "class, dw_re, dw_im, mult_re, mult_im, second_re, second_im, julia,\n"
      "simple, structure, rotation_order, k0_rank, k0_torsion, k1_rank,\n"
      "k1_torsion, id_free, id_torsion, quotient.  Inapplicable values are 'na'.");
  c_classify->add_option("spec", spec_path, "product spec file")->required();
  c_classify->add_option("--parabolic-tol", parabolic_tol, "|multiplier - 1| threshold");
  c_classify->add_option("--q-max", q_max, "rotation-order scan bound for degree 1");
  c_classify->add_flag("--json", json, "single-line structured output");

  auto* c_verify = app.add_subcommand(
      "verify",
      "Operator-identity verification table: covariant relation per symbol,\n"
      "Cuntz relations, basis orthonormality, and the lifted-basis Gram matrix.\n"
      "Symbols: e<k> (harmonic z^k) or rand<b> (seeded random bandwidth-b\n"
      "polynomial, fixed seed 7).");
  c_verify->add_option("spec", spec_path, "product spec file")->required();
  c_verify->add_option("--cutoff", cutoff, "truncation size N (power of two in [32, 2048])");
  // one token per flag instance (repeat or comma-separate): a greedy list
  // would swallow a spec path given after it
  c_verify->add_option("--symbols", symbols, "symbol names (default: e1,e-1,e2,rand4)")
      ->allow_extra_args(false)
      ->delimiter(',');
  c_verify->add_option("--tol", tol, "per-identity defect tolerance");

  auto* c_julia = app.add_subcommand(
      "julia",
      "Backward-orbit sampler.  Writes CSV 'index,angle_radians' (sorted),\n"
      "prints the largest circular gap and the analytic Julia type, and exits 5\n"
      "when the two contradict each other at count >= 10000.");
  c_julia->add_option("spec", spec_path, "product spec file")->required();
  c_julia->add_option("--count", count, "samples kept after burn-in (>= 100)");
  c_julia->add_option("--seed", seed, "PRNG seed");
  c_julia->add_option("--burn-in", burn_in, "discarded leading samples (>= 50)");
  c_julia->add_option("--out", out_path, "CSV output path");

  auto* c_basis = app.add_subcommand(
      "basis",
      "Orthonormal boundary basis sampled on a uniform grid.  Writes CSV\n"
      "'i,node_angle,re(u_i),im(u_i)' (basis index outer, node inner) and\n"
      "prints the orthonormality defect; exit 0 iff defect <= 1e-8.");
  c_basis->add_option("spec", spec_path, "product spec file")->required();
  c_basis->add_option("--grid", grid, "number of boundary nodes (>= 64)");
  c_basis->add_option("--out", out_path, "CSV output path");

  auto* c_transfer = app.add_subcommand(
      "transfer",
      "Applies the transfer operator to a symbol on a uniform boundary grid.\n"
      "Writes CSV 'kind,index,angle_or_freq,re,im' (sample rows, then Fourier\n"
      "coefficient rows) and prints the worst Poisson-mass residual for a = 1.\n"
      "Symbol tokens: e<k>, rand<b>, or raw coefficients k:re:im (repeatable).");
  c_transfer->add_option("spec", spec_path, "product spec file")->required();
  c_transfer->add_option("--symbol", symbols, "symbol tokens (default: e0)")
      ->allow_extra_args(false)
      ->delimiter(',');
  c_transfer->add_option("--grid", grid, "grid size (power of two >= 64)");
  c_transfer->add_option("--out", out_path, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints the diagnostic (or the help text); fold CLI11's
    // error codes into the documented input-error code, keep 0 for --help
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  try {
    if (c_classify->parsed()) return run_classify(spec_path, parabolic_tol, q_max, json);
    if (c_verify->parsed()) return run_verify(spec_path, cutoff, symbols, tol);
    if (c_julia->parsed()) return run_julia(spec_path, count, seed, burn_in, out_path);
    if (c_basis->parsed()) return run_basis(spec_path, grid, out_path);
    if (c_transfer->parsed()) return run_transfer(spec_path, symbols, grid, out_path);
  } catch (const blaschke::ambiguous_classification& e) {
    std::printf("ambiguous: %s\n", e.what());
    return exit_ambiguous;
  } catch (const blaschke::spec_parse_error& e) {
    std::printf("error: %s\n", e.what());
    return exit_input;
  } catch (const std::exception& e) {
    std::printf("error: %s\n", e.what());
    return exit_input;
  }
  return exit_ok;
}
