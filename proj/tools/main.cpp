#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hzeta/arith.hpp"
#include "hzeta/characters.hpp"
#include "hzeta/constants.hpp"
#include "hzeta/lfun.hpp"
#include "hzeta/moments.hpp"
#include "hzeta/rational.hpp"
#include "hzeta/rmt.hpp"
#include "hzeta/selfcheck.hpp"

namespace {

using hzeta::Rational;
using ordered_json = nlohmann::ordered_json;

Rational parse_alpha(const std::string& text) {
  const auto slash = text.find('/');
  std::int64_t a = 0, q = 0;
  bool ok = slash != std::string::npos;
  if (ok) {
    try {
      std::size_t used = 0;
      a = std::stoll(text.substr(0, slash), &used);
      ok = used == slash;
      std::size_t used2 = 0;
      const std::string den = text.substr(slash + 1);
      q = std::stoll(den, &used2);
      ok = ok && used2 == den.size();
    } catch (const std::exception&) {
      ok = false;
    }
  }
  ok = ok && a >= 1 && q >= 1 && a <= q && std::gcd(a, q) == 1;
  if (!ok)
    throw CLI::ValidationError(
        "--alpha", "expected A/Q in lowest terms with 1 <= A <= Q, got '" + text + "'");
  return Rational(a, q);
}

std::vector<int> parse_ell(const std::string& text, std::size_t nchi) {
  std::vector<int> e(nchi, 0);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto colon = tok.find(':');
    bool ok = colon != std::string::npos;
    long idx = -1, exp = -1;
    if (ok) {
      try {
        idx = std::stol(tok.substr(0, colon));
        exp = std::stol(tok.substr(colon + 1));
      } catch (const std::exception&) {
        ok = false;
      }
    }
    ok = ok && idx >= 0 && (std::size_t)idx < nchi && exp >= 0;
    if (!ok)
      throw CLI::ValidationError("--ell", "expected i:e pairs with character index i < " +
                                              std::to_string(nchi) + ", got '" + tok + "'");
    e[(std::size_t)idx] += (int)exp;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return e;
}

// ---------------------------------------------------------------------------
// row emission: fixed CSV schema, JSON mirrors the columns
// ---------------------------------------------------------------------------

struct Row {
  double T = 0.0;
  int k = 0;
  std::int64_t alpha_num = 0, alpha_den = 1;
  std::uint64_t q = 0;
  double X = 0.0;
  double value = 0.0;
  double quad_err = 0.0;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct OutputOpts {
  bool json = false;
  bool timings = false;
  std::string csv_path;
};

Row make_row(const hzeta::MomentEstimate& est) {
  Row r;
  r.T = est.T;
  r.k = est.k;
  r.alpha_num = est.alpha.num;
  r.alpha_den = est.alpha.den;
  r.q = est.q;
  r.X = est.X;
  r.value = est.value;
  r.quad_err = est.quad_error_est;
  r.nodes = est.node_count;
  r.seconds = est.wall_seconds;
  return r;
}

std::string num17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit_row(const Row& row, const OutputOpts& out) {
  const double secs = out.timings ? row.seconds : 0.0;
  if (!out.csv_path.empty()) {
    const bool fresh = !std::filesystem::exists(out.csv_path) ||
                       std::filesystem::file_size(out.csv_path) == 0;
    std::ofstream f(out.csv_path, std::ios::app);
    if (!f) throw std::runtime_error("cannot open CSV path " + out.csv_path);
    if (fresh) f << "T,k,alpha_num,alpha_den,q,X,value,quad_err,nodes,seconds\n";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.17g,%d,%lld,%lld,%llu,%.17g,%.17g,%.17g,%llu,%.3f\n",
                  row.T, row.k, (long long)row.alpha_num, (long long)row.alpha_den,
                  (unsigned long long)row.q, row.X, row.value, row.quad_err,
                  (unsigned long long)row.nodes, secs);
    f << buf;
  }
  if (out.json) {
    ordered_json j;
    j["T"] = row.T;
    j["k"] = row.k;
    j["alpha_num"] = row.alpha_num;
    j["alpha_den"] = row.alpha_den;
    j["q"] = row.q;
    j["X"] = row.X;
    j["value"] = row.value;
    j["quad_err"] = row.quad_err;
    j["nodes"] = row.nodes;
    char sec[16];
    std::snprintf(sec, sizeof sec, "%.3f", secs);
    j["seconds"] = sec;
    std::cout << j.dump() << "\n";
  }
}

void human_estimate(const char* what, const hzeta::MomentEstimate& est,
                    const OutputOpts& out) {
  if (out.json) return;
  std::printf("%-22s %s\n", what, num17(est.value).c_str());
  std::printf("%-22s %s\n", "quadrature error", num17(est.quad_error_est).c_str());
  std::printf("%-22s %llu (refinements %d%s)\n", "nodes",
              (unsigned long long)est.node_count, est.refinements,
              est.converged ? "" : ", not converged");
  if (est.singular_flagged) std::printf("note: singular nodes were discarded\n");
  if (est.regime_warning)
    std::printf("note: X exceeds (log T)^2; the asymptotic regime is not attained\n");
  if (out.timings) std::printf("%-22s %.3f s\n", "wall time", est.wall_seconds);
}

hzeta::DirichletCharacter character_by_index(std::uint64_t q, std::uint64_t index) {
  auto group = hzeta::CharacterGroup::make(q);
  if (index >= group->size())
    throw std::domain_error("--chi index out of range: group mod " + std::to_string(q) +
                            " has " + std::to_string(group->size()) + " characters");
  return group->character(index);
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

int run_characters(std::uint64_t q, bool json) {
  auto group = hzeta::CharacterGroup::make(q);
  const bool table = q <= 36;
  if (!json)
    std::printf("characters mod %llu: %llu total\n", (unsigned long long)q,
                (unsigned long long)group->size());
  for (std::size_t i = 0; i < group->size(); ++i) {
    const auto chi = group->character(i);
    if (json) {
      ordered_json j;
      j["q"] = q;
      j["index"] = i;
      j["conductor"] = chi.conductor();
      j["order"] = chi.order();
      j["parity"] = chi.parity();
      j["primitive"] = chi.is_primitive();
      j["real"] = chi.is_real();
      if (table) {
        auto& vals = j["values"] = ordered_json::array();
        for (std::uint32_t a : group->units()) {
          const auto v = chi.value(a);
          vals.push_back({v.real(), v.imag()});
        }
      }
      std::cout << j.dump() << "\n";
      continue;
    }
    std::printf("  #%-3zu conductor %-6llu order %-5llu parity %+d %s%s\n", i,
                (unsigned long long)chi.conductor(), (unsigned long long)chi.order(),
                chi.parity(), chi.is_primitive() ? "primitive" : "induced  ",
                chi.is_real() ? " real" : "");
    if (table) {
      std::printf("       ");
      for (std::uint32_t a : group->units()) {
        const auto v = chi.value(a);
        std::printf(" chi(%u)=%.3f%+.3fi", a, v.real(), v.imag());
      }
      std::printf("\n");
    }
  }
  return 0;
}

int run_eval(double sigma, double t, const std::string& alpha_text, std::uint64_t q,
             std::int64_t chi_index, double tol, bool json) {
  const bool by_alpha = !alpha_text.empty();
  if (by_alpha == (q != 0))
    throw CLI::ValidationError("eval", "exactly one of --alpha or --q/--chi is required");
  const std::complex<double> s(sigma, t);
  hzeta::EvalResult r;
  Rational alpha(1, 1);
  if (by_alpha) {
    alpha = parse_alpha(alpha_text);
    r = hzeta::hurwitz_zeta(s, alpha, tol);
  } else {
    if (chi_index < 0) throw CLI::ValidationError("--chi", "character index required");
    r = hzeta::dirichlet_l(s, character_by_index(q, (std::uint64_t)chi_index), tol);
  }
  const int terms = (int)std::ceil(std::abs(t) / 2.0) + 32;
  if (json) {
    ordered_json j;
    j["sigma"] = sigma;
    j["t"] = t;
    if (by_alpha) {
      j["alpha_num"] = alpha.num;
      j["alpha_den"] = alpha.den;
    } else {
      j["q"] = q;
      j["chi"] = chi_index;
    }
    j["value_re"] = r.value.real();
    j["value_im"] = r.value.imag();
    j["err_bound"] = r.err_bound;
    j["terms"] = terms;
    std::cout << j.dump() << "\n";
  } else {
    std::printf("value      %.17g %+.17gi\n", r.value.real(), r.value.imag());
    std::printf("err bound  %s\n", num17(r.err_bound).c_str());
    std::printf("terms      %d per component\n", terms);
  }
  return 0;
}

void print_constant(const char* label, double value, double tail, std::uint64_t cutoff,
                    bool json) {
  if (json) {
    ordered_json j;
    j["constant"] = label;
    j["value"] = value;
    j["tail_bound"] = tail;
    j["cutoff"] = cutoff;
    std::cout << j.dump() << "\n";
  } else {
    std::printf("%-12s %s\n", label, num17(value).c_str());
    std::printf("%-12s %s\n", "tail bound", num17(tail).c_str());
    std::printf("%-12s %llu\n", "cutoff", (unsigned long long)cutoff);
  }
}

int run_rmt(int m, int N, double X, std::uint64_t samples, std::uint64_t seed,
            int workers, bool json) {
  const auto est = hzeta::model_moment(m, N, X, samples, seed, workers);
  const double pred = hzeta::model_prediction(m, N, X);
  const double z = est.std_error > 0.0 ? (est.mean - pred) / est.std_error : 0.0;
  if (json) {
    ordered_json j;
    j["m"] = m;
    j["N"] = N;
    j["X"] = X;
    j["samples"] = est.samples;
    j["seed"] = est.seed;
    j["mean"] = est.mean;
    j["std_error"] = est.std_error;
    j["prediction"] = pred;
    j["z_score"] = z;
    j["resamples"] = est.resamples;
    std::cout << j.dump() << "\n";
  } else {
    std::printf("mean        %s\n", num17(est.mean).c_str());
    std::printf("std error   %s\n", num17(est.std_error).c_str());
    std::printf("prediction  %s\n", num17(pred).c_str());
    std::printf("z score     %.3f\n", z);
    if (est.resamples) std::printf("resamples   %llu\n", (unsigned long long)est.resamples);
  }
  return 0;
}

int run_verify(const std::string& suite, bool json) {
  const auto reports = hzeta::run_verify_suite(suite);
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed;
    if (json) {
      ordered_json j;
      j["name"] = r.name;
      j["passed"] = r.passed;
      j["detail"] = r.detail;
      j["seconds"] = r.seconds;
      std::cout << j.dump() << "\n";
    } else {
      std::printf("%-40s %s  %7.2fs  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                  r.seconds, r.detail.c_str());
    }
  }
  if (!json)
    std::printf("%zu checks, %s\n", reports.size(), all ? "all passed" : "FAILURES");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moments of the Hurwitz zeta function and Dirichlet L-functions on the "
               "critical line"};
  app.require_subcommand(1);

  // shared quadrature/output knobs for the moment-family commands
  hzeta::QuadratureSpec spec;
  int workers = 0;
  OutputOpts out;
  auto add_moment_flags = [&](CLI::App* cmd) {
    cmd->add_option("--panel-width", spec.panel_width, "initial quadrature panel width");
    cmd->add_option("--nodes", spec.nodes_per_panel, "Gauss-Legendre nodes per panel");
    cmd->add_option("--refine-tol", spec.refine_tol, "relative refinement tolerance");
    cmd->add_option("--max-refinements", spec.max_refinements, "global halvings allowed");
    cmd->add_option("--workers", workers, "worker threads (default HZETA_WORKERS or 1)");
    cmd->add_option("--csv", out.csv_path, "append a CSV row to this path");
    cmd->add_flag("--json", out.json, "one JSON object per line instead of a table");
    cmd->add_flag("--timings", out.timings, "report wall time (off: seconds prints 0.000)");
  };

  // characters list
  auto* characters = app.add_subcommand("characters", "inspect a character group");
  auto* characters_list = characters->add_subcommand("list", "list characters mod q");
  std::uint64_t char_q = 0;
  bool char_json = false;
  characters_list->add_option("--q", char_q, "modulus")->required();
  characters_list->add_flag("--json", char_json, "one JSON object per character");
  characters->require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate zeta(s, alpha) or L(s, chi)");
  double ev_sigma = 0.5, ev_t = 0.0, ev_tol = 1e-10;
  std::string ev_alpha;
  std::uint64_t ev_q = 0;
  std::int64_t ev_chi = -1;
  bool ev_json = false;
  eval->add_option("--sigma", ev_sigma, "real part")->required();
  eval->add_option("--t", ev_t, "imaginary part")->required();
  eval->add_option("--alpha", ev_alpha, "rational shift A/Q");
  eval->add_option("--q", ev_q, "modulus for L(s, chi)");
  eval->add_option("--chi", ev_chi, "character index within the group");
  eval->add_option("--tol", ev_tol, "truncation tolerance");
  eval->add_flag("--json", ev_json, "JSON output");

  // constant {ck, cl, fourth, dpair}
  auto* constant = app.add_subcommand("constant", "Euler-product constants");
  constant->require_subcommand(1);
  auto* ck = constant->add_subcommand("ck", "moment constant c_k(alpha)");
  int ck_k = 1;
  std::string ck_alpha;
  std::uint64_t ck_P = 100000;
  bool ck_json = false;
  ck->add_option("--k", ck_k, "moment order")->required();
  ck->add_option("--alpha", ck_alpha, "rational shift A/Q")->required();
  ck->add_option("-P,--cutoff", ck_P, "prime cutoff");
  ck->add_flag("--json", ck_json, "JSON output");

  auto* cl = constant->add_subcommand("cl", "product-moment constant c_ell(q)");
  std::uint64_t cl_q = 0, cl_P = 100000;
  std::string cl_ell;
  bool cl_json = false;
  cl->add_option("--q", cl_q, "modulus")->required();
  cl->add_option("--ell", cl_ell, "exponents as i:e,i:e,...")->required();
  cl->add_option("-P,--cutoff", cl_P, "prime cutoff");
  cl->add_flag("--json", cl_json, "JSON output");

  auto* fourth = constant->add_subcommand("fourth", "fourth-moment constant C(chi)");
  std::uint64_t f_q = 0;
  std::int64_t f_chi = -1;
  bool f_json = false;
  fourth->add_option("--q", f_q, "modulus")->required();
  fourth->add_option("--chi", f_chi, "character index")->required();
  fourth->add_flag("--json", f_json, "JSON output");

  auto* dpair = constant->add_subcommand("dpair", "pair constant D(chi, nu)");
  std::uint64_t d_q = 0, d_P = 100000;
  std::int64_t d_chi = -1, d_nu = -1;
  bool d_json = false;
  dpair->add_option("--q", d_q, "modulus")->required();
  dpair->add_option("--chi", d_chi, "first character index")->required();
  dpair->add_option("--nu", d_nu, "second character index")->required();
  dpair->add_option("-P,--cutoff", d_P, "prime cutoff");
  dpair->add_flag("--json", d_json, "JSON output");

  // moment family
  auto* moment = app.add_subcommand("moment", "M_k(T; alpha), the 2k-th Hurwitz moment");
  int m_k = 1;
  std::string m_alpha;
  double m_T = 0.0;
  moment->add_option("--k", m_k, "moment order (1..3)")->required();
  moment->add_option("--alpha", m_alpha, "rational shift A/Q")->required();
  moment->add_option("--T", m_T, "integration window [T, 2T]")->required();
  add_moment_flags(moment);

  auto* lmoment = app.add_subcommand("lmoment", "M_k(T; chi) for one character");
  std::uint64_t lm_q = 0;
  std::int64_t lm_chi = -1;
  int lm_k = 1;
  double lm_T = 0.0;
  lmoment->add_option("--q", lm_q, "modulus")->required();
  lmoment->add_option("--chi", lm_chi, "character index")->required();
  lmoment->add_option("--k", lm_k, "moment order (1..3)")->required();
  lmoment->add_option("--T", lm_T, "integration window [T, 2T]")->required();
  add_moment_flags(lmoment);

  auto* split = app.add_subcommand("split", "splitting ratio for L^ell at truncation X");
  std::uint64_t sp_q = 0;
  std::string sp_ell, sp_variant = "short";
  double sp_X = 0.0, sp_T = 0.0;
  split->add_option("--q", sp_q, "modulus")->required();
  split->add_option("--ell", sp_ell, "exponents as i:e,i:e,...")->required();
  split->add_option("--X", sp_X, "Euler-product truncation")->required();
  split->add_option("--T", sp_T, "integration window [T, 2T]")->required();
  split->add_option("--variant", sp_variant, "short (P*-based) or exact (P Z reassembly)")
      ->check(CLI::IsMember({"short", "exact"}));
  add_moment_flags(split);

  auto* zmoment = app.add_subcommand("zmoment", "mean square of Z_X = L / P_X");
  std::uint64_t zm_q = 0;
  std::int64_t zm_chi = -1;
  double zm_X = 0.0, zm_T = 0.0;
  zmoment->add_option("--q", zm_q, "modulus")->required();
  zmoment->add_option("--chi", zm_chi, "character index")->required();
  zmoment->add_option("--X", zm_X, "Euler-product truncation")->required();
  zmoment->add_option("--T", zm_T, "integration window [T, 2T]")->required();
  add_moment_flags(zmoment);

  auto* predict = app.add_subcommand("predict", "diagonal prediction for M_k(T; alpha)");
  int p_k = 1;
  std::string p_alpha;
  double p_T = 0.0;
  bool p_full = false;
  predict->add_option("--k", p_k, "moment order (1 or 2)")->required();
  predict->add_option("--alpha", p_alpha, "rational shift A/Q")->required();
  predict->add_option("--T", p_T, "integration window [T, 2T]")->required();
  predict->add_flag("--full", p_full, "also integrate the complete expansion with phases");
  add_moment_flags(predict);

  // rmt
  auto* rmt = app.add_subcommand("rmt", "CUE model moment vs. its closed form");
  int r_m = 1, r_N = 0, r_workers = 0;
  double r_X = 0.0;
  std::uint64_t r_samples = 10000, r_seed = 12345;
  bool r_json = false;
  rmt->add_option("--m", r_m, "phi exponent m")->required();
  rmt->add_option("--N", r_N, "matrix size")->required();
  rmt->add_option("--X", r_X, "smoothing truncation X")->required();
  rmt->add_option("--samples", r_samples, "Monte Carlo samples");
  rmt->add_option("--seed", r_seed, "base seed");
  rmt->add_option("--workers", r_workers, "worker threads");
  rmt->add_flag("--json", r_json, "JSON output");

  // verify
  auto* verify = app.add_subcommand("verify", "run a self-check suite");
  std::string v_suite;
  bool v_json = false;
  verify->add_option("suite", v_suite, "arith|characters|identities|constants|moments-fast|all")
      ->required()
      ->check(CLI::IsMember({"arith", "characters", "identities", "constants",
                             "moments-fast", "all"}));
  verify->add_flag("--json", v_json, "one JSON object per check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (characters_list->parsed()) return run_characters(char_q, char_json);
    if (eval->parsed())
      return run_eval(ev_sigma, ev_t, ev_alpha, ev_q, ev_chi, ev_tol, ev_json);

    if (ck->parsed()) {
      const Rational alpha = parse_alpha(ck_alpha);
      const double v =
          hzeta::c_k_alpha(ck_k, (std::uint64_t)alpha.num, (std::uint64_t)alpha.den, ck_P);
      // c_k(alpha) is the q=1 product times exact finite corrections, so the
      // truncation tail scales with the value.
      const auto base = hzeta::c_ell_q(
          hzeta::ExponentTuple::pure(hzeta::CharacterGroup::make(1), 0, ck_k), ck_P);
      const double tail = base.tail_bound / base.value * std::abs(v);
      print_constant("c_k", v, tail, ck_P, ck_json);
      return 0;
    }
    if (cl->parsed()) {
      auto group = hzeta::CharacterGroup::make(cl_q);
      hzeta::ExponentTuple ell(group, parse_ell(cl_ell, group->size()));
      const auto r = hzeta::c_ell_q(ell, cl_P);
      print_constant("c_ell", r.value, r.tail_bound, r.cutoff, cl_json);
      return 0;
    }
    if (fourth->parsed()) {
      const auto chi = character_by_index(f_q, (std::uint64_t)f_chi);
      print_constant("C", hzeta::c_chi_fourth(chi), 0.0, 0, f_json);
      return 0;
    }
    if (dpair->parsed()) {
      const auto chi = character_by_index(d_q, (std::uint64_t)d_chi);
      const auto nu = character_by_index(d_q, (std::uint64_t)d_nu);
      const auto r = hzeta::d_chi_nu(chi, nu, d_P);
      print_constant("D", r.value, r.tail_bound, r.cutoff, d_json);
      return 0;
    }

    if (moment->parsed()) {
      const auto est = hzeta::hurwitz_moment(m_k, parse_alpha(m_alpha), m_T, spec, workers);
      human_estimate("M_k(T; alpha)", est, out);
      emit_row(make_row(est), out);
      return 0;
    }
    if (lmoment->parsed()) {
      const auto chi = character_by_index(lm_q, (std::uint64_t)lm_chi);
      const auto est = hzeta::l_moment(lm_k, chi, lm_T, spec, workers);
      human_estimate("M_k(T; chi)", est, out);
      emit_row(make_row(est), out);
      return 0;
    }
    if (split->parsed()) {
      auto group = hzeta::CharacterGroup::make(sp_q);
      hzeta::ExponentTuple ell(group, parse_ell(sp_ell, group->size()));
      const auto variant = sp_variant == "exact" ? hzeta::SplittingVariant::exact_identity
                                                 : hzeta::SplittingVariant::short_product;
      const auto rep = hzeta::splitting_report(ell, sp_X, sp_T, spec, variant, workers);
      if (!out.json) {
        std::printf("%-22s %s\n", "splitting ratio", num17(rep.ratio).c_str());
        human_estimate("int |L^ell|^2", rep.l_ms, out);
        human_estimate(variant == hzeta::SplittingVariant::exact_identity
                           ? "int |(P Z)^ell|^2"
                           : "int |P*^ell|^2",
                       rep.p_ms, out);
        if (variant == hzeta::SplittingVariant::short_product)
          human_estimate("int |Z^ell|^2", rep.z_ms, out);
      }
      Row row = make_row(rep.l_ms);
      row.value = rep.ratio;
      double rel = 0.0;
      for (const auto* e : {&rep.l_ms, &rep.p_ms, &rep.z_ms})
        if (e->value != 0.0) rel += e->quad_error_est / std::abs(e->value);
      row.quad_err = std::abs(rep.ratio) * rel;
      emit_row(row, out);
      return 0;
    }
    if (zmoment->parsed()) {
      const auto chi = character_by_index(zm_q, (std::uint64_t)zm_chi);
      const auto est = hzeta::z_mean_square(chi, zm_X, zm_T, spec, workers);
      human_estimate("int |Z_X|^2", est, out);
      emit_row(make_row(est), out);
      return 0;
    }
    if (predict->parsed()) {
      const auto b =
          hzeta::diagonal_prediction(p_k, parse_alpha(p_alpha), p_T, spec, p_full, workers);
      if (!out.json) {
        std::printf("%-22s %s\n", "diagonal", num17(b.diagonal).c_str());
        std::printf("%-22s %s\n", "  primary", num17(b.primary_diagonal).c_str());
        std::printf("%-22s %s\n", "  secondary", num17(b.secondary_diagonal).c_str());
        if (b.has_full) {
          std::printf("%-22s %s\n", "full expansion", num17(b.full).c_str());
          std::printf("%-22s %s\n", "  major off-diag", num17(b.major_offdiag).c_str());
          std::printf("%-22s %s\n", "  minor off-diag", num17(b.minor_offdiag).c_str());
        }
        std::printf("%-22s %llu (refinements %d%s)\n", "nodes",
                    (unsigned long long)b.node_count, b.refinements,
                    b.converged ? "" : ", not converged");
      }
      Row row;
      row.T = b.T;
      row.k = b.k;
      row.alpha_num = b.alpha.num;
      row.alpha_den = b.alpha.den;
      row.q = b.q;
      row.value = b.diagonal;
      row.nodes = b.node_count;
      row.seconds = b.wall_seconds;
      emit_row(row, out);
      return 0;
    }

    if (rmt->parsed())
      return run_rmt(r_m, r_N, r_X, r_samples, r_seed, r_workers, r_json);
    if (verify->parsed()) return run_verify(v_suite, v_json);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
