#include "hzeta/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hzeta/arith.hpp"
#include "hzeta/characters.hpp"
#include "hzeta/constants.hpp"
#include "hzeta/hybrid.hpp"
#include "hzeta/lfun.hpp"
#include "hzeta/moments.hpp"
#include "hzeta/primes.hpp"
#include "hzeta/quadrature.hpp"
#include "hzeta/rational.hpp"

namespace hzeta {

namespace {

using Outcome = std::pair<bool, std::string>;

struct Check {
  const char* name;
  std::function<Outcome()> fn;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

Outcome within(double measured, double tol, const char* label) {
  std::ostringstream os;
  os << label << " = " << fmt(measured) << " (tol " << fmt(tol) << ")";
  return {measured <= tol, os.str()};
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t i = 1; i * i <= n; ++i) {
    if (n % i) continue;
    d.push_back(i);
    if (i != n / i) d.push_back(n / i);
  }
  std::sort(d.begin(), d.end());
  return d;
}

// ---------------------------------------------------------------------------
// arith
// ---------------------------------------------------------------------------

std::vector<Check> arith_checks() {
  return {
      {"arith/bernoulli-recurrence",
       [] {
         // sum_{j=0}^{n} binom(n+1, j) B_j = 0 for n >= 1, over B_0..B_26
         // (odd B beyond B_1 vanish); B_1 = -1/2 enters as the n-th term.
         double worst = 0.0;
         for (int n = 2; n <= 26; n += 2) {
           double s = binomial(n + 1, 0) * 1.0 + binomial(n + 1, 1) * (-0.5);
           for (int j = 2; j <= n; j += 2)
             s += binomial(n + 1, j) * bernoulli(j).to_double();
           worst = std::max(worst, std::abs(s));
         }
         return within(worst, 1e-9, "max |recurrence residual|");
       }},
      {"arith/barnes-g-integers",
       [] {
         const bool ok = barnes_g(1) == 1.0 && barnes_g(2) == 1.0 && barnes_g(3) == 1.0 &&
                         barnes_g(4) == 2.0 && barnes_g(5) == 12.0 && barnes_g(6) == 288.0 &&
                         barnes_g(7) == 34560.0 && barnes_g(8) == 24883200.0;
         return Outcome{ok, "G(1..8) against the factorial products"};
       }},
      {"arith/dk-local",
       [] {
         double worst = std::abs(dk_coeff(3, 32) - 21.0);  // binom(5+2, 2)
         worst = std::max(worst, std::abs(dk_coeff(2, 12) - 6.0));
         worst = std::max(worst, std::abs(dk_coeff(2, 1) - 1.0));
         return within(worst, 1e-12, "max |d_k deviation|");
       }},
      {"arith/mangoldt",
       [] {
         double worst = std::abs(mangoldt(8) - std::log(2.0));
         worst = std::max(worst, std::abs(mangoldt(6)));
         worst = std::max(worst, std::abs(mangoldt(7) - std::log(7.0)));
         worst = std::max(worst, std::abs(mangoldt(1)));
         return within(worst, 1e-12, "max |Lambda deviation|");
       }},
      {"arith/dl-multiplicative",
       [] {
         auto g = CharacterGroup::make(5);
         ExponentTuple ell(g, {1, 1, 0, 0});
         double worst = 0.0;
         for (std::uint64_t m : {2ull, 9ull, 49ull})
           for (std::uint64_t n : {3ull, 7ull, 11ull}) {
             if (std::gcd(m, n) != 1) continue;
             const auto lhs = dl_coeff(ell, m * n);
             const auto rhs = dl_coeff(ell, m) * dl_coeff(ell, n);
             worst = std::max(worst, std::abs(lhs - rhs));
           }
         return within(worst, 1e-12, "max |d_ell(mn) - d_ell(m) d_ell(n)|");
       }},
      {"arith/kappa-matches-dl",
       [] {
         auto g = CharacterGroup::make(5);
         ExponentTuple ell(g, {1, 1, 0, 0});
         const auto kap = kappa_table(ell);
         const auto& units = g->units();
         double worst = 0.0;
         for (std::uint64_t p : {2ull, 3ull, 7ull, 11ull, 13ull}) {
           const double want = std::norm(dl_coeff(ell, p));
           std::size_t slot = 0;
           while (units[slot] != p % 5) ++slot;
           worst = std::max(worst, std::abs(kap[slot] - want));
         }
         return within(worst, 1e-12, "max |kappa - |d_ell(p)|^2|");
       }},
      {"arith/multinomial-sum",
       [] {
         // sum over |ell| = k of k!/prod(ell!) = (#parts)^k
         auto g = CharacterGroup::make(7);  // 6 characters
         double s = 0.0;
         for (std::size_t i = 0; i < g->size(); ++i)
           for (std::size_t j = 0; j < g->size(); ++j) {
             std::vector<int> e(g->size(), 0);
             e[i] += 1;
             e[j] += 1;
             // (i, j) ordered pairs double-count the mixed tuples
             s += multinomial(2, e) / (i == j ? 1.0 : 2.0);
           }
         return within(std::abs(s - 36.0), 1e-9, "|sum - 6^2|");
       }},
      {"arith/smooth-numbers",
       [] {
         const auto s = smooth_numbers(3, 10.0, 20);
         const std::vector<std::uint64_t> want = {1, 2, 4, 5, 7, 8, 10, 14, 16, 20};
         return Outcome{s == want, "3-coprime 10-smooth integers up to 20"};
       }},
  };
}

// ---------------------------------------------------------------------------
// characters
// ---------------------------------------------------------------------------

std::vector<Check> character_checks() {
  return {
      {"characters/orthogonality",
       [] {
         double worst = 0.0;
         for (std::uint64_t q : {8ull, 12ull, 15ull}) {
           auto g = CharacterGroup::make(q);
           const double phi = (double)g->phi();
           for (std::size_t i = 0; i < g->size(); ++i)
             for (std::size_t j = 0; j < g->size(); ++j) {
               std::complex<double> s = 0.0;
               for (std::uint32_t a : g->units())
                 s += g->character(i).value(a) * std::conj(g->character(j).value(a));
               worst = std::max(worst, std::abs(s - (i == j ? phi : 0.0)));
             }
         }
         return within(worst, 1e-10, "max |row orthogonality defect|");
       }},
      {"characters/column-orthogonality",
       [] {
         auto g = CharacterGroup::make(21);
         const double phi = (double)g->phi();
         double worst = 0.0;
         for (std::uint32_t a : g->units())
           for (std::uint32_t b : g->units()) {
             std::complex<double> s = 0.0;
             for (std::size_t i = 0; i < g->size(); ++i)
               s += g->character(i).value(a) * std::conj(g->character(i).value(b));
             worst = std::max(worst, std::abs(s - (a == b ? phi : 0.0)));
           }
         return within(worst, 1e-10, "max |column orthogonality defect|");
       }},
      {"characters/multiplicative",
       [] {
         auto g = CharacterGroup::make(21);
         double worst = 0.0;
         for (std::size_t i = 0; i < g->size(); ++i) {
           const auto chi = g->character(i);
           for (std::uint32_t a : g->units())
             for (std::uint32_t b : g->units())
               worst = std::max(worst,
                                std::abs(chi.value((std::uint64_t)a * b) -
                                         chi.value(a) * chi.value(b)));
         }
         return within(worst, 1e-10, "max |chi(ab) - chi(a) chi(b)|");
       }},
      {"characters/conductor-brute-force",
       [] {
         for (std::uint64_t q = 2; q <= 36; ++q) {
           auto g = CharacterGroup::make(q);
           for (std::size_t i = 0; i < g->size(); ++i) {
             const auto chi = g->character(i);
             std::uint64_t brute = q;
             for (std::uint64_t d : divisors(q)) {
               bool periodic = true;
               for (std::uint32_t a : g->units()) {
                 for (std::uint32_t b : g->units()) {
                   if (a % d != b % d) continue;
                   if (!(chi.value_exponent(a) == chi.value_exponent(b))) {
                     periodic = false;
                     break;
                   }
                 }
                 if (!periodic) break;
               }
               if (periodic) {
                 brute = d;
                 break;
               }
             }
             if (chi.conductor() != brute) {
               std::ostringstream os;
               os << "q=" << q << " index=" << i << ": conductor " << chi.conductor()
                  << " vs brute " << brute;
               return Outcome{false, os.str()};
             }
           }
         }
         return Outcome{true, "all characters mod q <= 36"};
       }},
      {"characters/induced-values-agree",
       [] {
         double worst = 0.0;
         for (std::uint64_t q : {12ull, 45ull}) {
           auto g = CharacterGroup::make(q);
           for (std::size_t i = 0; i < g->size(); ++i) {
             const auto chi = g->character(i);
             const auto star = chi.induce_primitive();
             if (star.conductor() != chi.conductor()) return Outcome{false, "conductor drift"};
             if (!star.is_primitive()) return Outcome{false, "induced character not primitive"};
             for (std::uint32_t a : g->units())
               worst = std::max(worst, std::abs(chi.value(a) - star.value(a)));
           }
         }
         return within(worst, 1e-10, "max |chi - chi*| on coprime residues");
       }},
      {"characters/parity-and-order",
       [] {
         auto g = CharacterGroup::make(35);
         for (std::size_t i = 0; i < g->size(); ++i) {
           const auto chi = g->character(i);
           const auto at_minus1 = chi.value(35 - 1);
           if (std::abs(at_minus1 - (double)chi.parity()) > 1e-12)
             return Outcome{false, "parity disagrees with chi(-1)"};
           auto power = g->character(0);
           for (std::uint64_t j = 0; j < chi.order(); ++j) power = power * chi;
           if (power.index() != 0) return Outcome{false, "chi^order is not principal"};
         }
         return Outcome{true, "chi(-1) and character orders mod 35"};
       }},
  };
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

std::vector<Check> identity_checks() {
  return {
      {"identities/hurwitz-decomposition",
       [] {
         double worst = 0.0;
         for (std::uint64_t q : {5ull, 12ull}) {
           auto g = CharacterGroup::make(q);
           const double phi = (double)g->phi();
           std::vector<EvalResult> ls(g->size());
           for (double t : {12.3, 47.7}) {
             const std::complex<double> s(0.5, t);
             for (std::size_t i = 0; i < g->size(); ++i)
               ls[i] = dirichlet_l(s, g->character(i));
             const std::complex<double> qs = std::exp(s * std::log((double)q));
             for (std::uint32_t a : g->units()) {
               std::complex<double> sum = 0.0;
               for (std::size_t i = 0; i < g->size(); ++i)
                 sum += std::conj(g->character(i).value(a)) * ls[i].value;
               const auto direct =
                   hurwitz_zeta(s, Rational((std::int64_t)a, (std::int64_t)q));
               worst = std::max(worst, std::abs(direct.value - qs / phi * sum));
             }
           }
         }
         return within(worst, 1e-9, "max |zeta(s,a/q) - decomposition|");
       }},
      {"identities/series-d2",
       [] {
         const auto id = series_identity_coeffs(SeriesKind::d2_square, 0.0, 64);
         double worst = 0.0;
         for (std::size_t m = 0; m < id.lhs.size(); ++m) {
           worst = std::max(worst, std::abs(id.lhs[m] - id.rhs[m]));
           const double direct = ((double)m + 1.0) * ((double)m + 1.0);
           worst = std::max(worst, std::abs(id.rhs[m] - direct));
         }
         return within(worst, 1e-12, "max coefficient defect");
       }},
      {"identities/series-omega",
       [] {
         double worst = 0.0;
         for (int k : {1, 3, 8}) {
           const double ang = 2.0 * std::numbers::pi * k / 16.0;
           const std::complex<double> w(std::cos(ang), std::sin(ang));
           const auto id = series_identity_coeffs(SeriesKind::omega_pair, w, 64);
           for (std::size_t m = 0; m < id.lhs.size(); ++m)
             worst = std::max(worst, std::abs(id.lhs[m] - id.rhs[m]));
         }
         return within(worst, 1e-12, "max coefficient defect");
       }},
      {"identities/smoothing-mass",
       [] {
         double worst = 0.0;
         const auto& gl = gauss_legendre(64);
         for (double X : {5.0, 30.0}) {
           const SmoothingSpec sp(X);
           const double lo = std::exp(1.0 - 1.0 / X), hi = std::exp(1.0);
           double mass = 0.0;
           const int panels = 16;
           for (int i = 0; i < panels; ++i) {
             const double a = lo + (hi - lo) * i / panels;
             const double b = lo + (hi - lo) * (i + 1) / panels;
             for (std::size_t j = 0; j < gl.x.size(); ++j)
               mass += 0.5 * (b - a) * gl.w[j] *
                       u_weight(0.5 * (a + b) + 0.5 * (b - a) * gl.x[j], sp);
           }
           worst = std::max(worst, std::abs(mass - 1.0));
         }
         return within(worst, 1e-8, "max |mass(u) - 1|");
       }},
      {"identities/cosine-integral",
       [] {
         double worst = std::abs(ci(1.0) - 0.33740392290096813466);
         worst = std::max(worst, std::abs(ci(15.0) - 0.046278677674360439604));
         worst = std::max(worst, std::abs(ci(100.0) + 0.0051488251426104921444));
         return within(worst, 5e-10, "max |Ci deviation| across both branches");
       }},
      {"identities/phi-power",
       [] {
         const SmoothingSpec sp(12.0);
         const double lhs = phi_factor(3, 0.7, sp);
         const double rhs = std::pow(phi_factor(1, 0.7, sp), 3);
         return within(std::abs(lhs / rhs - 1.0), 1e-12, "|phi(3,.)/phi(1,.)^3 - 1|");
       }},
      {"identities/l-equals-px-zx",
       [] {
         auto g = CharacterGroup::make(3);
         const auto chi = g->character(1);
         const std::complex<double> s(0.5, 20.0);
         const auto l = dirichlet_l(s, chi);
         const auto back = p_x(s, chi, 15.0) * z_x(s, chi, 15.0);
         return within(std::abs(l.value - back) / std::abs(l.value), 1e-9,
                       "|L - P_X Z_X| / |L|");
       }},
  };
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

std::vector<Check> constant_checks() {
  return {
      {"constants/c1-is-one",
       [] {
         double worst = 0.0;
         for (std::uint64_t q : {7ull, 12ull}) {
           auto g = CharacterGroup::make(q);
           for (std::uint32_t a : g->units())
             worst = std::max(worst, std::abs(c_k_alpha(1, a, q, 200000) - 1.0));
         }
         return within(worst, 1e-9, "max |c_1(a/q) - 1|");
       }},
      {"constants/c2-closed-form",
       [] {
         const std::uint64_t P = 100000;
         const double c2 = c_k_alpha(2, 1, 1, P);
         double worst = std::abs(c2 - 1.0 / (2.0 * std::numbers::pi * std::numbers::pi));
         // the q-dependence must cancel exactly against the p | q factors
         for (std::uint64_t q : {6ull, 35ull}) {
           double closed = c2 / (double)q;
           for (auto [p, e] : factorize(q)) closed *= 1.0 - 1.0 / ((double)p + 1.0);
           worst = std::max(worst, std::abs(c_k_alpha(2, 1, q, P) / closed - 1.0));
         }
         return within(worst, 1e-6, "|c_2 - 1/(2 pi^2)| and closed-form ratios");
       }},
      {"constants/fourth-moment-product-form",
       [] {
         auto g = CharacterGroup::make(5);
         const auto chi = g->character(1);
         const double direct = c_chi_fourth(chi);
         const auto viaprod = c_ell_q(ExponentTuple::pure(g, 1, 2), 10000);
         const double tol = 10.0 * viaprod.tail_bound + 1e-10;
         return within(std::abs(direct - viaprod.value), tol, "|C(chi) - c_ell(q)|");
       }},
      {"constants/pair-moment-product-form",
       [] {
         auto g = CharacterGroup::make(5);
         const auto chi = g->character(1);
         const auto nu = g->character(2);
         const auto direct = d_chi_nu(chi, nu, 10000);
         std::vector<int> e(g->size(), 0);
         e[1] = 1;
         e[2] = 1;
         const auto viaprod = c_ell_q(ExponentTuple(g, e), 10000);
         const double tol = 10.0 * (viaprod.tail_bound + direct.tail_bound) + 1e-10;
         return within(std::abs(direct.value - viaprod.value), tol, "|D(chi,nu) - c_ell(q)|");
       }},
      {"constants/mertens",
       [] {
         // prod_{p<=X} (1-1/p)^{-1} = e^gamma log X (1 + O(1/log X))
         const double X = 10000.0;
         const double ratio =
             mertens_ap(1, 1, 1.0, X) / (std::exp(kEulerGamma) * std::log(X));
         return within(std::abs(ratio - 1.0), 0.01, "|Mertens ratio - 1|");
       }},
      {"constants/h-degenerate-at-q1",
       [] {
         // at q = 1 every Euler factor has exponent zero, so H = (e^g log X)^k
         const auto h = h_qc(1, 1, 2.0, 50.0, 10000);
         const double want = std::pow(std::exp(kEulerGamma) * std::log(50.0), 2.0);
         return within(std::abs(h.value / want - 1.0), 1e-12, "|H/(e^g log X)^2 - 1|");
       }},
      {"constants/f-x-degenerate",
       [] {
         // ell concentrated on the principal character mod 1: lambda = |d|^2
         auto g = CharacterGroup::make(1);
         const auto f = f_x(ExponentTuple::pure(g, 0, 1), 50.0, 10000);
         const double want = std::exp(kEulerGamma) * std::log(50.0);
         return within(std::abs(f.value / want - 1.0), 1e-12, "|F_X/(e^g log X) - 1|");
       }},
      {"constants/euler-product-moment",
       [] {
         auto g = CharacterGroup::make(3);
         ExponentTuple ell = ExponentTuple::pure(g, 1, 2);
         const double X = 50.0;
         const auto b = b_ell(ell, 100000);
         const auto f = f_x(ell, X, 100000);
         const double ratio = p_coeff_oracle(ell, X) / (b.value * f.value);
         const double band = 5.0 / std::log(X);
         return within(std::abs(ratio - 1.0), band, "|oracle/(b F_X) - 1|");
       }},
  };
}

// ---------------------------------------------------------------------------
// moments-fast
// ---------------------------------------------------------------------------

std::vector<Check> moment_checks() {
  return {
      {"moments/unit-integrand",
       [] {
         const auto est = mean_square([](double) { return std::complex<double>(1.0); }, 500.0);
         return within(std::abs(est.value - 500.0), 1e-12 * 500.0, "|int 1 - T|");
       }},
      {"moments/unimodular-integrand",
       [] {
         const auto est = mean_square(
             [](double t) {
               return std::exp(std::complex<double>(0.0, 3.7 * t));
             },
             500.0);
         return within(std::abs(est.value - 500.0), 1e-12 * 500.0, "|int |e^{iwt}|^2 - T|");
       }},
      {"moments/scaling-exact",
       [] {
         auto f = [](double t) {
           return std::complex<double>(std::sin(0.3 * t), std::cos(0.11 * t) * 0.5);
         };
         const auto one = mean_square(f, 500.0);
         const auto two = mean_square([&](double t) { return 2.0 * f(t); }, 500.0);
         const bool exact = two.value == 4.0 * one.value;
         return Outcome{exact, "mean_square(2f) == 4 mean_square(f) bitwise"};
       }},
      {"moments/zeta-second-moment-band",
       [] {
         const auto est = hurwitz_moment(1, Rational(1, 1), 500.0);
         const double ratio = est.value / (500.0 * std::log(500.0));
         std::ostringstream os;
         os << "M_1(500;1)/(T log T) = " << fmt(ratio) << " (band [0.6, 1.3])";
         return Outcome{ratio > 0.6 && ratio < 1.3 && est.converged, os.str()};
       }},
      {"moments/splitting-exact-identity",
       [] {
         auto g = CharacterGroup::make(3);
         const double r = splitting_ratio(ExponentTuple::pure(g, 1, 1), 12.0, 500.0, {},
                                          SplittingVariant::exact_identity);
         return within(std::abs(r - 1.0), 1e-9, "|ratio - 1|");
       }},
      {"moments/full-expansion-identity",
       [] {
         // single fixed-width pass so both sides use identical panels
         QuadratureSpec spec;
         spec.max_refinements = 0;
         const auto full = diagonal_prediction(1, Rational(1, 3), 500.0, spec, true);
         const auto direct = hurwitz_moment(1, Rational(1, 3), 500.0, spec);
         return within(std::abs(full.full / direct.value - 1.0), 1e-8,
                       "|expansion/M_1 - 1|");
       }},
      {"moments/twisted-single-term",
       [] {
         auto g = CharacterGroup::make(3);
         const auto chi = g->character(1);
         const double got = twisted_main_term(1000.0, chi, {0.0, 1.0}, 0.1);
         const double want =
             2.0 / 3.0 *
             (std::log(3.0 * 1000.0 / (2.0 * std::numbers::pi)) +
              (2.0 * kEulerGamma - 1.0 + 2.0 * std::log(2.0)) + std::log(3.0) / 2.0);
         return within(std::abs(got - want), 1e-12, "|M' - single-term formula|");
       }},
      {"moments/empty-exponent-tuple",
       [] {
         auto g = CharacterGroup::make(3);
         ExponentTuple zero(g, {0, 0});
         const double oracle = p_coeff_oracle(zero, 12.0);
         const auto ms = p_mean_square(zero, 12.0, 500.0);
         const bool ok =
             oracle == 1.0 && std::abs(ms.value / 500.0 - 1.0) < 1e-12 && ms.converged;
         return Outcome{ok, "ell = 0 collapses to the constant 1"};
       }},
  };
}

std::vector<Check> checks_for(const std::string& suite) {
  if (suite == "arith") return arith_checks();
  if (suite == "characters") return character_checks();
  if (suite == "identities") return identity_checks();
  if (suite == "constants") return constant_checks();
  if (suite == "moments-fast") return moment_checks();
  throw std::domain_error("verify: unknown suite '" + suite + "'");
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"arith", "characters", "identities",
                                                 "constants", "moments-fast"};
  return names;
}

std::vector<CheckReport> run_verify_suite(const std::string& suite) {
  std::vector<Check> checks;
  if (suite == "all") {
    for (const auto& s : verify_suites()) {
      auto cs = checks_for(s);
      checks.insert(checks.end(), std::make_move_iterator(cs.begin()),
                    std::make_move_iterator(cs.end()));
    }
  } else {
    checks = checks_for(suite);
  }

  std::vector<CheckReport> reports;
  reports.reserve(checks.size());
  for (const auto& c : checks) {
    CheckReport r;
    r.name = c.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [ok, detail] = c.fn();
      r.passed = ok;
      r.detail = std::move(detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace hzeta
