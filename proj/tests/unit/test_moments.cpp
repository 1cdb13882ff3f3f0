#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "hzeta/characters.hpp"
#include "hzeta/constants.hpp"
#include "hzeta/moments.hpp"
#include "hzeta/rational.hpp"

using namespace hzeta;
using cd = std::complex<double>;

namespace {

// Exact mean square of a Dirichlet polynomial sum a_n n^{-1/2-it} over [T, 2T]:
//   sum_{m,n} a_m a_n (mn)^{-1/2} int_T^{2T} (n/m)^{it} dt
// with the off-diagonal integral evaluated in closed form.
double exact_poly_mean_square(const std::vector<double>& a, double T) {
  long double acc = 0.0L;
  const std::size_t N = a.size();
  for (std::size_t m = 1; m < N; ++m)
    for (std::size_t n = 1; n < N; ++n) {
      if (a[m] == 0.0 || a[n] == 0.0) continue;
      const long double w = (long double)a[m] * a[n] / std::sqrt((long double)m * n);
      if (m == n) {
        acc += w * (long double)T;
      } else {
        const long double L = std::log((long double)n / m);
        acc += w * (std::sin(2.0L * T * L) - std::sin(T * L)) / L;
        // the integral of cos(tL); the sine difference over L is its value
      }
    }
  return (double)acc;
}

struct ScopedEnv {
  std::string name;
  char* old;
  ScopedEnv(const char* n, const char* v) : name(n) {
    old = std::getenv(n);
    if (old) old = strdup(old);
    setenv(n, v, 1);
  }
  ~ScopedEnv() {
    if (old) {
      setenv(name.c_str(), old, 1);
      free(old);
    } else {
      unsetenv(name.c_str());
    }
  }
};

}  // namespace

TEST_SUITE_BEGIN("moments");

TEST_CASE("mean_square reproduces the closed form for a Dirichlet polynomial") {
  std::vector<double> a(9, 0.0);
  a[1] = 1.0;
  a[2] = -0.7;
  a[3] = 0.25;
  a[5] = 1.3;
  a[8] = -0.4;
  const double T = 100.0;
  auto f = [&](double t) {
    cd s = 0.0;
    for (std::size_t n = 1; n < a.size(); ++n)
      if (a[n] != 0.0)
        s += a[n] * std::exp(cd(0.0, -t * std::log((double)n))) / std::sqrt((double)n);
    return s;
  };
  QuadratureSpec spec;
  spec.refine_tol = 1e-7;
  spec.max_refinements = 6;
  const auto est = mean_square(f, T, spec);
  const double exact = exact_poly_mean_square(a, T);
  CHECK(est.value == doctest::Approx(exact).epsilon(1e-8));
  CHECK(est.converged);
  CHECK(est.node_count > 0);
}

TEST_CASE("worker count does not change a single bit of the estimate") {
  auto f = [](double t) { return std::exp(cd(0.0, t * 1.7)) + cd(0.3, 0.0) * std::sin(t); };
  QuadratureSpec spec;
  spec.refine_tol = 1e-6;
  spec.max_refinements = 3;
  const auto one = mean_square(f, 300.0, spec, 1);
  const auto four = mean_square(f, 300.0, spec, 4);
  const auto six = mean_square(f, 300.0, spec, 6);
  CHECK(std::memcmp(&one.value, &four.value, sizeof(double)) == 0);
  CHECK(std::memcmp(&one.value, &six.value, sizeof(double)) == 0);
  CHECK(one.quad_error_est == four.quad_error_est);
  CHECK(one.node_count == four.node_count);
}

TEST_CASE("resolve_workers precedence: argument, environment, then one") {
  ScopedEnv env("HZETA_WORKERS", "3");
  CHECK(resolve_workers(0) == 3);
  CHECK(resolve_workers(2) == 2);
  CHECK(resolve_workers(100) == 64);
  {
    ScopedEnv env2("HZETA_WORKERS", "garbage");
    CHECK(resolve_workers(0) == 1);
  }
}

TEST_CASE("singular nodes are bisected away and flagged") {
  // a strip wide enough that panel nodes must hit it; the dropped slivers
  // remove its measure from the integral up to the depth-10 sliver width
  const double bad = 41.237, halfwidth = 0.025;
  auto f = [&](double t) -> cd {
    if (std::abs(t - bad) < halfwidth) throw std::runtime_error("synthetic singularity");
    return cd(1.0, 0.0);
  };
  const auto est = mean_square(f, 30.0, {});
  CHECK(est.singular_flagged);
  CHECK(std::abs(est.value - (30.0 - 2.0 * halfwidth)) < 1e-3);
}

TEST_CASE("refinement activates on demand") {
  // |f|^2 oscillates far faster than the initial panels can resolve
  auto f = [](double t) { return cd(std::cos(600.0 * std::sin(t / 7.0)), 0.0); };
  QuadratureSpec tight;
  tight.refine_tol = 1e-9;
  tight.max_refinements = 4;
  const auto est = mean_square(f, 40.0, tight);
  CHECK(est.refinements > 0);
  QuadratureSpec off;
  off.max_refinements = 0;
  const auto coarse = mean_square(f, 40.0, off);
  CHECK(coarse.refinements == 0);
  CHECK(coarse.node_count < est.node_count);
}

TEST_CASE("domain checks") {
  auto one = [](double) { return cd(1.0, 0.0); };
  CHECK_THROWS_AS(mean_square(one, 5.0, {}), std::domain_error);
  QuadratureSpec bad;
  bad.panel_width = -1.0;
  CHECK_THROWS_AS(mean_square(one, 50.0, bad), std::domain_error);
  CHECK_THROWS_AS(hurwitz_moment(4, Rational(1, 3), 100.0, {}), std::domain_error);
  auto g = CharacterGroup::make(5);
  CHECK_THROWS_AS(p_mean_square(ExponentTuple::pure(g, 1, 1), 20.0, 100.0, {}),
                  std::domain_error);  // X <= q^2
  const auto chi = g->character(1);
  CHECK_THROWS_AS(twisted_main_term(100.0, chi, {0.0, 1.0}, 0.5), std::domain_error);
  CHECK_THROWS_AS(diagonal_prediction(3, Rational(1, 3), 100.0, {}), std::domain_error);
  CHECK_THROWS_AS(diagonal_prediction(2, Rational(1, 11), 100.0, {}), std::domain_error);
}

TEST_CASE("hurwitz and L moments coincide for the trivial character") {
  const auto hm = hurwitz_moment(1, Rational(1, 1), 50.0, {});
  auto g = CharacterGroup::make(1);
  const auto lm = l_moment(1, g->character(0), 50.0, {});
  CHECK(hm.value == doctest::Approx(lm.value).epsilon(1e-12));
  CHECK(hm.k == 1);
  CHECK(hm.alpha == Rational(1, 1));
  CHECK(lm.q == 1);
}

TEST_CASE("second moment of zeta sits near T log T at moderate height") {
  const auto est = hurwitz_moment(1, Rational(1, 1), 600.0, {});
  const double ratio = est.value / (600.0 * std::log(600.0));
  CHECK(ratio > 0.6);
  CHECK(ratio < 1.4);
  CHECK(est.converged);
}

TEST_CASE("p_mean_square approaches T times the coefficient sum") {
  auto g = CharacterGroup::make(3);
  const ExponentTuple ell = ExponentTuple::pure(g, 1, 1);
  const double X = 12.0, T = 500.0;
  const auto est = p_mean_square(ell, X, T, {});
  const double oracle = p_coeff_oracle(ell, X);
  CHECK(est.value / T == doctest::Approx(oracle).epsilon(0.10));
  CHECK(est.X == X);
}

TEST_CASE("empty exponent tuple integrates the constant one") {
  auto g = CharacterGroup::make(3);
  ExponentTuple ell(g, {0, 0});
  CHECK(p_coeff_oracle(ell, 30.0) == 1.0);
  const auto est = p_mean_square(ell, 30.0, 200.0, {});
  CHECK(est.value == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("splitting report is internally consistent") {
  auto g = CharacterGroup::make(4);
  const ExponentTuple ell = ExponentTuple::pure(g, 1, 1);
  const double X = 17.0, T = 300.0;
  const auto rep = splitting_report(ell, X, T, {}, SplittingVariant::short_product);
  CHECK(rep.ratio ==
        doctest::Approx(T * rep.l_ms.value / (rep.p_ms.value * rep.z_ms.value))
            .epsilon(1e-12));
  CHECK(rep.ratio > 0.3);
  CHECK(rep.ratio < 3.0);
  CHECK(rep.variant == SplittingVariant::short_product);
  CHECK(splitting_ratio(ell, X, T, {}, SplittingVariant::short_product) ==
        doctest::Approx(rep.ratio).epsilon(1e-12));
}

TEST_CASE("exact-identity splitting is one by construction") {
  auto g = CharacterGroup::make(3);
  const ExponentTuple ell = ExponentTuple::pure(g, 1, 1);
  const auto rep = splitting_report(ell, 12.0, 200.0, {}, SplittingVariant::exact_identity);
  CHECK(std::abs(rep.ratio - 1.0) < 1e-9);
}

TEST_CASE("splitting requires X beyond q^2") {
  auto g = CharacterGroup::make(5);
  CHECK_THROWS_AS(
      splitting_report(ExponentTuple::pure(g, 1, 1), 20.0, 200.0, {},
                       SplittingVariant::short_product),
      std::domain_error);
}

TEST_CASE("twisted main term against a direct double sum") {
  auto g = CharacterGroup::make(3);
  const auto chi = g->character(1);
  std::vector<double> b{0.0, 1.0, -0.5, 0.0, 0.25};
  const double T = 1.0e6, theta = 0.125;  // T^theta = 5.6 keeps all four terms
  const double got = twisted_main_term(T, chi, b, theta);
  const double C = 2.0 * kEulerGamma - 1.0 + 2.0 * std::log(2.0);
  double want = 0.0;
  for (std::uint64_t m = 1; m <= 4; ++m)
    for (std::uint64_t n = 1; n <= 4; ++n) {
      if (m % 3 == 0 || n % 3 == 0) continue;
      const double gmn = (double)std::gcd(m, n);
      const double lcm = (double)(m * n) / gmn;
      want += b[m] * b[n] / lcm *
              (std::log(3.0 * T * gmn * gmn / (2.0 * M_PI * m * n)) + C +
               std::log(3.0) / 2.0);
    }
  want *= 2.0 / 3.0;
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("diagonal prediction reduces to the plain moment at q = 1") {
  const auto b = diagonal_prediction(1, Rational(1, 1), 80.0, {}, true);
  const auto m1 = hurwitz_moment(1, Rational(1, 1), 80.0, {});
  CHECK(b.diagonal == doctest::Approx(m1.value).epsilon(1e-9));
  CHECK(b.has_full);
  CHECK(b.full == doctest::Approx(b.diagonal).epsilon(1e-12));  // one tuple, no cross terms
  CHECK(b.major_offdiag == 0.0);
  CHECK(b.minor_offdiag == 0.0);
}

TEST_CASE("full expansion recovers the direct moment across characters") {
  const Rational alpha(3, 4);  // chi(3) = -1 makes the cross phase nontrivial
  QuadratureSpec spec;
  spec.max_refinements = 0;  // identical panels on both sides
  const auto b = diagonal_prediction(1, alpha, 150.0, spec, true);
  const auto m1 = hurwitz_moment(1, alpha, 150.0, spec);
  REQUIRE(b.has_full);
  CHECK(b.full == doctest::Approx(m1.value).epsilon(1e-8));
  // the diagonal alone misses the cross terms
  CHECK(b.full == doctest::Approx(b.diagonal + b.major_offdiag + b.minor_offdiag)
                      .epsilon(1e-12));
}

TEST_CASE("metadata fields are filled per operation") {
  auto g = CharacterGroup::make(3);
  const auto z = z_mean_square(g->character(1), 12.0, 120.0, {});
  CHECK(z.q == 3);
  CHECK(z.X == 12.0);
  CHECK(z.k == 1);
  CHECK(z.T == 120.0);
  // X beyond log^2 T trips the regime warning
  const auto warm = z_mean_square(g->character(1), 12.0, 400.0, {});
  CHECK(!warm.regime_warning);  // log(400)^2 = 35.9 > 12
  const auto cold = z_mean_square(g->character(1), 40.0, 400.0, {});
  CHECK(cold.regime_warning);
}

TEST_SUITE_END();
