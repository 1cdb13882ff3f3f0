#include <cmath>
#include <complex>

#include "doctest.h"
#include "hzeta/characters.hpp"
#include "hzeta/lfun.hpp"
#include "hzeta/rational.hpp"

using namespace hzeta;
using cd = std::complex<double>;

TEST_SUITE_BEGIN("lfun");

TEST_CASE("zeta at classical points") {
  CHECK(riemann_zeta({0.5, 0.0}).value.real() ==
        doctest::Approx(-1.46035450880958681289).epsilon(1e-13));
  CHECK(riemann_zeta({2.0, 0.0}).value.real() ==
        doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
  // continuation below the strip
  CHECK(riemann_zeta({0.0, 0.0}).value.real() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(riemann_zeta({-1.0, 0.0}).value.real() ==
        doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("zeta nearly vanishes at the first critical zero") {
  const auto r = riemann_zeta({0.5, 14.134725141734694});
  CHECK(std::abs(r.value) < 1e-9);
}

TEST_CASE("hurwitz special values and continuation") {
  // zeta(0, alpha) = 1/2 - alpha
  CHECK(hurwitz_zeta({0.0, 0.0}, Rational(1, 3)).value.real() ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  // zeta(-1, alpha) = -B_2(alpha)/2; at 1/4 this is 1/96
  CHECK(hurwitz_zeta({-1.0, 0.0}, Rational(1, 4)).value.real() ==
        doctest::Approx(1.0 / 96.0).epsilon(1e-12));
  // frozen reference points (30-digit evaluation, independent implementation)
  const auto a = hurwitz_zeta({0.5, 50.5}, Rational(1, 3));
  CHECK(a.value.real() == doctest::Approx(1.27446633078023687648).epsilon(1e-12));
  CHECK(a.value.imag() == doctest::Approx(-0.34167449697279507664).epsilon(1e-12));
  const auto b = hurwitz_zeta({0.5, 300.25}, Rational(2, 7));
  CHECK(b.value.real() == doctest::Approx(1.76887426093660043229).epsilon(1e-12));
  CHECK(b.value.imag() == doctest::Approx(-1.95146116481605076523).epsilon(1e-12));
}

TEST_CASE("reported truncation bound covers the frozen reference error") {
  // err_bound certifies the truncation remainder only; allow on top of it the
  // round-off of a direct sum with O(|t|) terms, about 1e-12 at these heights
  const auto a = hurwitz_zeta({0.5, 50.5}, Rational(1, 3));
  const double true_err =
      std::abs(a.value - cd(1.274466330780236876481233323, -0.341674496972795076638169872));
  CHECK(true_err <= a.err_bound + 1e-12 * (1.0 + std::abs(a.value)));
  const auto z = riemann_zeta({0.5, 1000.5});
  const double zerr =
      std::abs(z.value - cd(2.544375567234922807195022144, -0.157750784822026959559897799));
  CHECK(zerr <= z.err_bound + 1e-12 * (1.0 + std::abs(z.value)));
}

TEST_CASE("zeta(s, 1/2) = (2^s - 1) zeta(s)") {
  for (double t : {7.1, 31.4, 250.0}) {
    const cd s(0.5, t);
    const auto lhs = hurwitz_zeta(s, Rational(1, 2));
    const auto rhs = (std::pow(cd(2.0), s) - 1.0) * riemann_zeta(s).value;
    CHECK(std::abs(lhs.value - rhs) < 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(hurwitz_zeta({1.0, 0.0}, Rational(1, 3)), std::domain_error);
  CHECK_THROWS_AS(hurwitz_zeta({0.5, 3.0}, Rational(-1, 3)), std::domain_error);
  CHECK_THROWS_AS(hurwitz_zeta({-21.0, 0.0}, Rational(1, 3)), std::domain_error);
}

TEST_CASE("cutoff variant converges to the adaptive value") {
  const cd s(0.5, 20.0);
  const auto ref = hurwitz_zeta(s, Rational(2, 5));
  const auto wide = hurwitz_zeta_cutoff(s, Rational(2, 5), 400);
  CHECK(std::abs(wide.value - ref.value) < 1e-11);
  // a cutoff far too small for the oscillation cannot certify the tolerance
  CHECK_THROWS_AS(hurwitz_zeta_cutoff({0.5, 4000.0}, Rational(2, 5), 8, 1e-10),
                  precision_error);
}

TEST_CASE("dirichlet L against closed forms") {
  auto g4 = CharacterGroup::make(4);
  const auto chi4 = g4->character(1);
  REQUIRE(!chi4.is_principal());
  CHECK(dirichlet_l({2.0, 0.0}, chi4).value.real() ==
        doctest::Approx(0.91596559417721901505).epsilon(1e-13));  // Catalan
  CHECK(dirichlet_l({1.0, 0.0}, chi4).value.real() ==
        doctest::Approx(M_PI / 4.0).epsilon(1e-13));

  auto g3 = CharacterGroup::make(3);
  const auto chi3 = g3->character(1);
  CHECK(dirichlet_l({1.0, 0.0}, chi3).value.real() ==
        doctest::Approx(0.60459978807807261686).epsilon(1e-13));  // pi/(3 sqrt 3)
  CHECK(std::abs(dirichlet_l({1.0, 0.0}, chi3).value.imag()) < 1e-13);
}

TEST_CASE("principal character still poles at s = 1") {
  auto g = CharacterGroup::make(5);
  CHECK_THROWS_AS(dirichlet_l({1.0, 0.0}, g->character(0)), std::domain_error);
}

TEST_CASE("L mod 1 is zeta") {
  auto g = CharacterGroup::make(1);
  const cd s(0.5, 33.3);
  const auto l = dirichlet_l(s, g->character(0));
  const auto z = riemann_zeta(s);
  CHECK(std::abs(l.value - z.value) < 1e-12 * std::abs(z.value));
}

TEST_CASE("decomposition over characters recovers hurwitz") {
  const cd s(0.5, 33.0);
  for (std::uint64_t q : {7ull, 12ull}) {
    auto g = CharacterGroup::make(q);
    for (std::uint32_t a : g->units()) {
      cd sum = 0.0;
      for (std::size_t i = 0; i < g->size(); ++i) {
        const auto chi = g->character(i);
        sum += std::conj(chi.value(a)) * dirichlet_l(s, chi).value;
      }
      sum *= std::pow(cd((double)q), s) / (double)g->phi();
      const auto direct = hurwitz_zeta(s, Rational((std::int64_t)a, (std::int64_t)q));
      CHECK(std::abs(sum - direct.value) < 1e-10);
    }
  }
}

TEST_CASE("l_product multiplies component values") {
  auto g = CharacterGroup::make(5);
  ExponentTuple ell(g, {0, 2, 1, 0});
  const cd s(0.5, 18.0);
  const auto p = l_product(s, ell);
  cd want = 1.0;
  for (std::size_t i = 0; i < g->size(); ++i)
    for (int j = 0; j < ell.e[i]; ++j) want *= dirichlet_l(s, g->character(i)).value;
  CHECK(std::abs(p.value - want) < 1e-10 * std::abs(want));
}

TEST_CASE("cached evaluator matches the generic path") {
  HurwitzEvaluator ev(Rational(1, 3), 0.5, 100.0);
  for (double t : {0.0, 12.5, 50.5, 99.9, 150.0}) {  // 150 exceeds t_max: fallback
    const auto fast = ev.eval(t);
    const auto slow = hurwitz_zeta({0.5, t}, Rational(1, 3));
    CHECK(std::abs(fast.value - slow.value) <= 1e-12 * (1.0 + std::abs(slow.value)));
  }
}

TEST_CASE("unit zeta bank assembles every L in the group") {
  auto g = CharacterGroup::make(7);
  UnitZetaBank bank(g, 0.5, 50.0);
  std::vector<cd> zetas;
  const double t = 21.3;
  bank.eval(t, zetas);
  REQUIRE(zetas.size() == g->phi());
  for (std::size_t i = 0; i < g->size(); ++i) {
    const auto chi = g->character(i);
    const auto vals = bank.character_values(chi);
    const cd fast = bank.l_from_units(vals, zetas, t);
    const auto slow = dirichlet_l({0.5, t}, chi);
    CHECK(std::abs(fast - slow.value) < 1e-11 * (1.0 + std::abs(slow.value)));
  }
}

TEST_SUITE_END();
