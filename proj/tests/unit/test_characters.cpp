#include <cmath>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "hzeta/characters.hpp"

using namespace hzeta;

TEST_SUITE_BEGIN("characters");

TEST_CASE("group mod 1 is the trivial group") {
  auto g = CharacterGroup::make(1);
  CHECK(g->phi() == 1);
  CHECK(g->size() == 1);
  const auto chi = g->character(0);
  CHECK(chi.is_principal());
  CHECK(chi.conductor() == 1);
  CHECK(std::abs(chi.value(0) - std::complex<double>(1.0)) < 1e-15);
  CHECK(std::abs(chi.value(7) - std::complex<double>(1.0)) < 1e-15);
}

TEST_CASE("units are ascending, coprime, and phi(q) many") {
  for (std::uint64_t q : {2ull, 8ull, 45ull, 360ull}) {
    auto g = CharacterGroup::make(q);
    const auto& u = g->units();
    CHECK(u.size() == g->phi());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i) CHECK(u[i] > u[i - 1]);
      CHECK(std::gcd((std::uint64_t)u[i], q) == 1);
    }
  }
}

TEST_CASE("row and column orthogonality mod 9") {
  auto g = CharacterGroup::make(9);
  const auto& units = g->units();
  for (std::size_t i = 0; i < g->size(); ++i)
    for (std::size_t j = 0; j < g->size(); ++j) {
      std::complex<double> s = 0.0;
      for (auto a : units) s += g->character(i).value(a) * std::conj(g->character(j).value(a));
      const double want = i == j ? (double)g->phi() : 0.0;
      CHECK(std::abs(s - std::complex<double>(want)) < 1e-10);
    }
}

TEST_CASE("characters are completely multiplicative") {
  auto g = CharacterGroup::make(36);
  const auto chi = g->character(3);
  for (std::uint64_t a : {5ull, 7ull, 11ull, 25ull})
    for (std::uint64_t b : {13ull, 17ull, 23ull}) {
      const auto lhs = chi.value(a * b % 36);
      const auto rhs = chi.value(a) * chi.value(b);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  CHECK(std::abs(chi.value(6)) == 0.0);
}

TEST_CASE("conductors mod 12 are 1, 3, 4, 12") {
  auto g = CharacterGroup::make(12);
  REQUIRE(g->size() == 4);
  std::vector<std::uint64_t> conductors;
  for (std::size_t i = 0; i < 4; ++i) conductors.push_back(g->character(i).conductor());
  std::sort(conductors.begin(), conductors.end());
  CHECK(conductors == std::vector<std::uint64_t>{1, 3, 4, 12});
}

TEST_CASE("induced character agrees with its primitive on coprime residues") {
  auto g = CharacterGroup::make(40);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const auto chi = g->character(i);
    const auto star = chi.induce_primitive();
    CHECK(star.modulus() == chi.conductor());
    CHECK(star.is_primitive());
    for (std::uint32_t a : g->units())
      CHECK(std::abs(chi.value(a) - star.value(a % star.modulus())) < 1e-12);
  }
}

TEST_CASE("all characters mod 8 are real") {
  auto g = CharacterGroup::make(8);
  for (std::size_t i = 0; i < g->size(); ++i) {
    CHECK(g->character(i).is_real());
    CHECK(g->character(i).order() <= 2);
  }
}

TEST_CASE("parity is the value at -1") {
  for (std::uint64_t q : {5ull, 7ull, 12ull}) {
    auto g = CharacterGroup::make(q);
    for (std::size_t i = 0; i < g->size(); ++i) {
      const auto chi = g->character(i);
      const auto at = chi.value(q - 1);
      CHECK(std::abs(at - std::complex<double>((double)chi.parity())) < 1e-12);
    }
  }
}

TEST_CASE("character to the power of its order is principal") {
  auto g = CharacterGroup::make(35);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const auto chi = g->character(i);
    DirichletCharacter acc = g->character(0);
    for (std::uint64_t k = 0; k < chi.order(); ++k) acc = acc * chi;
    CHECK(acc.is_principal());
    CHECK(acc.index() == 0);
  }
}

TEST_CASE("conjugate inverts the value exponents") {
  auto g = CharacterGroup::make(13);
  const auto chi = g->character(5);
  const auto bar = chi.conj();
  for (std::uint32_t a : g->units())
    CHECK(std::abs(bar.value(a) - std::conj(chi.value(a))) < 1e-12);
  CHECK((chi * bar).is_principal());
}

TEST_CASE("value_exponent gives exact roots of unity") {
  auto g = CharacterGroup::make(16);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const auto chi = g->character(i);
    for (std::uint32_t a : g->units()) {
      const Rational r = chi.value_exponent(a);
      CHECK(r.den >= 1);
      CHECK((std::uint64_t)r.den <= g->exponent());
      const auto v = unit_root(r);
      CHECK(std::abs(v - chi.value(a)) < 1e-12);
    }
    CHECK_THROWS_AS(chi.value_exponent(4), std::domain_error);
  }
}

TEST_CASE("principal character index is zero and enumerate is complete") {
  auto g = CharacterGroup::make(21);
  const auto all = g->enumerate();
  REQUIRE(all.size() == g->size());
  CHECK(all[0].is_principal());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].index() == i);
}

TEST_SUITE_END();
