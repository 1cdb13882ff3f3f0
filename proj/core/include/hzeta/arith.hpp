#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "hzeta/characters.hpp"
#include "hzeta/rational.hpp"

namespace hzeta {

// Exponent tuple ell = (ell_chi): one non-negative exponent per character
// mod q, indexed like CharacterGroup::character().  Encodes the product
// L^ell = prod_chi L(s, chi)^{ell_chi}.
struct ExponentTuple {
  std::shared_ptr<const CharacterGroup> group;
  std::vector<int> e;

  ExponentTuple() = default;
  ExponentTuple(std::shared_ptr<const CharacterGroup> g, std::vector<int> exps);
  // k on character #chi_index, 0 elsewhere
  static ExponentTuple pure(std::shared_ptr<const CharacterGroup> g,
                            std::size_t chi_index, int k);

  std::uint64_t modulus() const { return group->modulus(); }
  int total() const;         // |ell|
  long long lambda() const;  // sum of ell_chi^2
};

// d_ell(n): coefficient of n^{-s} in L^ell.  Multiplicative in n; the local
// factor at p is the expansion of prod_chi (1 - chi(p) x)^{-ell_chi}, carried
// as exact integer combinations of roots of unity until rendered to double.
std::complex<double> dl_coeff(const ExponentTuple& ell, std::uint64_t n);
// Local coefficients d_ell(p^m) for m = 0..mmax.
std::vector<std::complex<double>> dl_local(const ExponentTuple& ell, std::uint64_t p, int mmax);

// Floating-point local expansion of prod_i (1 - w_i x)^{-e_i}; the inner
// loop of the Euler-product constants, where exactness is not required.
std::vector<std::complex<double>> local_series(const std::vector<std::complex<double>>& w,
                                               const std::vector<int>& e, int mmax);

// d_k(n): coefficient of n^{-s} in zeta(s)^k; d_k(p^m) = binom(m+k-1, k-1).
double dk_coeff(int k, std::uint64_t n);

// r_chi = sum_nu ell_nu ell_{nu chi}; the autocorrelation of ell over the
// character group.
long long r_coeff(const ExponentTuple& ell, const DirichletCharacter& chi);
// kappa(c) = sum_chi r_chi chi(c).  Real for every c coprime to q; equals
// |d_ell(p)|^2 at p = c mod q.
double kappa_sum(const ExponentTuple& ell, std::uint64_t c);
// kappa for every unit residue at once, indexed like group->units().
std::vector<double> kappa_table(const ExponentTuple& ell);

// Coefficients of prod_chi Pstar_X(s, chi)^{ell_chi}, supported on the
// q-coprime X-smooth integers.  Requires X > q^2.
std::complex<double> beta_coeff(const ExponentTuple& ell, double X, std::uint64_t n);

// Sparse multiplicative coefficient table on [1, N].
struct MultCoeffTable {
  std::uint64_t q = 1;
  double X = 0;
  std::uint64_t N = 0;
  // ascending support; n absent means coefficient 0
  std::vector<std::pair<std::uint64_t, std::complex<double>>> entries;

  std::complex<double> value(std::uint64_t n) const;
};
MultCoeffTable beta_table(const ExponentTuple& ell, double X, std::uint64_t N);

// Barnes G at positive integers: G(1) = G(2) = G(3) = 1,
// G(n) = prod_{j=1}^{n-2} j! rendered to double (exact integer product
// while it fits in 128 bits).  Domain error for n < 1.
double barnes_g(int n);

// B_{2j} as an exact rational, 0 <= 2j <= 26 (table; the Euler-Maclaurin
// driver needs one coefficient past B_24 for its error term).
Rational bernoulli(int two_j);

// von Mangoldt Lambda(n): log p if n = p^m, else 0.
double mangoldt(std::uint64_t n);

// Ascending q-coprime X-smooth integers in [1, N].
std::vector<std::uint64_t> smooth_numbers(std::uint64_t q, double X, std::uint64_t N);

// k! / prod parts_i! with sum parts_i = k (k <= 20).
double multinomial(int k, const std::vector<int>& parts);

double binomial(int n, int k);

}  // namespace hzeta
