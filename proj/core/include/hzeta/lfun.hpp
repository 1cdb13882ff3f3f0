#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "hzeta/arith.hpp"
#include "hzeta/characters.hpp"
#include "hzeta/rational.hpp"

namespace hzeta {

struct EvalResult {
  std::complex<double> value;
  double err_bound;  // certified truncation bound (rounding not included)
};

// Requested tolerance cannot be certified at these parameters.
class precision_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An evaluation point where a ratio degenerates (|denominator| ~ 0).
class singular_point_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// zeta(s, alpha) by Euler-Maclaurin:
//   sum_{n<N} (n+alpha)^{-s} + (N+alpha)^{1-s}/(s-1) + (N+alpha)^{-s}/2
//     + sum_{j=1}^{J} B_{2j}/(2j)! (s)_{2j-1} (N+alpha)^{-s-2j+1} + R_J
// with N = ceil(|t|/2) + 32 and J = 12 (through B_24).  The certified bound
// on R_J is the first omitted correction scaled by |s+2J+1|/(sigma+2J+1).
// Throws domain_error for alpha <= 0, s = 1, or sigma < -20;
// precision_error if the bound exceeds tol.
EvalResult hurwitz_zeta(std::complex<double> s, const Rational& alpha, double tol = 1e-10);

// Validation hook: same series with an explicit direct-sum cutoff.
EvalResult hurwitz_zeta_cutoff(std::complex<double> s, const Rational& alpha, int N,
                               double tol = 1e-10);

EvalResult riemann_zeta(std::complex<double> s, double tol = 1e-10);

// L(s, chi) = q^{-s} sum_{a mod q, (a,q)=1} chi(a) zeta(s, a/q).
// err_bound = q^{-sigma} * (sum of component bounds).
// s = 1 is allowed for nonprincipal chi: the component poles cancel exactly
// under the character sum and the finite parts are summed instead.
EvalResult dirichlet_l(std::complex<double> s, const DirichletCharacter& chi,
                       double tol = 1e-10);

// prod_chi L(s, chi)^{ell_chi}; error accumulated to first order in the
// component relative errors.
EvalResult l_product(std::complex<double> s, const ExponentTuple& ell, double tol = 1e-10);

// Reusable Hurwitz evaluator for fixed (alpha, sigma): log(n+alpha) and
// (n+alpha)^{-sigma} are tabulated once, so an evaluation at t costs one
// sincos per direct term.  Valid for |t| <= t_max; larger |t| falls back to
// the generic path.  Immutable after construction.
class HurwitzEvaluator {
public:
  HurwitzEvaluator(const Rational& alpha, double sigma, double t_max);
  EvalResult eval(double t, double tol = 1e-10) const;
  const Rational& alpha() const { return alpha_; }
  double sigma() const { return sigma_; }

private:
  Rational alpha_;
  double sigma_, t_max_;
  std::vector<double> log_na_, pow_na_;
};

// zeta(sigma + it, a/q) for every unit residue a in one call; the shared
// input of all L(s, chi) mod q.  Immutable after construction.
class UnitZetaBank {
public:
  UnitZetaBank(std::shared_ptr<const CharacterGroup> group, double sigma, double t_max);

  const CharacterGroup& group() const { return *group_; }
  double sigma() const { return sigma_; }

  // out[slot] = zeta(sigma+it, units[slot]/q); returns the summed bound.
  double eval(double t, std::vector<std::complex<double>>& out, double tol = 1e-10) const;

  // chi values on units, in slot order (precompute once per character).
  std::vector<std::complex<double>> character_values(const DirichletCharacter& chi) const;

  // q^{-s} sum_a chi(a) zeta(s, a/q) assembled from eval()'s output.
  std::complex<double> l_from_units(const std::vector<std::complex<double>>& chi_vals,
                                    const std::vector<std::complex<double>>& unit_zetas,
                                    double t) const;

private:
  std::shared_ptr<const CharacterGroup> group_;
  double sigma_;
  double log_q_;
  std::vector<HurwitzEvaluator> evals_;
};

}  // namespace hzeta
