#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "hzeta/arith.hpp"
#include "hzeta/characters.hpp"
#include "hzeta/rational.hpp"

namespace hzeta {

// Composite Gauss-Legendre quadrature over [T, 2T].  A pass lays down panels
// of the given width; a refinement halves the width globally and the result
// is accepted once two successive passes agree to refine_tol (relative).
struct QuadratureSpec {
  double panel_width = 0.125;
  int nodes_per_panel = 7;
  double refine_tol = 1e-3;
  int max_refinements = 4;
};

struct MomentEstimate {
  double value = 0.0;
  double quad_error_est = 0.0;  // |last pass - previous pass|
  double T = 0.0;
  int k = 0;
  Rational alpha{0, 1};    // 0/1 when no shift parameter applies
  std::uint64_t q = 0;     // 0 when no modulus applies
  double X = 0.0;          // 0 when no truncation applies
  std::uint64_t node_count = 0;
  double wall_seconds = 0.0;
  int refinements = 0;
  bool converged = true;        // refinement deltas met refine_tol
  bool singular_flagged = false;  // a node kept failing and was discarded
  bool regime_warning = false;    // X outside the (log T)^2 window
};

// Worker count resolution: an explicit request wins, then the HZETA_WORKERS
// environment variable, then 1.  Results are bit-identical for any count.
int resolve_workers(int requested = 0);

using LineFunction = std::function<std::complex<double>(double)>;

// int_T^{2T} |f(t)|^2 dt.  Nodes where f throws are retried on recursively
// halved subpanels; a subpanel still failing at depth 10 contributes zero
// and sets singular_flagged.
MomentEstimate mean_square(const LineFunction& f, double T,
                           const QuadratureSpec& spec = {}, int workers = 0);

// M_k(T; alpha) = int_T^{2T} |zeta(1/2+it, alpha)|^{2k} dt, k in {1,2,3}.
MomentEstimate hurwitz_moment(int k, const Rational& alpha, double T,
                              const QuadratureSpec& spec = {}, int workers = 0);

// M_k(T; chi) = int_T^{2T} |L(1/2+it, chi)|^{2k} dt.
MomentEstimate l_moment(int k, const DirichletCharacter& chi, double T,
                        const QuadratureSpec& spec = {}, int workers = 0);

// int_T^{2T} |prod_chi L(1/2+it, chi)^{ell_chi}|^2 dt.
MomentEstimate product_mean_square(const ExponentTuple& ell, double T,
                                   const QuadratureSpec& spec = {}, int workers = 0);

// int_T^{2T} |prod_chi Pstar_X(1/2+it, chi)^{ell_chi}|^2 dt.  Requires
// X > q^2; X above (log T)^2 only sets regime_warning.
MomentEstimate p_mean_square(const ExponentTuple& ell, double X, double T,
                             const QuadratureSpec& spec = {}, int workers = 0);

// Coefficient-side prediction for the same quantity divided by T:
// sum over q-coprime X-smooth n of |beta_ell(n)|^2 / n, evaluated as the
// Euler product of local sums with relative tail truncation 1e-14.
double p_coeff_oracle(const ExponentTuple& ell, double X);

// int_T^{2T} |Z_X(1/2+it, chi)|^2 dt with Z_X = L / P_X.
MomentEstimate z_mean_square(const DirichletCharacter& chi, double X, double T,
                             const QuadratureSpec& spec = {}, int workers = 0);

// Ratio probing the independence of the product and zero factors:
//   short_product:   T int|L^ell|^2 / (int|Pstar^ell|^2 int|Z^ell|^2)
//   exact_identity:  int|prod (P_X Z_X)^{ell_chi}|^2 / int|L^ell|^2,
// the latter a consistency check that reassembles L from its factors node by
// node and so returns 1 up to rounding.
enum class SplittingVariant { short_product, exact_identity };

struct SplittingReport {
  double ratio = 0.0;
  SplittingVariant variant = SplittingVariant::short_product;
  MomentEstimate l_ms;  // int |L^ell|^2
  MomentEstimate p_ms;  // int |Pstar^ell|^2, or the reassembled product
  MomentEstimate z_ms;  // int |Z^ell|^2 (short_product only)
};

SplittingReport splitting_report(const ExponentTuple& ell, double X, double T,
                                 const QuadratureSpec& spec = {},
                                 SplittingVariant variant = SplittingVariant::short_product,
                                 int workers = 0);

double splitting_ratio(const ExponentTuple& ell, double X, double T,
                       const QuadratureSpec& spec = {},
                       SplittingVariant variant = SplittingVariant::short_product,
                       int workers = 0);

// Main term of the second moment of L(s, chi) twisted by the polynomial with
// coefficients b(n), n <= T^theta (q-coprime support; other terms excluded):
//   (phi(q)/q) sum_{m,n} (b(m) b(n) / lcm(m,n))
//     (log(q T gcd(m,n)^2 / (2 pi m n)) + 2 gamma - 1 + 2 log 2
//       + sum_{p|q} log p / (p-1)).
// b is indexed by n with b[0] ignored.  theta > 1/8 is a domain error: the
// double sum has (T^theta)^2 terms.
double twisted_main_term(double T, const DirichletCharacter& chi,
                         const std::vector<double>& b, double theta);

// Diagonal prediction for M_k(T; a/q) from the character decomposition:
//   (q^k / phi(q)^{2k}) sum_{|ell|=k} multinomial(k, ell)^2 int |L^ell|^2,
// split into the pure-character part (ell = k on one character) and the rest.
// With full set, the complete double sum over exponent pairs with the phase
// prod_chi chi(a)^{ell2 - ell1} is accumulated as well; its value reproduces
// M_k(T; a/q) up to quadrature error.  The off-diagonal part is reported as
// major (both tuples pure) plus minor (everything else).
struct DiagonalBreakdown {
  double diagonal = 0.0;
  double primary_diagonal = 0.0;
  double secondary_diagonal = 0.0;
  bool has_full = false;
  double full = 0.0;
  double major_offdiag = 0.0;
  double minor_offdiag = 0.0;
  double T = 0.0;
  int k = 0;
  Rational alpha{0, 1};
  std::uint64_t q = 0;
  std::uint64_t node_count = 0;
  double wall_seconds = 0.0;
  int refinements = 0;
  bool converged = true;
  bool singular_flagged = false;
};

DiagonalBreakdown diagonal_prediction(int k, const Rational& alpha, double T,
                                      const QuadratureSpec& spec = {}, bool full = false,
                                      int workers = 0);

}  // namespace hzeta
