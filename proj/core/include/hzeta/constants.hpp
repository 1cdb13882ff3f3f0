#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hzeta/arith.hpp"
#include "hzeta/characters.hpp"

namespace hzeta {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// A truncated Euler product: the value at prime cutoff P together with an
// empirical tail bound.  The bound is 25x the largest of the last two
// checkpoint increments (P/4 -> P/2 -> P) plus a 1e-12 relative floor;
// refinements at 2P stay inside value +/- tail_bound.
struct ConstantResult {
  double value;
  double tail_bound;
  std::uint64_t cutoff;
};

// prod_{p <= X, p = c mod q} (1 - 1/p)^{-kappa}, the literal finite product.
double mertens_ap(std::uint64_t q, std::uint64_t c, double kappa, double X);

// Its limit-form constant
//   H^q_c(kappa) = { e^gamma log X prod_p (1 - 1/p)^{1 - [p = c(q)] phi(q)} }^{kappa/phi(q)}
// evaluated at prime cutoff P, in ascending prime order.
ConstantResult h_qc(std::uint64_t q, std::uint64_t c, double kappa, double X, std::uint64_t P);

// b(ell) = prod_{p not | q} (1 - 1/p)^{|d_ell(p)|^2} sum_m |d_ell(p^m)|^2 / p^m.
ConstantResult b_ell(const ExponentTuple& ell, std::uint64_t P);

// F_X(ell) = (e^gamma log X)^lambda prod_p (1 - 1/p)^{lambda - |d_ell(p)|^2}.
// Conditionally convergent: evaluated strictly in ascending prime order.
ConstantResult f_x(const ExponentTuple& ell, double X, std::uint64_t P);

// c_ell(q) = prod_p { (1 - 1/p)^lambda sum_m |d_ell(p^m)|^2 / p^m }
//            prod_chi G(ell_chi + 1)^2 / G(2 ell_chi + 1).
ConstantResult c_ell_q(const ExponentTuple& ell, std::uint64_t P);

// c_k(a/q) = c_k q^k / phi(q)^{2k-1} prod_{p|q} { sum_m binom(m+k-1,k-1)^2 p^-m }^{-1}
// with c_k = c_ell_q at q = 1 (cached per (k, P)).  Depends on alpha = a/q
// only through q; gcd(a, q) = 1 required.
double c_k_alpha(int k, std::uint64_t a, std::uint64_t q, std::uint64_t P = 100000);

// C(chi) = (1/2pi^2) (phi(q)/q)^2 prod_{p|q} (1 - 2/(p+1)), the fourth-moment
// leading constant of L(s, chi).
double c_chi_fourth(const DirichletCharacter& chi);

// D(chi, nu) = (6/pi^2) |L(1, chi conj(nu))|^2 (phi(q)/q) prod_{p|q} (1 - 1/(p+1)),
// the mean-square constant of L(s,chi) L(s,nu) for distinct chi, nu mod q.
// P is recorded in the result; the only truncation here is inside the L
// evaluation (tol 1e-10), reflected in tail_bound.
ConstantResult d_chi_nu(const DirichletCharacter& chi, const DirichletCharacter& nu,
                        std::uint64_t P);

// The two local power-series identities behind C = C' and D = D':
//   d2_square:  sum_m d_2(p^m)^2 z^m            = (1+z) / (1-z)^3
//   omega_pair: (1-z) sum_m |sum_{j<=m} w^j|^2 z^m = (1+z) / ((1-wz)(1-conj(w)z))
// lhs holds the rational function expanded by formal power-series division,
// rhs the directly summed series; both have length M+1.
enum class SeriesKind { d2_square, omega_pair };

struct SeriesIdentity {
  std::vector<std::complex<double>> lhs, rhs;
};

SeriesIdentity series_identity_coeffs(SeriesKind kind, std::complex<double> omega, int M);

}  // namespace hzeta
