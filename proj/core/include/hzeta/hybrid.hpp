#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hzeta/characters.hpp"

namespace hzeta {

// ---------------------------------------------------------------------------
// Smoothing weight
// ---------------------------------------------------------------------------
//
// u(y) = X f(X log(y/e) + 1) / y where f is the normalized bump
// exp(-1/(x(1-x))) on (0,1); u has mass one and support [e^{1-1/X}, e].

struct SmoothingSpec {
  double X;
  explicit SmoothingSpec(double X_);
};

// Normalized bump f on (0,1); zero outside.
double bump(double x);

double u_weight(double y, const SmoothingSpec& spec);

// Cosine integral Ci(x) = -int_x^inf cos(w)/w dw, x > 0.
// Power series for x <= 12, Lentz continued fraction for E1(ix) beyond;
// absolute error below 1e-10 on either branch.
double ci(double x);

// phi(m, theta) = exp(2m int u(y) Ci(|theta| log y log X) dy), the per-angle
// factor of the unitary-matrix model. Fixed 64-point Gauss-Legendre rule on
// the support of u; theta = 0 is clamped to |theta| = 1e-8.
double phi_factor(int m, double theta, const SmoothingSpec& spec);

// ---------------------------------------------------------------------------
// Truncated Euler-product factors
// ---------------------------------------------------------------------------
//
// P_X(s,chi)  = prod_{p|q} (1 - chi*(p) p^-s) exp(sum_{n<=X} chi*(n)Lambda(n)/(n^s log n))
// P*_X(s,chi) = prod_{p<=X} (1 - chi(p) p^-s)^-1 prod_{rX<p<=X} (1 + chi(p)^2 p^-2s / 2)^-1
// Q_X(s,chi)  = prod_{p<=rX} (1 - chi(p) p^-s) prod_{rX<p<=X} (1 - chi(p) p^-s + chi(p)^2 p^-2s / 2)
// with rX = sqrt(X) and chi* the primitive character inducing chi.
//
// The short forms P*_X and Q_X require X > q^2 so that every p | q lies in
// the first product range.

class EulerFactors {
 public:
  EulerFactors(const DirichletCharacter& chi, double X);

  std::complex<double> p_x(std::complex<double> s) const;
  std::complex<double> p_star_x(std::complex<double> s) const;
  std::complex<double> q_x(std::complex<double> s) const;

  double X() const { return X_; }
  uint32_t modulus() const { return q_; }

 private:
  struct Term {
    double log_n;
    std::complex<double> coeff;
  };
  uint32_t q_;
  double X_;
  bool short_ok_;
  std::vector<Term> px_sum_;             // chi*(p^m)/m at log p^m
  std::vector<Term> px_prefactor_;       // chi*(p) at log p, p | q
  std::vector<Term> plain_;              // chi(p) at log p, p <= X
  std::vector<Term> upper_;              // chi(p) at log p, sqrt(X) < p <= X
};

std::complex<double> p_x(std::complex<double> s, const DirichletCharacter& chi, double X);
std::complex<double> p_star_x(std::complex<double> s, const DirichletCharacter& chi, double X);
std::complex<double> q_x(std::complex<double> s, const DirichletCharacter& chi, double X);

// Z_X(s,chi) = L(s,chi) / P_X(s,chi). Throws singular_point_error when
// |P_X| < 1e-14 so quadrature callers can subdivide around zeros of P_X.
std::complex<double> z_x(std::complex<double> s, const DirichletCharacter& chi, double X,
                         double tol = 1e-10);

// Dirichlet-series coefficients alpha_{-1}(n), n <= nmax, of Q_X(s) at q = 1:
// multiplicative with local values (1, -1, 0, ...) at p <= sqrt(X) and
// (1, -1, 1/2, 0, ...) at sqrt(X) < p <= X; zero on non-X-smooth n.
std::vector<double> alpha_m1(double X, uint64_t nmax);

}  // namespace hzeta
