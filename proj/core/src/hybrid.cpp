#include "hzeta/hybrid.hpp"

#include <cmath>
#include <stdexcept>

#include "hzeta/lfun.hpp"
#include "hzeta/primes.hpp"
#include "hzeta/quadrature.hpp"

namespace hzeta {

namespace {

// int_0^1 exp(-1/(x(1-x))) dx; normalizes the bump to mass one.
constexpr double kBumpMass = 0.0070298584066096562;

std::complex<double> cpow_exp(std::complex<double> s, double log_n) {
  // n^{-s} for n given by its logarithm
  return std::exp(-s * log_n);
}

}  // namespace

SmoothingSpec::SmoothingSpec(double X_) : X(X_) {
  if (!(X >= 2.0)) throw std::domain_error("SmoothingSpec: X must be >= 2");
}

double bump(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x))) / kBumpMass;
}

double u_weight(double y, const SmoothingSpec& spec) {
  if (y <= 0.0) return 0.0;
  return spec.X * bump(spec.X * (std::log(y) - 1.0) + 1.0) / y;
}

double ci(double x) {
  if (!(x > 0.0)) throw std::domain_error("ci: x must be > 0");
  if (x <= 12.0) {
    // Ci(x) = gamma + log x + sum_{k>=1} (-x^2)^k / (2k (2k)!)
    const double gamma = 0.57721566490153286061;
    const double x2 = -x * x;
    double term = 1.0, sum = 0.0;
    for (int k = 1; k <= 60; ++k) {
      term *= x2 / ((2 * k - 1) * (2 * k));
      const double add = term / (2 * k);
      sum += add;
      if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return gamma + std::log(x) + sum;
  }
  // Ci(x) = -Re E1(ix); E1 by the modified Lentz continued fraction
  //   E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
  const std::complex<double> z(0.0, x);
  const double tiny = 1e-300;
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  const std::complex<double> e1 = h * std::exp(-z);
  return -e1.real();
}

double phi_factor(int m, double theta, const SmoothingSpec& spec) {
  if (m < 0) throw std::domain_error("phi_factor: m must be >= 0");
  if (m == 0) return 1.0;
  double at = std::abs(theta);
  if (at < 1e-8) at = 1e-8;
  const double logx = std::log(spec.X);
  const double lo = std::exp(1.0 - 1.0 / spec.X);
  const double hi = std::exp(1.0);
  const GaussLegendre& gl = gauss_legendre(64);
  const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
  double integral = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double y = mid + half * gl.x[i];
    integral += gl.w[i] * u_weight(y, spec) * ci(at * std::log(y) * logx);
  }
  integral *= half;
  return std::exp(2.0 * m * integral);
}

EulerFactors::EulerFactors(const DirichletCharacter& chi, double X) {
  if (!(X >= 2.0)) throw std::domain_error("EulerFactors: X must be >= 2");
  q_ = static_cast<uint32_t>(chi.modulus());
  X_ = X;
  short_ok_ = X > static_cast<double>(q_) * static_cast<double>(q_);

  const DirichletCharacter star = chi.induce_primitive();
  const uint64_t qstar = star.modulus();
  const auto primes = primes_up_to(static_cast<uint64_t>(X));
  const double sqrt_x = std::sqrt(X);

  for (uint64_t p : primes) {
    // chi*(p^m)/m over prime powers p^m <= X
    if (qstar % p != 0) {
      const std::complex<double> wp = star.value(p);
      std::complex<double> w = wp;
      double pm = static_cast<double>(p);
      for (int m = 1; pm <= X; ++m) {
        px_sum_.push_back({std::log(pm), w / static_cast<double>(m)});
        pm *= static_cast<double>(p);
        w *= wp;
      }
    }
    if (q_ % p == 0) continue;  // chi(p) = 0: drops out of the short products
    const std::complex<double> wp = chi.value(p);
    plain_.push_back({std::log(static_cast<double>(p)), wp});
    if (static_cast<double>(p) > sqrt_x) {
      upper_.push_back({std::log(static_cast<double>(p)), wp});
    }
  }
  // prefactor over p | q (chi*(p) = 0 when p also divides the conductor)
  for (const auto& [p, e] : factorize(q_)) {
    (void)e;
    if (qstar % p == 0) continue;
    px_prefactor_.push_back({std::log(static_cast<double>(p)), star.value(p)});
  }
}

std::complex<double> EulerFactors::p_x(std::complex<double> s) const {
  std::complex<double> expo = 0.0;
  for (const auto& t : px_sum_) expo += t.coeff * cpow_exp(s, t.log_n);
  std::complex<double> val = std::exp(expo);
  for (const auto& t : px_prefactor_) val *= 1.0 - t.coeff * cpow_exp(s, t.log_n);
  return val;
}

std::complex<double> EulerFactors::p_star_x(std::complex<double> s) const {
  if (!short_ok_) throw std::domain_error("p_star_x: requires X > q^2");
  std::complex<double> val = 1.0;
  for (const auto& t : plain_) val /= 1.0 - t.coeff * cpow_exp(s, t.log_n);
  for (const auto& t : upper_) {
    const std::complex<double> x2 = cpow_exp(2.0 * s, t.log_n);
    val /= 1.0 + 0.5 * t.coeff * t.coeff * x2;
  }
  return val;
}

std::complex<double> EulerFactors::q_x(std::complex<double> s) const {
  if (!short_ok_) throw std::domain_error("q_x: requires X > q^2");
  std::complex<double> val = 1.0;
  const double sqrt_x = std::sqrt(X_);
  for (const auto& t : plain_) {
    const std::complex<double> x = t.coeff * cpow_exp(s, t.log_n);
    if (std::exp(t.log_n) <= sqrt_x) {
      val *= 1.0 - x;
    } else {
      val *= 1.0 - x + 0.5 * x * x;
    }
  }
  return val;
}

std::complex<double> p_x(std::complex<double> s, const DirichletCharacter& chi, double X) {
  return EulerFactors(chi, X).p_x(s);
}

std::complex<double> p_star_x(std::complex<double> s, const DirichletCharacter& chi, double X) {
  return EulerFactors(chi, X).p_star_x(s);
}

std::complex<double> q_x(std::complex<double> s, const DirichletCharacter& chi, double X) {
  return EulerFactors(chi, X).q_x(s);
}

std::complex<double> z_x(std::complex<double> s, const DirichletCharacter& chi, double X,
                         double tol) {
  const std::complex<double> p = p_x(s, chi, X);
  if (std::abs(p) < 1e-14) throw singular_point_error("z_x: P_X vanishes at this point");
  return dirichlet_l(s, chi, tol).value / p;
}

std::vector<double> alpha_m1(double X, uint64_t nmax) {
  if (!(X >= 2.0)) throw std::domain_error("alpha_m1: X must be >= 2");
  std::vector<double> a(nmax + 1, 0.0);
  if (nmax == 0) return a;
  a[1] = 1.0;
  const double sqrt_x = std::sqrt(X);
  for (uint64_t p : primes_up_to(static_cast<uint64_t>(X))) {
    // multiply the array by the local factor at p, sources read high to low
    // so each a[n] is still the pre-multiplication coefficient
    const bool has_square_term = static_cast<double>(p) > sqrt_x;
    for (uint64_t n = nmax / p; n >= 1; --n) {
      if (a[n] == 0.0) continue;
      a[n * p] -= a[n];
      if (has_square_term && n <= nmax / (p * p)) a[n * p * p] += 0.5 * a[n];
    }
  }
  return a;
}

}  // namespace hzeta
