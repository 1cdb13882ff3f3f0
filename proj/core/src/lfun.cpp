#include "hzeta/lfun.hpp"

#include <array>
#include <cmath>
#include <string>

namespace hzeta {

namespace {

constexpr int kJ = 12;  // corrections through B_24; B_26 drives the bound

// B_{2j} / (2j)! for j = 1..13
const double* em_coeffs() {
  static const auto table = [] {
    std::array<double, 14> t{};
    t[0] = 1.0;
    double fact = 1.0;
    for (int j = 1; j <= 13; ++j) {
      fact *= (2.0 * j - 1.0) * (2.0 * j);
      t[j] = bernoulli(2 * j).to_double() / fact;
    }
    return t;
  }();
  return table.data();
}

void check_domain(std::complex<double> s, const Rational& alpha) {
  if (alpha.num <= 0 || alpha.den <= 0)
    throw std::domain_error("hurwitz_zeta: alpha must be positive");
  if (s == std::complex<double>(1.0, 0.0))
    throw std::domain_error("hurwitz_zeta: pole at s = 1");
  if (s.real() < -20.0)
    throw std::domain_error("hurwitz_zeta: sigma < -20 unsupported");
}

int cutoff_for(double t) { return (int)std::ceil(std::abs(t) / 2.0) + 32; }

// Correction block shared by both evaluation paths: everything after the
// direct sum, plus the certified remainder bound.
std::complex<double> em_corrections(std::complex<double> s, double z, double& bound) {
  const double* c = em_coeffs();
  const double sigma = s.real();
  std::complex<double> zpow = std::exp(-s * std::log(z));  // z^{-s}
  std::complex<double> acc = z * zpow / (s - 1.0) + 0.5 * zpow;
  std::complex<double> rising = s;              // (s)_{2j-1}
  std::complex<double> zm = zpow / z;           // z^{-s-2j+1}
  const double zi2 = 1.0 / (z * z);
  for (int j = 1; j <= kJ; ++j) {
    if (j > 1) rising *= (s + (2.0 * j - 3.0)) * (s + (2.0 * j - 2.0));
    acc += c[j] * rising * zm;
    zm *= zi2;
  }
  // first omitted correction (j = 13), scaled by |s+2J+1| / (sigma+2J+1)
  std::complex<double> rising_next = rising * (s + (2.0 * kJ - 1.0)) * (s + (2.0 * kJ));
  double omit = std::abs(c[13]) * std::abs(rising_next) * std::abs(zm);
  bound = omit * std::abs(s + (2.0 * kJ + 1.0)) / (sigma + 2.0 * kJ + 1.0);
  return acc;
}

// Finite part of zeta(s, alpha) at the pole: lim_{s->1} [zeta(s,alpha) - 1/(s-1)]
// (equivalently -digamma(alpha)), by the same Euler-Maclaurin block at s = 1.
double hurwitz_finite_at_one(const Rational& alpha, double& bound) {
  const double* c = em_coeffs();
  const int N = cutoff_for(0.0);
  double direct = 0.0;
  for (int n = 0; n < N; ++n)
    direct += (double)alpha.den / ((double)n * alpha.den + alpha.num);
  const double z = N + alpha.to_double();
  double acc = -std::log(z) + 0.5 / z;
  double zm = 1.0 / (z * z);
  double fact = 1.0;  // (1)_{2j-1} = (2j-1)!
  for (int j = 1; j <= kJ; ++j) {
    if (j > 1) fact *= (2.0 * j - 2.0) * (2.0 * j - 1.0);
    acc += c[j] * fact * zm;
    zm /= z * z;
  }
  bound = std::abs(c[13]) * fact * (2.0 * kJ) * (2.0 * kJ + 1.0) * zm;
  return direct + acc;
}

}  // namespace

EvalResult hurwitz_zeta_cutoff(std::complex<double> s, const Rational& alpha, int N,
                               double tol) {
  check_domain(s, alpha);
  if (N < 1) throw std::domain_error("hurwitz_zeta: cutoff N < 1");
  std::complex<double> direct = 0.0;
  for (int n = 0; n < N; ++n) {
    double na = ((double)n * alpha.den + alpha.num) / (double)alpha.den;
    direct += std::exp(-s * std::log(na));
  }
  double bound = 0.0;
  std::complex<double> rest = em_corrections(s, N + alpha.to_double(), bound);
  if (bound > tol)
    throw precision_error("hurwitz_zeta: certified bound " + std::to_string(bound) +
                          " exceeds tol at t = " + std::to_string(s.imag()));
  return {direct + rest, bound};
}

EvalResult hurwitz_zeta(std::complex<double> s, const Rational& alpha, double tol) {
  return hurwitz_zeta_cutoff(s, alpha, cutoff_for(s.imag()), tol);
}

EvalResult riemann_zeta(std::complex<double> s, double tol) {
  return hurwitz_zeta(s, Rational(1, 1), tol);
}

EvalResult dirichlet_l(std::complex<double> s, const DirichletCharacter& chi, double tol) {
  const auto& g = *chi.group();
  const std::uint64_t q = g.modulus();
  if (s == std::complex<double>(1.0, 0.0)) {
    // Each zeta(s, a/q) has residue 1 at s = 1; for nonprincipal chi the
    // residues cancel across the character sum, leaving the finite parts.
    if (chi.is_principal())
      throw std::domain_error("dirichlet_l: pole of the principal character at s = 1");
    std::complex<double> sum = 0.0;
    double err = 0.0;
    for (std::uint32_t a : g.units()) {
      double b = 0.0;
      double fp = hurwitz_finite_at_one(
          Rational((std::int64_t)(a == 0 ? 1 : a), (std::int64_t)q), b);
      sum += chi.value(a) * fp;
      err += b;
    }
    return {sum / (double)q, err / (double)q};
  }
  const double qs = std::pow((double)q, s.real());
  const double tol_comp = tol * qs / (double)g.phi();
  std::complex<double> sum = 0.0;
  double err = 0.0;
  for (std::uint32_t a : g.units()) {
    // q = 1 lists residue 0; its component is zeta(s, 1)
    auto z = hurwitz_zeta(s, Rational((std::int64_t)(a == 0 ? 1 : a), (std::int64_t)q),
                          tol_comp);
    sum += chi.value(a) * z.value;
    err += z.err_bound;
  }
  std::complex<double> qpow = std::exp(-s * std::log((double)q));
  return {qpow * sum, err / qs};
}

EvalResult l_product(std::complex<double> s, const ExponentTuple& ell, double tol) {
  std::complex<double> v = 1.0;
  double rel = 0.0;
  for (std::size_t ci = 0; ci < ell.e.size(); ++ci) {
    int e = ell.e[ci];
    if (e == 0) continue;
    auto li = dirichlet_l(s, ell.group->character(ci), tol);
    std::complex<double> p = 1.0;
    for (int j = 0; j < e; ++j) p *= li.value;
    v *= p;
    rel += e * li.err_bound / std::max(std::abs(li.value), li.err_bound);
  }
  return {v, std::abs(v) * rel};
}

// ---------------------------------------------------------------------------
// table-backed evaluators
// ---------------------------------------------------------------------------

HurwitzEvaluator::HurwitzEvaluator(const Rational& alpha, double sigma, double t_max)
    : alpha_(alpha), sigma_(sigma), t_max_(t_max) {
  if (alpha.num <= 0) throw std::domain_error("HurwitzEvaluator: alpha must be positive");
  int n_max = cutoff_for(t_max) + 1;
  log_na_.resize(n_max);
  pow_na_.resize(n_max);
  for (int n = 0; n < n_max; ++n) {
    double na = ((double)n * alpha.den + alpha.num) / (double)alpha.den;
    log_na_[n] = std::log(na);
    pow_na_[n] = std::pow(na, -sigma);
  }
}

EvalResult HurwitzEvaluator::eval(double t, double tol) const {
  if (std::abs(t) > t_max_)
    return hurwitz_zeta({sigma_, t}, alpha_, tol);
  const std::complex<double> s(sigma_, t);
  check_domain(s, alpha_);
  const int N = cutoff_for(t);
  const double* lg = log_na_.data();
  const double* pw = pow_na_.data();
  double sr = 0.0, si = 0.0;
  for (int n = 0; n < N; ++n) {
    double ph = -t * lg[n];
    sr += pw[n] * std::cos(ph);
    si += pw[n] * std::sin(ph);
  }
  double bound = 0.0;
  std::complex<double> rest = em_corrections(s, N + alpha_.to_double(), bound);
  if (bound > tol)
    throw precision_error("HurwitzEvaluator: certified bound exceeds tol at t = " +
                          std::to_string(t));
  return {std::complex<double>(sr, si) + rest, bound};
}

UnitZetaBank::UnitZetaBank(std::shared_ptr<const CharacterGroup> group, double sigma,
                           double t_max)
    : group_(std::move(group)), sigma_(sigma), log_q_(std::log((double)group_->modulus())) {
  const std::uint64_t q = group_->modulus();
  evals_.reserve(group_->units().size());
  // q = 1 lists residue 0; its zeta(s, a/q) component is zeta(s, 1) = zeta(s)
  for (std::uint32_t a : group_->units())
    evals_.emplace_back(Rational((std::int64_t)(a == 0 ? 1 : a), (std::int64_t)q), sigma, t_max);
}

double UnitZetaBank::eval(double t, std::vector<std::complex<double>>& out, double tol) const {
  out.resize(evals_.size());
  double err = 0.0;
  const double tol_comp = tol * std::pow((double)group_->modulus(), sigma_) /
                          (double)std::max<std::size_t>(evals_.size(), 1);
  for (std::size_t i = 0; i < evals_.size(); ++i) {
    auto r = evals_[i].eval(t, tol_comp);
    out[i] = r.value;
    err += r.err_bound;
  }
  return err;
}

std::vector<std::complex<double>> UnitZetaBank::character_values(
    const DirichletCharacter& chi) const {
  std::vector<std::complex<double>> vals;
  vals.reserve(group_->units().size());
  for (std::uint32_t a : group_->units()) vals.push_back(chi.value(a));
  return vals;
}

std::complex<double> UnitZetaBank::l_from_units(
    const std::vector<std::complex<double>>& chi_vals,
    const std::vector<std::complex<double>>& unit_zetas, double t) const {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < chi_vals.size(); ++i) sum += chi_vals[i] * unit_zetas[i];
  // q^{-s} with s = sigma + it
  double mag = std::exp(-sigma_ * log_q_);
  double ph = -t * log_q_;
  return sum * std::complex<double>(mag * std::cos(ph), mag * std::sin(ph));
}

}  // namespace hzeta
