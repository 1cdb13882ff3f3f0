#include "hzeta/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "hzeta/lfun.hpp"
#include "hzeta/primes.hpp"

namespace hzeta {

namespace {

// Empirical tail estimate for an ascending-prime product from its values at
// P/4, P/2 and P.  25x the checkpoint increments brackets refinements at 2P
// with margin for both absolutely and conditionally convergent factors.
double tail_from_checkpoints(double v_quarter, double v_half, double v_full) {
  const double d1 = std::abs(v_half - v_quarter);
  const double d2 = std::abs(v_full - v_half);
  return 25.0 * std::max(d1, d2) + 1e-12 * std::abs(v_full);
}

void check_progression(std::uint64_t q, std::uint64_t c) {
  if (q == 0) throw std::domain_error("progression modulus must be positive");
  if (std::gcd(q, c) != 1) throw std::domain_error("progression residue must be coprime to q");
}

// Denominator polynomial prod_chi (1 - chi(p) x)^{ell_chi}; degree |ell|.
std::vector<std::complex<double>> local_denominator(const ExponentTuple& ell, std::uint64_t p) {
  std::vector<std::complex<double>> den{1.0};
  for (std::size_t i = 0; i < ell.e.size(); ++i) {
    if (ell.e[i] == 0) continue;
    const std::complex<double> w = ell.group->character(i).value(p);
    for (int rep = 0; rep < ell.e[i]; ++rep) {
      den.push_back(0.0);
      for (std::size_t j = den.size() - 1; j >= 1; --j) den[j] -= w * den[j - 1];
    }
  }
  return den;
}

// sum_m |d_ell(p^m)|^2 / p^m, cut once deg consecutive terms drop below
// 1e-16 of the partial sum; also reports |d_ell(p)|^2.  The coefficients
// follow the order-deg recurrence d_m = -sum_j den[j] d_{m-j}, so isolated
// zero terms (quotient characters of small order kill whole residue classes
// of m) must not end the sum: only a quiet run of length deg can.
double local_moment_sum(const std::vector<std::complex<double>>& den, double p,
                        double* d1_sq = nullptr) {
  const std::size_t deg = den.size() - 1;
  std::vector<std::complex<double>> d{1.0};
  double sum = 1.0;
  double pm = 1.0;
  std::size_t quiet = 0;
  if (d1_sq) *d1_sq = 0.0;
  for (int m = 1; m <= 4096; ++m) {
    std::complex<double> dm = 0.0;
    for (std::size_t j = 1; j <= std::min<std::size_t>(deg, m); ++j) dm -= den[j] * d[m - j];
    d.push_back(dm);
    pm *= p;
    const double term = std::norm(dm) / pm;
    sum += term;
    if (d1_sq && m == 1) *d1_sq = std::norm(dm);
    quiet = term < 1e-16 * sum ? quiet + 1 : 0;
    if (m > static_cast<int>(deg) && quiet >= deg) break;
  }
  return sum;
}

}  // namespace

double mertens_ap(std::uint64_t q, std::uint64_t c, double kappa, double X) {
  check_progression(q, c);
  if (!(X >= 2.0)) throw std::domain_error("mertens_ap: X must be >= 2");
  double log_sum = 0.0;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(X))) {
    if (p % q == c % q) log_sum += std::log1p(-1.0 / static_cast<double>(p));
  }
  return std::exp(-kappa * log_sum);
}

ConstantResult h_qc(std::uint64_t q, std::uint64_t c, double kappa, double X, std::uint64_t P) {
  check_progression(q, c);
  if (!(X >= 2.0)) throw std::domain_error("h_qc: X must be >= 2");
  if (P < 8) throw std::domain_error("h_qc: cutoff too small");
  const double phi = static_cast<double>(euler_phi(q));
  const double base = std::exp(kEulerGamma) * std::log(X);
  const std::uint64_t cr = c % q;

  const auto primes = primes_up_to(P);
  double log_sum = 0.0;
  double v_quarter = 0.0, v_half = 0.0;
  auto render = [&](double s) { return std::pow(base * std::exp(s), kappa / phi); };
  for (std::uint64_t p : primes) {
    if (p > P / 4 && v_quarter == 0.0) v_quarter = render(log_sum);
    if (p > P / 2 && v_half == 0.0) v_half = render(log_sum);
    const double delta = (p % q == cr) ? phi : 0.0;
    log_sum += (1.0 - delta) * std::log1p(-1.0 / static_cast<double>(p));
  }
  const double value = render(log_sum);
  return {value, tail_from_checkpoints(v_quarter, v_half, value), P};
}

ConstantResult b_ell(const ExponentTuple& ell, std::uint64_t P) {
  if (P < 8) throw std::domain_error("b_ell: cutoff too small");
  const std::uint64_t q = ell.modulus();
  double log_sum = 0.0;
  double v_quarter = 0.0, v_half = 0.0;
  for (std::uint64_t p : primes_up_to(P)) {
    if (p > P / 4 && v_quarter == 0.0) v_quarter = std::exp(log_sum);
    if (p > P / 2 && v_half == 0.0) v_half = std::exp(log_sum);
    if (q % p == 0) continue;
    const double pd = static_cast<double>(p);
    const auto den = local_denominator(ell, p);
    double d1_sq = 0.0;
    const double msum = local_moment_sum(den, pd, &d1_sq);
    log_sum += d1_sq * std::log1p(-1.0 / pd) + std::log(msum);
  }
  const double value = std::exp(log_sum);
  return {value, tail_from_checkpoints(v_quarter, v_half, value), P};
}

ConstantResult f_x(const ExponentTuple& ell, double X, std::uint64_t P) {
  if (!(X >= 2.0)) throw std::domain_error("f_x: X must be >= 2");
  if (P < 8) throw std::domain_error("f_x: cutoff too small");
  const std::uint64_t q = ell.modulus();
  const auto group = ell.group;
  const double lambda = static_cast<double>(ell.lambda());
  const std::vector<double> kappa = kappa_table(ell);
  const double prefactor = std::pow(std::exp(kEulerGamma) * std::log(X), lambda);

  double log_sum = 0.0;
  double v_quarter = 0.0, v_half = 0.0;
  for (std::uint64_t p : primes_up_to(P)) {
    if (p > P / 4 && v_quarter == 0.0) v_quarter = prefactor * std::exp(log_sum);
    if (p > P / 2 && v_half == 0.0) v_half = prefactor * std::exp(log_sum);
    // |d_ell(p)|^2 = kappa(c) for p = c mod q, and 0 for p | q
    double dp_sq = 0.0;
    if (q % p != 0) {
      dp_sq = kappa[std::lower_bound(group->units().begin(), group->units().end(),
                                     static_cast<std::uint32_t>(p % q)) -
                    group->units().begin()];
    }
    log_sum += (lambda - dp_sq) * std::log1p(-1.0 / static_cast<double>(p));
  }
  const double value = prefactor * std::exp(log_sum);
  return {value, tail_from_checkpoints(v_quarter, v_half, value), P};
}

ConstantResult c_ell_q(const ExponentTuple& ell, std::uint64_t P) {
  if (P < 8) throw std::domain_error("c_ell_q: cutoff too small");
  const std::uint64_t q = ell.modulus();
  const double lambda = static_cast<double>(ell.lambda());
  double g_factor = 1.0;
  for (int e : ell.e) {
    if (e > 0) g_factor *= barnes_g(e + 1) * barnes_g(e + 1) / barnes_g(2 * e + 1);
  }

  double log_sum = 0.0;
  double v_quarter = 0.0, v_half = 0.0;
  for (std::uint64_t p : primes_up_to(P)) {
    if (p > P / 4 && v_quarter == 0.0) v_quarter = g_factor * std::exp(log_sum);
    if (p > P / 2 && v_half == 0.0) v_half = g_factor * std::exp(log_sum);
    const double pd = static_cast<double>(p);
    log_sum += lambda * std::log1p(-1.0 / pd);
    if (q % p != 0) {
      const auto den = local_denominator(ell, p);
      log_sum += std::log(local_moment_sum(den, pd));
    }
  }
  const double value = g_factor * std::exp(log_sum);
  return {value, tail_from_checkpoints(v_quarter, v_half, value), P};
}

double c_k_alpha(int k, std::uint64_t a, std::uint64_t q, std::uint64_t P) {
  if (k < 1) throw std::domain_error("c_k_alpha: k must be >= 1");
  if (q == 0 || a == 0 || a > q || std::gcd(a, q) != 1)
    throw std::domain_error("c_k_alpha: need 1 <= a <= q with gcd(a, q) = 1");

  static std::mutex mu;
  static std::map<std::pair<int, std::uint64_t>, double> ck_cache;
  double ck;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = ck_cache.find({k, P});
    if (it == ck_cache.end()) {
      const auto g1 = CharacterGroup::make(1);
      const ExponentTuple ell = ExponentTuple::pure(g1, 0, k);
      it = ck_cache.emplace(std::pair{k, P}, c_ell_q(ell, P).value).first;
    }
    ck = it->second;
  }

  const double phi = static_cast<double>(euler_phi(q));
  double value = ck * std::pow(static_cast<double>(q), k) / std::pow(phi, 2 * k - 1);
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    const double pd = static_cast<double>(p);
    double sum = 0.0, pm = 1.0;
    for (int m = 0; m <= 4096; ++m) {
      const double c = binomial(m + k - 1, k - 1);
      const double term = c * c / pm;
      sum += term;
      pm *= pd;
      if (m > k && term < 1e-16 * sum) break;
    }
    value /= sum;
  }
  return value;
}

double c_chi_fourth(const DirichletCharacter& chi) {
  const std::uint64_t q = chi.modulus();
  const double phi = static_cast<double>(euler_phi(q));
  double value = (phi / q) * (phi / q) / (2.0 * std::numbers::pi * std::numbers::pi);
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    value *= 1.0 - 2.0 / (static_cast<double>(p) + 1.0);
  }
  return value;
}

ConstantResult d_chi_nu(const DirichletCharacter& chi, const DirichletCharacter& nu,
                        std::uint64_t P) {
  if (chi.modulus() != nu.modulus())
    throw std::domain_error("d_chi_nu: characters must share a modulus");
  if (chi == nu) throw std::domain_error("d_chi_nu: characters must be distinct");
  const std::uint64_t q = chi.modulus();
  const double phi = static_cast<double>(euler_phi(q));

  const DirichletCharacter w = chi * nu.conj();
  const EvalResult l1 = dirichlet_l({1.0, 0.0}, w, 1e-10);
  const double labs = std::abs(l1.value);

  double value = 6.0 / (std::numbers::pi * std::numbers::pi) * labs * labs * (phi / q);
  for (const auto& [p, e] : factorize(q)) {
    (void)e;
    value *= 1.0 - 1.0 / (static_cast<double>(p) + 1.0);
  }
  const double rel = labs > 0.0 ? 2.0 * l1.err_bound / labs : 1.0;
  return {value, value * rel + 1e-15 * value, P};
}

SeriesIdentity series_identity_coeffs(SeriesKind kind, std::complex<double> omega, int M) {
  if (M < 0 || M > 512) throw std::domain_error("series_identity_coeffs: need 0 <= M <= 512");
  if (kind == SeriesKind::omega_pair && std::abs(std::abs(omega) - 1.0) > 1e-12)
    throw std::domain_error("series_identity_coeffs: omega must lie on the unit circle");

  std::vector<std::complex<double>> num{1.0, 1.0};
  std::vector<std::complex<double>> den;
  if (kind == SeriesKind::d2_square) {
    den = {1.0, -3.0, 3.0, -1.0};  // (1 - z)^3
  } else {
    den = {1.0, -(omega + std::conj(omega)), omega * std::conj(omega)};
  }

  SeriesIdentity out;
  out.lhs.resize(M + 1);
  out.rhs.resize(M + 1);

  // formal division num / den
  for (int m = 0; m <= M; ++m) {
    std::complex<double> c = m < static_cast<int>(num.size()) ? num[m] : 0.0;
    for (int j = 1; j <= std::min<int>(m, den.size() - 1); ++j) c -= den[j] * out.lhs[m - j];
    out.lhs[m] = c;  // den[0] = 1
  }

  if (kind == SeriesKind::d2_square) {
    for (int m = 0; m <= M; ++m) {
      const double d2 = static_cast<double>(m + 1);
      out.rhs[m] = d2 * d2;
    }
  } else {
    // (1 - z) sum_m |S_m|^2 z^m with S_m = sum_{j<=m} omega^j
    std::complex<double> s = 0.0;
    std::complex<double> w = 1.0;
    double prev = 0.0;
    for (int m = 0; m <= M; ++m) {
      s += w;
      w *= omega;
      const double cur = std::norm(s);
      out.rhs[m] = cur - prev;
      prev = cur;
    }
  }
  return out;
}

}  // namespace hzeta
