#include "hzeta/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hzeta/primes.hpp"

namespace hzeta {

ExponentTuple::ExponentTuple(std::shared_ptr<const CharacterGroup> g, std::vector<int> exps)
    : group(std::move(g)), e(std::move(exps)) {
  if (e.size() != group->size())
    throw std::domain_error("ExponentTuple: need one exponent per character");
  for (int x : e)
    if (x < 0) throw std::domain_error("ExponentTuple: exponents must be >= 0");
}

ExponentTuple ExponentTuple::pure(std::shared_ptr<const CharacterGroup> g,
                                  std::size_t chi_index, int k) {
  std::vector<int> exps(g->size(), 0);
  exps.at(chi_index) = k;
  return ExponentTuple(std::move(g), std::move(exps));
}

int ExponentTuple::total() const {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

long long ExponentTuple::lambda() const {
  long long s = 0;
  for (int x : e) s += (long long)x * x;
  return s;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return std::round(r);
}

// ---------------------------------------------------------------------------
// d_ell local factors, exact until rendering
// ---------------------------------------------------------------------------

// A coefficient is sum_j a_j e^{2 pi i j / L}, kept as j -> a_j with exact
// integer a_j.  Convolution only ever adds exponents mod L.
namespace {
using CycCoeff = std::map<std::uint32_t, long long>;

CycCoeff cyc_mul_add(const CycCoeff& a, std::uint32_t shift, long long scale,
                     std::uint64_t L, CycCoeff&& acc) {
  for (auto& [j, c] : a) {
    std::uint32_t k = (std::uint32_t)((j + (std::uint64_t)shift) % L);
    acc[k] += c * scale;
  }
  return std::move(acc);
}

std::complex<double> cyc_render(const CycCoeff& a, std::uint64_t L) {
  std::complex<double> s = 0.0;
  for (auto& [j, c] : a)
    s += (double)c * unit_root(Rational((std::int64_t)j, (std::int64_t)L));
  return s;
}
}  // namespace

std::vector<std::complex<double>> dl_local(const ExponentTuple& ell, std::uint64_t p, int mmax) {
  const auto& g = *ell.group;
  std::vector<std::complex<double>> out(mmax + 1, 0.0);
  if (!g.coprime(p)) {
    out[0] = 1.0;
    return out;
  }
  std::uint64_t L = g.exponent();
  // series = prod over chi of sum_m binom(m+e-1, e-1) chi(p)^m x^m,
  // coefficients exact in Z[e^{2 pi i/L}]
  std::vector<CycCoeff> series(mmax + 1);
  series[0][0] = 1;
  for (std::size_t ci = 0; ci < ell.e.size(); ++ci) {
    int e = ell.e[ci];
    if (e == 0) continue;
    Rational r = g.character(ci).value_exponent(p).mod1();
    std::uint32_t step = (std::uint32_t)((std::uint64_t)r.num * (L / (std::uint64_t)r.den) % L);
    // binomial coefficients binom(m+e-1, e-1) as exact integers
    std::vector<long long> b(mmax + 1);
    b[0] = 1;
    for (int m = 1; m <= mmax; ++m) b[m] = b[m - 1] * (m + e - 1) / m;
    std::vector<CycCoeff> next(mmax + 1);
    for (int m = 0; m <= mmax; ++m) {
      CycCoeff acc;
      std::uint32_t shift = 0;
      for (int j = 0; j <= m; ++j) {
        // shift = (j * step) mod L accumulated incrementally
        acc = cyc_mul_add(series[m - j], shift, b[j], L, std::move(acc));
        shift = (std::uint32_t)((shift + (std::uint64_t)step) % L);
      }
      next[m] = std::move(acc);
    }
    series = std::move(next);
  }
  for (int m = 0; m <= mmax; ++m) out[m] = cyc_render(series[m], L);
  return out;
}

std::vector<std::complex<double>> local_series(const std::vector<std::complex<double>>& w,
                                               const std::vector<int>& e, int mmax) {
  std::vector<std::complex<double>> series(mmax + 1, 0.0);
  series[0] = 1.0;
  std::vector<std::complex<double>> next(mmax + 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (e[i] == 0) continue;
    // coefficients of (1 - w x)^{-e}: binom(m+e-1, e-1) w^m
    std::vector<std::complex<double>> f(mmax + 1);
    f[0] = 1.0;
    double b = 1.0;
    std::complex<double> wp = 1.0;
    for (int m = 1; m <= mmax; ++m) {
      b = b * (m + e[i] - 1) / m;
      wp *= w[i];
      f[m] = b * wp;
    }
    std::fill(next.begin(), next.end(), std::complex<double>(0.0));
    for (int m = 0; m <= mmax; ++m)
      for (int j = 0; j <= m; ++j) next[m] += series[m - j] * f[j];
    std::swap(series, next);
  }
  return series;
}

std::complex<double> dl_coeff(const ExponentTuple& ell, std::uint64_t n) {
  if (n == 0) throw std::domain_error("dl_coeff: n = 0");
  std::complex<double> v = 1.0;
  for (auto [p, m] : factorize(n)) {
    if (!ell.group->coprime(p)) return 0.0;
    v *= dl_local(ell, p, m)[m];
  }
  return v;
}

double dk_coeff(int k, std::uint64_t n) {
  if (k < 0) throw std::domain_error("dk_coeff: k < 0");
  if (n == 0) throw std::domain_error("dk_coeff: n = 0");
  if (k == 0) return n == 1 ? 1.0 : 0.0;
  double v = 1.0;
  for (auto [p, m] : factorize(n)) {
    (void)p;
    v *= binomial(m + k - 1, k - 1);
  }
  return v;
}

long long r_coeff(const ExponentTuple& ell, const DirichletCharacter& chi) {
  if (chi.modulus() != ell.modulus()) throw std::domain_error("r_coeff: modulus mismatch");
  const auto& g = *ell.group;
  long long r = 0;
  for (std::size_t nu = 0; nu < ell.e.size(); ++nu) {
    if (ell.e[nu] == 0) continue;
    std::size_t prod = (g.character(nu) * chi).index();
    r += (long long)ell.e[nu] * ell.e[prod];
  }
  return r;
}

double kappa_sum(const ExponentTuple& ell, std::uint64_t c) {
  const auto& g = *ell.group;
  if (!g.coprime(c)) throw std::domain_error("kappa_sum: gcd(c, q) > 1");
  std::complex<double> s = 0.0;
  for (std::size_t ci = 0; ci < g.size(); ++ci) {
    auto chi = g.character(ci);
    long long r = r_coeff(ell, chi);
    if (r != 0) s += (double)r * chi.value(c);
  }
  return s.real();
}

std::vector<double> kappa_table(const ExponentTuple& ell) {
  const auto& g = *ell.group;
  std::vector<double> out(g.units().size());
  std::vector<std::pair<std::size_t, long long>> rs;
  for (std::size_t ci = 0; ci < g.size(); ++ci) {
    long long r = r_coeff(ell, g.character(ci));
    if (r != 0) rs.push_back({ci, r});
  }
  for (std::size_t slot = 0; slot < g.units().size(); ++slot) {
    std::complex<double> s = 0.0;
    for (auto& [ci, r] : rs) s += (double)r * g.character(ci).value(g.units()[slot]);
    out[slot] = s.real();
  }
  return out;
}

// ---------------------------------------------------------------------------
// beta_ell: local data of prod_chi Pstar_X^{ell_chi}
// ---------------------------------------------------------------------------

// Local factor at p <= sqrt(X): prod (1 - chi(p)x)^{-ell}; at
// sqrt(X) < p <= X the short product carries the extra (1 + chi(p)^2 x^2/2)^{-ell}.
static std::vector<std::complex<double>> beta_local(const ExponentTuple& ell, double X,
                                                    std::uint64_t p, int mmax) {
  const auto& g = *ell.group;
  std::vector<std::complex<double>> out(mmax + 1, 0.0);
  out[0] = 1.0;
  if (!g.coprime(p) || (double)p > X) return out;
  std::vector<std::complex<double>> w;
  std::vector<int> e;
  for (std::size_t ci = 0; ci < ell.e.size(); ++ci) {
    if (ell.e[ci] == 0) continue;
    w.push_back(g.character(ci).value(p));
    e.push_back(ell.e[ci]);
  }
  auto series = local_series(w, e, mmax);
  if ((double)p * (double)p > X) {
    // multiply by prod_chi (1 + chi(p)^2 x^2 / 2)^{-ell_chi}
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<std::complex<double>> f(mmax + 1, 0.0);
      f[0] = 1.0;
      double b = 1.0;
      std::complex<double> w2 = w[i] * w[i];
      std::complex<double> wp = 1.0;
      for (int m = 1; 2 * m <= mmax; ++m) {
        b = b * (m + e[i] - 1) / m;
        wp *= -w2 / 2.0;
        f[2 * m] = b * wp;
      }
      std::vector<std::complex<double>> next(mmax + 1, 0.0);
      for (int m = 0; m <= mmax; ++m)
        for (int j = 0; j <= m; j += 2) next[m] += series[m - j] * f[j];
      series = std::move(next);
    }
  }
  return series;
}

static void check_beta_domain(const ExponentTuple& ell, double X) {
  double q = (double)ell.modulus();
  if (!(X > q * q))
    throw std::domain_error("beta: requires X > q^2");
}

std::complex<double> beta_coeff(const ExponentTuple& ell, double X, std::uint64_t n) {
  check_beta_domain(ell, X);
  if (n == 0) throw std::domain_error("beta_coeff: n = 0");
  std::complex<double> v = 1.0;
  for (auto [p, m] : factorize(n)) {
    if (!ell.group->coprime(p) || (double)p > X) return 0.0;
    v *= beta_local(ell, X, p, m)[m];
  }
  return v;
}

MultCoeffTable beta_table(const ExponentTuple& ell, double X, std::uint64_t N) {
  check_beta_domain(ell, X);
  MultCoeffTable t;
  t.q = ell.modulus();
  t.X = X;
  t.N = N;
  if (N == 0) return t;
  // enumerate the smooth support depth-first, assembling coefficients
  // multiplicatively along the way
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p : primes_up_to((std::uint64_t)X))
    if (ell.group->coprime(p)) ps.push_back(p);
  std::vector<std::vector<std::complex<double>>> locals(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    int mmax = (int)(std::log((double)N) / std::log((double)ps[i])) + 1;
    locals[i] = beta_local(ell, X, ps[i], mmax);
  }
  t.entries.push_back({1, {1.0, 0.0}});
  struct Frame { std::size_t i; std::uint64_t n; std::complex<double> c; };
  std::vector<Frame> stack{{0, 1, {1.0, 0.0}}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (std::size_t i = f.i; i < ps.size(); ++i) {
      std::uint64_t p = ps[i];
      if (f.n > N / p) break;
      std::uint64_t n = f.n;
      int m = 0;
      while (n <= N / p) {
        n *= p;
        ++m;
        std::complex<double> c = f.c * locals[i][m];
        t.entries.push_back({n, c});
        if (i + 1 < ps.size() && n <= N / ps[i + 1]) stack.push_back({i + 1, n, c});
      }
    }
  }
  std::sort(t.entries.begin(), t.entries.end(),
            [](auto& a, auto& b) { return a.first < b.first; });
  return t;
}

std::complex<double> MultCoeffTable::value(std::uint64_t n) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), n,
                             [](const auto& e, std::uint64_t v) { return e.first < v; });
  if (it == entries.end() || it->first != n) return {0.0, 0.0};
  return it->second;
}

// ---------------------------------------------------------------------------
// classical pieces
// ---------------------------------------------------------------------------

double barnes_g(int n) {
  if (n < 1) throw std::domain_error("barnes_g: need n >= 1");
  if (n <= 3) return 1.0;
  // G(n) = 1! 2! ... (n-2)!; exact in unsigned 128-bit up to G(13)
  if (n <= 13) {
    unsigned __int128 g = 1, f = 1;
    for (int j = 1; j <= n - 2; ++j) {
      f *= (unsigned)j;
      g *= f;
    }
    return (double)g;
  }
  double lg = 0.0, lf = 0.0;
  for (int j = 1; j <= n - 2; ++j) {
    lf += std::log((double)j);
    lg += lf;
  }
  return std::exp(lg);
}

Rational bernoulli(int two_j) {
  static const Rational table[] = {
      {1, 1},           {1, 6},        {-1, 30},      {1, 42},
      {-1, 30},         {5, 66},       {-691, 2730},  {7, 6},
      {-3617, 510},     {43867, 798},  {-174611, 330}, {854513, 138},
      {-236364091, 2730}, {8553103, 6},
  };
  if (two_j < 0 || two_j % 2 != 0 || two_j / 2 >= (int)(sizeof(table) / sizeof(table[0])))
    throw std::domain_error("bernoulli: even index in [0, 26] required");
  return table[two_j / 2];
}

double mangoldt(std::uint64_t n) {
  std::uint64_t p;
  int m;
  if (!prime_power(n, p, m)) return 0.0;
  return std::log((double)p);
}

std::vector<std::uint64_t> smooth_numbers(std::uint64_t q, double X, std::uint64_t N) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p : primes_up_to((std::uint64_t)X))
    if (std::gcd(p, q) == 1) ps.push_back(p);
  std::vector<std::uint64_t> out{1};
  struct Frame { std::size_t i; std::uint64_t n; };
  std::vector<Frame> stack{{0, 1}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (std::size_t i = f.i; i < ps.size(); ++i) {
      if (f.n > N / ps[i]) break;
      std::uint64_t n = f.n;
      while (n <= N / ps[i]) {
        n *= ps[i];
        out.push_back(n);
        if (i + 1 < ps.size() && n <= N / ps[i + 1]) stack.push_back({i + 1, n});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double multinomial(int k, const std::vector<int>& parts) {
  int s = 0;
  for (int p : parts) {
    if (p < 0) throw std::domain_error("multinomial: negative part");
    s += p;
  }
  if (s != k) throw std::domain_error("multinomial: parts must sum to k");
  double v = 1.0;
  int used = 0;
  for (int p : parts) {
    for (int j = 1; j <= p; ++j) {
      ++used;
      v = v * used / j;
    }
  }
  return std::round(v);
}

}  // namespace hzeta
