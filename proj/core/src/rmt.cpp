#include "hzeta/rmt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "hzeta/arith.hpp"
#include "hzeta/constants.hpp"
#include "hzeta/hybrid.hpp"
#include "hzeta/moments.hpp"

namespace hzeta {

namespace {

constexpr std::uint64_t kStride = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter generator: one independent stream per (seed, index, attempt).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += kStride);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform01() { return (double)((next() >> 11) + 1) * 0x1.0p-53; }  // (0, 1]
};

SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  return SplitMix64(mix64(mix64(seed ^ (kStride * (index + 1))) + attempt));
}

// One standard complex Gaussian entry (components N(0, 1/2)) by Box-Muller.
std::complex<double> gaussian_entry(SplitMix64& g) {
  const double u1 = g.uniform01();
  const double u2 = g.uniform01();
  const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u1) / sqrt(2)
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

bool sample_once(int N, SplitMix64& g, std::vector<double>& angles) {
  Eigen::MatrixXcd Z(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) Z(j, k) = gaussian_entry(g);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd& QR = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    const std::complex<double> d = QR(j, j);
    const double ad = std::abs(d);
    if (!(ad > 0.0)) return false;
    Q.col(j) *= d / ad;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q, false);
  if (es.info() != Eigen::Success) return false;
  angles.resize(N);
  for (int j = 0; j < N; ++j) {
    double a = std::arg(es.eigenvalues()[j]);
    if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    angles[j] = a;
  }
  std::sort(angles.begin(), angles.end());
  return true;
}

CueSample sample_cue_counted(int N, std::uint64_t seed, std::uint64_t index,
                             std::uint64_t& retries) {
  CueSample s;
  s.N = N;
  for (std::uint64_t attempt = 0;; ++attempt) {
    SplitMix64 g = stream_for(seed, index, attempt);
    if (sample_once(N, g, s.angles)) return s;
    ++retries;
    if (attempt > 64) throw std::runtime_error("sample_cue: eigensolver kept failing");
  }
}

void pairwise_rows(std::vector<double>& buf, std::size_t n, int m) {
  for (std::size_t step = 1; step < n; step *= 2)
    for (std::size_t i = 0; i + step < n; i += 2 * step)
      for (int c = 0; c < m; ++c) buf[i * m + c] += buf[(i + step) * m + c];
}

}  // namespace

double density(const DirichletCharacter& chi, double T) {
  const double qstar = (double)chi.conductor();
  if (!(T > 2.0 * std::numbers::pi / qstar))
    throw std::domain_error("density: requires T > 2 pi / conductor");
  return std::log(qstar * T / (2.0 * std::numbers::pi));
}

int matrix_size(const DirichletCharacter& chi, double T) {
  return (int)std::floor(density(chi, T));
}

CueSample sample_cue(int N, std::uint64_t seed, std::uint64_t index) {
  if (N < 1) throw std::domain_error("sample_cue: N must be >= 1");
  std::uint64_t retries = 0;
  return sample_cue_counted(N, seed, index, retries);
}

McEstimate model_moment(int m, int N, double X, std::uint64_t samples,
                        std::uint64_t seed, int workers) {
  if (m < 0 || m > 3) throw std::domain_error("model_moment: m must be in [0, 3]");
  if (N < 1 || N > 100) throw std::domain_error("model_moment: N must be in [1, 100]");
  if (samples < 1 || samples > 1000000)
    throw std::domain_error("model_moment: samples must be in [1, 10^6]");
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  if (m == 0) {
    est.mean = 1.0;
    return est;
  }
  const SmoothingSpec spec(X);

  constexpr std::size_t kChunk = 1024;
  const std::size_t n_chunks = ((std::size_t)samples + kChunk - 1) / kChunk;
  // per chunk: pairwise-reduced (sum, sum of squares)
  std::vector<double> partials(n_chunks * 2, 0.0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> retries{0};
  std::exception_ptr first_error = nullptr;
  std::mutex err_mu;

  auto work = [&]() {
    std::vector<double> rows(kChunk * 2);
    std::uint64_t local_retries = 0;
    try {
      for (;;) {
        const std::size_t ci = next.fetch_add(1);
        if (ci >= n_chunks) break;
        const std::uint64_t i0 = (std::uint64_t)ci * kChunk;
        const std::uint64_t i1 = std::min<std::uint64_t>(i0 + kChunk, samples);
        for (std::uint64_t i = i0; i < i1; ++i) {
          const CueSample cue = sample_cue_counted(N, seed, i, local_retries);
          double v = 1.0;
          for (double theta : cue.angles) v *= phi_factor(m, theta, spec);
          rows[(i - i0) * 2] = v;
          rows[(i - i0) * 2 + 1] = v * v;
        }
        pairwise_rows(rows, i1 - i0, 2);
        partials[ci * 2] = rows[0];
        partials[ci * 2 + 1] = rows[1];
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(err_mu);
      if (!first_error) first_error = std::current_exception();
    }
    retries.fetch_add(local_retries);
  };

  const int w = resolve_workers(workers);
  if (w <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (int i = 0; i < w; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  pairwise_rows(partials, n_chunks, 2);
  const double n = (double)samples;
  est.mean = partials[0] / n;
  if (samples > 1) {
    const double var = std::max(0.0, (partials[1] - n * est.mean * est.mean) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  }
  est.resamples = retries.load();
  return est;
}

double model_prediction(int m, int N, double X) {
  if (m < 0 || m > 3) throw std::domain_error("model_prediction: m must be in [0, 3]");
  if (N < 1) throw std::domain_error("model_prediction: N must be >= 1");
  if (!(X > 1.0)) throw std::domain_error("model_prediction: X must exceed 1");
  const double g = barnes_g(m + 1);
  const double scale = (double)N / (std::exp(kEulerGamma) * std::log(X));
  return g * g / barnes_g(2 * m + 1) * std::pow(scale, (double)(m * m));
}

double ks_statistic(const std::vector<double>& xs, double lo, double hi) {
  if (xs.empty()) throw std::domain_error("ks_statistic: empty sample");
  if (!(hi > lo)) throw std::domain_error("ks_statistic: requires hi > lo");
  std::vector<double> u(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    u[i] = std::clamp((xs[i] - lo) / (hi - lo), 0.0, 1.0);
  std::sort(u.begin(), u.end());
  const double n = (double)u.size();
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, (double)(i + 1) / n - u[i]);
    d = std::max(d, u[i] - (double)i / n);
  }
  return d;
}

double ks_pvalue(double d, std::uint64_t n) {
  if (n == 0) throw std::domain_error("ks_pvalue: n must be positive");
  const double rn = std::sqrt((double)n);
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  if (lambda < 1e-3) return 1.0;
  double p = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * std::exp(-2.0 * (double)j * (double)j * lambda * lambda);
    p += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace hzeta
