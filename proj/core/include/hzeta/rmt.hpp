#pragma once

#include <cstdint>
#include <vector>

#include "hzeta/characters.hpp"

namespace hzeta {

// Log-density of critical zeros near height T for the L-function of chi,
// D = log(q* T / (2 pi)) with q* the conductor.  Requires T > 2 pi / q*.
double density(const DirichletCharacter& chi, double T);

// Matrix size of the unitary model, N = floor(D).
int matrix_size(const DirichletCharacter& chi, double T);

struct CueSample {
  int N = 0;
  std::vector<double> angles;  // ascending, each in (-pi, pi]
};

// Eigenangles of a Haar-distributed N x N unitary: a complex Gaussian matrix
// is QR-factorized and the unitary factor is phase-corrected by the diagonal
// of R, which makes the factorization unique and the law exactly Haar.  The
// generator is a counter construction on (seed, index), so sample streams are
// independent per index and reproducible under any parallel schedule.
CueSample sample_cue(int N, std::uint64_t seed, std::uint64_t index = 0);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t resamples = 0;  // eigensolver retries, normally zero
};

// Monte Carlo mean of prod_n phi(m, theta_n) over CUE samples of size N,
// with phi the smoothed-zero factor of the hybrid model at truncation X.
// Reduction is chunked by sample index, deterministic for any worker count.
McEstimate model_moment(int m, int N, double X, std::uint64_t samples,
                        std::uint64_t seed, int workers = 0);

// Closed form the mean is tested against:
//   (G(m+1)^2 / G(2m+1)) (N / (e^gamma log X))^{m^2}
// with G the Barnes function.
double model_prediction(int m, int N, double X);

// Two-sided Kolmogorov-Smirnov distance of xs from the uniform law on
// [lo, hi], and the asymptotic p-value with the standard finite-n rescaling.
double ks_statistic(const std::vector<double>& xs, double lo, double hi);
double ks_pvalue(double d, std::uint64_t n);

}  // namespace hzeta
