#pragma once

#include <vector>

namespace hzeta {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;
};

// Newton iteration on P_n from the Chebyshev initial guess; results are
// cached per order and deterministic.
const GaussLegendre& gauss_legendre(int n);

}  // namespace hzeta
