#pragma once

#include <cstdint>
#include <random>

#include "qlab/linalg.hpp"

namespace qlab {

/// Independent generator for sample `index` of a run seeded with `seed`.
/// Streams are derived from (seed, index) alone, so a sweep yields the same
/// numbers whether its samples are evaluated serially, in parallel or out
/// of order.
inline std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser over the pair
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return std::mt19937_64(mix(mix(seed) ^ (index * 0xd1b54a32d192ed03ULL)));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gaussian(std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline Complex random_complex(std::mt19937_64& rng) { return {gaussian(rng), gaussian(rng)}; }

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = random_complex(rng);
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  const ComplexMatrix m = random_matrix(rng, n);
  return 0.5 * (m + m.adjoint());
}

/// Random unit vector in C^dim (Gaussian amplitudes).
inline StateVector random_state(std::mt19937_64& rng, int dim) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = random_complex(rng);
  return StateVector(std::move(v));
}

}  // namespace qlab
