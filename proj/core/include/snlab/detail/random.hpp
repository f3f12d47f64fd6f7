#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace snlab::detail {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic per-task generator: mixes the experiment seed with fixed
// salts so distinct solver stages never share a stream.
inline std::mt19937_64 make_rng(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> salts) {
  std::uint64_t s = splitmix64(seed ^ 0xD1B54A32D192ED03ULL);
  for (std::uint64_t t : salts) s = splitmix64(s ^ t);
  return std::mt19937_64(s);
}

inline Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

inline Eigen::MatrixXd gaussian_matrix(std::mt19937_64& rng, int m, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd M(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
  return M;
}

}  // namespace snlab::detail
