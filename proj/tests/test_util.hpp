#pragma once

#include <utility>
#include <vector>

#include "snlab/detail/random.hpp"
#include "snlab/operators.hpp"

namespace snlab::testutil {

// The exponent palette used throughout the suite; duals stay inside it.
inline const std::vector<Exponent>& palette() {
  static const std::vector<Exponent> p = {Exponent::one(), Exponent(4.0 / 3.0),
                                          Exponent::two(), Exponent(4.0),
                                          Exponent::inf()};
  return p;
}

// Exponent pairs with closed-form operator norms (p = 1, q = inf, or (2,2)).
inline const std::vector<std::pair<Exponent, Exponent>>& exact_pairs() {
  static const std::vector<std::pair<Exponent, Exponent>> pairs = {
      {Exponent::one(), Exponent::one()},
      {Exponent::one(), Exponent(4.0 / 3.0)},
      {Exponent::one(), Exponent::two()},
      {Exponent::one(), Exponent::inf()},
      {Exponent::two(), Exponent::two()},
      {Exponent::two(), Exponent::inf()},
      {Exponent(4.0 / 3.0), Exponent::inf()},
      {Exponent(4.0), Exponent::inf()},
      {Exponent::inf(), Exponent::inf()},
  };
  return pairs;
}

inline FiniteOperator random_operator(std::mt19937_64& rng, int m, int n,
                                      Exponent p, Exponent q) {
  return FiniteOperator(detail::gaussian_matrix(rng, m, n), NormedSpace(n, p),
                        NormedSpace(m, q));
}

}  // namespace snlab::testutil
