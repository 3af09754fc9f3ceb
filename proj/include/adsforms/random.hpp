#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "adsforms/form.hpp"

namespace adsforms {

/// mt19937_64 with a hand-rolled double conversion, so streams are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 engine_;
};

/// FNV-1a of a case key mixed with the master seed.
std::uint64_t case_seed(std::uint64_t master, std::string_view key);

/// Sparse polynomial: `terms` monomials of total degree <= max_degree in `dim` variables,
/// coefficients uniform in [-1, 1].
Expr random_polynomial(Rng& rng, int dim, int max_degree = 3, int terms = 3);
/// As above but every monomial has total degree exactly `degree`.
Expr random_homogeneous_polynomial(Rng& rng, int dim, int degree, int terms = 3);

Form random_form(Rng& rng, int degree, int dim, Space space, int max_degree = 3, int terms = 3);
Form random_homogeneous_form(Rng& rng, int degree, int dim, Space space, int poly_degree, int terms = 3);

}  // namespace adsforms
