#include "adsforms/random.hpp"

namespace adsforms {

std::uint64_t case_seed(std::uint64_t master, std::string_view key) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  // splitmix64 finalizer on the combination
  std::uint64_t z = h ^ (master + 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

Expr monomial(Rng& rng, int dim, int degree) {
  std::vector<int> exps(dim, 0);
  for (int i = 0; i < degree; ++i) ++exps[rng.below(dim)];
  std::vector<Expr> factors{Expr{rng.uniform(-1.0, 1.0)}};
  for (int k = 0; k < dim; ++k)
    if (exps[k] > 0) factors.push_back(pow(Expr::variable(k), exps[k]));
  return product(std::move(factors));
}

}  // namespace

Expr random_polynomial(Rng& rng, int dim, int max_degree, int terms) {
  std::vector<Expr> parts;
  for (int i = 0; i < terms; ++i) parts.push_back(monomial(rng, dim, rng.below(max_degree + 1)));
  return sum(std::move(parts));
}

Expr random_homogeneous_polynomial(Rng& rng, int dim, int degree, int terms) {
  std::vector<Expr> parts;
  for (int i = 0; i < terms; ++i) parts.push_back(monomial(rng, dim, degree));
  return sum(std::move(parts));
}

Form random_form(Rng& rng, int degree, int dim, Space space, int max_degree, int terms) {
  Form out(degree, dim, space);
  for (auto& c : out.coefficients()) c = random_polynomial(rng, dim, max_degree, terms);
  return out;
}

Form random_homogeneous_form(Rng& rng, int degree, int dim, Space space, int poly_degree, int terms) {
  Form out(degree, dim, space);
  for (auto& c : out.coefficients()) c = random_homogeneous_polynomial(rng, dim, poly_degree, terms);
  return out;
}

}  // namespace adsforms
