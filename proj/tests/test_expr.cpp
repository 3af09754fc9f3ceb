#include <doctest.h>

#include <cmath>
#include <vector>

#include "adsforms/expr.hpp"
#include "adsforms/random.hpp"

using namespace adsforms;

namespace {

const Expr x0 = Expr::variable(0);
const Expr x1 = Expr::variable(1);
const Expr x2 = Expr::variable(2);

// Random tree over three variables whose sqrt and quotient nodes stay in domain
// for every real point: radicands and denominators are 1 + (something)^2.
Expr random_tree(Rng& rng, int depth) {
  if (depth == 0 || rng.below(4) == 0) {
    if (rng.below(3) == 0) return Expr(rng.uniform(-2.0, 2.0));
    return Expr::variable(rng.below(3));
  }
  Expr a = random_tree(rng, depth - 1);
  switch (rng.below(7)) {
    case 0:
      return a + random_tree(rng, depth - 1);
    case 1:
      return a * random_tree(rng, depth - 1);
    case 2:
      return -a;
    case 3:
      return a / (1.0 + pow(random_tree(rng, depth - 1), 2));
    case 4:
      return pow(a, 1 + rng.below(3));
    case 5:
      return sqrt(1.0 + a * a);
    default:
      return pow(1.0 + a * a, -1);
  }
}

std::vector<double> random_point(Rng& rng) { return {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}; }

double central_difference(const Expr& e, std::vector<double> x, int k, double step = 1e-6) {
  const double x_k = x[k];
  x[k] = x_k + step;
  const double plus = evaluate(e, x);
  x[k] = x_k - step;
  const double minus = evaluate(e, x);
  return (plus - minus) / (2 * step);
}

}  // namespace

TEST_CASE("evaluate: constants, products and a Pythagorean radius") {
  const std::vector<double> p23{2.0, 3.0};
  CHECK(evaluate(Expr(1.0), p23) == 1.0);
  CHECK(evaluate(x0 * x1, p23) == 6.0);
  const std::vector<double> p34{3.0, 4.0};
  CHECK(evaluate(sqrt(x0 * x0 + x1 * x1), p34) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("evaluate: domain errors name the subexpression") {
  const std::vector<double> p{-1.0, 0.0};
  CHECK_THROWS_AS(evaluate(sqrt(x0), p), DomainError);
  CHECK_THROWS_AS(evaluate(Expr(1.0) / x1, p), DomainError);
  CHECK_THROWS_AS(evaluate(pow(x1, -2), p), DomainError);
  try {
    evaluate(sqrt(x0 + 0.5), p);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("x0") != std::string::npos);
  }
}

TEST_CASE("differentiate: power rule, independence and sqrt") {
  const std::vector<double> p{1.5, -0.5};
  CHECK(evaluate(differentiate(x0 * x0, 0), p) == doctest::Approx(3.0));
  CHECK(differentiate(x0, 1).is_zero());
  // d/dx sqrt(x) at 4, against a central difference with step 1e-6
  const std::vector<double> four{4.0};
  const Expr s = sqrt(x0);
  const double fd = central_difference(s, {4.0}, 0);
  CHECK(fd == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(evaluate(differentiate(s, 0), four) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("differentiate agrees with central differences on random trees") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Expr e = random_tree(rng, 4);
    const auto x = random_point(rng);
    for (int k = 0; k < 3; ++k) {
      const double exact = evaluate(differentiate(e, k), x);
      const double fd = central_difference(e, x, k);
      CHECK(std::abs(exact - fd) <= 1e-5 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("mixed partials commute") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Expr e = random_tree(rng, 4);
    const auto x = random_point(rng);
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k) {
        const double jk = evaluate(differentiate(differentiate(e, j), k), x);
        const double kj = evaluate(differentiate(differentiate(e, k), j), x);
        CHECK(std::abs(jk - kj) <= 1e-9 * std::max(1.0, std::abs(jk)));
      }
  }
}

TEST_CASE("evaluator never reuses a cache entry of a destroyed temporary") {
  const std::vector<double> p{0.5, 2.0};
  Evaluator ev(p);
  for (int i = 1; i <= 200; ++i) {
    const double expected = i * 0.5 + 2.0;
    CHECK(ev(Expr(static_cast<double>(i)) * x0 + x1) == expected);
  }
}

TEST_CASE("derivatives of shared subgraphs are shared") {
  const Expr r = sqrt(1.0 + x0 * x0 + x1 * x1);
  CHECK(differentiate(r, 0).id() == differentiate(r, 0).id());
}

TEST_CASE("simplify folds constants and neutral elements") {
  const Expr zero_times = raw::product({raw::constant(0.0), raw::variable(1)});
  CHECK(simplify(zero_times).is_zero());
  const Expr plus_zero = raw::sum({raw::variable(0), raw::constant(0.0)});
  CHECK(simplify(plus_zero).kind() == ExprKind::variable);
  CHECK(simplify(plus_zero).variable_index() == 0);
  const Expr ones = raw::product({raw::constant(1.0), raw::product({raw::variable(0), raw::constant(1.0)})});
  CHECK(simplify(ones).kind() == ExprKind::variable);
  CHECK(simplify(ones).variable_index() == 0);
  CHECK(simplify(raw::sum({raw::constant(2.0), raw::constant(3.0)})).constant_value() == 5.0);
}

TEST_CASE("simplify is pointwise exact on random trees") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Expr e = random_tree(rng, 5);
    const Expr s = simplify(e);
    for (int i = 0; i < 100; ++i) {
      const auto x = random_point(rng);
      const double a = evaluate(e, x);
      CHECK(std::abs(evaluate(s, x) - a) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("substitute composes expressions") {
  // f(x0, x1) = x0 * x1 with x0 -> x2 + 1, x1 -> x2
  const std::vector<Expr> repl{x2 + 1.0, x2, x2};
  const Expr g = substitute(x0 * x1, repl);
  const std::vector<double> p{0.0, 0.0, 3.0};
  CHECK(evaluate(g, p) == 12.0);
}

TEST_CASE("homogeneous_degree detects single-degree polynomials") {
  CHECK(homogeneous_degree(x0 * x1 + 2.0 * x2 * x2) == 2);
  CHECK(homogeneous_degree(Expr(3.0)) == 0);
  CHECK(homogeneous_degree(Expr{}) == 0);
  CHECK_FALSE(homogeneous_degree(x0 + x1 * x1).has_value());
  CHECK_FALSE(homogeneous_degree(sqrt(x0)).has_value());
}

TEST_CASE("arity counts referenced variables") {
  CHECK(Expr(2.0).arity() == 0);
  CHECK((x0 + x2).arity() == 3);
}
