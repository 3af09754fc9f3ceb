#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace adsforms {

namespace detail {
struct Node;
}

enum class ExprKind { constant, variable, sum, product, negation, quotient, power, square_root };

/// Raised when an expression is evaluated outside its domain (negative sqrt
/// argument, vanishing denominator). The message names the offending subexpression.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Immutable, exactly-differentiable scalar expression over real variables
/// x0..x{m-1}. Copies share structure; the underlying graph is a DAG.
///
/// Arithmetic operators fold constants and drop neutral elements. The
/// `raw` namespace builds nodes verbatim (used by the JSON reader).
class Expr {
 public:
  Expr();
  Expr(double value);  // NOLINT(google-explicit-constructor)

  static Expr variable(int index);

  ExprKind kind() const;
  double constant_value() const;
  int variable_index() const;
  int exponent() const;
  std::span<const Expr> args() const;

  /// One past the largest variable index referenced (0 for constants).
  int arity() const;

  bool is_constant() const { return kind() == ExprKind::constant; }
  bool is_zero() const;
  bool is_one() const;

  const detail::Node* id() const { return node_.get(); }
  const std::shared_ptr<const detail::Node>& handle() const { return node_; }

  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr sqrt(const Expr& e);
Expr pow(const Expr& base, int exponent);
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);

namespace raw {
Expr constant(double value);
Expr variable(int index);
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr negation(Expr e);
Expr quotient(Expr num, Expr den);
Expr power(Expr base, int exponent);
Expr square_root(Expr e);
}  // namespace raw

/// Memoizing evaluator bound to one point. Reuse one instance for every
/// expression evaluated at the same point so shared subgraphs are computed once.
/// Evaluated expressions are kept alive for the evaluator's lifetime.
class Evaluator {
 public:
  explicit Evaluator(std::span<const double> point);
  double operator()(const Expr& e);
  std::span<const double> point() const { return point_; }

 private:
  double value(const detail::Node* node);
  std::vector<double> point_;
  std::unordered_map<const detail::Node*, double> cache_;
  std::vector<std::shared_ptr<const detail::Node>> roots_;
};

double evaluate(const Expr& e, std::span<const double> point);

/// Symbolic partial derivative. Results are cached per node, so repeated
/// requests (and higher partials of shared subgraphs) return shared nodes.
Expr differentiate(const Expr& e, int k);

/// Rebuilds `e` through the folding constructors (constant folding, zero
/// and one elimination). Pointwise equal to `e` on its domain.
Expr simplify(const Expr& e);

/// Replaces variable k by replacements[k]. Every referenced variable must
/// have a replacement.
Expr substitute(const Expr& e, std::span<const Expr> replacements);

/// Degree of a homogeneous polynomial; nullopt for non-polynomials and
/// mixed degrees. The zero polynomial reports degree 0.
std::optional<int> homogeneous_degree(const Expr& e);

/// Number of distinct nodes reachable from `e`.
std::size_t node_count(const Expr& e);

std::string to_string(const Expr& e);

}  // namespace adsforms
