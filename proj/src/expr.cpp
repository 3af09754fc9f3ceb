#include "adsforms/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace adsforms {

namespace detail {

struct Node {
  ExprKind kind = ExprKind::constant;
  double value = 0.0;  // constant
  int index = 0;       // variable index or power exponent
  std::vector<Expr> children;
  int arity = 0;

  // Derivative cache, one slot per variable below `arity`. A node never
  // caches an expression that references itself, which keeps the graph acyclic.
  mutable std::mutex mutex;
  mutable std::vector<std::shared_ptr<const Node>> derivatives;
};

}  // namespace detail

using detail::Node;

namespace {

std::shared_ptr<const Node> make_node(ExprKind kind, std::vector<Expr> children, double value = 0.0,
                                      int index = 0) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->value = value;
  node->index = index;
  int arity = kind == ExprKind::variable ? index + 1 : 0;
  for (const auto& c : children) arity = std::max(arity, c.arity());
  node->arity = arity;
  node->children = std::move(children);
  return node;
}

const Expr& zero_expr() {
  static const Expr z{make_node(ExprKind::constant, {}, 0.0)};
  return z;
}

const Expr& one_expr() {
  static const Expr o{make_node(ExprKind::constant, {}, 1.0)};
  return o;
}

Expr make_constant(double v) {
  if (v == 0.0) return zero_expr();
  if (v == 1.0) return one_expr();
  return Expr{make_node(ExprKind::constant, {}, v)};
}

std::string abbreviated(const Expr& e) {
  auto s = to_string(e);
  if (s.size() > 240) s = s.substr(0, 237) + "...";
  return s;
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}
Expr::Expr(double value) : node_(make_constant(value).node_) {}

Expr Expr::variable(int index) {
  if (index < 0) throw std::invalid_argument("variable index must be nonnegative");
  return Expr{make_node(ExprKind::variable, {}, 0.0, index)};
}

ExprKind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
int Expr::variable_index() const { return node_->index; }
int Expr::exponent() const { return node_->index; }
std::span<const Expr> Expr::args() const { return node_->children; }
int Expr::arity() const { return node_->arity; }
bool Expr::is_zero() const { return node_->kind == ExprKind::constant && node_->value == 0.0; }
bool Expr::is_one() const { return node_->kind == ExprKind::constant && node_->value == 1.0; }

namespace raw {
Expr constant(double value) { return Expr{make_node(ExprKind::constant, {}, value)}; }
Expr variable(int index) { return Expr::variable(index); }
Expr sum(std::vector<Expr> terms) {
  if (terms.empty()) throw std::invalid_argument("sum needs at least one term");
  return Expr{make_node(ExprKind::sum, std::move(terms))};
}
Expr product(std::vector<Expr> factors) {
  if (factors.empty()) throw std::invalid_argument("product needs at least one factor");
  return Expr{make_node(ExprKind::product, std::move(factors))};
}
Expr negation(Expr e) { return Expr{make_node(ExprKind::negation, {std::move(e)})}; }
Expr quotient(Expr num, Expr den) {
  return Expr{make_node(ExprKind::quotient, {std::move(num), std::move(den)})};
}
Expr power(Expr base, int exponent) {
  return Expr{make_node(ExprKind::power, {std::move(base)}, 0.0, exponent)};
}
Expr square_root(Expr e) { return Expr{make_node(ExprKind::square_root, {std::move(e)})}; }
}  // namespace raw

Expr sum(std::vector<Expr> terms) {
  double c = 0.0;
  std::vector<Expr> kept;
  kept.reserve(terms.size() + 1);
  for (auto& t : terms) {
    if (t.is_constant())
      c += t.constant_value();
    else
      kept.push_back(std::move(t));
  }
  if (kept.empty()) return make_constant(c);
  if (c != 0.0) kept.push_back(make_constant(c));
  if (kept.size() == 1) return kept.front();
  return raw::sum(std::move(kept));
}

Expr product(std::vector<Expr> factors) {
  double c = 1.0;
  std::vector<Expr> kept;
  kept.reserve(factors.size() + 1);
  for (auto& f : factors) {
    if (f.is_constant()) {
      c *= f.constant_value();
      if (c == 0.0) return zero_expr();
    } else if (f.kind() == ExprKind::negation) {
      c = -c;
      kept.push_back(f.args()[0]);
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (kept.empty()) return make_constant(c);
  if (kept.size() == 1 && c == 1.0) return kept.front();
  if (kept.size() == 1 && c == -1.0) return raw::negation(kept.front());
  if (c != 1.0) kept.insert(kept.begin(), make_constant(c));
  return raw::product(std::move(kept));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return sum({a, b});
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return make_constant(-a.constant_value());
  if (a.kind() == ExprKind::negation) return a.args()[0];
  return raw::negation(a);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return sum({a, -b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return zero_expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return product({a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_zero()) return zero_expr();
  if (b.is_one()) return a;
  if (b.is_constant() && b.constant_value() != 0.0) return a * make_constant(1.0 / b.constant_value());
  return raw::quotient(a, b);
}

Expr sqrt(const Expr& e) {
  if (e.is_constant() && e.constant_value() >= 0.0) return make_constant(std::sqrt(e.constant_value()));
  return raw::square_root(e);
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return one_expr();
  if (exponent == 1) return base;
  if (base.is_constant() && (exponent > 0 || base.constant_value() != 0.0))
    return make_constant(std::pow(base.constant_value(), exponent));
  return raw::power(base, exponent);
}

// ---------------------------------------------------------------------------

Evaluator::Evaluator(std::span<const double> point) : point_(point.begin(), point.end()) {}

double Evaluator::operator()(const Expr& e) {
  if (e.arity() > static_cast<int>(point_.size()))
    throw std::invalid_argument("point has " + std::to_string(point_.size()) +
                                " coordinates, expression needs " + std::to_string(e.arity()));
  // Cached nodes must outlive the cache, or a recycled address would hit a stale entry.
  if (!cache_.contains(e.id())) roots_.push_back(e.handle());
  return value(e.id());
}

double Evaluator::value(const Node* node) {
  switch (node->kind) {
    case ExprKind::constant:
      return node->value;
    case ExprKind::variable:
      return point_[node->index];
    default:
      break;
  }
  if (auto it = cache_.find(node); it != cache_.end()) return it->second;

  double result = 0.0;
  const auto& ch = node->children;
  switch (node->kind) {
    case ExprKind::sum:
      for (const auto& c : ch) result += value(c.id());
      break;
    case ExprKind::product:
      result = 1.0;
      for (const auto& c : ch) result *= value(c.id());
      break;
    case ExprKind::negation:
      result = -value(ch[0].id());
      break;
    case ExprKind::quotient: {
      double den = value(ch[1].id());
      if (den == 0.0) throw DomainError("zero denominator in " + abbreviated(ch[1]));
      result = value(ch[0].id()) / den;
      break;
    }
    case ExprKind::power: {
      double b = value(ch[0].id());
      if (b == 0.0 && node->index < 0) throw DomainError("negative power of zero in " + abbreviated(ch[0]));
      result = std::pow(b, node->index);
      break;
    }
    case ExprKind::square_root: {
      double a = value(ch[0].id());
      if (a < 0.0) throw DomainError("negative square root argument in " + abbreviated(ch[0]));
      result = std::sqrt(a);
      break;
    }
    default:
      break;
  }
  cache_.emplace(node, result);
  return result;
}

double evaluate(const Expr& e, std::span<const double> point) {
  Evaluator ev(point);
  return ev(e);
}

// ---------------------------------------------------------------------------

namespace {

Expr derivative_uncached(const Expr& e, int k) {
  auto args = e.args();
  switch (e.kind()) {
    case ExprKind::constant:
      return zero_expr();
    case ExprKind::variable:
      return e.variable_index() == k ? one_expr() : zero_expr();
    case ExprKind::sum: {
      std::vector<Expr> terms;
      for (const auto& c : args) {
        auto dc = differentiate(c, k);
        if (!dc.is_zero()) terms.push_back(std::move(dc));
      }
      return terms.empty() ? zero_expr() : sum(std::move(terms));
    }
    case ExprKind::product: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < args.size(); ++i) {
        auto di = differentiate(args[i], k);
        if (di.is_zero()) continue;
        std::vector<Expr> factors;
        factors.reserve(args.size());
        for (std::size_t j = 0; j < args.size(); ++j) factors.push_back(i == j ? di : args[j]);
        terms.push_back(product(std::move(factors)));
      }
      return terms.empty() ? zero_expr() : sum(std::move(terms));
    }
    case ExprKind::negation:
      return -differentiate(args[0], k);
    case ExprKind::quotient: {
      const auto& num = args[0];
      const auto& den = args[1];
      auto dn = differentiate(num, k);
      auto dd = differentiate(den, k);
      return dn / den - (num * dd) / (den * den);
    }
    case ExprKind::power: {
      auto du = differentiate(args[0], k);
      if (du.is_zero()) return zero_expr();
      int p = e.exponent();
      return product({make_constant(p), pow(args[0], p - 1), du});
    }
    case ExprKind::square_root: {
      auto du = differentiate(args[0], k);
      if (du.is_zero()) return zero_expr();
      // Fresh sqrt node: the cached derivative must not own `e` itself.
      auto root = raw::square_root(args[0]);
      return product({make_constant(0.5), du}) / root;
    }
  }
  return zero_expr();
}

}  // namespace

Expr differentiate(const Expr& e, int k) {
  if (k < 0) throw std::invalid_argument("negative variable index");
  if (k >= e.arity() || e.is_constant()) return zero_expr();
  const Node* node = e.id();
  {
    std::lock_guard lock(node->mutex);
    if (node->derivatives.size() > static_cast<std::size_t>(k) && node->derivatives[k])
      return Expr{node->derivatives[k]};
  }
  Expr d = derivative_uncached(e, k);
  if (d.id() == node) return d;
  std::lock_guard lock(node->mutex);
  if (node->derivatives.size() < static_cast<std::size_t>(node->arity)) node->derivatives.resize(node->arity);
  if (!node->derivatives[k]) node->derivatives[k] = d.handle();
  return Expr{node->derivatives[k]};
}

Expr simplify(const Expr& e) {
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const Expr&)> rec = [&](const Expr& x) -> Expr {
    switch (x.kind()) {
      case ExprKind::constant:
        return make_constant(x.constant_value());
      case ExprKind::variable:
        return x;
      default:
        break;
    }
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    std::vector<Expr> ch;
    for (const auto& c : x.args()) ch.push_back(rec(c));
    Expr out;
    switch (x.kind()) {
      case ExprKind::sum: {
        std::vector<Expr> kept;
        for (auto& c : ch)
          if (!c.is_zero()) kept.push_back(std::move(c));
        out = kept.empty() ? zero_expr() : sum(std::move(kept));
        break;
      }
      case ExprKind::product: {
        std::vector<Expr> kept;
        bool zero = false;
        for (auto& c : ch) {
          if (c.is_zero()) zero = true;
          if (!c.is_one()) kept.push_back(std::move(c));
        }
        out = zero ? zero_expr() : kept.empty() ? one_expr() : product(std::move(kept));
        break;
      }
      case ExprKind::negation:
        out = -ch[0];
        break;
      case ExprKind::quotient:
        out = ch[0] / ch[1];
        break;
      case ExprKind::power:
        out = pow(ch[0], x.exponent());
        break;
      case ExprKind::square_root:
        out = sqrt(ch[0]);
        break;
      default:
        out = x;
    }
    memo.emplace(x.id(), out);
    return out;
  };
  return rec(e);
}

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  if (e.arity() > static_cast<int>(replacements.size()))
    throw std::invalid_argument("substitute: expression references x" + std::to_string(e.arity() - 1) +
                                " but only " + std::to_string(replacements.size()) + " replacements given");
  std::unordered_map<const Node*, Expr> memo;
  std::function<Expr(const Expr&)> rec = [&](const Expr& x) -> Expr {
    if (x.is_constant()) return x;
    if (x.kind() == ExprKind::variable) return replacements[x.variable_index()];
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    std::vector<Expr> ch;
    ch.reserve(x.args().size());
    for (const auto& c : x.args()) ch.push_back(rec(c));
    Expr out;
    switch (x.kind()) {
      case ExprKind::sum:
        out = sum(std::move(ch));
        break;
      case ExprKind::product:
        out = product(std::move(ch));
        break;
      case ExprKind::negation:
        out = -ch[0];
        break;
      case ExprKind::quotient:
        out = ch[0] / ch[1];
        break;
      case ExprKind::power:
        out = pow(ch[0], x.exponent());
        break;
      case ExprKind::square_root:
        out = sqrt(ch[0]);
        break;
      default:
        out = x;
    }
    memo.emplace(x.id(), out);
    return out;
  };
  return rec(e);
}

namespace {

struct PolyInfo {
  bool polynomial = true;
  bool zero = false;
  bool homogeneous = true;
  int degree = 0;
};

PolyInfo poly_info(const Expr& e) {
  PolyInfo info;
  switch (e.kind()) {
    case ExprKind::constant:
      info.zero = e.constant_value() == 0.0;
      return info;
    case ExprKind::variable:
      info.degree = 1;
      return info;
    case ExprKind::negation:
      return poly_info(e.args()[0]);
    case ExprKind::sum: {
      bool seen = false;
      info.zero = true;
      for (const auto& c : e.args()) {
        auto ci = poly_info(c);
        if (!ci.polynomial) return {false, false, false, 0};
        if (ci.zero) continue;
        info.zero = false;
        if (!ci.homogeneous || (seen && ci.degree != info.degree)) info.homogeneous = false;
        info.degree = ci.degree;
        seen = true;
      }
      return info;
    }
    case ExprKind::product: {
      for (const auto& c : e.args()) {
        auto ci = poly_info(c);
        if (!ci.polynomial) return {false, false, false, 0};
        if (ci.zero) info.zero = true;
        if (!ci.homogeneous) info.homogeneous = false;
        info.degree += ci.degree;
      }
      if (info.zero) return {true, true, true, 0};
      return info;
    }
    case ExprKind::power: {
      if (e.exponent() < 0) return {false, false, false, 0};
      auto bi = poly_info(e.args()[0]);
      if (!bi.polynomial) return bi;
      if (bi.zero) return {true, true, true, 0};
      bi.degree *= e.exponent();
      return bi;
    }
    default:
      return {false, false, false, 0};
  }
}

}  // namespace

std::optional<int> homogeneous_degree(const Expr& e) {
  auto info = poly_info(e);
  if (!info.polynomial || !info.homogeneous) return std::nullopt;
  return info.zero ? 0 : info.degree;
}

std::size_t node_count(const Expr& e) {
  std::unordered_set<const Node*> seen;
  std::vector<const Expr*> stack{&e};
  while (!stack.empty()) {
    const Expr* x = stack.back();
    stack.pop_back();
    if (!seen.insert(x->id()).second) continue;
    for (const auto& c : x->args()) stack.push_back(&c);
  }
  return seen.size();
}

namespace {

void print(std::ostream& os, const Expr& e, std::size_t& budget) {
  if (budget == 0) {
    os << "...";
    return;
  }
  --budget;
  auto args = e.args();
  auto list = [&](const char* sep) {
    os << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) os << sep;
      print(os, args[i], budget);
    }
    os << ')';
  };
  switch (e.kind()) {
    case ExprKind::constant:
      os << e.constant_value();
      break;
    case ExprKind::variable:
      os << 'x' << e.variable_index();
      break;
    case ExprKind::sum:
      list(" + ");
      break;
    case ExprKind::product:
      list("*");
      break;
    case ExprKind::negation:
      os << "-(";
      print(os, args[0], budget);
      os << ')';
      break;
    case ExprKind::quotient:
      list(" / ");
      break;
    case ExprKind::power:
      os << '(';
      print(os, args[0], budget);
      os << ")^" << e.exponent();
      break;
    case ExprKind::square_root:
      os << "sqrt(";
      print(os, args[0], budget);
      os << ')';
      break;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  os.precision(17);
  std::size_t budget = 200;
  print(os, e, budget);
  return os.str();
}

}  // namespace adsforms
