#include "adsforms/calculus.hpp"

namespace adsforms {

namespace {

void require_metric(const MetricField& g, int dim, Space space, const char* op) {
  if (g.dim() != dim || g.space() != space) throw FormError(std::string(op) + ": metric does not match form");
}

}  // namespace

Expr inner(const VectorField& u, const VectorField& v, const MetricField& g) {
  detail::require_compatible(u, v, "inner");
  require_metric(g, u.dim(), u.space(), "inner");
  std::vector<Expr> terms;
  for (int a = 0; a < u.dim(); ++a)
    for (int b = 0; b < u.dim(); ++b) {
      if (g(a, b).is_zero() || u[a].is_zero() || v[b].is_zero()) continue;
      terms.push_back(g(a, b) * u[a] * v[b]);
    }
  return scalar::total(terms);
}

Form flat(const VectorField& v, const MetricField& g) {
  require_metric(g, v.dim(), v.space(), "flat");
  std::vector<Expr> out(v.dim());
  for (int a = 0; a < v.dim(); ++a) {
    std::vector<Expr> terms;
    for (int b = 0; b < v.dim(); ++b)
      if (!g(a, b).is_zero() && !v[b].is_zero()) terms.push_back(g(a, b) * v[b]);
    out[a] = scalar::total(terms);
  }
  return one_form(std::move(out), v.space());
}

VectorField sharp(const Form& lambda, const MetricField& g) {
  if (lambda.degree() != 1) throw FormError("sharp: expected a 1-form");
  require_metric(g, lambda.dim(), lambda.space(), "sharp");
  const int m = lambda.dim();
  auto l = lambda.coefficients();
  std::vector<Expr> out(m);
  for (int a = 0; a < m; ++a) {
    std::vector<Expr> terms;
    for (int b = 0; b < m; ++b)
      if (!g.inverse(a, b).is_zero() && !l[b].is_zero()) terms.push_back(g.inverse(a, b) * l[b]);
    out[a] = scalar::total(terms);
  }
  return {std::move(out), lambda.space()};
}

Form creator(const VectorField& v, const Form& a, const MetricField& g) { return wedge(flat(v, g), a); }

Form interior_oneform(const Form& lambda, const Form& a, const MetricField& g) {
  return interior(sharp(lambda, g), a);
}

Form exterior_derivative(const Form& a) {
  const int m = a.dim();
  if (a.degree() >= m) return Form(a.degree() + 1, m, a.space());
  for (const auto& c : a.coefficients())
    if (c.arity() > m) throw FormError("exterior_derivative: coefficient references a variable beyond the form dimension");
  Form out(a.degree() + 1, m, a.space());
  std::vector<std::vector<Expr>> acc(out.size());
  const auto ai = a.indices();
  auto ac = a.coefficients();
  for (std::size_t i = 0; i < ai.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (int k = 0; k < std::min(m, ac[i].arity()); ++k) {
      if (ai[i].contains(k)) continue;
      Expr dk = differentiate(ac[i], k);
      if (dk.is_zero()) continue;
      // dy^k ^ dy^I: move dy^k past the indices of I below k.
      int below = ai[i].count_below(k);
      acc[combination_rank(ai[i].with(k))].push_back(below % 2 ? -dk : dk);
    }
  }
  auto oc = out.coefficients();
  for (std::size_t i = 0; i < oc.size(); ++i) oc[i] = scalar::total(acc[i]);
  return out;
}

int double_star_sign(int p, int dim, int det_sign) { return (p * (dim - p)) % 2 ? -det_sign : det_sign; }

Form hodge_star(const Form& a, const MetricField& g, int orientation) {
  require_metric(g, a.dim(), a.space(), "hodge_star");
  if (orientation != 1 && orientation != -1) throw FormError("orientation must be +-1");
  const int m = a.dim();
  const int p = a.degree();
  Form out(m - p, m, a.space());
  const auto ai = a.indices();
  auto ac = a.coefficients();
  // (*a)_J = o sqrt|g| eps(J^c, J) a^{J^c},  a^I = sum_K det(g^{-1}[I,K]) a_K.
  for (MultiIndex j : out.indices()) {
    MultiIndex upper = j.complement(m);
    std::vector<Expr> terms;
    for (std::size_t k = 0; k < ai.size(); ++k) {
      if (ac[k].is_zero()) continue;
      const Expr& im = g.inverse_minor(upper, ai[k]);
      if (im.is_zero()) continue;
      terms.push_back(im * ac[k]);
    }
    if (terms.empty()) continue;
    double sign = orientation * concat_sign(upper, j);
    out[j] = Expr{sign} * g.sqrt_abs_det() * scalar::total(terms);
  }
  return out;
}

Form hodge_star_inverse(const Form& a, const MetricField& g, int orientation) {
  const int q = a.degree();
  const double sign = double_star_sign(q, a.dim(), g.det_sign());
  return Expr{sign} * hodge_star(a, g, orientation);
}

Form codifferential(const Form& a, const MetricField& g, int orientation) {
  require_metric(g, a.dim(), a.space(), "codifferential");
  if (a.degree() == 0) return Form(0, a.dim(), a.space());
  Form inner_form = hodge_star_inverse(exterior_derivative(hodge_star(a, g, orientation)), g, orientation);
  return a.degree() % 2 ? -inner_form : inner_form;
}

Form laplace_de_rham(const Form& a, const MetricField& g, int orientation) {
  Form result(a.degree(), a.dim(), a.space());
  if (a.degree() > 0) result = exterior_derivative(codifferential(a, g, orientation));
  if (a.degree() < a.dim()) result = result + codifferential(exterior_derivative(a), g, orientation);
  return -result;
}

Form lie_derivative(const VectorField& v, const Form& a) {
  detail::require_compatible(v, a, "lie_derivative");
  Form result(a.degree(), a.dim(), a.space());
  if (a.degree() < a.dim()) result = interior(v, exterior_derivative(a));
  if (a.degree() > 0) result = result + exterior_derivative(interior(v, a));
  return result;
}

Expr directional_derivative(const VectorField& v, const Expr& f) {
  std::vector<Expr> terms;
  for (int k = 0; k < std::min(v.dim(), f.arity()); ++k) {
    if (v[k].is_zero()) continue;
    Expr dk = differentiate(f, k);
    if (!dk.is_zero()) terms.push_back(v[k] * dk);
  }
  return scalar::total(terms);
}

}  // namespace adsforms
