#include "adsforms/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace adsforms {

std::string to_string(GeometryCase c) {
  switch (c) {
    case GeometryCase::de_sitter:
      return "ds";
    case GeometryCase::anti_de_sitter:
      return "ads";
    case GeometryCase::sphere:
      return "sphere";
  }
  return "?";
}

GeometryCase geometry_case_from_string(const std::string& s) {
  if (s == "ds") return GeometryCase::de_sitter;
  if (s == "ads") return GeometryCase::anti_de_sitter;
  if (s == "sphere") return GeometryCase::sphere;
  throw std::invalid_argument("unknown geometry case '" + s + "' (expected ds, ads or sphere)");
}

std::vector<Expr> coordinate_functions(int dim) {
  std::vector<Expr> y;
  y.reserve(dim);
  for (int k = 0; k < dim; ++k) y.push_back(Expr::variable(k));
  return y;
}

Geometry::Geometry(GeometryCase kind, int n, double H) : kind_(kind), n_(n), H_(H) {
  if (n < 1 || n + 1 > MetricField::max_dimension)
    throw std::invalid_argument("intrinsic dimension n must be in 1.." + std::to_string(MetricField::max_dimension - 1));
  if (!(H > 0.0) || !std::isfinite(H)) throw std::invalid_argument("curvature scale H must be positive");

  eta_diag_.assign(n + 1, -1.0);
  eta_diag_[0] = 1.0;
  switch (kind) {
    case GeometryCase::de_sitter:
      eta_diag_[n] = -1.0;
      sigma_ = -1;
      break;
    case GeometryCase::anti_de_sitter:
      eta_diag_[n] = 1.0;
      sigma_ = 1;
      break;
    case GeometryCase::sphere:
      eta_diag_.assign(n + 1, 1.0);
      sigma_ = 1;
      break;
  }
  metric_ = MetricField::diagonal(eta_diag_, Space::ambient);
  // The normal direction carries eta^{nn} = sigma, so the tangent block has sign sgn(eta)*sigma.
  sigma_metric_sign_ = metric_.det_sign() * sigma_;
  if (eta_nn() * ambient_sign() * sigma_sign() != 1)
    throw std::logic_error("signature bookkeeping violated: eta^nn sgn(eta) sgn(eta_Sigma) != 1");

  const int m = n + 1;
  auto y = coordinate_functions(m);
  std::vector<Expr> squares;
  for (int a = 0; a < m; ++a) squares.push_back(Expr{sigma_ * eta_diag_[a]} * pow(y[a], 2));
  Expr radius = sqrt(sum(std::move(squares)));
  radial_.h = pow(radius, -1);
  radial_.dilation = VectorField(y, Space::ambient);
  std::vector<Expr> en(m);
  for (int a = 0; a < m; ++a) en[a] = radial_.h * y[a];
  radial_.normal = VectorField(std::move(en), Space::ambient);
  radial_.conormal = exterior_derivative(Form::scalar(radius, m, Space::ambient));
}

double Geometry::constraint(std::span<const double> y) const {
  double s = 0.0;
  for (int a = 0; a <= n_; ++a) s += eta_diag_[a] * y[a] * y[a];
  return sigma_ * s;
}

SplitForm split(const Form& a, const Geometry& geo) {
  if (a.space() != Space::ambient || a.dim() != geo.dim()) throw FormError("split: expected an ambient form");
  const auto& r = geo.radial();
  if (a.degree() == 0) return {Form(0, a.dim(), a.space()), a};
  Form parallel = wedge(r.conormal, interior(r.normal, a));
  Form perp = a.degree() == a.dim() ? Form(a.degree(), a.dim(), a.space())
                                    : interior(r.normal, wedge(r.conormal, a));
  return {std::move(parallel), std::move(perp)};
}

FormValue transverse_part(const FormValue& a, const FormValue& conormal, const VectorValue& normal) {
  if (a.degree() == 0) return a;
  return a - wedge(conormal, interior(normal, a));
}

Form homogeneity_defect(const Form& a, double s, const Geometry& geo) {
  if (a.space() != Space::ambient || a.dim() != geo.dim())
    throw FormError("homogeneity_defect: expected an ambient form");
  return lie_derivative(geo.radial().dilation, a) - Expr{s} * a;
}

Form homogenize(const Form& seed, double s, const Geometry& geo) {
  if (seed.space() != Space::ambient || seed.dim() != geo.dim())
    throw FormError("homogenize: expected an ambient seed form");
  std::optional<int> k;
  for (const auto& c : seed.coefficients()) {
    if (c.is_zero()) continue;
    auto deg = homogeneous_degree(c);
    if (!deg) throw FormError("homogenize: seed coefficient is not a homogeneous polynomial: " + to_string(c));
    if (k && *k != *deg) throw FormError("homogenize: seed mixes polynomial degrees");
    k = deg;
  }
  const double exponent = k.value_or(0) + seed.degree() - s;
  const double rounded = std::round(exponent);
  if (std::abs(exponent - rounded) > 1e-12) throw FormError("homogenize: k + p - s must be an integer");
  const int r = static_cast<int>(rounded);
  // (h/H)^r = radius^{-r} H^{-r}
  const auto& radius = geo.radial().h.args()[0];
  Expr factor = Expr{std::pow(geo.H(), -r)} * pow(radius, -r);
  Form perp = split(seed, geo).perp;
  return perp.map([&](const Expr& c) { return factor * c; });
}

namespace {

Expr flat_box(const Expr& f, const Geometry& geo) {
  std::vector<Expr> terms;
  for (int a = 0; a < geo.dim(); ++a) {
    Expr d2 = differentiate(differentiate(f, a), a);
    if (!d2.is_zero()) terms.push_back(Expr{1.0 / geo.eta_diagonal()[a]} * d2);
  }
  return scalar::total(terms);
}

void require_ambient(const Form& a, int degree, const Geometry& geo, const char* op) {
  if (a.space() != Space::ambient || a.dim() != geo.dim() || a.degree() != degree)
    throw FormError(std::string(op) + ": expected an ambient " + std::to_string(degree) + "-form");
}

}  // namespace

Form example_scalar_box(const Form& phi, const Geometry& geo) {
  require_ambient(phi, 0, geo, "example_scalar_box");
  return Form::scalar(flat_box(phi.coefficients()[0], geo), geo.dim(), Space::ambient);
}

Form example_oneform_box(const Form& A, const Geometry& geo) {
  require_ambient(A, 1, geo, "example_oneform_box");
  const int m = geo.dim();
  auto comps = A.coefficients();
  std::vector<Expr> div_terms;
  for (int a = 0; a < m; ++a) {
    Expr da = differentiate(comps[a], a);
    if (!da.is_zero()) div_terms.push_back(Expr{1.0 / geo.eta_diagonal()[a]} * da);
  }
  Expr divergence = scalar::total(div_terms);
  Expr coupling = Expr{2.0 * geo.H() * geo.H()} * divergence;
  std::vector<Expr> out(m);
  for (int c = 0; c < m; ++c) {
    Expr y_lower = Expr{geo.eta_diagonal()[c]} * Expr::variable(c);
    out[c] = flat_box(comps[c], geo) + coupling * y_lower;
  }
  return one_form(std::move(out), Space::ambient);
}

OneFormConditions example_oneform_conditions(const Form& A, const Geometry& geo) {
  require_ambient(A, 1, geo, "example_oneform_conditions");
  const int m = geo.dim();
  auto comps = A.coefficients();
  std::vector<Expr> contraction;
  for (int a = 0; a < m; ++a) contraction.push_back(Expr::variable(a) * comps[a]);
  std::vector<Expr> homog(m);
  for (int a = 0; a < m; ++a) homog[a] = directional_derivative(geo.radial().dilation, comps[a]) + comps[a];
  return {Form::scalar(scalar::total(contraction), m, Space::ambient), one_form(std::move(homog), Space::ambient)};
}

}  // namespace adsforms
