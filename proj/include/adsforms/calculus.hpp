#pragma once

#include "adsforms/form.hpp"
#include "adsforms/metric.hpp"

namespace adsforms {

// Metric-aware exterior algebra and differential operators on forms with
// ScalarExpr coefficients. All operators are exact up to evaluation rounding.

/// g(u, v).
Expr inner(const VectorField& u, const VectorField& v, const MetricField& g);

/// Index lowering: (flat v)_a = g_ab v^b.
Form flat(const VectorField& v, const MetricField& g);
/// Index raising of a 1-form: (sharp l)^a = g^ab l_b.
VectorField sharp(const Form& lambda, const MetricField& g);

/// Creator j_v a = (flat v) ^ a.
Form creator(const VectorField& v, const Form& a, const MetricField& g);
/// lambda contracted into a: i_{sharp lambda} a.
Form interior_oneform(const Form& lambda, const Form& a, const MetricField& g);

Form exterior_derivative(const Form& a);

/// Hodge star with volume form orientation * sqrt|det g| dy^0 ^ ... ^ dy^{m-1}.
Form hodge_star(const Form& a, const MetricField& g, int orientation = 1);
/// Inverse Hodge star, from the double-star sign law.
Form hodge_star_inverse(const Form& a, const MetricField& g, int orientation = 1);

/// delta a = (-1)^p *^{-1} d * a; zero on 0-forms.
Form codifferential(const Form& a, const MetricField& g, int orientation = 1);

/// Laplace-de Rham operator -(d delta + delta d).
Form laplace_de_rham(const Form& a, const MetricField& g, int orientation = 1);

/// Cartan formula: L_v a = i_v d a + d i_v a.
Form lie_derivative(const VectorField& v, const Form& a);

/// Directional derivative v(f) = v^k d_k f.
Expr directional_derivative(const VectorField& v, const Expr& f);

/// Sign of ** on p-forms: sgn(g) (-1)^{p(m-p)}.
int double_star_sign(int p, int dim, int det_sign);

}  // namespace adsforms
