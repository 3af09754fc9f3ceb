#pragma once

// Random-form sweep over the metric-dependent algebra identities. Shared by the
// forms unit tests and the acceptance suite.

#include <map>
#include <string>
#include <vector>

#include "adsforms/calculus.hpp"
#include "adsforms/random.hpp"
#include "adsforms/residual.hpp"

namespace adsforms::testing {

struct CoreAlgebraCase {
  std::string label;
  MetricField metric;
  std::vector<std::vector<double>> points;
};

/// Worst normalized residual per identity.
using CoreAlgebraResult = std::map<std::string, ResidualReport>;

inline VectorField random_vector_field(Rng& rng, int dim, Space space) {
  std::vector<Expr> c;
  for (int k = 0; k < dim; ++k) c.push_back(random_polynomial(rng, dim, 2, 2));
  return {std::move(c), space};
}

inline CoreAlgebraResult run_core_algebra(const CoreAlgebraCase& c, int forms_per_degree, std::uint64_t seed,
                                          Tolerance tol = {1e-9, 1e-11}) {
  const MetricField& g = c.metric;
  const int m = g.dim();
  const Space space = g.space();
  std::map<std::string, ResidualAccumulator> acc;
  auto get = [&](const std::string& id) -> ResidualAccumulator& {
    return acc.try_emplace(id, id, tol).first->second;
  };
  Rng rng(seed);
  for (int p = 0; p <= m; ++p) {
    for (int f = 0; f < forms_per_degree; ++f) {
      const Form a = random_form(rng, p, m, space, 2, 2);
      const Expr phi = random_polynomial(rng, m, 2, 2);
      const VectorField u = random_vector_field(rng, m, space);
      const VectorField v = random_vector_field(rng, m, space);
      const double sign_p = p % 2 ? -1.0 : 1.0;

      const Form da = exterior_derivative(a);
      const Form dda = exterior_derivative(da);
      const Form delta_a = codifferential(a, g);
      const Form delta_delta_a = codifferential(delta_a, g);
      const Form star_a = hodge_star(a, g);
      const Form star_star_a = hodge_star(star_a, g);
      const Form star_inv_star_a = hodge_star_inverse(star_a, g);
      // i_u of a 0-form is the zero 0-form by convention, so j_v i_u a drops out there.
      Form pair_lhs = p < m ? interior(u, creator(v, a, g)) : Form(p, m, space);
      if (p > 0) pair_lhs = pair_lhs + creator(v, interior(u, a), g);
      const Expr uv = inner(u, v, g);
      const Form star_iv = hodge_star(interior(v, a), g);
      const Form jv_star = creator(v, star_a, g);
      const Form star_jv = p < m ? hodge_star(creator(v, a, g), g) : Form{};
      const Form iv_star = interior(v, star_a);
      const Form scalar_phi = Form::scalar(phi, m, space);
      const Form lemma_lhs = codifferential(wedge(scalar_phi, a), g);
      const Form lemma_rhs_delta = p > 0 ? phi * delta_a : Form(0, m, space);
      const Form lemma_rhs_contr = interior_oneform(exterior_derivative(scalar_phi), a, g);
      const double ss = double_star_sign(p, m, g.det_sign());

      for (const auto& pt : c.points) {
        Evaluator ev(pt);
        const FormValue av = evaluate(a, ev);
        const double sa = max_abs(av);
        get("d_squared").vanish(evaluate(dda, ev), std::max(sa, max_abs(evaluate(da, ev))));
        get("d_squared").next_point();
        if (p >= 1) {
          get("delta_squared").vanish(evaluate(delta_delta_a, ev), std::max(sa, max_abs(evaluate(delta_a, ev))));
          get("delta_squared").next_point();
        }
        get("double_star").compare(evaluate(star_star_a, ev), ss * av);
        get("double_star").next_point();
        get("star_inverse").compare(evaluate(star_inv_star_a, ev), av);
        get("star_inverse").next_point();
        get("pairing").compare(evaluate(pair_lhs, ev), ev(uv) * av);
        get("pairing").next_point();
        if (p >= 1) {
          get("star_interior").compare(evaluate(star_iv, ev), -sign_p * evaluate(jv_star, ev));
          get("star_interior").next_point();
        }
        if (p < m) {
          get("star_creator").compare(evaluate(star_jv, ev), sign_p * evaluate(iv_star, ev));
          get("star_creator").next_point();
        }
        if (p >= 1) {
          const FormValue r1 = evaluate(lemma_rhs_delta, ev);
          const FormValue r2 = evaluate(lemma_rhs_contr, ev);
          get("key_lemma").compare(evaluate(lemma_lhs, ev), r1 - r2, {max_abs(r1), max_abs(r2)});
          get("key_lemma").next_point();
        }
      }
    }
  }
  CoreAlgebraResult out;
  for (auto& [id, a] : acc) {
    ResidualReport r = a.finish();
    r.geometry = c.label;
    r.n = m;
    out.emplace(id, std::move(r));
  }
  return out;
}

}  // namespace adsforms::testing
