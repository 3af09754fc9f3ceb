#include "adsforms/frame.hpp"

#include <algorithm>
#include <cmath>

#include "adsforms/random.hpp"

namespace adsforms {

namespace {

Expr eta_inner(const std::vector<double>& eta, std::span<const Expr> u, std::span<const Expr> v) {
  std::vector<Expr> terms;
  for (std::size_t A = 0; A < eta.size(); ++A)
    if (!u[A].is_zero() && !v[A].is_zero()) terms.push_back(Expr{eta[A]} * u[A] * v[A]);
  return scalar::total(terms);
}

std::vector<double> box_center(const GraphChart& chart) {
  std::vector<double> c;
  for (const auto& [lo, hi] : chart.box()) c.push_back(0.5 * (lo + hi));
  return c;
}

double h_at(const Geometry& geo, std::span<const double> y) { return 1.0 / std::sqrt(geo.constraint(y)); }

FormValue value_of(const Form& a, Evaluator& ev) { return evaluate(a, ev); }

}  // namespace

OrthoFrame build_frame(const GraphChart& chart) {
  const Geometry& geo = chart.geometry();
  const int n = chart.n();
  const int m = n + 1;
  const auto& eta = geo.eta_diagonal();
  const auto ref = box_center(chart);

  std::vector<std::vector<Expr>> tangent(n, std::vector<Expr>(m));
  std::vector<int> signature;
  for (int mu = 0; mu < n; ++mu) {
    std::vector<Expr> v(m);
    for (int A = 0; A < m; ++A) v[A] = chart.jacobian(A, mu);
    for (int nu = 0; nu < mu; ++nu) {
      Expr c = Expr{static_cast<double>(signature[nu])} * eta_inner(eta, v, tangent[nu]);
      if (c.is_zero()) continue;
      for (int A = 0; A < m; ++A) v[A] = v[A] - c * tangent[nu][A];
    }
    Expr norm2 = eta_inner(eta, v, v);
    const double at_ref = evaluate(norm2, ref);
    if (!(std::abs(at_ref) > 1e-12))
      throw FrameError("Gram-Schmidt step " + std::to_string(mu) + ": null or degenerate tangent vector at the reference point");
    const int s = at_ref > 0 ? 1 : -1;
    Expr inv_norm = pow(sqrt(Expr{static_cast<double>(s)} * norm2), -1);
    for (int A = 0; A < m; ++A) tangent[mu][A] = v[A] * inv_norm;
    signature.push_back(s);
  }
  // Upper-triangular Gram-Schmidt keeps the chart orientation; flip the last tangent to make the frame direct.
  if (chart.orientation() < 0)
    for (auto& c : tangent[n - 1]) c = -c;

  std::vector<Expr> normal(m);
  for (int A = 0; A < m; ++A) normal[A] = Expr{geo.H()} * chart.embedding()[A];
  signature.push_back(geo.eta_nn());

  // Push along rays: x^mu -> y^mu h / H.
  std::vector<Expr> ray(n);
  for (int mu = 0; mu < n; ++mu) ray[mu] = Expr::variable(mu) * geo.radial().h * Expr{1.0 / geo.H()};

  OrthoFrame frame{chart, {}, {}, signature};
  auto extend = [&](const std::vector<Expr>& comps) {
    std::vector<Expr> out(m);
    for (int A = 0; A < m; ++A) out[A] = substitute(comps[A], ray);
    return out;
  };
  for (int mu = 0; mu < n; ++mu) frame.vectors.emplace_back(extend(tangent[mu]), Space::ambient);
  frame.vectors.emplace_back(extend(normal), Space::ambient);
  for (int A = 0; A < m; ++A) {
    std::vector<Expr> lower(m);
    for (int B = 0; B < m; ++B) lower[B] = Expr{signature[A] * eta[B]} * frame.vectors[A][B];
    frame.coframe.push_back(one_form(std::move(lower), Space::ambient));
  }
  return frame;
}

std::vector<double> holonomic_coefficients_at(const OrthoFrame& frame, std::span<const double> y) {
  const int m = static_cast<int>(frame.vectors.size());
  Evaluator ev(y);
  std::vector<double> e(m * m), de(m * m * m), co(m * m);
  for (int A = 0; A < m; ++A)
    for (int C = 0; C < m; ++C) {
      e[A * m + C] = ev(frame.vectors[A][C]);
      co[A * m + C] = ev(frame.coframe[A].coefficients()[C]);
      for (int D = 0; D < m; ++D) de[(A * m + C) * m + D] = ev(differentiate(frame.vectors[A][C], D));
    }
  std::vector<double> c(m * m * m, 0.0);
  std::vector<double> bracket(m);
  for (int A = 0; A < m; ++A)
    for (int B = 0; B < m; ++B) {
      for (int C = 0; C < m; ++C) {
        double ab = 0.0, ba = 0.0;
        for (int D = 0; D < m; ++D) {
          ab += e[A * m + D] * de[(B * m + C) * m + D];
          ba += e[B * m + D] * de[(A * m + C) * m + D];
        }
        bracket[C] = ab - ba;
      }
      for (int C = 0; C < m; ++C) {
        double s = 0.0;
        for (int D = 0; D < m; ++D) s += co[C * m + D] * bracket[D];
        c[(C * m + A) * m + B] = s;
      }
    }
  return c;
}

std::vector<ResidualReport> holonomic_coeffs(const OrthoFrame& frame, std::span<const SigmaPoint> points,
                                             std::span<const std::vector<double>> off_points, Tolerance tol) {
  const Geometry& geo = frame.chart.geometry();
  const int n = geo.n();
  const int m = n + 1;
  ResidualAccumulator normal("holonomic_normal", tol);
  ResidualAccumulator mixed("holonomic_mixed", tol);
  ResidualAccumulator antisym("holonomic_antisymmetry", tol);
  auto visit = [&](std::span<const double> y) {
    auto c = holonomic_coefficients_at(frame, y);
    const double h = h_at(geo, y);
    double scale = h;
    for (double v : c) scale = std::max(scale, std::abs(v));
    auto at = [&](int C, int A, int B) { return c[(C * m + A) * m + B]; };
    for (int A = 0; A < m; ++A)
      for (int B = 0; B < m; ++B) {
        std::string ab = std::to_string(A) + "," + std::to_string(B);
        normal.vanish("c^n_" + ab, at(n, A, B), scale);
        for (int C = 0; C < m; ++C) antisym.vanish("c^" + std::to_string(C) + "_" + ab, at(C, A, B) + at(C, B, A), scale);
      }
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        mixed.vanish("c^" + std::to_string(mu) + "_" + std::to_string(nu) + ",n",
                     at(mu, nu, n) - (mu == nu ? h : 0.0), scale);
    normal.next_point();
    mixed.next_point();
    antisym.next_point();
  };
  for (const auto& pt : points) visit(pt.y);
  for (const auto& y : off_points) visit(y);
  std::vector<ResidualReport> out{normal.finish(), mixed.finish(), antisym.finish()};
  for (auto& r : out) {
    r.geometry = to_string(geo.kind());
    r.n = n;
  }
  return out;
}

std::vector<ResidualReport> frame_invariants(const OrthoFrame& frame, std::span<const SigmaPoint> points,
                                             std::span<const std::vector<double>> off_points, Tolerance tol) {
  const Geometry& geo = frame.chart.geometry();
  const int n = geo.n();
  const int m = n + 1;
  const auto& eta = geo.eta_diagonal();
  const auto& radial = geo.radial();
  ResidualAccumulator ortho("frame_orthonormality", tol);
  ResidualAccumulator normal("frame_normal", tol);
  ResidualAccumulator degree0("frame_degree_zero", tol);
  ResidualAccumulator dilation("frame_vector_dilation", tol);

  std::vector<std::vector<Expr>> homog(m, std::vector<Expr>(m));
  for (int A = 0; A < m; ++A)
    for (int C = 0; C < m; ++C) homog[A][C] = directional_derivative(radial.dilation, frame.vectors[A][C]);

  auto visit = [&](std::span<const double> y) {
    Evaluator ev(y);
    std::vector<VectorValue> e;
    for (const auto& v : frame.vectors) e.push_back(evaluate(v, ev));
    for (int A = 0; A < m; ++A)
      for (int B = A; B < m; ++B) {
        double g = 0.0;
        for (int C = 0; C < m; ++C) g += eta[C] * e[A][C] * e[B][C];
        ortho.vanish("eta(e" + std::to_string(A) + ",e" + std::to_string(B) + ")",
                     g - (A == B ? frame.signature[A] : 0), 1.0);
      }
    VectorValue hd = evaluate(radial.normal, ev);
    double scale = 0.0;
    for (int C = 0; C < m; ++C) scale = std::max({scale, std::abs(hd[C]), std::abs(e[n][C])});
    for (int C = 0; C < m; ++C) normal.vanish("e_n^" + std::to_string(C), e[n][C] - hd[C], scale);
    // [D, e_A]^C = D(e_A^C) - e_A^C
    for (int A = 0; A < m; ++A) {
      double s = 0.0;
      for (int C = 0; C < m; ++C) s = std::max(s, std::abs(e[A][C]));
      for (int C = 0; C < m; ++C) {
        const double d = ev(homog[A][C]);
        std::string label = "e" + std::to_string(A) + "^" + std::to_string(C);
        degree0.vanish(label, d, s);
        double bracket = 0.0;
        for (int B = 0; B < m; ++B) bracket += y[B] * ev(differentiate(frame.vectors[A][C], B));
        bracket -= e[A][C];
        dilation.vanish(label, bracket + e[A][C], s);
      }
    }
    ortho.next_point();
    normal.next_point();
    degree0.next_point();
    dilation.next_point();
  };
  for (const auto& pt : points) visit(pt.y);
  for (const auto& y : off_points) visit(y);
  std::vector<ResidualReport> out{ortho.finish(), normal.finish(), degree0.finish(), dilation.finish()};
  for (auto& r : out) {
    r.geometry = to_string(geo.kind());
    r.n = n;
  }
  return out;
}

namespace {

std::vector<MultiIndex> choose_subsets(Rng& rng, int n, int t, int count) {
  auto all = basis_indices(n, t);
  if (static_cast<int>(all.size()) <= count) return all;
  std::vector<MultiIndex> out;
  while (static_cast<int>(out.size()) < count) {
    MultiIndex pick = all[rng.below(static_cast<int>(all.size()))];
    if (std::find(out.begin(), out.end(), pick) == out.end()) out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double sign_pow(int k) { return k % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

std::vector<ResidualReport> verify_basis_properties(const OrthoFrame& frame, std::span<const SigmaPoint> points,
                                                    std::span<const std::vector<double>> off_points,
                                                    const BasisCheckOptions& options) {
  const GraphChart& chart = frame.chart;
  const Geometry& geo = chart.geometry();
  const MetricField& eta = geo.metric();
  const int n = geo.n();
  const int m = n + 1;
  const double H = geo.H();
  const double eta_nn = geo.eta_nn();
  const auto& radial = geo.radial();
  const Form& en = radial.conormal;
  Rng rng(options.seed);

  std::vector<ResidualReport> reports;
  for (int t = 0; t < n; ++t) {
    ResidualAccumulator p1("prop1_exterior", options.tol), p2("prop2_star", options.tol),
        p3("prop3_codifferential", options.tol), p4("prop4_codifferential_normal", options.tol),
        remark("prop4_remark_ambient", options.tol), p5("prop5_star_normal", options.tol),
        p6("prop6_codifferential_transverse", options.tol), p7("prop7_lie_normal", options.tol),
        p8("prop8_contraction", options.tol);

    for (MultiIndex subset : choose_subsets(rng, n, t, options.monomials_per_degree)) {
      Form monomial = Form::scalar(Expr{1.0}, m, Space::ambient);
      for (int mu : subset.indices()) monomial = wedge(monomial, frame.coframe[mu]);
      Expr phi = random_polynomial(rng, m, 2, 3);
      Expr psi = random_polynomial(rng, m, 2, 3);
      const Form psi_form = Form::scalar(psi, m, Space::ambient);
      const Form dpsi = exterior_derivative(psi_form);
      const Form dpsi_sigma = intrinsic_d(pullback(psi_form, chart), chart);
      const Expr en_psi = directional_derivative(radial.normal, psi);

      for (int weighted = 0; weighted < 2; ++weighted) {
        const Form tau = weighted ? phi * monomial : monomial;
        const Form tau_n = wedge(tau, en);
        const Form tau_sigma = pullback(tau, chart);
        const bool constant = !weighted;

        const Form star_n = hodge_star(tau_n, eta);
        const Form star = hodge_star(tau, eta);
        const Form star_sigma = intrinsic_star(tau_sigma, chart);
        const Form in_star_n = interior(radial.normal, star_n);
        const Form contr = interior_oneform(dpsi, tau, eta);
        const Form contr_sigma = interior_oneform(dpsi_sigma, tau_sigma, chart.metric());
        const Form r8 = interior_oneform(dpsi, tau_n, eta) - Expr{sign_pow(t) * eta_nn} * (en_psi * tau);
        const Form in_r8 = interior(radial.normal, r8);

        Form d_tau, r1, d_tau_n, in_d_tau_n, d_sigma, delta_tau, delta_tau_n, delta_sigma, r_remark, in_remark,
            in_delta, lie_r, lie_r_n, in_r1;
        if (constant) {
          d_tau = exterior_derivative(tau);
          r1 = d_tau - Expr{sign_pow(t) * t} * (radial.h * wedge(tau, en));
          in_r1 = interior(radial.normal, r1);
          d_tau_n = exterior_derivative(tau_n);
          in_d_tau_n = interior(radial.normal, d_tau_n);
          d_sigma = intrinsic_d(tau_sigma, chart);
          delta_tau = codifferential(tau, eta);
          delta_tau_n = codifferential(tau_n, eta);
          delta_sigma = intrinsic_delta(tau_sigma, chart);
          r_remark = delta_tau_n - Expr{sign_pow(t + 1) * eta_nn * (n - t)} * (radial.h * tau);
          in_remark = interior(radial.normal, r_remark);
          in_delta = interior(radial.normal, delta_tau);
          lie_r = lie_derivative(radial.normal, tau) - Expr{static_cast<double>(t)} * (radial.h * tau);
          lie_r_n = lie_derivative(radial.normal, tau_n) - Expr{static_cast<double>(t)} * (radial.h * tau_n);
        }

        auto ambient_checks = [&](Evaluator& ea, const VectorValue& nv, const FormValue& env) {
          auto perp = [&](const FormValue& v) { return transverse_part(v, env, nv); };
          p5.vanish(value_of(in_star_n, ea), max_abs(value_of(star_n, ea)), "i_n*");
          const FormValue r8v = value_of(r8, ea);
          p8.vanish(perp(r8v), std::max(max_abs(r8v), max_abs(value_of(tau, ea))), "perp");
          if (!constant) return;
          const FormValue r1v = value_of(r1, ea);
          p1.vanish(value_of(in_r1, ea), std::max(max_abs(value_of(d_tau, ea)), max_abs(r1v)), "i_n");
          const FormValue dtn = value_of(d_tau_n, ea);
          p1.vanish(perp(dtn), max_abs(dtn), "perp");
          const FormValue rr = value_of(r_remark, ea);
          remark.vanish(perp(rr), std::max(max_abs(value_of(delta_tau_n, ea)), max_abs(rr)), "perp");
          p6.vanish(value_of(in_delta, ea), max_abs(value_of(delta_tau, ea)), "i_n delta");
          const FormValue ht = value_of(radial.h * tau, ea);
          p7.vanish(value_of(lie_r, ea), t * max_abs(ht), "tau");
          p7.vanish(value_of(lie_r_n, ea), t * max_abs(ht), "tau^e_n");
        };
        auto all_next = [&] {
          for (auto* acc : {&p1, &p2, &p3, &p4, &remark, &p5, &p6, &p7, &p8}) acc->next_point();
        };

        for (const auto& pt : points) {
          Evaluator ea(pt.y), ec(pt.x);
          const Eigen::MatrixXd J = chart.jacobian_at(pt);
          auto pb = [&](const Form& a) { return pullback_at(value_of(a, ea), J); };
          const VectorValue nv = evaluate(radial.normal, ea);
          const FormValue env = value_of(en, ea);
          ambient_checks(ea, nv, env);

          const FormValue star_sigma_v = value_of(star_sigma, ec);
          p2.compare(pb(star_n), (eta_nn * sign_pow(n - t)) * star_sigma_v, {}, "tau^e_n");
          p2.vanish(pb(star), max_abs(value_of(star, ea)), "tau");
          const FormValue contr_sigma_v = value_of(contr_sigma, ec);
          p8.compare(pb(contr), contr_sigma_v, {}, "tau");
          p8.compare(sign_pow(t - 1) * pb(in_r8), contr_sigma_v, {}, "tau^e_n");
          if (constant) {
            const FormValue d_sigma_v = value_of(d_sigma, ec);
            p1.compare(pb(d_tau), d_sigma_v, {}, "m*d");
            p1.compare(sign_pow(t + 1) * pb(in_d_tau_n), d_sigma_v, {}, "i_n d(tau^e_n)");
            const FormValue delta_sigma_v = value_of(delta_sigma, ec);
            p3.compare(pb(delta_tau), delta_sigma_v);
            p4.compare(pb(delta_tau_n), (sign_pow(t + 1) * eta_nn * H * (n - t)) * value_of(tau_sigma, ec));
            remark.compare(sign_pow(t - 1) * pb(in_remark), delta_sigma_v, {}, "i_n");
          }
          all_next();
        }
        for (const auto& y : off_points) {
          Evaluator ea(y);
          ambient_checks(ea, evaluate(radial.normal, ea), value_of(en, ea));
          all_next();
        }
      }
    }
    for (auto* acc : {&p1, &p2, &p3, &p4, &remark, &p5, &p6, &p7, &p8}) {
      ResidualReport r = acc->finish();
      r.geometry = to_string(geo.kind());
      r.n = n;
      r.degree = t;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

}  // namespace adsforms
