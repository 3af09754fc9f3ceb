#include <doctest.h>

#include <cmath>

#include "adsforms/random.hpp"
#include "geometry_fixtures.hpp"

using namespace adsforms;
using namespace adsforms::testing;

namespace {

Form coordinate_oneform(int k, int dim) {
  const std::vector<int> idx{k};
  return Form::basis(MultiIndex::from_sorted(idx), dim, Space::ambient);
}

}  // namespace

TEST_CASE("geometry: metric signature and sign bookkeeping") {
  const Geometry ds(GeometryCase::de_sitter, 3, 1.0);
  CHECK(ds.eta_diagonal() == std::vector<double>{1, -1, -1, -1});
  CHECK(ds.sigma() == -1);
  CHECK(ds.eta_nn() == -1);
  CHECK(ds.ambient_sign() == -1);
  CHECK(ds.sigma_sign() == 1);

  const Geometry ads(GeometryCase::anti_de_sitter, 3, 1.0);
  CHECK(ads.eta_diagonal() == std::vector<double>{1, -1, -1, 1});
  CHECK(ads.sigma() == 1);
  CHECK(ads.ambient_sign() == 1);
  CHECK(ads.sigma_sign() == 1);

  const Geometry sphere(GeometryCase::sphere, 2, 2.0);
  CHECK(sphere.eta_diagonal() == std::vector<double>{1, 1, 1});
  CHECK(sphere.eta_nn() == 1);

  for (auto c : kAllCases)
    for (int n = 1; n <= 4; ++n) {
      const Geometry g(c, n, 1.0);
      CHECK(g.eta_nn() * g.ambient_sign() * g.sigma_sign() == 1);
    }
  CHECK_THROWS(Geometry(GeometryCase::sphere, 2, 0.0));
  CHECK_THROWS(Geometry(GeometryCase::sphere, 5, 1.0));
  CHECK(geometry_case_from_string("ads") == GeometryCase::anti_de_sitter);
  CHECK_THROWS(geometry_case_from_string("flrw"));
}

TEST_CASE("radial data: normalization, closedness and h on the hypersurface") {
  for (auto c : kAllCases)
    for (double H : {1.0, 0.5}) {
      const Geometry geo(c, 3, H);
      const GraphChart chart(geo);
      const auto& r = geo.radial();
      const auto on = sigma_points(chart, 20, 1);
      const auto off = sample_off_sigma(chart, 20, 2);
      CHECK(max_value(exterior_derivative(r.conormal), off) <= 1e-12);
      for (const auto* pts : {&on, &off})
        for (const auto& y : *pts) {
          Evaluator ev(y);
          const double pairing = ev(interior(r.normal, r.conormal)[MultiIndex{}]);
          CHECK(std::abs(pairing - 1.0) <= 1e-10);
          CHECK(std::abs(std::abs(ev(inner(r.normal, r.normal, geo.metric()))) - 1.0) <= 1e-10);
          CHECK(ev(inner(r.normal, r.normal, geo.metric())) == doctest::Approx(geo.eta_nn()).epsilon(1e-10));
        }
      for (const auto& y : on) CHECK(std::abs(evaluate(r.h, y) - H) <= 1e-10 * H);
    }
}

TEST_CASE("split: examples") {
  const Geometry geo(GeometryCase::de_sitter, 3, 1.0);
  const GraphChart chart(geo);
  const auto pts = sigma_points(chart, 10, 4);
  const Form en = geo.radial().conormal;
  const SplitForm s = split(en, geo);
  CHECK(max_residual(s.parallel, en, pts) <= 1e-12);
  CHECK(max_value(s.perp, pts) <= 1e-12);

  // A transverse form is its own perpendicular part.
  Rng rng(3);
  const Form t = split(random_form(rng, 2, 4, Space::ambient), geo).perp;
  const SplitForm st = split(t, geo);
  CHECK(max_value(st.parallel, pts) <= 1e-12 * std::max(1.0, max_value(t, pts)));
  CHECK(max_residual(st.perp, t, pts) <= 1e-12 * std::max(1.0, max_value(t, pts)));
}

TEST_CASE("split: complementary and idempotent in every geometry and degree") {
  Rng rng(10);
  for (auto c : kAllCases)
    for (int n : {2, 3}) {
      const Geometry geo(c, n, 1.0);
      const GraphChart chart(geo);
      auto pts = sigma_points(chart, 20, 5);
      for (auto& y : sample_off_sigma(chart, 10, 6)) pts.push_back(y);
      const auto& r = geo.radial();
      for (int p = 0; p <= n + 1; ++p) {
        const Form a = random_form(rng, p, n + 1, Space::ambient);
        const SplitForm s = split(a, geo);
        const double scale = std::max(1.0, max_value(a, pts));
        INFO(to_string(c) << " n=" << n << " p=" << p);
        CHECK(max_residual(s.parallel + s.perp, a, pts) <= 1e-10 * scale);
        CHECK(max_value(interior(r.normal, s.perp), pts) <= 1e-10 * scale);
        if (p <= n) CHECK(max_value(wedge(r.conormal, s.parallel), pts) <= 1e-10 * scale);
        const SplitForm again = split(s.perp, geo);
        CHECK(max_residual(again.perp, s.perp, pts) <= 1e-10 * scale);
        CHECK(max_value(again.parallel, pts) <= 1e-10 * scale);
        const SplitForm par = split(s.parallel, geo);
        CHECK(max_residual(par.parallel, s.parallel, pts) <= 1e-10 * scale);
      }
    }
}

TEST_CASE("homogeneity_defect: constants, coordinate forms and Cartan expansion") {
  const Geometry geo(GeometryCase::de_sitter, 2, 1.0);
  const std::vector<double> y{0.3, 0.9, -0.4};
  CHECK(max_abs(evaluate(homogeneity_defect(Form::scalar(Expr(2.0), 3, Space::ambient), 0.0, geo), y)) == 0.0);
  CHECK(max_abs(evaluate(homogeneity_defect(coordinate_oneform(0, 3), 1.0, geo), y)) == 0.0);
  const Form a = Expr::variable(0) * coordinate_oneform(1, 3);
  CHECK(max_abs(evaluate(homogeneity_defect(a, 2.0, geo), y)) <= 1e-15);
  CHECK(max_abs(evaluate(homogeneity_defect(a, 1.0, geo), y)) > 0.1);
}

TEST_CASE("homogenize: examples") {
  const Geometry sphere(GeometryCase::sphere, 2, 1.0);
  const GraphChart chart(sphere);
  const auto pts = sigma_points(chart, 10, 7);
  const auto off = sample_off_sigma(chart, 10, 8);

  const Form one = homogenize(Form::scalar(Expr(1.0), 3, Space::ambient), 0.0, sphere);
  CHECK(max_residual(one, Form::scalar(Expr(1.0), 3, Space::ambient), off) <= 1e-14);

  // y0 -> y0 h, a 0-homogeneous function
  const Form phi = homogenize(Form::scalar(Expr::variable(0), 3, Space::ambient), 0.0, sphere);
  const Form expected = Form::scalar(Expr::variable(0) * sphere.radial().h, 3, Space::ambient);
  CHECK(max_residual(phi, expected, off) <= 1e-14);
  CHECK(max_value(homogeneity_defect(phi, 0.0, sphere), off) <= 1e-12);

  const Geometry ds(GeometryCase::de_sitter, 3, 1.0);
  const GraphChart ds_chart(ds);
  const auto ds_off = sample_off_sigma(ds_chart, 20, 9);
  const Form b = homogenize(coordinate_oneform(0, 4), 0.0, ds);
  CHECK(max_value(homogeneity_defect(b, 0.0, ds), ds_off) <= 1e-9);
  CHECK(max_value(interior(ds.radial().normal, b), ds_off) <= 1e-9);
}

TEST_CASE("homogenize: transverse and s-homogeneous for s in -2..2 and p in 0..n") {
  Rng rng(31);
  for (auto c : kAllCases) {
    const Geometry geo(c, 3, 1.3);
    const GraphChart chart(geo);
    auto pts = sample_off_sigma(chart, 10, 3);
    for (auto& y : sigma_points(chart, 5, 4)) pts.push_back(y);
    for (int s = -2; s <= 2; ++s)
      for (int p = 0; p <= 3; ++p) {
        const Form seed = random_homogeneous_form(rng, p, 4, Space::ambient, 1 + rng.below(2));
        const Form b = homogenize(seed, s, geo);
        const double scale = std::max(1.0, max_value(b, pts));
        INFO(to_string(c) << " s=" << s << " p=" << p);
        CHECK(max_value(homogeneity_defect(b, s, geo), pts) <= 1e-9 * scale);
        CHECK(max_value(interior(geo.radial().normal, b), pts) <= 1e-9 * scale);
      }
  }
}

TEST_CASE("homogenize rejects mixed-degree and non-polynomial seeds") {
  const Geometry geo(GeometryCase::anti_de_sitter, 2, 1.0);
  const Expr y0 = Expr::variable(0);
  CHECK_THROWS_AS(homogenize(Form::scalar(y0 + y0 * y0, 3, Space::ambient), 0.0, geo), FormError);
  CHECK_THROWS_AS(homogenize(Form::scalar(sqrt(1.0 + y0 * y0), 3, Space::ambient), 0.0, geo), FormError);
  CHECK_THROWS_AS(homogenize(Form::scalar(y0, 3, Space::ambient), 0.5, geo), FormError);
}

TEST_CASE("example_scalar_box") {
  const Geometry geo(GeometryCase::sphere, 2, 1.0);
  const GraphChart chart(geo);
  const auto pts = sigma_points(chart, 20, 11);
  CHECK(example_scalar_box(Form::scalar(Expr(1.0), 3, Space::ambient), geo).is_zero());
  // l = 1 spherical harmonic: box(y0 h) = -2 y0 on the unit sphere
  const Form phi = Form::scalar(Expr::variable(0) * geo.radial().h, 3, Space::ambient);
  const Form box = example_scalar_box(phi, geo);
  for (const auto& y : pts) CHECK(std::abs(evaluate(box, y)[MultiIndex{}] + 2.0 * y[0]) <= 1e-12);

  // Flat operator agrees with the Laplace-de Rham operator of eta on scalars.
  const Geometry ds(GeometryCase::de_sitter, 3, 1.0);
  const GraphChart ds_chart(ds);
  Rng rng(12);
  const Form f = homogenize(random_homogeneous_form(rng, 0, 4, Space::ambient, 2), 0.0, ds);
  const auto ds_pts = sigma_points(ds_chart, 10, 13);
  const Form lhs = example_scalar_box(f, ds);
  CHECK(max_residual(lhs, laplace_de_rham(f, ds.metric()), ds_pts) <= 1e-8 * std::max(1.0, max_value(lhs, ds_pts)));
}

TEST_CASE("example_oneform_box") {
  const Geometry geo(GeometryCase::anti_de_sitter, 2, 1.0);
  CHECK(example_oneform_box(Form(1, 3, Space::ambient), geo).is_zero());

  // Divergence-free field: the y_beta coupling drops out.
  const Expr y0 = Expr::variable(0), y1 = Expr::variable(1), y2 = Expr::variable(2);
  const Form A = one_form<Expr>({y1 * y2, y0 * y2, y0 * y1}, Space::ambient);
  const std::vector<double> y{0.4, 0.2, 1.3};
  const FormValue box = evaluate(example_oneform_box(A, geo), y);
  CHECK(max_abs(box) == 0.0);

  const Form B = one_form<Expr>({y0 * y0, Expr{}, Expr{}}, Space::ambient);
  // eta^{ab} d_a d_b (y0^2) = 2 and divergence 2 y0, so the coupling adds 2 H^2 (2 y0) y_c
  const FormValue bb = evaluate(example_oneform_box(B, geo), y);
  CHECK(bb[MultiIndex{0b001}] == doctest::Approx(2.0 + 4.0 * y[0] * y[0]));
  CHECK(bb[MultiIndex{0b010}] == doctest::Approx(4.0 * y[0] * -y[1]));
  CHECK(bb[MultiIndex{0b100}] == doctest::Approx(4.0 * y[0] * y[2]));

  // Conditions vanish on a transverse 0-homogeneous field.
  const GraphChart chart(geo);
  const Form T = homogenize(one_form<Expr>({Expr(1.0), Expr{}, Expr{}}, Space::ambient), 0.0, geo);
  const auto cond = example_oneform_conditions(T, geo);
  const auto pts = sample_off_sigma(chart, 10, 14);
  CHECK(max_value(cond.contraction, pts) <= 1e-12);
  CHECK(max_value(cond.homogeneity, pts) <= 1e-12);
}
