#include <doctest.h>

#include <cmath>

#include "adsforms/random.hpp"
#include "geometry_fixtures.hpp"
#include "mutation_probe.hpp"

using namespace adsforms;
using namespace adsforms::testing;

namespace {

struct Case {
  GraphChart chart;
  std::vector<SigmaPoint> points;
  std::vector<std::vector<double>> off;

  Case(GeometryCase c, int n, double H = 1.0, int count = 10)
      : chart(Geometry(c, n, H)), points(sample_points(chart, count, 3)), off(sample_off_sigma(chart, count, 4)) {}
  TheoremContext ctx(Mutation m = Mutation::none) const { return {chart, points, off, Tolerance{}, m}; }
};

void check_pass(const ResidualReport& r) {
  INFO(r.identity << " " << r.geometry << " n=" << r.n << " p=" << r.degree << " residual " << r.max_residual
                  << (r.error.empty() ? "" : " error: " + r.error));
  CHECK(r.pass);
  CHECK(r.points > 0);
  CHECK(r.max_residual <= r.tolerance);
}

}  // namespace

TEST_CASE("Eq. 2 on the conormal: both sides equal -eta^nn H n") {
  const Case c(GeometryCase::de_sitter, 3);
  const Geometry& geo = c.chart.geometry();
  const Form en = geo.radial().conormal;
  check_pass(th1_delta_residual(en, c.ctx()));
  const Form lhs = pullback(codifferential(en, geo.metric()), c.chart);
  for (const auto& p : c.points) CHECK(std::abs(evaluate(lhs, p.x)[MultiIndex{}] + geo.eta_nn() * 1.0 * 3) <= 1e-9);
}

TEST_CASE("Eq. 2: random 2-form in dS n=3, and the -2 variant fails") {
  const Case c(GeometryCase::de_sitter, 3);
  const Form a = suite_random_form(1, 2, 4);
  check_pass(th1_delta_residual(a, c.ctx()));
  const auto minus = th1_delta_residual(a, c.ctx(), Eq2Coefficient::minus_two);
  CHECK(minus.identity == "eq2_variant_minus_two");
  CHECK_FALSE(minus.pass);
}

TEST_CASE("Eq. 2 on transverse 0-homogeneous forms agrees with Eq. 4") {
  const Case c(GeometryCase::anti_de_sitter, 3);
  const Form beta = homogenize(suite_random_seed(2, 2, 4), 0.0, c.chart.geometry());
  check_pass(th1_delta_residual(beta, c.ctx()));
  for (const auto& r : th2_delta_residual(suite_random_seed(2, 2, 4), 0.0, c.ctx())) check_pass(r);
}

TEST_CASE("Eq. 3: constants, a random AdS one-form, and the scalar example") {
  const Case c(GeometryCase::anti_de_sitter, 3);
  const auto zero = th1_box_residual(Form::scalar(Expr(1.0), 4, Space::ambient), c.ctx());
  check_pass(zero);
  CHECK(zero.max_abs == 0.0);
  check_pass(th1_box_residual(suite_random_form(3, 1, 4), c.ctx()));

  // On a 0-homogeneous transverse scalar the normal terms vanish: box_Sigma phi = flat box phi.
  const Geometry& geo = c.chart.geometry();
  Rng rng(4);
  const Form phi = homogenize(random_homogeneous_form(rng, 0, 4, Space::ambient, 2), 0.0, geo);
  check_pass(th1_box_residual(phi, c.ctx()));
  const Form flat = example_scalar_box(phi, geo);
  const Form intrinsic = intrinsic_box(pullback(phi, c.chart), c.chart);
  for (const auto& p : c.points) {
    const double a = evaluate(intrinsic, p.x)[MultiIndex{}];
    CHECK(std::abs(a - evaluate(flat, p.y)[MultiIndex{}]) <= 1e-8 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("dilation variant of Eq. 3 and its equivalence") {
  for (auto g : kAllCases) {
    const Case c(g, 2);
    for (int p = 0; p <= 3; ++p) {
      const auto r = th1_box_dilation_variant_residual(suite_random_form(7 + p, p, 3), c.ctx());
      REQUIRE(r.size() == 2);
      CHECK(r[0].identity == "eq3_dilation");
      CHECK(r[1].identity == "eq3_dilation_equivalence");
      CHECK(r[1].tolerance == doctest::Approx(1e-9));
      for (const auto& x : r) check_pass(x);
    }
  }
}

TEST_CASE("dilation terms on s-homogeneous transverse forms give s(s+n-1-2p)") {
  const Case c(GeometryCase::sphere, 3);
  const Geometry& geo = c.chart.geometry();
  const VectorField& D = geo.radial().dilation;
  for (double s : {-1.0, 2.0}) {
    const Form beta = homogenize(suite_random_seed(9, 1, 4), s, geo);
    const Form LD = lie_derivative(D, beta);
    const Form lhs = lie_derivative(D, LD) + Expr(3.0 - 1 - 2) * LD + Expr(2.0) * exterior_derivative(interior(D, beta));
    const Form rhs = Expr(s * (s + 3 - 1 - 2)) * beta;
    for (const auto& y : c.off) {
      const double scale = std::max(1.0, max_abs(evaluate(rhs, y)));
      CHECK(max_abs(evaluate(lhs, y) - evaluate(rhs, y)) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("Theorem 3: sphere S^3 one-form, and bitwise reduction at p = 0 and p = n") {
  const Case c(GeometryCase::sphere, 3);
  check_pass(th3_residual(suite_random_form(11, 1, 4), c.ctx()));
  for (int p : {0, 3}) {
    const Form a = suite_random_form(12 + p, p, 4);
    const auto lb = box_restriction_sides(a, c.ctx(), true);
    const auto box = box_restriction_sides(a, c.ctx(), false);
    for (std::size_t k = 0; k < lb.rhs.size(); ++k) {
      const auto x = lb.rhs[k].coefficients();
      const auto y = box.rhs[k].coefficients();
      CHECK(std::equal(x.begin(), x.end(), y.begin(), y.end()));
    }
  }
}

TEST_CASE("Eq. 4: scalars, dS one-forms and the sphere") {
  const Case ds(GeometryCase::de_sitter, 3);
  const auto scalar = th2_delta_residual(suite_random_seed(14, 0, 4), 1.0, ds.ctx());
  for (const auto& r : scalar) check_pass(r);
  CHECK(scalar[0].max_abs == 0.0);
  const auto oneform = th2_delta_residual(suite_random_seed(15, 1, 4), 0.0, ds.ctx());
  REQUIRE(oneform.size() == 3);
  CHECK(oneform[1].identity == "eq4_transversality");
  CHECK(oneform[2].identity == "eq4_homogeneity");
  for (const auto& r : oneform) check_pass(r);
  const Case sphere(GeometryCase::sphere, 2);
  for (const auto& r : th2_delta_residual(suite_random_seed(16, 1, 3), -2.0, sphere.ctx())) check_pass(r);
}

TEST_CASE("continuation: transverse level, sub-identity, consistency and sign") {
  std::vector<ContinuationResult> cases;
  for (auto g : kAllCases) {
    const Case c(g, 3);
    for (int b = 0; b <= 3; ++b)
      for (double s : {0.0, 1.0}) {
        auto r = continuation_residuals(suite_random_seed(20 + b, b, 4), s, c.ctx());
        for (const auto* rep : {&r.box_transverse, &r.lb_transverse, &r.sub_identity, &r.lb_consistency}) check_pass(*rep);
        if (b == 0) {
          // delta beta = 0: the sign of the normal term is invisible
          CHECK_FALSE(r.divergence_nonzero);
          CHECK(r.box_ambient[0].pass == r.box_ambient[1].pass);
        }
        if (b == 0 && s == 0.0) {
          // Delta_Sigma beta = Delta_{n+1} beta_s
          check_pass(th4_residual(r, 1));
        }
        cases.push_back(std::move(r));
      }
  }
  const auto sign = adjudicate_sign(cases);
  REQUIRE(sign.has_value());
  CHECK(*sign == -1);
  for (const auto& r : cases)
    if (r.divergence_nonzero) {
      check_pass(th2_box_residual(r, *sign));
      check_pass(th4_residual(r, *sign));
      CHECK_FALSE(th2_box_residual(r, -*sign).pass);
    }
}

TEST_CASE("closed-form examples and the S^2 eigenfunction") {
  for (auto g : kAllCases) {
    const Case c(g, 2);
    const auto reports = example_residuals(c.ctx(), 17);
    REQUIRE(reports.size() == 4);
    for (int k = 0; k < 3; ++k) check_pass(reports[k]);
    CHECK(reports[3].informational);
  }
  const Case sphere(GeometryCase::sphere, 2);
  const auto eig = sphere_eigen_residual(sphere.ctx());
  CHECK(eig.identity == "sphere_eigenfunction");
  CHECK(eig.tolerance == doctest::Approx(1e-9));
  check_pass(eig);
}

TEST_CASE("mutations are caught") {
  for (Mutation m : {Mutation::eq2_lie_sign, Mutation::eq3_di_coefficient, Mutation::eq5_homogeneity_sign,
                     Mutation::eq5_normal_sign}) {
    const auto probe = probe_mutation(m, -1);
    INFO(to_string(m) << " -> " << probe.identity << " residual " << probe.residual);
    CHECK(probe.residual > 1e-3);
  }
  CHECK(probe_mutation(Mutation::none, -1).residual <= 1e-8);
  CHECK(mutation_from_string(to_string(Mutation::eq3_lie2_sign)) == Mutation::eq3_lie2_sign);
  CHECK_THROWS(mutation_from_string("eq9_sign"));
}

TEST_CASE("run_suite: empty selection, determinism, error capture") {
  SuiteConfig empty;
  empty.suites.clear();
  const auto none = run_suite(empty);
  CHECK(none.reports.empty());
  CHECK(none.fail_count() == 0);

  SuiteConfig small;
  small.geometries = {GeometryCase::sphere};
  small.dims = {2};
  small.points = 4;
  small.homogeneities = {0.0};
  const auto a = run_suite(small);
  const auto b = run_suite(small);
  REQUIRE(a.reports.size() == b.reports.size());
  for (std::size_t k = 0; k < a.reports.size(); ++k) {
    CHECK(a.reports[k].identity == b.reports[k].identity);
    CHECK(a.reports[k].max_residual == b.reports[k].max_residual);
  }
  CHECK(a.fail_count() == 0);
  CHECK(a.pass_count() > 0);
  CHECK(a.sign_eq5 == -1);

  // A box whose centre is off the domain is recorded as a failing case, not thrown.
  SuiteConfig bad = small;
  bad.box = std::pair{3.0, 4.0};
  const auto r = run_suite(bad);
  CHECK(r.fail_count() > 0);
  CHECK_FALSE(r.reports.front().error.empty());
}
