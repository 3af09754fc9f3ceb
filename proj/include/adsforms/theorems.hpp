#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adsforms/frame.hpp"

namespace adsforms {

/// Test hooks: each flips one sign or perturbs one coefficient of a right-hand side.
enum class Mutation {
  none,
  eq2_intrinsic_sign,
  eq2_lie_sign,
  eq2_h_sign,
  eq2_coefficient,
  eq3_intrinsic_sign,
  eq3_lie2_sign,
  eq3_lie_sign,
  eq3_lie_coefficient,
  eq3_di_sign,
  eq3_di_coefficient,
  eq5_box_sign,
  eq5_homogeneity_sign,
  eq5_homogeneity_coefficient,
  eq5_normal_sign,
};

std::string to_string(Mutation m);
Mutation mutation_from_string(const std::string& s);
std::vector<Mutation> all_mutations();

/// Closing constant of the i_n term in the codifferential restriction: n - 2a + 2 or n - 2a - 2.
enum class Eq2Coefficient { plus_two, minus_two };
std::string to_string(Eq2Coefficient c);

struct TheoremContext {
  const GraphChart& chart;
  std::span<const SigmaPoint> points;
  /// Cone points off the hypersurface, for ambient side conditions.
  std::span<const std::vector<double>> off_points;
  Tolerance tol{};
  Mutation mutation = Mutation::none;
};

/// m* delta a  vs  delta_Sigma m*a - eta^nn m*[L_n i_n a + H c i_n a],  c = n - 2p +- 2.
ResidualReport th1_delta_residual(const Form& a, const TheoremContext& ctx,
                                  Eq2Coefficient coeff = Eq2Coefficient::plus_two);

/// Both sides of the box restriction at each point. With `laplace_beltrami`, the
/// curvature-corrected form; its extra terms are skipped where p(p-n) = 0.
struct PointwiseSides {
  std::vector<FormValue> lhs;
  std::vector<FormValue> rhs;
  std::vector<double> scale;
};
PointwiseSides box_restriction_sides(const Form& a, const TheoremContext& ctx, bool laplace_beltrami);

/// m* box a  vs  box_Sigma m*a + eta^nn m*[L_n^2 a + H(n-2p) L_n a + 2H d i_n a].
ResidualReport th1_box_residual(const Form& a, const TheoremContext& ctx);
/// Dilation form of the same right-hand side; returns {variant residual, equivalence with th1_box}.
std::vector<ResidualReport> th1_box_dilation_variant_residual(const Form& a, const TheoremContext& ctx);
/// m* Delta_{n+1} a  vs  Delta_Sigma m*a + eta^nn m*[... + H^2 p(p-n) a].
ResidualReport th3_residual(const Form& a, const TheoremContext& ctx);

/// {codifferential continuation, transversality of delta beta_s, (s-2)-homogeneity of delta beta_s}.
std::vector<ResidualReport> th2_delta_residual(const Form& seed, double s, const TheoremContext& ctx);

/// Everything computed for one continuation case of the box and Laplace-Beltrami operators.
struct ContinuationResult {
  ResidualReport box_transverse;
  /// Ambient level, index 0 for sign +1 and 1 for sign -1 on the e^n ^ delta term.
  ResidualReport box_ambient[2];
  ResidualReport sub_identity;
  ResidualReport lb_transverse;
  ResidualReport lb_ambient[2];
  /// Transverse-level residual vectors of the two operators agree after the curvature shift.
  ResidualReport lb_consistency;
  /// delta beta_s is numerically nonzero, so the ambient sign is observable.
  bool divergence_nonzero = false;
};
ContinuationResult continuation_residuals(const Form& seed, double s, const TheoremContext& ctx);

inline const ResidualReport& th2_box_residual(const ContinuationResult& r, int sign) {
  return r.box_ambient[sign > 0 ? 0 : 1];
}
inline const ResidualReport& th4_residual(const ContinuationResult& r, int sign) {
  return r.lb_ambient[sign > 0 ? 0 : 1];
}

/// The single sign that passes the ambient level on every case with nonzero divergence
/// and fails on none, if one exists.
std::optional<int> adjudicate_sign(const std::vector<ContinuationResult>& cases);

struct SuiteConfig {
  std::vector<GeometryCase> geometries{GeometryCase::de_sitter, GeometryCase::anti_de_sitter, GeometryCase::sphere};
  std::vector<int> dims{2, 3};
  double H = 1.0;
  /// Empty means every degree 0..n+1.
  std::vector<int> degrees;
  std::vector<double> homogeneities{-1.0, 0.0, 1.0};
  int points = 20;
  std::uint64_t seed = 42;
  Tolerance tol{};
  /// One interval for every chart coordinate; empty means the chart default.
  std::optional<std::pair<double, double>> box;
  /// Any of "theorems", "props", "examples".
  std::vector<std::string> suites{"theorems", "props", "examples"};
  Mutation mutation = Mutation::none;
  /// Report destination; empty means stdout only.
  std::string report;
};

struct SuiteResult {
  std::vector<ResidualReport> reports;
  std::optional<int> sign_eq5;
  Eq2Coefficient coeff_eq2 = Eq2Coefficient::plus_two;
  int pass_count() const;
  int fail_count() const;
};

SuiteResult run_suite(const SuiteConfig& config);

/// Closed-form examples: scalar and one-form box on 0-homogeneous transverse fields,
/// the one-form side conditions, and (informational) the one-form formula at ambient level.
std::vector<ResidualReport> example_residuals(const TheoremContext& ctx, std::uint64_t seed);
/// Sphere only: box_Sigma m*(y^0 h) = -n H^2 m*(y^0 h).
ResidualReport sphere_eigen_residual(const TheoremContext& ctx);

/// Random non-transverse test form with the suite's polynomial settings.
Form suite_random_form(std::uint64_t seed, int degree, int dim);
/// Seed with homogeneous polynomial coefficients of degree 1 or 2.
Form suite_random_seed(std::uint64_t seed, int degree, int dim);

}  // namespace adsforms
