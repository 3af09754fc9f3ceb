#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "adsforms/ambient.hpp"

namespace adsforms {

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of the hypersurface in graph-chart coordinates, with its ambient image.
struct SigmaPoint {
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  int branch = 1;
  /// Per-coordinate [lo, hi]; empty means [-0.5/H, 0.5/H]^n.
  std::vector<std::pair<double, double>> box;
  /// Domain floor is q(x) >= (floor_factor / H)^2.
  double floor_factor = 0.1;
};

/// Graph chart: y^mu = x^mu for mu < n, y^n = branch * sqrt(q(x)).
class GraphChart {
 public:
  explicit GraphChart(Geometry geo, ChartOptions options = {});

  const Geometry& geometry() const { return geo_; }
  int n() const { return geo_.n(); }
  int branch() const { return options_.branch; }
  const std::vector<std::pair<double, double>>& box() const { return options_.box; }
  double floor_factor() const { return options_.floor_factor; }

  const Expr& q() const { return q_; }
  const std::vector<Expr>& embedding() const { return embedding_; }
  /// jacobian(A, mu) = d y^A / d x^mu.
  const Expr& jacobian(int A, int mu) const { return jacobian_[A * n() + mu]; }
  const MetricField& metric() const { return metric_; }
  /// +-1 such that (chart frame, e_n) is positively oriented in the ambient space.
  int orientation() const { return orientation_; }

  double domain_floor() const;
  bool in_domain(std::span<const double> x) const;
  SigmaPoint point(std::vector<double> x) const;
  Eigen::MatrixXd jacobian_at(const SigmaPoint& pt) const;

 private:
  Geometry geo_;
  ChartOptions options_;
  Expr q_;
  std::vector<Expr> embedding_;
  std::vector<Expr> jacobian_;
  MetricField metric_;
  int orientation_ = 1;
};

/// Symbolic pullback m*: substitute y(x) and pull back each dy^A.
Form pullback(const Form& a, const GraphChart& chart);
/// Scalar composition f(y(x)).
Expr pullback(const Expr& f, const GraphChart& chart);
/// Numeric pullback of an ambient form value at a hypersurface point.
FormValue pullback_at(const FormValue& a, const Eigen::MatrixXd& jacobian);
FormValue pullback_at(const Form& a, const GraphChart& chart, const SigmaPoint& pt);

Form intrinsic_d(const Form& b, const GraphChart& chart);
Form intrinsic_delta(const Form& b, const GraphChart& chart);
Form intrinsic_box(const Form& b, const GraphChart& chart);
Form intrinsic_star(const Form& b, const GraphChart& chart);

/// Delta_Sigma = box_Sigma - eta^{nn} H^2 a(a-n); the correction is omitted when a(a-n) = 0.
Form laplace_beltrami_sigma(const Form& b, const GraphChart& chart);
/// Flat ambient space: Delta_{n+1} = box_{n+1}.
Form laplace_beltrami_ambient(const Form& a, const Geometry& geo);

/// Deterministic rejection sampling in the chart box.
std::vector<SigmaPoint> sample_points(const GraphChart& chart, int count, std::uint64_t seed);

/// Points on the cone off the hypersurface: lambda * y(x) with lambda in [0.6, 1.8].
std::vector<std::vector<double>> sample_off_sigma(const GraphChart& chart, int count, std::uint64_t seed);

}  // namespace adsforms
