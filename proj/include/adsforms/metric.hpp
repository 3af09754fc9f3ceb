#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "adsforms/expr.hpp"
#include "adsforms/form.hpp"

namespace adsforms {

/// Symmetric metric g_ab with ScalarExpr components. Minors, determinant and
/// inverse are built by cofactor (Laplace) expansion; supported for m <= 5.
///
/// The determinant sign is fixed at construction and assumed constant on the
/// domain where the metric is used.
class MetricField {
 public:
  static constexpr int max_dimension = 5;

  MetricField() = default;
  MetricField(std::vector<Expr> components, int dim, Space space, int det_sign);

  /// Constant diagonal metric, e.g. diag(+1,-1,-1).
  static MetricField diagonal(std::span<const double> entries, Space space);
  static MetricField euclidean(int dim, Space space);

  /// Determines the determinant sign by evaluating at `reference`.
  static MetricField with_reference_point(std::vector<Expr> components, int dim, Space space,
                                          std::span<const double> reference);

  int dim() const { return dim_; }
  Space space() const { return space_; }
  int det_sign() const { return det_sign_; }

  const Expr& operator()(int a, int b) const { return g_[a * dim_ + b]; }
  const Expr& inverse(int a, int b) const;
  const Expr& determinant() const { return minor(MultiIndex{full_mask()}, MultiIndex{full_mask()}); }
  const Expr& sqrt_abs_det() const { return state_->sqrt_abs_det; }

  /// det g[rows, cols].
  const Expr& minor(MultiIndex rows, MultiIndex cols) const;
  /// det g^{-1}[rows, cols], via Jacobi's complementary-minor identity.
  const Expr& inverse_minor(MultiIndex rows, MultiIndex cols) const;

  Eigen::MatrixXd evaluate(Evaluator& ev) const;

 private:
  std::uint32_t full_mask() const { return (1u << dim_) - 1u; }

  struct State {
    std::map<std::pair<std::uint32_t, std::uint32_t>, Expr> minors;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Expr> inverse_minors;
    std::vector<Expr> inverse;
    Expr sqrt_abs_det;
  };

  int dim_ = 0;
  Space space_ = Space::ambient;
  int det_sign_ = 1;
  std::vector<Expr> g_;
  std::shared_ptr<State> state_;
};

}  // namespace adsforms
