#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adsforms/form.hpp"

namespace adsforms {

/// pass <=> max|lhs - rhs| <= max(relative * scale, absolute_floor) at every point,
/// where scale is the largest coefficient magnitude among the compared terms.
struct Tolerance {
  double relative = 1e-8;
  double absolute_floor = 1e-10;

  double bound(double scale) const { return std::max(relative * scale, absolute_floor); }
  /// Divisor that turns an absolute difference into a residual comparable with `relative`.
  double normalizer(double scale) const { return std::max(scale, absolute_floor / relative); }
};

struct ResidualReport {
  std::string identity;
  std::string geometry;
  int n = 0;
  int degree = 0;
  std::optional<double> homogeneity;
  int points = 0;
  /// Worst normalized residual per component label.
  std::vector<std::pair<std::string, double>> component_max;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double max_abs = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  /// Sign of the e^n ^ delta term this report evaluated, for sign-variant reports.
  std::optional<int> sign;
  std::optional<int> adjudicated_sign;
  /// Informational reports never count toward pass/fail totals.
  bool informational = false;
  std::string error;
};

class ResidualAccumulator {
 public:
  ResidualAccumulator(std::string identity, Tolerance tol) : identity_(std::move(identity)), tol_(tol) {}

  /// One point's comparison lhs == rhs. `terms` are the magnitudes of the
  /// pieces summed into either side; they widen the scale.
  void compare(const FormValue& lhs, const FormValue& rhs, std::initializer_list<double> terms = {},
               const std::string& tag = {});
  /// One point's check that `value` vanishes, relative to `scale`.
  void vanish(const FormValue& value, double scale, const std::string& tag = {});
  void vanish(const std::string& label, double value, double scale);
  /// Start a new sample point; comparisons until the next call share one scale.
  void next_point();

  /// Closes the current point and summarizes.
  ResidualReport finish();

 private:
  struct Entry {
    std::string label;
    double diff;
  };
  void close_point();

  std::string identity_;
  Tolerance tol_;
  std::vector<Entry> pending_;
  /// A point with no components (e.g. a pullback of an (n+1)-form) still counts as evaluated.
  bool touched_ = false;
  double pending_scale_ = 0.0;
  int points_ = 0;
  double max_residual_ = 0.0;
  double sum_residual_ = 0.0;
  double max_abs_ = 0.0;
  double max_scale_ = 0.0;
  std::vector<std::pair<std::string, double>> components_;
};

/// Label used for form components in reports, e.g. "dx0^dx2" or "dy1".
std::string component_label(const FormValue& a, std::size_t k);

}  // namespace adsforms
