#pragma once

#include <vector>

#include "adsforms/chart.hpp"

namespace adsforms::testing {

inline const std::vector<GeometryCase> kAllCases{GeometryCase::de_sitter, GeometryCase::anti_de_sitter,
                                                 GeometryCase::sphere};

/// Ambient images of chart samples: points on the hypersurface.
inline std::vector<std::vector<double>> sigma_points(const GraphChart& chart, int count, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  for (const auto& p : sample_points(chart, count, seed)) out.push_back(p.y);
  return out;
}

inline double max_residual(const Form& a, const Form& b, const std::vector<std::vector<double>>& points) {
  double worst = 0.0;
  for (const auto& y : points) worst = std::max(worst, max_abs(evaluate(a, y) - evaluate(b, y)));
  return worst;
}

inline double max_value(const Form& a, const std::vector<std::vector<double>>& points) {
  double worst = 0.0;
  for (const auto& y : points) worst = std::max(worst, max_abs(evaluate(a, y)));
  return worst;
}

}  // namespace adsforms::testing
