#pragma once

#include <cstdint>

#include "adsforms/chart.hpp"
#include "adsforms/residual.hpp"

namespace adsforms {

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orthonormal ambient frame: e_0..e_{n-1} tangent to the hypersurface (Gram-Schmidt on
/// the chart tangents, extended along rays with degree-0 homogeneous components) and e_n normal.
struct OrthoFrame {
  GraphChart chart;
  std::vector<VectorField> vectors;
  std::vector<Form> coframe;
  /// eta(e_A, e_A) = +-1.
  std::vector<int> signature;
};

OrthoFrame build_frame(const GraphChart& chart);

/// c^C_{AB} = <e^C, [e_A, e_B]> evaluated at a point.
std::vector<double> holonomic_coefficients_at(const OrthoFrame& frame, std::span<const double> y);

/// Reports for c^n_{AB} = 0, c^mu_{nu n} = h delta^mu_nu and antisymmetry, at hypersurface and
/// off-hypersurface points.
std::vector<ResidualReport> holonomic_coeffs(const OrthoFrame& frame, std::span<const SigmaPoint> points,
                                             std::span<const std::vector<double>> off_points, Tolerance tol = {});

/// eta(e_A, e_B) = diag, frame e_n = hD and degree-0 homogeneity of the components; plus
/// the vector-field dilation law L_D e_A = -e_A.
std::vector<ResidualReport> frame_invariants(const OrthoFrame& frame, std::span<const SigmaPoint> points,
                                             std::span<const std::vector<double>> off_points, Tolerance tol = {});

struct BasisCheckOptions {
  /// Random index subsets tried per monomial degree t.
  int monomials_per_degree = 2;
  std::uint64_t seed = 1;
  Tolerance tol{};
};

/// Frame-monomial identities (properties 1-8 and the un-pulled-back remark), one report
/// per property, aggregated over monomials, weights and points.
std::vector<ResidualReport> verify_basis_properties(const OrthoFrame& frame, std::span<const SigmaPoint> points,
                                                    std::span<const std::vector<double>> off_points,
                                                    const BasisCheckOptions& options = {});

}  // namespace adsforms
