#pragma once

#include <string>

#include "adsforms/calculus.hpp"

namespace adsforms {

enum class GeometryCase { de_sitter, anti_de_sitter, sphere };

std::string to_string(GeometryCase c);
GeometryCase geometry_case_from_string(const std::string& s);

/// Dilation-related fields on the ambient cone sigma*y^2 > 0.
struct RadialData {
  Expr h;               ///< (sigma y^2)^{-1/2}; equals H on the hypersurface
  VectorField dilation;  ///< D = y^A d_A
  VectorField normal;    ///< e_n = h D
  Form conormal;         ///< e^n = d(1/h)
};

/// Flat ambient R^{n+1} with metric eta = diag(+,-,...,-,-eps) ((A)dS) or the
/// identity (sphere), and the hypersurface sigma*y^2 = H^{-2}.
class Geometry {
 public:
  Geometry(GeometryCase kind, int n, double H);

  GeometryCase kind() const { return kind_; }
  int n() const { return n_; }
  int dim() const { return n_ + 1; }
  double H() const { return H_; }

  /// Constraint sign: sigma*y^2 > 0 near the hypersurface.
  int sigma() const { return sigma_; }
  /// eta^{nn}: squared norm of the unit normal, equal to sigma.
  int eta_nn() const { return sigma_; }
  /// Diagonal entries of eta.
  const std::vector<double>& eta_diagonal() const { return eta_diag_; }
  const MetricField& metric() const { return metric_; }
  int ambient_sign() const { return metric_.det_sign(); }
  /// Determinant sign of the induced metric on the hypersurface.
  int sigma_sign() const { return sigma_metric_sign_; }

  const RadialData& radial() const { return radial_; }

  /// sigma * y^2 at an ambient point.
  double constraint(std::span<const double> y) const;

 private:
  GeometryCase kind_;
  int n_;
  double H_;
  int sigma_;
  int sigma_metric_sign_;
  std::vector<double> eta_diag_;
  MetricField metric_;
  RadialData radial_;
};

struct SplitForm {
  Form parallel;  ///< e^n ^ i_n a
  Form perp;      ///< i_n (e^n ^ a)
};

/// Transverse/longitudinal splitting with respect to the hypersurface normal.
SplitForm split(const Form& a, const Geometry& geo);

/// Numeric counterpart of split().perp at one point, given e^n and e_n values.
FormValue transverse_part(const FormValue& a, const FormValue& conormal, const VectorValue& normal);

/// L_D a - s a; vanishes iff a is s-homogeneous.
Form homogeneity_defect(const Form& a, double s, const Geometry& geo);

/// s-homogeneous transverse extension of a seed whose coefficients are
/// homogeneous polynomials of one degree k:  (h/H)^{k+p-s} * perp(seed).
/// Throws if the seed mixes polynomial degrees or k+p-s is not an integer.
Form homogenize(const Form& seed, double s, const Geometry& geo);

/// Ambient flat operator eta^{ab} d_a d_b phi.
Form example_scalar_box(const Form& phi, const Geometry& geo);

/// { eta^{ab} d_a d_b A_c + 2 H^2 (eta^{ab} d_a A_b) y_c } dy^c.
Form example_oneform_box(const Form& A, const Geometry& geo);

/// Side conditions for the one-form example: y^a A_a (0-form) and
/// y^b d_b A_a + A_a (1-form). Both vanish for admissible fields.
struct OneFormConditions {
  Form contraction;
  Form homogeneity;
};
OneFormConditions example_oneform_conditions(const Form& A, const Geometry& geo);

/// Ambient coordinate functions y^0..y^n.
std::vector<Expr> coordinate_functions(int dim);

}  // namespace adsforms
