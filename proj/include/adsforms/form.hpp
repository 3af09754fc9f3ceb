#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adsforms/expr.hpp"
#include "adsforms/multi_index.hpp"

namespace adsforms {

/// Which coordinate system a form or vector field lives on.
enum class Space { ambient, chart };

inline const char* to_string(Space s) { return s == Space::ambient ? "ambient" : "chart"; }

namespace scalar {
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Expr& e) { return e.is_zero(); }
inline double total(std::vector<double>& terms) {
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}
inline Expr total(std::vector<Expr>& terms) {
  if (terms.empty()) return Expr{};
  if (terms.size() == 1) return terms.front();
  return adsforms::sum(std::move(terms));
}
}  // namespace scalar

class FormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A p-form on an m-dimensional coordinate space. Components are stored
/// densely, one per strictly increasing multi-index, in `basis_indices` order.
template <class Scalar>
class BasicForm {
 public:
  using scalar_type = Scalar;

  BasicForm() = default;
  BasicForm(int degree, int dim, Space space) : degree_(degree), dim_(dim), space_(space) {
    if (dim < 0 || dim > MultiIndex::max_dimension) throw FormError("form dimension out of range");
    if (degree < 0 || degree > dim) {
      // Degrees above the dimension only arise as zero results (wedge overflow).
      coeffs_.clear();
      return;
    }
    coeffs_.assign(static_cast<std::size_t>(binomial(dim, degree)), Scalar{});
  }

  static BasicForm scalar(Scalar value, int dim, Space space) {
    BasicForm f(0, dim, space);
    f.coeffs_[0] = std::move(value);
    return f;
  }

  /// The basis form dy^i1 ^ ... ^ dy^ip with unit coefficient.
  static BasicForm basis(MultiIndex idx, int dim, Space space) {
    BasicForm f(idx.size(), dim, space);
    f[idx] = Scalar{1.0};
    return f;
  }

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  Space space() const { return space_; }
  /// False for the degree > dim forms produced by overflowing wedges.
  bool representable() const { return degree_ >= 0 && degree_ <= dim_; }

  std::size_t size() const { return coeffs_.size(); }
  std::span<const Scalar> coefficients() const { return coeffs_; }
  std::span<Scalar> coefficients() { return coeffs_; }

  const Scalar& operator[](MultiIndex idx) const { return coeffs_[checked_rank(idx)]; }
  Scalar& operator[](MultiIndex idx) { return coeffs_[checked_rank(idx)]; }

  std::vector<MultiIndex> indices() const { return basis_indices(dim_, degree_); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return scalar::is_zero(c); });
  }

  template <class F>
  BasicForm map(F&& f) const {
    BasicForm out(degree_, dim_, space_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = f(coeffs_[i]);
    return out;
  }

 private:
  std::size_t checked_rank(MultiIndex idx) const {
    if (idx.size() != degree_ || (dim_ < 32 && (idx.bits() >> dim_) != 0))
      throw FormError("multi-index does not match form degree/dimension");
    return combination_rank(idx);
  }

  int degree_ = 0;
  int dim_ = 0;
  Space space_ = Space::ambient;
  std::vector<Scalar> coeffs_ = std::vector<Scalar>(1);
};

template <class Scalar>
class BasicVectorField {
 public:
  BasicVectorField() = default;
  BasicVectorField(std::vector<Scalar> components, Space space)
      : components_(std::move(components)), space_(space) {}

  static BasicVectorField coordinate(int k, int dim, Space space) {
    std::vector<Scalar> c(dim);
    c.at(k) = Scalar{1.0};
    return {std::move(c), space};
  }

  int dim() const { return static_cast<int>(components_.size()); }
  Space space() const { return space_; }
  const Scalar& operator[](int k) const { return components_[k]; }
  Scalar& operator[](int k) { return components_[k]; }
  std::span<const Scalar> components() const { return components_; }

 private:
  std::vector<Scalar> components_;
  Space space_ = Space::ambient;
};

using Form = BasicForm<Expr>;
using FormValue = BasicForm<double>;
using VectorField = BasicVectorField<Expr>;
using VectorValue = BasicVectorField<double>;

namespace detail {
template <class A, class B>
void require_compatible(const A& a, const B& b, const char* op) {
  if (a.dim() != b.dim() || a.space() != b.space())
    throw FormError(std::string(op) + ": dimension or space mismatch");
}
}  // namespace detail

/// ca*a + cb*b.
template <class Scalar>
BasicForm<Scalar> add_scale(const BasicForm<Scalar>& a, const BasicForm<Scalar>& b, const Scalar& ca,
                            const Scalar& cb) {
  detail::require_compatible(a, b, "add_scale");
  if (a.degree() != b.degree()) throw FormError("add_scale: degree mismatch");
  BasicForm<Scalar> out(a.degree(), a.dim(), a.space());
  auto ac = a.coefficients();
  auto bc = b.coefficients();
  auto oc = out.coefficients();
  for (std::size_t i = 0; i < oc.size(); ++i) oc[i] = ca * ac[i] + cb * bc[i];
  return out;
}

template <class Scalar>
BasicForm<Scalar> operator+(const BasicForm<Scalar>& a, const BasicForm<Scalar>& b) {
  return add_scale(a, b, Scalar{1.0}, Scalar{1.0});
}

template <class Scalar>
BasicForm<Scalar> operator-(const BasicForm<Scalar>& a, const BasicForm<Scalar>& b) {
  return add_scale(a, b, Scalar{1.0}, Scalar{-1.0});
}

template <class Scalar>
BasicForm<Scalar> operator*(const Scalar& c, const BasicForm<Scalar>& a) {
  return a.map([&](const Scalar& x) { return c * x; });
}

template <class Scalar>
BasicForm<Scalar> operator-(const BasicForm<Scalar>& a) {
  return a.map([](const Scalar& x) { return -x; });
}

/// One raw term of an unnormalized form: arbitrary index order, repeats allowed.
template <class Scalar>
struct RawTerm {
  std::vector<int> indices;
  Scalar coeff;
};

/// Sorts every term's indices (applying the permutation sign), drops terms
/// with repeated indices and accumulates equal multi-indices.
template <class Scalar>
BasicForm<Scalar> canonicalize(int degree, int dim, Space space, std::span<const RawTerm<Scalar>> terms) {
  BasicForm<Scalar> out(degree, dim, space);
  std::vector<std::vector<Scalar>> acc(out.size());
  for (const auto& t : terms) {
    if (static_cast<int>(t.indices.size()) != degree) throw FormError("canonicalize: term has wrong degree");
    for (int i : t.indices)
      if (i < 0 || i >= dim) throw FormError("canonicalize: index out of range");
    auto canon = MultiIndex::canonical(t.indices);
    if (!canon) continue;
    auto [idx, sign] = *canon;
    acc[combination_rank(idx)].push_back(sign > 0 ? t.coeff : -t.coeff);
  }
  auto oc = out.coefficients();
  for (std::size_t i = 0; i < oc.size(); ++i) oc[i] = scalar::total(acc[i]);
  return out;
}

/// Exterior product; graded antisymmetric. Degree overflow gives a zero form
/// flagged as not representable.
template <class Scalar>
BasicForm<Scalar> wedge(const BasicForm<Scalar>& a, const BasicForm<Scalar>& b) {
  detail::require_compatible(a, b, "wedge");
  const int p = a.degree() + b.degree();
  BasicForm<Scalar> out(p, a.dim(), a.space());
  if (!out.representable()) return out;
  std::vector<std::vector<Scalar>> acc(out.size());
  const auto ai = a.indices();
  const auto bi = b.indices();
  auto ac = a.coefficients();
  auto bc = b.coefficients();
  for (std::size_t i = 0; i < ai.size(); ++i) {
    if (scalar::is_zero(ac[i])) continue;
    for (std::size_t j = 0; j < bi.size(); ++j) {
      if (scalar::is_zero(bc[j])) continue;
      int sign = concat_sign(ai[i], bi[j]);
      if (sign == 0) continue;
      auto prod = ac[i] * bc[j];
      acc[combination_rank(MultiIndex{ai[i].bits() | bi[j].bits()})].push_back(sign > 0 ? prod : -prod);
    }
  }
  auto oc = out.coefficients();
  for (std::size_t i = 0; i < oc.size(); ++i) oc[i] = scalar::total(acc[i]);
  return out;
}

/// Interior product i_v a (contraction in the first slot). Zero on 0-forms.
template <class Scalar>
BasicForm<Scalar> interior(const BasicVectorField<Scalar>& v, const BasicForm<Scalar>& a) {
  detail::require_compatible(v, a, "interior");
  if (a.degree() == 0) return BasicForm<Scalar>(0, a.dim(), a.space());
  BasicForm<Scalar> out(a.degree() - 1, a.dim(), a.space());
  std::vector<std::vector<Scalar>> acc(out.size());
  const auto ai = a.indices();
  auto ac = a.coefficients();
  for (std::size_t i = 0; i < ai.size(); ++i) {
    if (scalar::is_zero(ac[i])) continue;
    int r = 0;
    for (int k : ai[i].indices()) {
      if (!scalar::is_zero(v[k])) {
        auto term = v[k] * ac[i];
        acc[combination_rank(ai[i].without(k))].push_back(r % 2 ? -term : term);
      }
      ++r;
    }
  }
  auto oc = out.coefficients();
  for (std::size_t i = 0; i < oc.size(); ++i) oc[i] = scalar::total(acc[i]);
  return out;
}

/// Coefficients of a 1-form as a vector-like list.
template <class Scalar>
std::vector<Scalar> one_form_components(const BasicForm<Scalar>& a) {
  if (a.degree() != 1) throw FormError("expected a 1-form");
  return {a.coefficients().begin(), a.coefficients().end()};
}

template <class Scalar>
BasicForm<Scalar> one_form(std::vector<Scalar> components, Space space) {
  BasicForm<Scalar> out(1, static_cast<int>(components.size()), space);
  std::move(components.begin(), components.end(), out.coefficients().begin());
  return out;
}

FormValue evaluate(const Form& a, Evaluator& ev);
VectorValue evaluate(const VectorField& v, Evaluator& ev);
FormValue evaluate(const Form& a, std::span<const double> point);

/// Largest absolute component.
double max_abs(const FormValue& a);

std::string to_string(const Form& a);

}  // namespace adsforms
