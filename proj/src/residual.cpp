#include "adsforms/residual.hpp"

#include <algorithm>
#include <cmath>

namespace adsforms {

std::string component_label(const FormValue& a, std::size_t k) {
  if (a.degree() == 0) return "1";
  return to_string(a.indices()[k], a.space() == Space::ambient ? "dy" : "dx");
}

void ResidualAccumulator::compare(const FormValue& lhs, const FormValue& rhs, std::initializer_list<double> terms,
                                  const std::string& tag) {
  if (lhs.degree() != rhs.degree() || lhs.dim() != rhs.dim())
    throw FormError(identity_ + ": compared forms differ in degree or dimension");
  touched_ = true;
  pending_scale_ = std::max({pending_scale_, max_abs(lhs), max_abs(rhs)});
  for (double t : terms) pending_scale_ = std::max(pending_scale_, std::abs(t));
  auto lc = lhs.coefficients();
  auto rc = rhs.coefficients();
  for (std::size_t k = 0; k < lc.size(); ++k) {
    std::string label = component_label(lhs, k);
    pending_.push_back({tag.empty() ? label : tag + ":" + label, std::abs(lc[k] - rc[k])});
  }
}

void ResidualAccumulator::vanish(const FormValue& value, double scale, const std::string& tag) {
  touched_ = true;
  pending_scale_ = std::max({pending_scale_, std::abs(scale)});
  auto vc = value.coefficients();
  for (std::size_t k = 0; k < vc.size(); ++k) {
    std::string label = component_label(value, k);
    pending_.push_back({tag.empty() ? label : tag + ":" + label, std::abs(vc[k])});
  }
}

void ResidualAccumulator::vanish(const std::string& label, double value, double scale) {
  touched_ = true;
  pending_scale_ = std::max(pending_scale_, std::abs(scale));
  pending_.push_back({label, std::abs(value)});
}

void ResidualAccumulator::close_point() {
  if (!touched_) return;
  touched_ = false;
  const double norm = tol_.normalizer(pending_scale_);
  double worst = 0.0;
  for (const auto& e : pending_) {
    // NaN must never compare as a pass
    double r = std::isnan(e.diff) ? INFINITY : e.diff / norm;
    worst = std::max(worst, r);
    max_abs_ = std::max(max_abs_, std::isnan(e.diff) ? INFINITY : e.diff);
    auto it = std::find_if(components_.begin(), components_.end(), [&](const auto& c) { return c.first == e.label; });
    if (it == components_.end())
      components_.emplace_back(e.label, r);
    else
      it->second = std::max(it->second, r);
  }
  max_residual_ = std::max(max_residual_, worst);
  sum_residual_ += worst;
  max_scale_ = std::max(max_scale_, pending_scale_);
  ++points_;
  pending_.clear();
  pending_scale_ = 0.0;
}

void ResidualAccumulator::next_point() { close_point(); }

ResidualReport ResidualAccumulator::finish() {
  close_point();
  ResidualReport r;
  r.identity = identity_;
  r.points = points_;
  r.component_max = components_;
  r.max_residual = max_residual_;
  r.mean_residual = points_ ? sum_residual_ / points_ : 0.0;
  r.max_abs = max_abs_;
  r.scale = max_scale_;
  r.tolerance = tol_.relative;
  r.pass = max_residual_ <= tol_.relative;
  return r;
}

}  // namespace adsforms
