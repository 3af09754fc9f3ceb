#include "adsforms/form.hpp"

#include <cmath>
#include <sstream>

namespace adsforms {

std::string to_string(MultiIndex idx, const char* symbol) {
  if (idx.size() == 0) return "1";
  std::string out;
  for (int k : idx.indices()) {
    if (!out.empty()) out += "^";
    out += symbol + std::to_string(k);
  }
  return out;
}

FormValue evaluate(const Form& a, Evaluator& ev) {
  FormValue out(a.degree(), a.dim(), a.space());
  auto ac = a.coefficients();
  auto oc = out.coefficients();
  for (std::size_t i = 0; i < ac.size(); ++i) oc[i] = ev(ac[i]);
  return out;
}

VectorValue evaluate(const VectorField& v, Evaluator& ev) {
  std::vector<double> c(v.dim());
  for (int k = 0; k < v.dim(); ++k) c[k] = ev(v[k]);
  return {std::move(c), v.space()};
}

FormValue evaluate(const Form& a, std::span<const double> point) {
  Evaluator ev(point);
  return evaluate(a, ev);
}

double max_abs(const FormValue& a) {
  double m = 0.0;
  for (double c : a.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

std::string to_string(const Form& a) {
  std::ostringstream os;
  bool first = true;
  const char* sym = a.space() == Space::ambient ? "dy" : "dx";
  auto idx = a.indices();
  auto ac = a.coefficients();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (ac[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "[" << adsforms::to_string(ac[i]) << "] " << adsforms::to_string(idx[i], sym);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace adsforms
