#include "adsforms/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace adsforms {

namespace {

// Laplace expansion along the lowest row; memoized on (rows, cols).
const Expr& compute_minor(std::map<std::pair<std::uint32_t, std::uint32_t>, Expr>& memo,
                          const std::vector<Expr>& g, int dim, MultiIndex rows, MultiIndex cols) {
  auto key = std::pair{rows.bits(), cols.bits()};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Expr value;
  if (rows.size() == 0) {
    value = Expr{1.0};
  } else {
    auto ri = rows.indices();
    int r = ri.front();
    std::vector<Expr> terms;
    int pos = 0;
    for (int c : cols.indices()) {
      const Expr& entry = g[r * dim + c];
      if (!entry.is_zero()) {
        Expr sub = compute_minor(memo, g, dim, rows.without(r), cols.without(c));
        if (!sub.is_zero()) terms.push_back(pos % 2 ? -(entry * sub) : entry * sub);
      }
      ++pos;
    }
    value = scalar::total(terms);
  }
  return memo.emplace(key, std::move(value)).first->second;
}

}  // namespace

MetricField::MetricField(std::vector<Expr> components, int dim, Space space, int det_sign)
    : dim_(dim), space_(space), det_sign_(det_sign), g_(std::move(components)), state_(std::make_shared<State>()) {
  if (dim < 1 || dim > max_dimension)
    throw std::invalid_argument("metric dimension must be in 1.." + std::to_string(max_dimension));
  if (static_cast<int>(g_.size()) != dim * dim) throw std::invalid_argument("metric needs dim*dim components");
  if (det_sign != 1 && det_sign != -1) throw std::invalid_argument("determinant sign must be +-1");
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      if (g_[a * dim + b].id() != g_[b * dim + a].id() &&
          !(g_[a * dim + b].is_constant() && g_[b * dim + a].is_constant() &&
            g_[a * dim + b].constant_value() == g_[b * dim + a].constant_value()))
        throw std::invalid_argument("metric components must be symmetric (share g_ab and g_ba)");

  // Populate every minor once so later lookups are read-only.
  for (std::uint32_t rows = 0; rows <= full_mask(); ++rows)
    for (std::uint32_t cols = 0; cols <= full_mask(); ++cols)
      if (std::popcount(rows) == std::popcount(cols))
        compute_minor(state_->minors, g_, dim_, MultiIndex{rows}, MultiIndex{cols});

  const Expr& det = determinant();
  for (std::uint32_t rows = 0; rows <= full_mask(); ++rows)
    for (std::uint32_t cols = 0; cols <= full_mask(); ++cols) {
      if (std::popcount(rows) != std::popcount(cols)) continue;
      MultiIndex r{rows}, c{cols};
      int parity = 0;
      for (int k : r.indices()) parity += k;
      for (int k : c.indices()) parity += k;
      Expr comp = minor(c.complement(dim_), r.complement(dim_));
      Expr value = comp.is_zero() ? Expr{} : (parity % 2 ? -comp : comp) / det;
      state_->inverse_minors.emplace(std::pair{rows, cols}, std::move(value));
    }
  state_->inverse.resize(dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      state_->inverse[a * dim + b] = inverse_minor(MultiIndex{1u << a}, MultiIndex{1u << b});
  state_->sqrt_abs_det = sqrt(Expr{static_cast<double>(det_sign_)} * det);
}

MetricField MetricField::diagonal(std::span<const double> entries, Space space) {
  const int dim = static_cast<int>(entries.size());
  std::vector<Expr> g(dim * dim);
  int sign = 1;
  for (int a = 0; a < dim; ++a) {
    if (entries[a] == 0.0) throw std::invalid_argument("degenerate diagonal metric");
    g[a * dim + a] = Expr{entries[a]};
    if (entries[a] < 0) sign = -sign;
  }
  return MetricField(std::move(g), dim, space, sign);
}

MetricField MetricField::euclidean(int dim, Space space) {
  std::vector<double> ones(dim, 1.0);
  return diagonal(ones, space);
}

MetricField MetricField::with_reference_point(std::vector<Expr> components, int dim, Space space,
                                              std::span<const double> reference) {
  MetricField probe(components, dim, space, 1);
  double det = adsforms::evaluate(probe.determinant(), reference);
  if (det == 0.0) throw DomainError("metric is degenerate at the reference point");
  return MetricField(std::move(components), dim, space, det > 0 ? 1 : -1);
}

const Expr& MetricField::inverse(int a, int b) const { return state_->inverse[a * dim_ + b]; }

const Expr& MetricField::minor(MultiIndex rows, MultiIndex cols) const {
  return state_->minors.at({rows.bits(), cols.bits()});
}

const Expr& MetricField::inverse_minor(MultiIndex rows, MultiIndex cols) const {
  return state_->inverse_minors.at({rows.bits(), cols.bits()});
}

Eigen::MatrixXd MetricField::evaluate(Evaluator& ev) const {
  Eigen::MatrixXd m(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) m(a, b) = ev(g_[a * dim_ + b]);
  return m;
}

}  // namespace adsforms
