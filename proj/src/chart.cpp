#include "adsforms/chart.hpp"

#include <cmath>

#include "adsforms/random.hpp"

namespace adsforms {

GraphChart::GraphChart(Geometry geo, ChartOptions options) : geo_(std::move(geo)), options_(std::move(options)) {
  const int n = geo_.n();
  const double H = geo_.H();
  if (options_.branch != 1 && options_.branch != -1) throw std::invalid_argument("chart branch must be +-1");
  if (!(options_.floor_factor > 0.0)) throw std::invalid_argument("chart floor_factor must be positive");
  if (options_.box.empty()) options_.box.assign(n, {-0.5 / H, 0.5 / H});
  if (static_cast<int>(options_.box.size()) != n) throw std::invalid_argument("chart box needs one interval per chart coordinate");
  for (const auto& [lo, hi] : options_.box)
    if (!(lo < hi)) throw std::invalid_argument("chart box intervals must satisfy lo < hi");

  const auto& eta = geo_.eta_diagonal();
  const double eta_last = eta[n];
  std::vector<Expr> terms{Expr{geo_.sigma() / (H * H * eta_last)}};
  for (int mu = 0; mu < n; ++mu) terms.push_back(Expr{-eta[mu] / eta_last} * pow(Expr::variable(mu), 2));
  q_ = sum(std::move(terms));

  for (int mu = 0; mu < n; ++mu) embedding_.push_back(Expr::variable(mu));
  embedding_.push_back(Expr{static_cast<double>(options_.branch)} * sqrt(q_));

  jacobian_.resize((n + 1) * n);
  for (int A = 0; A <= n; ++A)
    for (int mu = 0; mu < n; ++mu) jacobian_[A * n + mu] = differentiate(embedding_[A], mu);

  std::vector<Expr> g(n * n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu; nu < n; ++nu) {
      Expr entry = Expr{eta_last} * jacobian(n, mu) * jacobian(n, nu);
      if (mu == nu) entry = Expr{eta[mu]} + entry;
      g[mu * n + nu] = entry;
      g[nu * n + mu] = entry;
    }
  metric_ = MetricField(std::move(g), n, Space::chart, geo_.sigma_sign());

  std::vector<double> center(n);
  for (int mu = 0; mu < n; ++mu) center[mu] = 0.5 * (options_.box[mu].first + options_.box[mu].second);
  if (!in_domain(center)) throw DomainError("chart box center lies outside the chart domain");
  SigmaPoint c = point(center);
  Eigen::MatrixXd frame(n + 1, n + 1);
  frame.leftCols(n) = jacobian_at(c);
  for (int A = 0; A <= n; ++A) frame(A, n) = H * c.y[A];
  orientation_ = frame.determinant() > 0 ? 1 : -1;
}

double GraphChart::domain_floor() const {
  double f = options_.floor_factor / geo_.H();
  return f * f;
}

bool GraphChart::in_domain(std::span<const double> x) const {
  return static_cast<int>(x.size()) == n() && evaluate(q_, x) >= domain_floor();
}

SigmaPoint GraphChart::point(std::vector<double> x) const {
  if (!in_domain(x)) throw DomainError("chart point outside the domain q(x) >= floor");
  SigmaPoint pt{std::move(x), {}};
  Evaluator ev(pt.x);
  for (const auto& y : embedding_) pt.y.push_back(ev(y));
  return pt;
}

Eigen::MatrixXd GraphChart::jacobian_at(const SigmaPoint& pt) const {
  const int n = this->n();
  Evaluator ev(pt.x);
  Eigen::MatrixXd J(n + 1, n);
  for (int A = 0; A <= n; ++A)
    for (int mu = 0; mu < n; ++mu) J(A, mu) = ev(jacobian(A, mu));
  return J;
}

Expr pullback(const Expr& f, const GraphChart& chart) { return substitute(f, chart.embedding()); }

Form pullback(const Form& a, const GraphChart& chart) {
  const Geometry& geo = chart.geometry();
  if (a.space() != Space::ambient || a.dim() != geo.dim()) throw FormError("pullback: expected an ambient form");
  const int n = chart.n();
  const int p = a.degree();
  Form out(p, n, Space::chart);
  if (!out.representable()) return out;
  if (p == 0) {
    out.coefficients()[0] = pullback(a.coefficients()[0], chart);
    return out;
  }
  std::vector<Form> dy;
  for (int A = 0; A <= n; ++A) {
    std::vector<Expr> comps(n);
    for (int mu = 0; mu < n; ++mu) comps[mu] = chart.jacobian(A, mu);
    dy.push_back(one_form(std::move(comps), Space::chart));
  }
  const auto ai = a.indices();
  auto ac = a.coefficients();
  std::vector<std::vector<Expr>> acc(out.size());
  for (std::size_t i = 0; i < ai.size(); ++i) {
    if (ac[i].is_zero()) continue;
    auto idx = ai[i].indices();
    Form basis = dy[idx[0]];
    for (std::size_t k = 1; k < idx.size(); ++k) basis = wedge(basis, dy[idx[k]]);
    Expr f = pullback(ac[i], chart);
    auto bc = basis.coefficients();
    for (std::size_t j = 0; j < bc.size(); ++j)
      if (!bc[j].is_zero()) acc[j].push_back(f * bc[j]);
  }
  auto oc = out.coefficients();
  for (std::size_t j = 0; j < oc.size(); ++j) oc[j] = scalar::total(acc[j]);
  return out;
}

FormValue pullback_at(const FormValue& a, const Eigen::MatrixXd& J) {
  const int n = static_cast<int>(J.cols());
  if (a.space() != Space::ambient || a.dim() != J.rows()) throw FormError("pullback_at: expected an ambient form value");
  const int p = a.degree();
  FormValue out(p, n, Space::chart);
  if (!out.representable()) return out;
  if (p == 0) {
    out.coefficients()[0] = a.coefficients()[0];
    return out;
  }
  const auto ai = a.indices();
  auto ac = a.coefficients();
  Eigen::MatrixXd sub(p, p);
  for (MultiIndex k : out.indices()) {
    auto cols = k.indices();
    double total = 0.0;
    for (std::size_t i = 0; i < ai.size(); ++i) {
      if (ac[i] == 0.0) continue;
      auto rows = ai[i].indices();
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) sub(r, c) = J(rows[r], cols[c]);
      total += ac[i] * sub.determinant();
    }
    out[k] = total;
  }
  return out;
}

FormValue pullback_at(const Form& a, const GraphChart& chart, const SigmaPoint& pt) {
  return pullback_at(evaluate(a, pt.y), chart.jacobian_at(pt));
}

namespace {

void require_chart(const Form& b, const GraphChart& chart, const char* op) {
  if (b.space() != Space::chart || b.dim() != chart.n()) throw FormError(std::string(op) + ": expected a chart form");
}

}  // namespace

Form intrinsic_d(const Form& b, const GraphChart& chart) {
  require_chart(b, chart, "intrinsic_d");
  return exterior_derivative(b);
}

Form intrinsic_delta(const Form& b, const GraphChart& chart) {
  require_chart(b, chart, "intrinsic_delta");
  return codifferential(b, chart.metric(), chart.orientation());
}

Form intrinsic_box(const Form& b, const GraphChart& chart) {
  require_chart(b, chart, "intrinsic_box");
  return laplace_de_rham(b, chart.metric(), chart.orientation());
}

Form intrinsic_star(const Form& b, const GraphChart& chart) {
  require_chart(b, chart, "intrinsic_star");
  return hodge_star(b, chart.metric(), chart.orientation());
}

Form laplace_beltrami_sigma(const Form& b, const GraphChart& chart) {
  Form box = intrinsic_box(b, chart);
  const int a = b.degree();
  const int n = chart.n();
  if (a * (a - n) == 0) return box;
  const double H = chart.geometry().H();
  const double c = chart.geometry().eta_nn() * H * H * a * (a - n);
  return box - Expr{c} * b;
}

Form laplace_beltrami_ambient(const Form& a, const Geometry& geo) { return laplace_de_rham(a, geo.metric()); }

std::vector<SigmaPoint> sample_points(const GraphChart& chart, int count, std::uint64_t seed) {
  if (count <= 0) throw std::invalid_argument("sample_points: count must be positive");
  Rng rng(seed);
  std::vector<SigmaPoint> out;
  const long budget = 1000L * count;
  std::vector<double> x(chart.n());
  for (long attempt = 0; attempt < budget && static_cast<int>(out.size()) < count; ++attempt) {
    for (int mu = 0; mu < chart.n(); ++mu) x[mu] = rng.uniform(chart.box()[mu].first, chart.box()[mu].second);
    if (chart.in_domain(x)) out.push_back(chart.point(x));
  }
  if (static_cast<int>(out.size()) < count)
    throw SamplingError("sample_points: chart box lies (almost) entirely outside the domain; " +
                        std::to_string(out.size()) + " of " + std::to_string(count) + " points after " +
                        std::to_string(budget) + " attempts");
  return out;
}

std::vector<std::vector<double>> sample_off_sigma(const GraphChart& chart, int count, std::uint64_t seed) {
  auto base = sample_points(chart, count, seed);
  Rng rng(seed ^ 0x5bd1e995u);
  std::vector<std::vector<double>> out;
  for (auto& pt : base) {
    double lambda = rng.uniform(0.6, 1.8);
    for (auto& v : pt.y) v *= lambda;
    out.push_back(std::move(pt.y));
  }
  return out;
}

}  // namespace adsforms
