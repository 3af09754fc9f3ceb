#include "adsforms/json_io.hpp"

#include <fstream>

namespace adsforms {

namespace {

const char* op_name(ExprKind k) {
  switch (k) {
    case ExprKind::sum:
      return "add";
    case ExprKind::product:
      return "mul";
    case ExprKind::negation:
      return "neg";
    case ExprKind::quotient:
      return "div";
    case ExprKind::square_root:
      return "sqrt";
    default:
      return nullptr;
  }
}

std::vector<Expr> json_args(const json& j, std::size_t min_count) {
  if (!j.contains("args") || !j["args"].is_array()) throw std::invalid_argument("expression op needs an \"args\" array");
  std::vector<Expr> args;
  for (const auto& a : j["args"]) args.push_back(expr_from_json(a));
  if (args.size() < min_count) throw std::invalid_argument("expression op has too few arguments");
  return args;
}

template <class T>
std::vector<T> one_or_many(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

}  // namespace

json to_json(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::constant:
      return {{"const", e.constant_value()}};
    case ExprKind::variable:
      return {{"var", e.variable_index()}};
    case ExprKind::power:
      return {{"op", "pow"}, {"base", to_json(e.args()[0])}, {"exp", e.exponent()}};
    default: {
      json args = json::array();
      for (const auto& a : e.args()) args.push_back(to_json(a));
      return {{"op", op_name(e.kind())}, {"args", std::move(args)}};
    }
  }
}

Expr expr_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("expression must be a JSON object");
  if (j.contains("const")) {
    if (!j["const"].is_number()) throw std::invalid_argument("\"const\" must be a number");
    return raw::constant(j["const"].get<double>());
  }
  if (j.contains("var")) {
    if (!j["var"].is_number_integer() || j["var"].get<int>() < 0)
      throw std::invalid_argument("\"var\" must be a non-negative integer");
    return raw::variable(j["var"].get<int>());
  }
  if (!j.contains("op") || !j["op"].is_string()) throw std::invalid_argument("expression needs \"const\", \"var\" or \"op\"");
  const std::string op = j["op"];
  if (op == "add") return raw::sum(json_args(j, 1));
  if (op == "mul") return raw::product(json_args(j, 1));
  if (op == "neg") return raw::negation(json_args(j, 1).front());
  if (op == "div") {
    auto args = json_args(j, 2);
    return raw::quotient(args[0], args[1]);
  }
  if (op == "sqrt") return raw::square_root(json_args(j, 1).front());
  if (op == "pow") {
    if (!j.contains("base") || !j.contains("exp") || !j["exp"].is_number_integer())
      throw std::invalid_argument("\"pow\" needs \"base\" and an integer \"exp\"");
    return raw::power(expr_from_json(j["base"]), j["exp"].get<int>());
  }
  throw std::invalid_argument("unknown expression op '" + op + "'");
}

json to_json(const Form& a) {
  json terms = json::array();
  const auto idx = a.indices();
  auto coeffs = a.coefficients();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    terms.push_back({{"indices", idx[k].indices()}, {"coeff", to_json(coeffs[k])}});
  }
  return {{"degree", a.degree()}, {"dim", a.dim()}, {"space", to_string(a.space())}, {"terms", std::move(terms)}};
}

Form form_from_json(const json& j) {
  for (const char* key : {"degree", "dim", "space", "terms"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("form JSON is missing \"") + key + "\"");
  const int degree = j["degree"].get<int>();
  const int dim = j["dim"].get<int>();
  const std::string space = j["space"];
  if (space != "ambient" && space != "chart") throw std::invalid_argument("form space must be \"ambient\" or \"chart\"");
  if (dim < 1 || dim > MultiIndex::max_dimension || degree < 0 || degree > dim)
    throw std::invalid_argument("form degree/dim out of range");
  std::vector<RawTerm<Expr>> terms;
  for (const auto& t : j["terms"]) terms.push_back({t.at("indices").get<std::vector<int>>(), expr_from_json(t.at("coeff"))});
  for (const auto& t : terms)
    if (t.coeff.arity() > dim) throw std::invalid_argument("form coefficient uses a variable beyond the form dimension");
  return canonicalize<Expr>(degree, dim, space == "ambient" ? Space::ambient : Space::chart, terms);
}

json to_json(const Geometry& geo) { return {{"case", to_string(geo.kind())}, {"n", geo.n()}, {"H", geo.H()}}; }

Geometry geometry_from_json(const json& j) {
  return Geometry(geometry_case_from_string(j.at("case").get<std::string>()), j.at("n").get<int>(), j.at("H").get<double>());
}

json to_json(const ChartOptions& c) {
  json box = json::array();
  for (const auto& [lo, hi] : c.box) box.push_back({lo, hi});
  return {{"branch", c.branch}, {"box", std::move(box)}, {"floor_factor", c.floor_factor}};
}

ChartOptions chart_options_from_json(const json& j) {
  ChartOptions c;
  if (j.contains("branch")) c.branch = j["branch"].get<int>();
  if (j.contains("floor_factor")) c.floor_factor = j["floor_factor"].get<double>();
  if (j.contains("box"))
    for (const auto& iv : j["box"]) {
      if (!iv.is_array() || iv.size() != 2) throw std::invalid_argument("chart box entries must be [lo, hi]");
      c.box.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
  return c;
}

json to_json(const ResidualReport& r) {
  json components = json::object();
  for (const auto& [label, value] : r.component_max) components[label] = value;
  json out = {{"identity", r.identity},
              {"geometry", r.geometry},
              {"n", r.n},
              {"degree", r.degree},
              {"homogeneity", r.homogeneity ? json(*r.homogeneity) : json(nullptr)},
              {"points", r.points},
              {"max_residual", r.max_residual},
              {"mean_residual", r.mean_residual},
              {"max_abs", r.max_abs},
              {"scale", r.scale},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"informational", r.informational},
              {"sign", r.sign ? json(*r.sign) : json(nullptr)},
              {"adjudicated_sign", r.adjudicated_sign ? json(*r.adjudicated_sign) : json(nullptr)},
              {"components", std::move(components)}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

json to_json(const SuiteResult& result) {
  json cases = json::array();
  for (const auto& r : result.reports) cases.push_back(to_json(r));
  json summary = {{"pass", result.pass_count()},
                  {"fail", result.fail_count()},
                  {"sign_eq5", result.sign_eq5 ? json(*result.sign_eq5) : json(nullptr)},
                  {"coeff_eq2", to_string(result.coeff_eq2)}};
  return {{"cases", std::move(cases)}, {"summary", std::move(summary)}};
}

void apply_config_json(const json& j, SuiteConfig& config) {
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "geometry" || key == "geometries") {
      config.geometries.clear();
      for (const auto& g : one_or_many<std::string>(value)) config.geometries.push_back(geometry_case_from_string(g));
    } else if (key == "n") {
      config.dims = one_or_many<int>(value);
    } else if (key == "H") {
      config.H = value.get<double>();
    } else if (key == "degree" || key == "degrees") {
      config.degrees = one_or_many<int>(value);
    } else if (key == "homogeneity" || key == "homogeneities") {
      config.homogeneities = one_or_many<double>(value);
    } else if (key == "points") {
      config.points = value.get<int>();
    } else if (key == "seed") {
      config.seed = value.get<std::uint64_t>();
    } else if (key == "tol") {
      config.tol.relative = value.get<double>();
    } else if (key == "abs_floor") {
      config.tol.absolute_floor = value.get<double>();
    } else if (key == "box") {
      auto b = value.get<std::vector<double>>();
      if (b.size() != 2) throw std::invalid_argument("config \"box\" must be [lo, hi]");
      config.box = std::pair{b[0], b[1]};
    } else if (key == "suite" || key == "suites") {
      config.suites = one_or_many<std::string>(value);
    } else if (key == "report") {
      config.report = value.get<std::string>();
    } else if (key == "mutation") {
      config.mutation = mutation_from_string(value.get<std::string>());
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

void emit_report(const SuiteResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "'");
  out << to_json(result).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

}  // namespace adsforms
