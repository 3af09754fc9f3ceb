#include "cli.hpp"

#include <cstdio>
#include <fstream>

#include <CLI11.hpp>

#include "adsforms/json_io.hpp"

namespace adsforms::cli {

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string format_sign(const std::optional<int>& s) { return s ? (*s > 0 ? "+1" : "-1") : "none"; }

}  // namespace

void validate(const SuiteConfig& c) {
  for (int n : c.dims)
    if (n < 2 || n > 4) throw UsageError("n must be in 2..4");
  if (!(c.H > 0.0)) throw UsageError("H must be positive");
  if (c.points < 1) throw UsageError("points must be at least 1");
  if (!(c.tol.relative > 0.0) || !(c.tol.absolute_floor > 0.0)) throw UsageError("tolerances must be positive");
  for (int p : c.degrees)
    if (p < 0) throw UsageError("degrees must be non-negative");
  if (c.box && !(c.box->first < c.box->second)) throw UsageError("box needs lo < hi");
  for (const auto& s : c.suites)
    if (s != "theorems" && s != "props" && s != "examples" && s != "all")
      throw UsageError("unknown suite '" + s + "' (theorems, props, examples, all)");
}

Invocation parse_config(int argc, const char* const* argv) {
  CLI::App app{"Checks exterior-calculus restriction and continuation identities on (A)dS and sphere hypersurfaces"};
  std::string config_path, report_path, mutate, check_input;
  std::vector<std::string> geometries, suites;
  std::vector<int> dims, degrees;
  std::vector<double> homogeneities, box;
  double H = 0, tol = 0, abs_floor = 0;
  int points = 0;
  std::uint64_t seed = 0;

  app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* o_geo = app.add_option("--geometry", geometries, "ds, ads, sphere (comma separated)")->delimiter(',');
  auto* o_n = app.add_option("--n", dims, "hypersurface dimensions, 2..4")->delimiter(',');
  auto* o_H = app.add_option("--H", H, "curvature scale, H > 0");
  auto* o_deg = app.add_option("--degree", degrees, "form degrees (default 0..n+1)")->delimiter(',');
  auto* o_s = app.add_option("--homogeneity", homogeneities, "homogeneity degrees s")->delimiter(',');
  auto* o_pts = app.add_option("--points", points, "sample points per case");
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_tol = app.add_option("--tol", tol, "relative tolerance");
  auto* o_abs = app.add_option("--abs-floor", abs_floor, "absolute tolerance floor");
  auto* o_suite = app.add_option("--suite", suites, "theorems, props, examples, all; empty selects nothing")
                      ->delimiter(',')
                      ->allow_extra_args(false);
  auto* o_report = app.add_option("--report", report_path, "write the JSON report to this path");
  auto* o_box = app.add_option("--box", box, "chart box lo,hi for every coordinate")->delimiter(',')->expected(2);
  auto* o_mut = app.add_option("--mutate", mutate)->group("");
  auto* check = app.add_subcommand("check", "evaluate the identities for one form given as JSON");
  check->add_option("--input", check_input, "case file with geometry, chart and form")->required();

  Invocation inv;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    inv.help_only = true;
    inv.help = app.help();
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  SuiteConfig& config = inv.config;
  if (!config_path.empty()) {
    try {
      apply_config_json(read_json_file(config_path), config);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    } catch (const json::exception& e) {
      throw UsageError("config: " + std::string(e.what()));
    }
  }
  try {
    if (o_geo->count()) {
      config.geometries.clear();
      for (const auto& g : geometries) config.geometries.push_back(geometry_case_from_string(g));
    }
    if (o_mut->count()) config.mutation = mutation_from_string(mutate);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o_n->count()) config.dims = dims;
  if (o_H->count()) config.H = H;
  if (o_deg->count()) config.degrees = degrees;
  if (o_s->count()) config.homogeneities = homogeneities;
  if (o_pts->count()) config.points = points;
  if (o_seed->count()) config.seed = seed;
  if (o_tol->count()) config.tol.relative = tol;
  if (o_abs->count()) config.tol.absolute_floor = abs_floor;
  if (o_suite->count()) {
    config.suites.clear();
    for (const auto& name : suites)
      if (!name.empty()) config.suites.push_back(name);
  }
  if (o_report->count()) config.report = report_path;
  if (o_box->count()) config.box = std::pair{box[0], box[1]};
  if (*check) inv.check_input = check_input;
  validate(config);
  inv.help = app.help();
  return inv;
}

int run(const SuiteConfig& config, std::ostream& out) {
  const SuiteResult result = run_suite(config);
  for (const auto& r : result.reports) {
    if (r.informational || r.pass) continue;
    char line[256];
    std::snprintf(line, sizeof line, "FAIL %-32s %-6s n=%d p=%d residual=%.3e", r.identity.c_str(), r.geometry.c_str(),
                  r.n, r.degree, r.max_residual);
    out << line;
    if (r.homogeneity) out << " s=" << *r.homogeneity;
    if (!r.error.empty()) out << " error: " << r.error;
    out << '\n';
  }
  out << "pass " << result.pass_count() << "  fail " << result.fail_count() << "  sign_eq5 "
      << format_sign(result.sign_eq5) << "  coeff_eq2 " << to_string(result.coeff_eq2) << '\n';
  if (!config.report.empty()) emit_report(result, config.report);
  return result.fail_count() == 0 ? 0 : 1;
}

int run_check(const std::string& path, const Tolerance& tol, std::ostream& out) {
  const json input = read_json_file(path);
  const Geometry geo = geometry_from_json(input.at("geometry"));
  const GraphChart chart(geo, input.contains("chart") ? chart_options_from_json(input["chart"]) : ChartOptions{});
  const Form form = form_from_json(input.at("form"));
  if (form.space() != Space::ambient || form.dim() != geo.dim())
    throw UsageError("check: the form must be an ambient form of dimension n+1");
  const std::string identity = input.value("identity", "all");
  const int count = input.value("points", 20);
  const std::uint64_t seed = input.value("seed", std::uint64_t{42});
  const auto points = sample_points(chart, count, seed);
  const auto off = sample_off_sigma(chart, count, seed + 1);
  const TheoremContext ctx{chart, points, off, tol};

  SuiteResult result;
  auto want = [&](const char* name) { return identity == "all" || identity == name; };
  auto add = [&](ResidualReport r) { result.reports.push_back(std::move(r)); };
  if (form.degree() >= 1 && want("eq2")) add(th1_delta_residual(form, ctx));
  if (want("eq3")) add(th1_box_residual(form, ctx));
  if (want("eq3_dilation"))
    for (auto& r : th1_box_dilation_variant_residual(form, ctx)) add(std::move(r));
  if (want("th3")) add(th3_residual(form, ctx));
  if (input.contains("homogeneity") && form.degree() <= geo.n()) {
    const double s = input["homogeneity"].get<double>();
    if (want("eq4"))
      for (auto& r : th2_delta_residual(form, s, ctx)) add(std::move(r));
    if (want("eq5") || want("th4")) {
      const auto c = continuation_residuals(form, s, ctx);
      result.sign_eq5 = adjudicate_sign({c});
      for (const auto* r : {&c.box_transverse, &c.sub_identity, &c.lb_transverse, &c.lb_consistency, &c.box_ambient[0],
                            &c.box_ambient[1], &c.lb_ambient[0], &c.lb_ambient[1]})
        add(*r);
    }
  }
  if (result.reports.empty()) throw UsageError("check: identity '" + identity + "' selects nothing for this form");
  out << to_json(result).dump(2) << '\n';
  return result.fail_count() == 0 ? 0 : 1;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_config(argc, argv);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }
  if (inv.help_only) {
    out << inv.help;
    return 0;
  }
  try {
    if (inv.check_input) return run_check(*inv.check_input, inv.config.tol, out);
    return run(inv.config, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace adsforms::cli
