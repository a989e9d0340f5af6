// Command-line driver: builds charts from a config file, runs the residual
// suites, sweeps the family parameter plane and exports meshes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "prodgeo/catalog.hpp"
#include "prodgeo/diagnostics.hpp"
#include "prodgeo/errors.hpp"
#include "prodgeo/profile_ode.hpp"
#include "prodgeo/rotational.hpp"
#include "prodgeo/umbilical_family.hpp"
#include "prodgeo/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace prodgeo;
using cli::Config;
using cli::ConfigError;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  int grid_override = 0;
  std::vector<std::string> tol_overrides;
};

struct BuiltChart {
  Chart chart;
  std::string kind;
  bool offset = false;   // family charts collapse along s = 0
  FdConfig fd;
};

Tolerances resolve_tolerances(const Config& cfg, const std::vector<std::string>& overrides) {
  Tolerances tol;
  auto apply = [&tol](const std::string& name, double value) {
    if (value <= 0.0) throw ConfigError("tolerance " + name + " must be positive");
    if (name == "surface")
      tol.surface = value;
    else if (name == "frame")
      tol.frame = value;
    else if (name == "sff")
      tol.sff = value;
    else if (name == "compat")
      tol.compat = value;
    else if (name == "rank")
      tol.rank = value;
    else
      throw ConfigError("unknown tolerance name: " + name);
  };
  for (const auto& name : {"surface", "frame", "sff", "compat", "rank"})
    if (cfg.has(std::string("tol.") + name)) apply(name, cfg.num(std::string("tol.") + name));
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects NAME=VALUE");
    apply(ov.substr(0, eq), std::stod(ov.substr(eq + 1)));
  }
  return tol;
}

BuiltChart build_chart(const Config& cfg) {
  BuiltChart out;
  out.kind = cfg.get("chart.kind");
  if (out.kind == "family" || out.kind == "family_z") {
    const FamilyParams fp(cfg.num("family.p"), cfg.num("family.q"), cfg.integer("family.m", 2));
    out.chart = out.kind == "family" ? Y_chart(fp) : Z_chart(fp);
    out.offset = true;
  } else if (out.kind == "rotational") {
    out.chart = rotational_chart(rotational_fixture(cfg.get("rotational.fixture")));
  } else if (out.kind == "tube") {
    out.chart = build_tube(tube_fixture(cfg.get("tube.fixture")));
  } else if (out.kind == "builtin") {
    const std::string name = cfg.get("builtin.name");
    if (name == "slice_sphere")
      out.chart = slice_sphere_chart(cfg.num("builtin.param", 0.8));
    else if (name == "great_sphere")
      out.chart = great_sphere_chart();
    else if (name == "product_hypersurface")
      out.chart = product_hypersurface_chart();
    else if (name == "vertical_cylinder")
      out.chart = vertical_cylinder_chart();
    else if (name == "latitude_cylinder")
      out.chart = latitude_cylinder_chart(cfg.num("builtin.param", 1.0));
    else if (name == "tilted_graph")
      out.chart = tilted_graph_chart();
    else
      throw ConfigError("unknown builtin chart: " + name);
  } else {
    throw ConfigError("unknown chart.kind: " + out.kind);
  }
  if (cfg.has("chart.perturb")) {
    out.chart = perturbed_chart(out.chart, cfg.num("chart.perturb"));
    out.fd.surface_guard = 1e9;  // let the residual suite see the damage
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw ConfigError("cannot write " + path.string());
  outf << text;
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int cmd_check(const Common& common) {
  const Config cfg = Config::from_file(common.config_path);
  const Tolerances tol = resolve_tolerances(cfg, common.tol_overrides);
  const BuiltChart built = build_chart(cfg);

  CheckOptions opt;
  opt.grid_points = common.grid_override > 0 ? common.grid_override
                                             : cfg.integer("grid.points", 11);
  opt.margin = cfg.num("grid.margin", 1e-2);
  opt.offset_last_axis = built.offset;
  opt.tol = tol;
  opt.fd = built.fd;

  std::vector<DiagnosticReport> reports = identity_checks(built.chart, opt);
  const auto grid = standard_grid(built.chart, opt);

  auto wrap = [&](auto fn) {
    return [fn, &opt](const Chart& c, const Eigen::VectorXd& u) { return fn(c, u, opt.fd); };
  };
  if (built.kind == "family" || built.kind == "family_z") {
    reports.push_back(sweep_residual(
        "umbilicity", built.chart, grid, tol.sff,
        [&](const Chart& c, const Eigen::VectorXd& u) -> std::optional<double> {
          return umbilicity_residual(c, u, opt.fd);
        }));
    reports.push_back(sweep_residual("class_a", built.chart, grid, tol.sff,
                                     wrap([](const Chart& c, const Eigen::VectorXd& u,
                                             const FdConfig& fd) {
                                       return class_a_residual(c, u, fd);
                                     })));
    reports.push_back(sweep_residual(
        "flat_normal_bundle", built.chart, grid, tol.sff,
        [&](const Chart& c, const Eigen::VectorXd& u) -> std::optional<double> {
          return flat_normal_bundle_residual(c, u, opt.fd);
        }));
  } else if (built.kind == "rotational") {
    reports.push_back(sweep_residual("restricted_umbilicity", built.chart, grid, tol.sff,
                                     wrap([](const Chart& c, const Eigen::VectorXd& u,
                                             const FdConfig& fd) {
                                       return restricted_umbilicity_residual(c, u, fd);
                                     })));
    reports.push_back(sweep_residual("class_a", built.chart, grid, tol.sff,
                                     wrap([](const Chart& c, const Eigen::VectorXd& u,
                                             const FdConfig& fd) {
                                       return class_a_residual(c, u, fd);
                                     })));
  } else if (built.kind == "tube") {
    reports.push_back(sweep_residual("class_a", built.chart, grid, tol.sff,
                                     wrap([](const Chart& c, const Eigen::VectorXd& u,
                                             const FdConfig& fd) {
                                       return class_a_residual(c, u, fd);
                                     })));
  }

  bool pass = true;
  ordered_json checks = ordered_json::array();
  for (const auto& rep : reports) {
    pass = pass && rep.pass;
    std::printf("%s %-22s max=%.6e tol=%.1e\n", rep.pass ? "PASS" : "FAIL", rep.name.c_str(),
                rep.max_residual, rep.tolerance);
    checks.push_back({{"name", rep.name},
                      {"max_residual", rep.max_residual},
                      {"tolerance", rep.tolerance},
                      {"pass", rep.pass},
                      {"grid", rep.grid}});
  }

  ordered_json report;
  report["schema"] = 1;
  report["artifact"] = {{"name", "prodgeo"}, {"version", kVersion}};
  ordered_json cfg_echo;
  for (const auto& [k, v] : cfg.values) cfg_echo[k] = v;
  report["config"] = cfg_echo;
  report["chart"] = built.chart.label;
  report["grid_points"] = opt.grid_points;
  report["checks"] = checks;
  report["pass"] = pass;
  write_text(fs::path(common.out_dir) / "report.json", report.dump(2) + "\n");
  return pass ? 0 : 1;
}

int cmd_export(const Common& common) {
  const Config cfg = Config::from_file(common.config_path);
  const BuiltChart built = build_chart(cfg);
  if (built.chart.m != 2)
    throw UnsupportedDimension("mesh export handles surface charts only");

  const int n = common.grid_override > 0 ? common.grid_override : cfg.integer("grid.points", 33);
  const double margin = cfg.num("grid.margin", 1e-2);
  const auto grid = built.offset ? offset_grid(built.chart.domain, n, margin)
                                 : interior_grid(built.chart.domain, n, margin);

  const std::string projection = cfg.get("export.projection", "coords");
  std::vector<int> axes = {0, 1, 2};
  if (cfg.has("export.axes")) axes = cfg.int_list("export.axes");
  if (axes.size() != 3) throw ConfigError("export.axes needs exactly three indices");

  std::string obj;
  std::string csv;
  for (const auto& u : grid) {
    const Eigen::VectorXd pt = built.chart.eval(u);
    Eigen::VectorXd proj;
    if (projection == "coords") {
      proj = pt;
    } else if (projection == "conformal") {
      if (built.chart.ambient.epsilon != 1)
        throw ConfigError("the conformal projection needs the spherical ambient");
      proj = conformal_phi_point(pt);
    } else {
      throw ConfigError("unknown export.projection: " + projection);
    }
    for (int a : axes)
      if (a < 0 || a >= proj.size())
        throw ConfigError("export axis out of range: " + std::to_string(a));
    obj += "v " + format_g(proj[axes[0]]) + " " + format_g(proj[axes[1]]) + " " +
           format_g(proj[axes[2]]) + "\n";
    for (Eigen::Index i = 0; i < pt.size(); ++i)
      csv += (i ? "," : "") + format_g(pt[i]);
    csv += "\n";
  }
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      const int a = i * n + j + 1, b = (i + 1) * n + j + 1;
      obj += "f " + std::to_string(a) + " " + std::to_string(b) + " " +
             std::to_string(b + 1) + " " + std::to_string(a + 1) + "\n";
    }

  write_text(fs::path(common.out_dir) / "mesh.obj", obj);
  write_text(fs::path(common.out_dir) / "points.csv", csv);
  std::printf("wrote %d vertices, %d faces\n", n * n, (n - 1) * (n - 1));
  return 0;
}

int cmd_sweep(const Common& common) {
  const Config cfg = Config::from_file(common.config_path);
  const Tolerances tol = resolve_tolerances(cfg, common.tol_overrides);
  const std::vector<double> ps = cfg.num_list("sweep.p_values");
  const std::vector<double> fracs = cfg.num_list("sweep.q_fracs");
  const int m = cfg.integer("sweep.m", 2);
  const int grid_n = common.grid_override > 0 ? common.grid_override
                                              : cfg.integer("grid.points", 9);

  std::string csv = "p,q,r,h,ell,max_umbilicity,varphi_mid,arclength_mid\n";
  bool pass = true;
  for (double p : ps)
    for (double frac : fracs) {
      if (frac < 0.0 || frac >= 1.0)
        throw ConfigError("sweep.q_fracs entries must lie in [0, 1)");
      const double qmin = (p - 1.0) * (p - 1.0);
      const double q = qmin + frac * (p * p - qmin);
      const FamilyParams fp(p, q, m);
      const Chart Y = Y_chart(fp);

      double umb = 0.0;
      for (const auto& u : offset_grid(Y.domain, grid_n)) {
        umb = std::max(umb, umbilicity_residual(Y, u));
      }
      const Chart padded = pad_chart(Y, 2);
      const auto red =
          codimension_reduction_check(padded, offset_grid(padded.domain, 5, 5e-2), tol.rank);

      const double smid = 0.5 * fp.half_width();
      csv += format_g(p) + "," + format_g(q) + "," + format_g(fp.r()) + "," +
             format_g(fp.h()) + "," + std::to_string(red.ell) + "," + format_g(umb) + "," +
             format_g(varphi(p, q, smid)) + "," + format_g(arclength(fp, smid)) + "\n";

      const int expected_ell = fp.h() > 1e-12 ? 2 : 1;
      if (umb > tol.sff || red.ell != expected_ell) pass = false;
    }

  write_text(fs::path(common.out_dir) / "sweep.csv", csv);
  std::printf("%s sweep over %zu rows\n", pass ? "PASS" : "FAIL", ps.size() * fracs.size());
  return pass ? 0 : 1;
}

int cmd_ode_compare(const Common& common) {
  const Config cfg = Config::from_file(common.config_path);
  const double p = cfg.num("ode.p", 2.0);
  const double q = cfg.num("ode.q", 1.0);
  const FamilyParams fp(p, q);
  const double w = fp.half_width();
  const double lo = cfg.num("ode.lo", 0.15 * w);
  const double hi = cfg.num("ode.hi", 0.85 * w);

  const ODEParams par(p, q, lo, hi);
  const SolutionBasis basis = closed_form_basis(par);
  const auto plus = integrate_ode(par, basis.rho_plus.f(lo), basis.rho_plus.d1(lo), lo, hi);
  const auto minus = integrate_ode(par, basis.rho_minus.f(lo), basis.rho_minus.d1(lo), lo, hi);

  double dev_plus = 0.0, dev_minus = 0.0;
  std::string csv = "s,closed_plus,integrated_plus,closed_minus,integrated_minus\n";
  const size_t stride = std::max<size_t>(1, plus.s.size() / 512);
  for (size_t i = 0; i < plus.s.size(); ++i) {
    dev_plus = std::max(dev_plus, std::abs(plus.f[i] - basis.rho_plus.f(plus.s[i])));
    dev_minus = std::max(dev_minus, std::abs(minus.f[i] - basis.rho_minus.f(minus.s[i])));
    if (i % stride == 0)
      csv += format_g(plus.s[i]) + "," + format_g(basis.rho_plus.f(plus.s[i])) + "," +
             format_g(plus.f[i]) + "," + format_g(basis.rho_minus.f(minus.s[i])) + "," +
             format_g(minus.f[i]) + "\n";
  }
  write_text(fs::path(common.out_dir) / "ode_compare.csv", csv);

  const bool pass = dev_plus < 1e-7 && dev_minus < 1e-7 && plus.richardson_delta < 1e-9;
  std::printf("%s closed-form vs integrator: plus %.3e minus %.3e (richardson %.3e)\n",
              pass ? "PASS" : "FAIL", dev_plus, dev_minus, plus.richardson_delta);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical geometry of product-space submanifolds"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "configuration file")->required();
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--grid", common.grid_override, "grid points per axis");
    sub->add_option("--tol", common.tol_overrides, "tolerance override NAME=VALUE");
  };

  CLI::App* check = app.add_subcommand("check", "run the residual suite for a chart");
  CLI::App* exportc = app.add_subcommand("export", "write a surface mesh and point cloud");
  CLI::App* sweep = app.add_subcommand("sweep", "sweep the family parameter plane");
  CLI::App* ode = app.add_subcommand("ode-compare", "closed-form solutions vs integrator");
  for (CLI::App* sub : {check, exportc, sweep, ode}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(common);
    if (exportc->parsed()) return cmd_export(common);
    if (sweep->parsed()) return cmd_sweep(common);
    if (ode->parsed()) return cmd_ode_compare(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
