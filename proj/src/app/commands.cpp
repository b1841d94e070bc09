#include "wfl/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wfl/error.hpp"
#include "wfl/limit_solver.hpp"
#include "wfl/variational.hpp"
#include "wfl/viscous_solver.hpp"

namespace wfl::app {

namespace {

std::string f(double x) { return format_double(x); }

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::Config, what);
}

}  // namespace

CsvTable coeffs_table(const ExperimentConfig& c) {
  const FrictionCoefficients& fc = c.coefficients;
  auto [mu_p, mu_m] = perceived_extrema(c.profile, slope_factor(c.model));
  CsvTable t;
  t.header = {"model",     "alpha",          "mu_plus",         "mu_minus",
              "rho_plus",  "rho_minus",      "mu_plus_oracle",  "mu_minus_oracle",
              "oracle_max_deviation"};
  double dev = std::max(std::abs(fc.mu_plus - mu_p), std::abs(fc.mu_minus - mu_m));
  t.add_row({model_name(c.model), f(fc.alpha), f(fc.mu_plus), f(fc.mu_minus),
             f(fc.rho_plus), f(fc.rho_minus), f(mu_p), f(mu_m), f(dev)});
  return t;
}

std::string coeffs_json(const ExperimentConfig& c) {
  const FrictionCoefficients& fc = c.coefficients;
  nlohmann::json j;
  j["model"] = model_name(c.model);
  j["omega_plus"] = c.extrema.omega_plus;
  j["omega_minus"] = c.extrema.omega_minus;
  j["slope_factor"] = slope_factor(c.model);
  j["alpha"] = fc.alpha;
  j["mu_plus"] = fc.mu_plus;
  j["mu_minus"] = fc.mu_minus;
  j["rho_plus"] = fc.rho_plus;
  j["rho_minus"] = fc.rho_minus;
  return j.dump(2) + "\n";
}

CsvTable sweep_theta_table(const ExperimentConfig& c) {
  const double wp = c.extrema.omega_plus, wm = c.extrema.omega_minus;
  double lo = 0.0, hi = 0.0;
  std::function<BristleModel(double)> make;
  if (const auto* s = std::get_if<SlantedSpring>(&c.model)) {
    lo = 0.01;
    hi = std::atan(1.0 / wp) - 0.01;
    make = [s](double th) {
      SlantedSpring m = *s;
      m.theta = th;
      return BristleModel{m};
    };
  } else if (const auto* a = std::get_if<AngularSpring>(&c.model)) {
    // theta_lim must also stay above the rest angle
    lo = std::max(std::atan(-wm), a->theta_rest) + 0.01;
    hi = std::atan(1.0 / wp) - 0.01;
    make = [a](double th) {
      AngularSpring m = *a;
      m.L = m.h / std::cos(th);
      return BristleModel{m};
    };
  } else {
    config_error("sweep-theta needs a slanted or angular model");
  }
  lo = c.sweep_theta.theta_min.value_or(lo);
  hi = c.sweep_theta.theta_max.value_or(hi);
  if (!(lo < hi)) config_error("sweep-theta: empty angle range");

  // Reject the whole grid up front if any angle is inadmissible.
  const int n = c.sweep_theta.n;
  std::vector<BristleModel> models;
  for (int i = 0; i < n; ++i) {
    double th = lo + (hi - lo) * i / (n - 1);
    BristleModel m = make(th);
    try {
      check_model(m);
    } catch (const Error& e) {
      config_error("sweep-theta: " + std::string(e.what()));
    }
    AdmissibilityReport r = validate(m, c.extrema);
    if (!r.admissible())
      config_error("sweep-theta: angle " + f(th) + " inadmissible: " + r.failures());
    models.push_back(m);
  }

  CsvTable t;
  t.header = {"theta", "alpha", "mu_plus", "mu_minus", "mu_plus_oracle",
              "mu_minus_oracle", "rho_plus", "rho_minus"};
  for (int i = 0; i < n; ++i) {
    const BristleModel& m = models[i];
    // the rod is built from L, so report the angle it actually has
    double th = lo + (hi - lo) * i / (n - 1);
    if (const auto* rod = std::get_if<AngularSpring>(&m)) th = rod->theta_lim();
    double a = slope_factor(m);
    auto [mp, mm] = mu_from_omega(wp, wm, a);
    auto [op, om] = perceived_extrema(c.profile, a);
    double alpha = energetic_factor(m);
    double rp = std::numeric_limits<double>::quiet_NaN(), rm = rp;
    if (alpha != 0.0) std::tie(rp, rm) = split_friction(alpha, mp, mm);
    t.add_row({f(th), f(alpha), f(mp), f(mm), f(op), f(om), f(rp), f(rm)});
  }
  return t;
}

CsvTable limit_table(const Trajectory& tr) {
  CsvTable t;
  t.header = {"t", "z", "z_tilde_minus", "z_tilde_plus", "dissipation_cum", "energy"};
  for (std::size_t i = 0; i < tr.size(); ++i)
    t.add_row({f(tr.times[i]), f(tr.z[i]), f(tr.z_tilde_minus[i]), f(tr.z_tilde_plus[i]),
               f(tr.dissipation_cum[i]), f(tr.energy[i])});
  return t;
}

CsvTable viscous_table(const Trajectory& tr) {
  CsvTable t;
  t.header = {"t", "z", "zdot", "xi", "energy", "dissipation_cum", "delta_eps"};
  for (std::size_t i = 0; i < tr.size(); ++i)
    t.add_row({f(tr.times[i]), f(tr.z[i]), f(tr.zdot[i]), f(tr.xi[i]), f(tr.energy[i]),
               f(tr.dissipation_cum[i]), f(tr.delta_eps[i])});
  return t;
}

CsvTable convergence_table(const SweepReport& r) {
  CsvTable t;
  t.header = {"epsilon", "sup_error"};
  for (std::size_t w = 0; w < r.windows.size(); ++w)
    t.header.push_back("diss_gap_w" + std::to_string(w + 1));
  t.header.push_back("runtime_s");
  t.header.push_back("fitted_order");
  const std::string order = r.fitted_order ? f(*r.fitted_order) : "";
  for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
    std::vector<std::string> row{f(r.epsilons[i]), f(r.sup_errors[i])};
    for (double g : r.dissipation_gaps[i]) row.push_back(f(g));
    row.push_back(f(r.runtimes[i]));
    row.push_back(order);
    t.add_row(std::move(row));
  }
  return t;
}

CsvTable nap_table(const ExperimentConfig& c) {
  const auto* rod = std::get_if<AngularSpring>(&c.model);
  if (!rod) config_error("nap needs an angular model");
  if (!c.nap_theta_with) config_error("nap needs nap.theta_with");
  const double tl = rod->theta_lim();
  const double with = *c.nap_theta_with;
  auto [mu_p, mu_m] = mu_from_omega(c.extrema.omega_plus, c.extrema.omega_minus,
                                    1.0 / std::tan(tl));
  auto [rw, ra] = nap_coefficients(mu_p, tl, with);
  // nap_coefficients is normalised to k = h = 1
  const double scale = rod->k / rod->h;
  rw *= scale;
  ra *= scale;

  AngularSpring with_rod = *rod, against_rod = *rod;
  with_rod.theta_rest = with;
  against_rod.theta_rest = -with;
  const double alpha_with = energetic_factor(with_rod);
  const double alpha_against = energetic_factor(against_rod);
  // a rigid rod keeps theta_rest = theta_with and slides backwards with rho-
  const double rigid_rho = alpha_with * mu_m;

  CsvTable t;
  t.header = {"direction", "theta_rest", "alpha", "rho", "tension", "compressed", "ratio_to_with"};
  auto row = [&](const char* name, const AngularSpring& m, double alpha, double rho) {
    double T = axial_tension(m, rho);
    t.add_row({name, f(m.theta_rest), f(alpha), f(rho), f(T), T < 0.0 ? "1" : "0",
               f(rho / rw)});
  };
  row("with", with_rod, alpha_with, rw);
  row("against", against_rod, alpha_against, ra);
  row("rigid_backward", with_rod, alpha_with, rigid_rho);
  return t;
}

CsvTable perceived_table(const ExperimentConfig& c) {
  PerceivedProfile p(c.profile, slope_factor(c.model));
  PerceivedProfile::Table tab = p.tabulate(c.perceived_samples);
  CsvTable t;
  t.header = {"z", "W", "W_prime", "alpha_W_prime"};
  const double alpha = c.coefficients.alpha;
  for (std::size_t i = 0; i < tab.z.size(); ++i)
    t.add_row({f(tab.z[i]), f(tab.value[i]), f(tab.slope[i]), f(alpha * tab.slope[i])});
  return t;
}

CsvTable k_table(const ExperimentConfig& c) {
  const double rp = c.coefficients.rho_plus, rm = c.coefficients.rho_minus;
  const double span = rp - rm;
  double lo = c.k_table.xi_min.value_or(rm - 0.5 * span);
  double hi = c.k_table.xi_max.value_or(rp + 0.5 * span);
  if (!(lo < hi)) config_error("k_table: xi_min must be below xi_max");
  KTable table(limit_slope_sampler(c.model, c.profile), lo, hi, c.k_table.n);
  CsvTable t;
  t.header = {"xi", "K"};
  for (std::size_t i = 0; i < table.xi().size(); ++i)
    t.add_row({f(table.xi()[i]), f(table.k()[i])});
  return t;
}

namespace {

struct Globals {
  std::string config_path;
  std::string out_dir;
  bool svg = false;
};

struct Emitter {
  std::filesystem::path dir;
  std::vector<std::pair<std::string, CsvTable>> csv;
  std::vector<std::pair<std::string, std::string>> text;
  std::vector<std::pair<std::string, PlotSpec>> svg;

  void flush() const {
    std::filesystem::create_directories(dir);
    for (const auto& [name, t] : csv) write_csv(dir / name, t);
    for (const auto& [name, body] : text) {
      std::ofstream out(dir / name);
      out << body;
    }
    for (const auto& [name, plot] : svg) write_svg(dir / name, plot);
    for (const auto& [name, _] : csv) std::cout << "wrote " << (dir / name).string() << "\n";
    for (const auto& [name, _] : text) std::cout << "wrote " << (dir / name).string() << "\n";
    for (const auto& [name, _] : svg) std::cout << "wrote " << (dir / name).string() << "\n";
  }
};

ExperimentConfig resolve_config(const Globals& g) {
  return g.config_path.empty() ? default_config() : load_config(g.config_path);
}

Emitter make_emitter(const Globals& g, const ExperimentConfig& c) {
  Emitter e;
  e.dir = g.out_dir.empty() ? c.output.dir : std::filesystem::path(g.out_dir);
  return e;
}

bool want_svg(const Globals& g, const ExperimentConfig& c) { return g.svg || c.output.svg; }

void cmd_coeffs(const Globals& g) {
  ExperimentConfig c = resolve_config(g);
  Emitter e = make_emitter(g, c);
  e.csv.emplace_back("coeffs.csv", coeffs_table(c));
  e.text.emplace_back("coeffs.json", coeffs_json(c));
  e.flush();
}

void cmd_sweep_theta(const Globals& g) {
  ExperimentConfig c = resolve_config(g);
  Emitter e = make_emitter(g, c);
  CsvTable t = sweep_theta_table(c);
  if (want_svg(g, c)) {
    PlotSpec p;
    p.title = "Friction coefficients, " + model_name(c.model) + " model";
    p.x_label = std::holds_alternative<SlantedSpring>(c.model) ? "theta" : "theta_lim";
    p.y_label = "coefficient";
    std::vector<double> neg = t.numbers("mu_minus");
    for (double& v : neg) v = -v;
    p.series.push_back({"mu+", t.numbers("theta"), t.numbers("mu_plus"), "#1f77b4"});
    p.series.push_back({"-mu-", t.numbers("theta"), neg, "#d62728"});
    e.svg.emplace_back("sweep_theta.svg", p);
  }
  e.csv.emplace_back("sweep_theta.csv", std::move(t));
  e.flush();
}

void cmd_simulate(const Globals& g, std::optional<double> epsilon, bool with_limit) {
  ExperimentConfig c = resolve_config(g);
  double eps = epsilon.value_or(c.simulation.epsilons.front());
  check_epsilon(c, eps);
  Emitter e = make_emitter(g, c);

  const LimitSystem limit = c.limit_system();
  const std::vector<double> grid = uniform_grid(limit.horizon(), c.simulation.grid);
  WigglySystem sys(limit, c.model, c.profile, eps, c.simulation.gamma);
  Trajectory visc = integrate(sys, c.simulation.z0, grid, c.integrator());
  std::cout << "epsilon " << f(eps) << ": energy balance residual "
            << f(energy_balance_residual(sys, visc)) << "\n";
  std::optional<Trajectory> lim;
  if (with_limit) lim = solve_limit(limit, c.simulation.z0, grid);

  if (want_svg(g, c)) {
    PlotSpec p;
    p.title = "Viscous and limit trajectories, eps = " + f(eps);
    p.x_label = "t";
    p.y_label = "z";
    PlotBand band{"elastic strip", grid, {}, {}};
    for (double t : grid) {
      auto [lo, hi] = elastic_strip(limit, t);
      band.lower.push_back(lo);
      band.upper.push_back(hi);
    }
    p.bands.push_back(std::move(band));
    p.series.push_back({"z_eps", visc.times, visc.z, "#1f77b4"});
    if (lim) p.series.push_back({"limit z", lim->times, lim->z, "#d62728", true});
    e.svg.emplace_back("overlay.svg", p);
  }
  e.csv.emplace_back("viscous.csv", viscous_table(visc));
  if (lim) e.csv.emplace_back("limit.csv", limit_table(*lim));
  e.flush();
}

int cmd_converge(const Globals& g) {
  ExperimentConfig c = resolve_config(g);
  Emitter e = make_emitter(g, c);
  std::vector<double> eps = c.simulation.epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  SweepSetup setup{c.limit_system(), c.model,         c.profile,     c.simulation.gamma,
                   c.simulation.z0,  c.simulation.grid, c.integrator()};
  SweepReport r = run_sweep(setup, eps, c.windows());

  for (std::size_t w = 0; w < r.windows.size(); ++w)
    std::cout << "window " << w + 1 << " [" << f(r.windows[w].first) << ", "
              << f(r.windows[w].second) << "]: limit dissipation "
              << f(r.limit_dissipation[w]) << "\n";
  if (r.fitted_order) std::cout << "fitted order " << f(*r.fitted_order) << "\n";

  CsvTable t = convergence_table(r);
  if (want_svg(g, c) && !r.epsilons.empty()) {
    PlotSpec p;
    p.title = "Convergence in epsilon";
    p.x_label = "epsilon";
    p.y_label = "error";
    p.log_x = p.log_y = true;
    PlotSeries sup{"sup |z_eps - z|", r.epsilons, r.sup_errors, "#1f77b4"};
    sup.markers = true;
    p.series.push_back(sup);
    std::vector<double> gap;
    for (const auto& row : r.dissipation_gaps) gap.push_back(row.front());
    PlotSeries diss{"dissipation gap (window 1)", r.epsilons, gap, "#d62728"};
    diss.markers = true;
    p.series.push_back(diss);
    e.svg.emplace_back("convergence.svg", p);
  }
  e.csv.emplace_back("convergence.csv", std::move(t));
  e.flush();
  if (r.error) {
    std::cerr << "error: " << *r.error << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

void cmd_nap(const Globals& g) {
  ExperimentConfig c = resolve_config(g);
  Emitter e = make_emitter(g, c);
  CsvTable t = nap_table(c);
  std::cout << "against/with ratio " << t.cell(1, "ratio_to_with") << "\n";
  e.csv.emplace_back("nap.csv", std::move(t));
  e.flush();
}

void cmd_perceived(const Globals& g) {
  ExperimentConfig c = resolve_config(g);
  Emitter e = make_emitter(g, c);
  CsvTable t = perceived_table(c);
  if (want_svg(g, c)) {
    PlotSpec p;
    p.title = "Perceived profile, a = " + f(slope_factor(c.model));
    p.x_label = "z";
    p.y_label = "W'";
    p.series.push_back({"W'", t.numbers("z"), t.numbers("W_prime"), "#1f77b4"});
    e.svg.emplace_back("perceived.svg", p);
  }
  e.csv.emplace_back("perceived.csv", std::move(t));
  e.flush();
}

void cmd_k_table(const Globals& g) {
  ExperimentConfig c = resolve_config(g);
  Emitter e = make_emitter(g, c);
  CsvTable t = k_table(c);
  if (want_svg(g, c)) {
    PlotSpec p;
    p.title = "Dissipation potential K";
    p.x_label = "xi";
    p.y_label = "K";
    std::vector<double> xi = t.numbers("xi"), absxi;
    for (double x : xi) absxi.push_back(std::abs(x));
    p.series.push_back({"K", xi, t.numbers("K"), "#1f77b4"});
    p.series.push_back({"|xi|", xi, absxi, "#7f7f7f", true});
    e.svg.emplace_back("k_table.svg", p);
  }
  e.csv.emplace_back("k_table.csv", std::move(t));
  e.flush();
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Wiggly friction lab: friction coefficients, viscous and limit simulations"};
  Globals g;
  app.add_option("--config", g.config_path, "JSON experiment file");
  app.add_option("--out", g.out_dir, "Output directory (overrides output.dir)");
  app.add_flag("--svg", g.svg, "Also write SVG plots");
  app.require_subcommand(1);

  auto* coeffs = app.add_subcommand("coeffs", "Friction coefficients of the configured model");
  auto* sweep = app.add_subcommand("sweep-theta", "Coefficients over a grid of bristle angles");
  auto* simulate = app.add_subcommand("simulate", "Integrate the viscous system");
  std::optional<double> epsilon;
  bool with_limit = false;
  simulate->add_option("--epsilon", epsilon, "Scale of the wiggles (overrides the config)");
  simulate->add_flag("--limit", with_limit, "Also solve the rate-independent limit");
  auto* converge = app.add_subcommand("converge", "Epsilon sweep against the limit solution");
  auto* nap = app.add_subcommand("nap", "With/against the nap coefficients and rod tension");
  auto* perceived = app.add_subcommand("perceived", "Tabulate the perceived profile");
  auto* ktab = app.add_subcommand("k-table", "Tabulate the effective dissipation K");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*coeffs) cmd_coeffs(g);
    else if (*sweep) cmd_sweep_theta(g);
    else if (*simulate) cmd_simulate(g, epsilon, with_limit);
    else if (*converge) return cmd_converge(g);
    else if (*nap) cmd_nap(g);
    else if (*perceived) cmd_perceived(g);
    else if (*ktab) cmd_k_table(g);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::Config ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace wfl::app
