#include <cmath>
#include <ostream>

#include "asep/cli.hpp"
#include "asep/exact_oracle.hpp"
#include "asep/lpp.hpp"
#include "asep/motzkin.hpp"
#include "asep/polymer.hpp"
#include "asep/shock_mpa.hpp"
#include "asep/simulator.hpp"
#include "report.hpp"

namespace asep::cli {

namespace {

int require_n(const ExperimentConfig& cfg) {
  const long n = cfg.require_int("n");
  if (n < 1 || n > 1'000'000) throw ValidationError("key 'n': must lie in [1, 1000000]");
  return static_cast<int>(n);
}

bool get_bool(const ExperimentConfig& cfg, const std::string& key, bool fallback) {
  if (!cfg.has(key)) return fallback;
  const std::string s = cfg.get(key, "");
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ValidationError("key '" + key + "': expected true or false, got '" + s + "'");
}

PathMode get_mode(const ExperimentConfig& cfg) {
  const std::string s = cfg.get("mode", "constraint");
  if (s == "constraint") return PathMode::Constraint;
  if (s == "free") return PathMode::Free;
  throw ValidationError("key 'mode': expected free or constraint, got '" + s + "'");
}

void emit_dist(std::ostream& out, const ExperimentConfig& cfg, const ConfigDist& d, json extra) {
  if (cfg.format == Format::Csv) {
    emit_csv(out, cfg, dist_table(d));
    return;
  }
  json j = report_json(cfg);
  j.update(extra);
  j["distribution"] = dist_json(d);
  emit_json(out, j);
}

void run_exact(const ExperimentConfig& cfg, std::ostream& out) {
  const ModelParams p = resolve_params(cfg, require_n(cfg));
  ConfigDist d = exact::stationary_exact(p);
  json extra{{"params", params_json(p)}};
  if (p.n >= 2) extra["current"] = exact::current_exact(d, p, 1);
  if (auto I = resolve_interval(cfg)) d = project(d, *I);
  emit_dist(out, cfg, d, extra);
}

void run_motzkin(const ExperimentConfig& cfg, std::ostream& out) {
  const ModelParams p = resolve_params(cfg, require_n(cfg));
  motzkin::TransferOptions opts;
  opts.h_max = static_cast<int>(cfg.get_int("h_max", -1));
  opts.signed_mode = get_bool(cfg, "signed", p.u * p.v > 1.0);
  const auto I = resolve_interval(cfg);
  const ConfigDist d =
      I ? motzkin::projected_stationary_transfer(p, *I, opts) : motzkin::stationary_via_paths(p);
  json extra{{"params", params_json(p)}, {"partition_function", scaled_json(motzkin::partition_function(p.n, p))}};
  emit_dist(out, cfg, d, extra);
}

void run_polymer(const ExperimentConfig& cfg, std::ostream& out) {
  const int n = require_n(cfg);
  const ModelParams p = resolve_params(cfg, n);
  const PathMode mode = get_mode(cfg);
  const TransferTables t = polymer::build_transfer_tables(n, p, mode, static_cast<int>(cfg.get_int("h_max", -1)));
  const long position = cfg.get_int("position", n / 2);
  const auto marg = polymer::height_marginal(t, static_cast<int>(position));
  if (cfg.format == Format::Csv) {
    CsvTable tab{{"position", "height", "probability"}, {}};
    for (std::size_t h = 0; h < marg.size(); ++h) {
      tab.add({std::to_string(position), std::to_string(h), format_double(marg[h])});
    }
    emit_csv(out, cfg, tab);
    return;
  }
  json j = report_json(cfg);
  j["params"] = params_json(p);
  j["log_partition"] = t.log_partition();
  j["free_energy"] = n > 0 ? t.log_partition() / n : 0.0;
  j["height_marginal"] = {{"position", position}, {"probability", marg}};
  if (cfg.has("i") || cfg.has("j")) {
    const long i = cfg.require_int("i"), jj = cfg.require_int("j");
    j["event_a"] = {{"i", i}, {"j", jj}, {"probability", polymer::event_prob_a(t, static_cast<int>(i), static_cast<int>(jj))}};
  }
  if (cfg.has("m")) {
    const long m = cfg.get_int("m", 0), k = cfg.get_int("moment", 1);
    j["return_time_moment"] = {
        {"m", m}, {"k", k}, {"value", polymer::return_time_moment(t, static_cast<int>(m), static_cast<int>(k))}};
  }
  emit_json(out, j);
}

void run_shock(const ExperimentConfig& cfg, std::ostream& out) {
  const ModelParams p = resolve_params(cfg, require_n(cfg));
  const int k = static_cast<int>(cfg.require_int("k"));
  const shock::ShockSystem s = shock::bulk_densities(p, k);
  const shock::MixtureResult mix = shock::shock_mixture(p, k);
  json coeffs = json::array();
  for (const auto& t : mix.terms) {
    coeffs.push_back({{"n_shocks", t.n_shocks}, {"shift", t.shift}, {"coefficient", t.coefficient}, {"mass", t.mass}});
  }
  json extra{{"params", params_json(p)},
             {"shock_system", {{"k", s.k}, {"rho", s.rho}, {"rho_star", s.rho_star}, {"j", s.j}, {"d", s.d}}},
             {"low_density_form", mix.low_density_form},
             {"coefficients", coeffs}};
  emit_dist(out, cfg, mix.dist, extra);
}

void run_mpa(const ExperimentConfig& cfg, std::ostream& out) {
  const ModelParams p = resolve_params(cfg, require_n(cfg));
  const int k = static_cast<int>(cfg.require_int("k"));
  const shock::MpaReport r = shock::verify_mpa_relations(shock::mpa_matrices(p, k), p);
  const ConfigDist d = shock::stationary_via_mpa(p, k);
  json extra{{"params", params_json(p)},
             {"residuals",
              {{"boundary_v", r.boundary_v},
               {"boundary_w", r.boundary_w},
               {"bulk_c", r.bulk_c},
               {"bulk_residual", r.bulk_residual}}}};
  emit_dist(out, cfg, d, extra);
}

void run_sim(const ExperimentConfig& cfg, std::ostream& out) {
  const ModelParams p = resolve_params(cfg, require_n(cfg));
  sim::EmpiricalOptions opts;
  opts.n_samples = cfg.get_int("samples", opts.n_samples);
  opts.burn_in = cfg.get_double("burn_in", 0.0);
  opts.gap = cfg.get_double("gap", static_cast<double>(p.n));
  opts.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  opts.replicas = static_cast<int>(cfg.get_int("replicas", 1));
  if (cfg.has("eta")) opts.init = parse_config(cfg.get("eta", ""));
  const Interval I = resolve_interval(cfg).value_or(Interval{1, p.n});
  emit_dist(out, cfg, sim::empirical_projected(p, I, opts), {{"params", params_json(p)}});
}

void run_lpp(const ExperimentConfig& cfg, std::ostream& out) {
  const int n = require_n(cfg);
  const double alpha = cfg.get_double("alpha", 1.0), beta = cfg.get_double("beta", 1.0);
  const double t = cfg.require_double("t");
  lpp::Window w;
  w.hi = cfg.get_int("window", w.hi);
  const auto env = lpp::sample_environment(n, w, alpha, beta, static_cast<std::uint64_t>(cfg.get_int("seed", 1)));
  const std::string eta_s = cfg.get("eta", std::string(static_cast<std::size_t>(n), '0'));
  if (static_cast<int>(eta_s.size()) != n) throw ValidationError("key 'eta': length must equal n");
  const auto eta = sim::to_occupation(parse_config(eta_s), n);
  const lpp::Evolution ev = lpp::evolve_interface(env, eta, t);
  const std::string cfg_out = config_string(sim::to_config(ev.config), n);
  if (cfg.format == Format::Csv) {
    CsvTable tab{{"i", "x", "y"}, {}};
    for (std::size_t i = 0; i < ev.interface.size(); ++i) {
      tab.add({std::to_string(i), std::to_string(ev.interface[i].x), std::to_string(ev.interface[i].y)});
    }
    emit_csv(out, cfg, tab);
    return;
  }
  json j = report_json(cfg);
  json pts = json::array();
  for (const auto& p : ev.interface) pts.push_back({p.x, p.y});
  j["interface"] = pts;
  j["config"] = cfg_out;
  emit_json(out, j);
}

void run_compare(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string against = cfg.get("against", "bernoulli");
  CsvTable tab;
  json rows = json::array();
  if (against == "bernoulli") {
    const auto ns = cfg.get_int_list("n_list", {50, 200, 800});
    const long width = cfg.get_int("width", 4);
    if (width < 1 || width > 20) throw ValidationError("key 'width': must lie in [1, 20]");
    tab.columns = {"n", "tv_distance"};
    for (long n : ns) {
      if (n < width) throw ValidationError("key 'n_list': every n must be >= width");
      const ModelParams p = resolve_params(cfg, static_cast<int>(n));
      double rho = 0.0;
      if (cfg.get("rho", "auto") == "auto") {
        const auto r = liggett_limit_density(p);
        if (!r) throw ValidationError("key 'rho': no limiting density on a phase boundary; give rho explicitly");
        rho = *r;
      } else {
        rho = cfg.get_double("rho", 0.5);
      }
      const int a = static_cast<int>(n / 2 - width / 2 + 1);
      const Interval I{a, a + static_cast<int>(width) - 1};
      motzkin::TransferOptions opts;
      opts.signed_mode = p.u * p.v > 1.0;
      const double tv = tv_distance(motzkin::projected_stationary_transfer(p, I, opts),
                                    bernoulli_product(rho, static_cast<int>(width)));
      tab.add({std::to_string(n), format_double(tv)});
      rows.push_back({{"n", n}, {"tv_distance", tv}});
    }
  } else if (against == "exact") {
    const auto ns = cfg.get_int_list("n_list", {2, 3, 4, 5, 6, 7, 8});
    tab.columns = {"n", "representation", "max_abs_diff"};
    for (long n : ns) {
      const ModelParams p = resolve_params(cfg, static_cast<int>(n));
      const ConfigDist ex = exact::stationary_exact(p);
      auto diff = [&](const ConfigDist& d) {
        double m = 0.0;
        for (Config c = 0; c < d.size(); ++c) m = std::max(m, std::abs(d[c] - ex[c]));
        return m;
      };
      std::vector<std::pair<std::string, double>> res;
      res.emplace_back("paths", diff(motzkin::stationary_via_paths(p)));
      motzkin::TransferOptions opts;
      opts.signed_mode = p.u * p.v > 1.0;
      res.emplace_back("transfer", diff(motzkin::projected_stationary_transfer(p, {1, p.n}, opts)));
      if (cfg.has("k")) {
        const int k = static_cast<int>(cfg.get_int("k", 0));
        res.emplace_back("mpa", diff(shock::stationary_via_mpa(p, k)));
        res.emplace_back("shock_mixture", diff(shock::stationary_via_shock_mixture(p, k)));
      }
      for (const auto& [name, value] : res) {
        tab.add({std::to_string(n), name, format_double(value)});
        rows.push_back({{"n", n}, {"representation", name}, {"max_abs_diff", value}});
      }
    }
  } else {
    throw ValidationError("key 'against': expected bernoulli or exact, got '" + against + "'");
  }
  if (cfg.format == Format::Csv) {
    emit_csv(out, cfg, tab);
  } else {
    json j = report_json(cfg);
    j["rows"] = rows;
    emit_json(out, j);
  }
}

}  // namespace

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.dry_run) {
      write_config_header(out, cfg);
      if (cfg.has("n")) {
        const ModelParams p = resolve_params(cfg, static_cast<int>(cfg.require_int("n")));
        out << "# resolved: n=" << p.n << " q=" << format_double(p.q) << " alpha=" << format_double(p.alpha)
            << " beta=" << format_double(p.beta) << " u=" << format_double(p.u) << " v=" << format_double(p.v)
            << '\n';
      }
      return 0;
    }
    switch (cfg.command) {
      case Command::Exact: run_exact(cfg, out); break;
      case Command::Motzkin: run_motzkin(cfg, out); break;
      case Command::Polymer: run_polymer(cfg, out); break;
      case Command::Shock: run_shock(cfg, out); break;
      case Command::Mpa: run_mpa(cfg, out); break;
      case Command::Sim: run_sim(cfg, out); break;
      case Command::Lpp: run_lpp(cfg, out); break;
      case Command::Compare: run_compare(cfg, out); break;
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace asep::cli
