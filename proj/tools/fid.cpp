// fid: command-line driver for fiducial sampling and repeated-sampling
// experiments. Raw draws go to CSV (header: draw_index,value), reports to
// JSON; every run is byte-deterministic given its config and seed, for any
// FID_THREADS value. Wall-clock timing is only ever printed to stdout so the
// output files stay stable.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fid/conditional.hpp"
#include "fid/correlation.hpp"
#include "fid/discrete.hpp"
#include "fid/errors.hpp"
#include "fid/experiments.hpp"
#include "fid/fiducial.hpp"
#include "fid/gamma_shape.hpp"
#include "fid/sampling.hpp"
#include "fid/stats.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_draws_csv(const std::string& path, const std::vector<double>& draws) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fid::Error("io", "cannot open output file " + path);
  out << "draw_index,value\n";
  for (std::size_t i = 0; i < draws.size(); ++i) {
    out << i << ',' << format_value(draws[i]) << '\n';
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fid::Error("io", "cannot open output file " + path);
  out << doc.dump(2) << '\n';
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw fid::DomainError(std::string(what) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw fid::DomainError(std::string(what) + ": empty list");
  return out;
}

fid::DigitizedLaw parse_pmf(const std::string& text, double resolution) {
  std::vector<std::pair<int, double>> entries;
  bool all_integer = true;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw fid::DomainError("pmf: expected k:p entries, got '" + item + "'");
    }
    try {
      const int k = std::stoi(item.substr(0, colon));
      const double p = std::stod(item.substr(colon + 1));
      entries.emplace_back(k, p);
      if (p != static_cast<double>(static_cast<long long>(p))) all_integer = false;
    } catch (const fid::Error&) {
      throw;
    } catch (const std::exception&) {
      throw fid::DomainError("pmf: cannot parse entry '" + item + "'");
    }
  }
  if (entries.empty()) throw fid::DomainError("pmf: empty");
  if (all_integer) {
    std::vector<std::pair<int, std::int64_t>> weights;
    weights.reserve(entries.size());
    for (const auto& [k, p] : entries) {
      weights.emplace_back(k, static_cast<std::int64_t>(p));
    }
    return fid::DigitizedLaw::from_weights(resolution, std::move(weights));
  }
  return fid::DigitizedLaw::from_probabilities(resolution, std::move(entries));
}

json percentile_summary(const fid::FiducialSample& sample) {
  return json{{"p2.5", fid::fiducial_percentile(sample, 0.025)},
              {"p50", fid::fiducial_percentile(sample, 0.5)},
              {"p97.5", fid::fiducial_percentile(sample, 0.975)}};
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

// One experiment invocation, either from subcommand flags or a config file.
struct RunConfig {
  std::string kind;
  std::string model;
  json params = json::object();
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::size_t draws = 0;
  std::string out;
};

double require_param(const RunConfig& cfg, const std::string& key) {
  if (!cfg.params.contains(key)) {
    throw fid::DomainError("missing required parameter '" + key + "' for kind " + cfg.kind);
  }
  return cfg.params.at(key).get<double>();
}

std::string require_param_string(const RunConfig& cfg, const std::string& key) {
  if (!cfg.params.contains(key)) {
    throw fid::DomainError("missing required parameter '" + key + "' for kind " + cfg.kind);
  }
  return cfg.params.at(key).get<std::string>();
}

json run_corr(const RunConfig& cfg) {
  const double r = require_param(cfg, "r");
  const int n = static_cast<int>(require_param(cfg, "n"));
  fid::RandomSource rng(cfg.seed);
  const fid::FiducialSample sample = fid::fiducial_rho(r, n, rng, cfg.draws);
  write_draws_csv(cfg.out, sample.draws);
  return json{{"model", "corr"},
              {"seed", cfg.seed},
              {"r", r},
              {"n", n},
              {"draws", cfg.draws},
              {"percentiles", percentile_summary(sample)},
              {"out", cfg.out}};
}

json run_gamma_shape(const RunConfig& cfg) {
  fid::RandomSource rng(cfg.seed);
  fid::FiducialSample sample;
  double w_obs;
  int n;
  if (cfg.params.contains("data")) {
    const std::vector<double> data =
        parse_double_list(require_param_string(cfg, "data"), "data");
    n = static_cast<int>(data.size());
    w_obs = fid::bartlett_statistic(data);
    sample = fid::fiducial_alpha(data, rng, cfg.draws);
  } else {
    w_obs = require_param(cfg, "w");
    n = static_cast<int>(require_param(cfg, "n"));
    const fid::FiducialModel model = fid::make_gamma_shape_model(n);
    sample = fid::sample_fiducial(model, w_obs, rng, cfg.draws);
  }
  write_draws_csv(cfg.out, sample.draws);
  return json{{"model", "gamma-shape"},
              {"seed", cfg.seed},
              {"w_obs", w_obs},
              {"n", n},
              {"draws", cfg.draws},
              {"percentiles", percentile_summary(sample)},
              {"out", cfg.out}};
}

json run_digitized(const RunConfig& cfg) {
  const double d = cfg.params.contains("d") ? cfg.params.at("d").get<double>() : 1.0;
  const fid::DigitizedLaw law = parse_pmf(require_param_string(cfg, "pmf"), d);
  const double x = require_param(cfg, "x");
  fid::RandomSource rng(cfg.seed);
  const fid::FiducialModel model = fid::make_digitized_model(law);
  const fid::FiducialSample sample = fid::sample_fiducial(model, x, rng, cfg.draws);
  write_draws_csv(cfg.out, sample.draws);
  json cdf_table = json::array();
  for (const auto& [k, p] : law.pmf()) {
    const double theta = x - static_cast<double>(k) * law.resolution();
    cdf_table.push_back(json{{"theta", theta},
                             {"cdf", fid::digitized_fiducial_cdf(law, x, theta)}});
  }
  return json{{"model", "digitized"},
              {"seed", cfg.seed},
              {"x", x},
              {"d", d},
              {"draws", cfg.draws},
              {"fiducial_mean", fid::digitized_fiducial_mean(law, x)},
              {"cdf_at_steps", cdf_table},
              {"out", cfg.out}};
}

json run_truncated(const RunConfig& cfg) {
  fid::TruncatedMeanModel model{require_param(cfg, "sigma"),
                                static_cast<int>(require_param(cfg, "n")),
                                require_param(cfg, "mu_max")};
  const double x_bar = require_param(cfg, "xbar");
  fid::RandomSource rng(cfg.seed);
  std::string method = "rejection";
  fid::FiducialSample sample;
  try {
    sample = fid::truncated_fiducial_a(model, x_bar, rng, cfg.draws);
  } catch (const fid::RejectionStall&) {
    method = "inverse-cdf";
    sample = fid::truncated_fiducial_a_inverse(model, x_bar, rng, cfg.draws);
  }
  write_draws_csv(cfg.out, sample.draws);
  const double mass = fid::truncated_pointmass(model, x_bar);
  return json{{"model", "truncated"},
              {"seed", cfg.seed},
              {"xbar", x_bar},
              {"mu_max", model.mu_max},
              {"draws", cfg.draws},
              {"method", method},
              {"pointmass_at_mu_max", mass},
              {"percentiles", percentile_summary(sample)},
              {"out", cfg.out}};
}

json run_conditional(const RunConfig& cfg) {
  const std::string what = require_param_string(cfg, "what");
  fid::RandomSource rng(cfg.seed);
  json extra = json::object();
  std::vector<double> draws;
  if (what == "circle") {
    const fid::VonMisesLaw law = fid::circle_fiducial(require_param(cfg, "x1"),
                                                      require_param(cfg, "x2"),
                                                      require_param(cfg, "R"));
    draws.reserve(cfg.draws);
    for (std::size_t i = 0; i < cfg.draws; ++i) draws.push_back(law.sample(rng));
    extra = json{{"mean_direction", law.mean_direction}, {"kappa", law.kappa}};
  } else if (what == "line-difference") {
    const fid::NormalLaw law =
        fid::line_fiducial_difference(require_param(cfg, "x1"), require_param(cfg, "x2"));
    draws.reserve(cfg.draws);
    const double sd = std::sqrt(law.variance);
    for (std::size_t i = 0; i < cfg.draws; ++i) {
      draws.push_back(law.mean + sd * fid::sample_std_normal(rng));
    }
    extra = json{{"mean", law.mean}, {"variance", law.variance}};
  } else if (what == "line-ratio") {
    const fid::LineRatioFiducial law(require_param(cfg, "x1"), require_param(cfg, "x2"));
    const auto log_density = [&law](double mu) {
      const double f = law.density(mu);
      return f > 0.0 ? std::log(f) : -1e300;
    };
    const double init = 0.5 * (require_param(cfg, "x1") + require_param(cfg, "x2")) + 0.1;
    const double sd = fid::pilot_proposal_sd(log_density, init - 10.0, init + 10.0);
    draws = fid::mcmc_sample(log_density, init, cfg.draws + 10000, 10000, sd, rng);
    extra = json{{"normalization", law.normalization()}, {"proposal_sd", sd}};
  } else if (what == "gt" || what == "hannig") {
    const fid::Family& family =
        fid::FamilyRegistry::global().get(require_param_string(cfg, "family"));
    const std::vector<double> data =
        parse_double_list(require_param_string(cfg, "data"), "data");
    std::function<double(double)> density;
    if (what == "gt") {
      const std::string kind_name = cfg.params.contains("kind")
                                        ? cfg.params.at("kind").get<std::string>()
                                        : "difference";
      const fid::ConditionKind kind = kind_name == "ratio" ? fid::ConditionKind::Ratio
                                                           : fid::ConditionKind::Difference;
      auto gt = std::make_shared<fid::GtDensity>(family, data, kind);
      density = [gt](double a) { return (*gt)(a); };
      extra["kind"] = kind_name;
    } else {
      auto hd = std::make_shared<fid::HannigDensity>(family, data);
      density = [hd](double a) { return (*hd)(a); };
    }
    const auto log_density = [&density](double a) {
      const double f = density(a);
      return f > 0.0 ? std::log(f) : -1e300;
    };
    const double lo = std::isfinite(family.alpha_lo) ? family.alpha_lo + 1e-3 : -10.0;
    const double hi = std::isfinite(family.alpha_hi) ? family.alpha_hi : lo + 20.0;
    const double sd = fid::pilot_proposal_sd(log_density, lo, hi);
    double init = 0.5 * (lo + std::min(hi, lo + 20.0));
    draws = fid::mcmc_sample(log_density, init, cfg.draws + 10000, 10000, sd, rng);
    extra["family"] = family.name;
    extra["proposal_sd"] = sd;
  } else {
    throw fid::DomainError("conditional: unknown --what '" + what + "'");
  }
  write_draws_csv(cfg.out, draws);
  json summary{{"model", "conditional-" + what},
               {"seed", cfg.seed},
               {"draws", draws.size()},
               {"out", cfg.out}};
  summary.update(extra);
  return summary;
}

json run_coverage(const RunConfig& cfg) {
  fid::FiducialModel model;
  double theta0;
  if (cfg.model == "corr") {
    model = fid::make_correlation_model(static_cast<int>(require_param(cfg, "n")));
    theta0 = require_param(cfg, "rho0");
  } else if (cfg.model == "gamma-shape") {
    model = fid::make_gamma_shape_model(static_cast<int>(require_param(cfg, "n")));
    theta0 = require_param(cfg, "alpha0");
  } else if (cfg.model == "location-normal") {
    model = fid::make_location_normal_model();
    theta0 = require_param(cfg, "theta0");
  } else {
    throw fid::DomainError("coverage: unknown model '" + cfg.model + "'");
  }
  std::vector<double> levels{0.05, 0.10, 0.50};
  if (cfg.params.contains("levels")) {
    levels = parse_double_list(cfg.params.at("levels").get<std::string>(), "levels");
  }
  const fid::CoverageReport report = fid::coverage_experiment(
      model, theta0, levels, cfg.reps, cfg.draws, fid::RandomSource(cfg.seed));
  const json doc{{"model", report.model_id},
                 {"seed", report.seed},
                 {"levels", report.levels},
                 {"coverages", report.coverages},
                 {"reps", report.replications},
                 {"draws_per_rep", report.draws_per_replication}};
  write_json_file(cfg.out, doc);
  json summary = doc;
  summary["theta0"] = theta0;
  summary["out"] = cfg.out;
  return summary;
}

json run_equivalence(const RunConfig& cfg) {
  if (cfg.model != "location") {
    throw fid::DomainError("equivalence: unknown model '" + cfg.model +
                           "' (supported: location)");
  }
  const double x = require_param(cfg, "x");
  const fid::EquivalenceResult result = fid::equivalence_experiment(
      fid::make_location_normal_model(), fid::make_location_cdf_inversion_model(), x,
      cfg.draws, fid::RandomSource(cfg.seed));
  const json doc{{"model", "location-vs-cdf-inversion"},
                 {"seed", cfg.seed},
                 {"x", x},
                 {"draws", result.draws},
                 {"distance", result.distance},
                 {"threshold", result.threshold},
                 {"pass", result.pass}};
  write_json_file(cfg.out, doc);
  json summary = doc;
  summary["out"] = cfg.out;
  return summary;
}

json dispatch(const RunConfig& cfg) {
  if (cfg.out.empty()) throw fid::DomainError("missing output path");
  if (cfg.kind == "corr") return run_corr(cfg);
  if (cfg.kind == "gamma-shape") return run_gamma_shape(cfg);
  if (cfg.kind == "digitized") return run_digitized(cfg);
  if (cfg.kind == "truncated") return run_truncated(cfg);
  if (cfg.kind == "conditional") return run_conditional(cfg);
  if (cfg.kind == "coverage") return run_coverage(cfg);
  if (cfg.kind == "equivalence") return run_equivalence(cfg);
  throw fid::DomainError("unknown experiment kind '" + cfg.kind + "'");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fid::DomainError("cannot open config file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw fid::DomainError("config parse error: " + std::string(e.what()));
  }
  static const std::vector<std::string> kKeys{"kind", "model", "params",
                                              "seed", "sizes", "out"};
  for (const auto& key : kKeys) {
    if (!doc.contains(key)) throw fid::DomainError("config missing key '" + key + "'");
  }
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw fid::DomainError("config has unknown key '" + key + "'");
    }
  }
  const json& sizes = doc.at("sizes");
  if (!sizes.contains("reps") || !sizes.contains("draws")) {
    throw fid::DomainError("config sizes must contain reps and draws");
  }
  RunConfig cfg;
  cfg.kind = doc.at("kind").get<std::string>();
  cfg.model = doc.at("model").get<std::string>();
  cfg.params = doc.at("params");
  cfg.seed = doc.at("seed").get<std::uint64_t>();
  cfg.reps = sizes.at("reps").get<std::size_t>();
  cfg.draws = sizes.at("draws").get<std::size_t>();
  cfg.out = doc.at("out").get<std::string>();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fiducial sampling and repeated-sampling experiments"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON experiment config (keys: kind, model, params, seed, sizes, out)");

  RunConfig cfg;
  double r = 0.0, x = 0.0, x1 = 0.0, x2 = 0.0, radius = 0.0;
  double sigma = 1.0, mu_max = 0.0, xbar = 0.0, w = 0.0, d = 1.0;
  double theta0 = 0.0, rho0 = 0.0, alpha0 = 0.0;
  int n = 0;
  std::string data, pmf, what, kind_name, levels;

  auto* corr = app.add_subcommand("corr", "fiducial sample of a correlation coefficient");
  corr->add_option("--r", r, "observed empirical correlation")->required();
  corr->add_option("--n", n, "sample size")->required();

  auto* gamma = app.add_subcommand("gamma-shape", "fiducial sample of a gamma shape");
  gamma->add_option("--data", data, "comma-separated positive observations");
  gamma->add_option("--w", w, "observed Bartlett statistic");
  gamma->add_option("--n", n, "sample size (with --w)");

  auto* digitized = app.add_subcommand("digitized", "fiducial of a digitized location");
  digitized->add_option("--pmf", pmf, "auxiliary pmf as k:p pairs, e.g. \"-1:0.2,0:0.5,1:0.3\"")
      ->required();
  digitized->add_option("--d", d, "digital resolution");
  digitized->add_option("--x", x, "observed value")->required();

  auto* truncated = app.add_subcommand("truncated", "mean with an upper parameter bound");
  truncated->add_option("--sigma", sigma, "known standard deviation")->required();
  truncated->add_option("--n", n, "sample size")->required();
  truncated->add_option("--mu-max", mu_max, "upper bound on the mean")->required();
  truncated->add_option("--xbar", xbar, "observed sample mean")->required();

  auto* conditional = app.add_subcommand("conditional", "conditional fiducial laws");
  conditional
      ->add_option("--what", what,
                   "circle | line-difference | line-ratio | gt | hannig")
      ->required();
  conditional->add_option("--x1", x1, "first observed coordinate");
  conditional->add_option("--x2", x2, "second observed coordinate");
  conditional->add_option("--R", radius, "circle radius");
  conditional->add_option("--family", data, "family name (gt/hannig)");
  std::string cond_data;
  conditional->add_option("--data", cond_data, "comma-separated observations (gt/hannig)");
  conditional->add_option("--kind", kind_name, "ratio | difference (gt)");

  auto* coverage = app.add_subcommand("coverage", "repeated-sampling coverage audit");
  coverage->add_option("--model", cfg.model, "corr | gamma-shape | location-normal")
      ->required();
  coverage->add_option("--rho0", rho0, "true correlation (corr)");
  coverage->add_option("--alpha0", alpha0, "true shape (gamma-shape)");
  coverage->add_option("--theta0", theta0, "true location (location-normal)");
  coverage->add_option("--n", n, "per-replication sample size");
  coverage->add_option("--levels", levels, "comma-separated alpha levels");
  coverage->add_option("--reps", cfg.reps, "replications")->required();

  auto* equivalence = app.add_subcommand("equivalence", "KS equivalence of two models");
  equivalence->add_option("--model", cfg.model, "location")->required();
  equivalence->add_option("--x", x, "observation");

  for (auto* sub : {corr, gamma, digitized, truncated, conditional, coverage, equivalence}) {
    sub->add_option("--draws", cfg.draws, "number of draws")->required();
    sub->add_option("--seed", cfg.seed, "RNG seed")->required();
    sub->add_option("--out", cfg.out, "output file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ERROR:config:" << e.what() << '\n';
    return 2;
  }

  Timer timer;
  try {
    if (!config_path.empty()) {
      cfg = load_config_file(config_path);
    } else if (app.get_subcommands().empty()) {
      std::cerr << "ERROR:config:no subcommand or --config given\n";
      return 2;
    } else {
      CLI::App* sub = app.get_subcommands().front();
      cfg.kind = sub->get_name();
      auto set_if = [&](const char* key, double value, bool passed) {
        if (passed) cfg.params[key] = value;
      };
      if (sub == corr) {
        cfg.params["r"] = r;
        cfg.params["n"] = n;
      } else if (sub == gamma) {
        if (!data.empty()) cfg.params["data"] = data;
        set_if("w", w, gamma->count("--w") > 0);
        set_if("n", n, gamma->count("--n") > 0);
      } else if (sub == digitized) {
        cfg.params["pmf"] = pmf;
        cfg.params["d"] = d;
        cfg.params["x"] = x;
      } else if (sub == truncated) {
        cfg.params["sigma"] = sigma;
        cfg.params["n"] = n;
        cfg.params["mu_max"] = mu_max;
        cfg.params["xbar"] = xbar;
      } else if (sub == conditional) {
        cfg.params["what"] = what;
        set_if("x1", x1, conditional->count("--x1") > 0);
        set_if("x2", x2, conditional->count("--x2") > 0);
        set_if("R", radius, conditional->count("--R") > 0);
        if (!data.empty()) cfg.params["family"] = data;
        if (!cond_data.empty()) cfg.params["data"] = cond_data;
        if (!kind_name.empty()) cfg.params["kind"] = kind_name;
      } else if (sub == coverage) {
        set_if("rho0", rho0, coverage->count("--rho0") > 0);
        set_if("alpha0", alpha0, coverage->count("--alpha0") > 0);
        set_if("theta0", theta0, coverage->count("--theta0") > 0);
        set_if("n", n, coverage->count("--n") > 0);
        if (!levels.empty()) cfg.params["levels"] = levels;
      } else if (sub == equivalence) {
        cfg.params["x"] = x;
      }
    }
    json summary = dispatch(cfg);
    summary["elapsed_ms"] = timer.elapsed_ms();
    std::cout << summary.dump(2) << '\n';
  } catch (const fid::Error& e) {
    std::cerr << "ERROR:" << e.code() << ':' << e.what() << '\n';
    return e.code() == "domain" ? 2 : 3;
  } catch (const json::exception& e) {
    std::cerr << "ERROR:config:" << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ERROR:internal:" << e.what() << '\n';
    return 3;
  }
  return 0;
}
