#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gevpool/bootstrap.hpp"
#include "gevpool/multiple_testing.hpp"
#include "gevpool/return_levels.hpp"
#include "gevpool/sim_study.hpp"
#include "gevpool/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gevpool;

namespace {

// p-values are reported to 4 decimals, parameters to 4 significant digits
double round_p(double p) { return std::round(p * 1e4) / 1e4; }

double sig4(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return std::atof(buf);
}

std::string fmt_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", p);
  return buf;
}

std::string fmt_par(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

fs::path prepare_out_dir(const std::string& out_dir) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(csv);
  while (std::getline(is, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

int column_of(const BlockMaximaPanel& panel, const std::string& id) {
  const auto it = std::find(panel.location_ids.begin(), panel.location_ids.end(), id);
  if (it == panel.location_ids.end()) {
    throw std::invalid_argument("location '" + id + "' not present in panel");
  }
  return static_cast<int>(it - panel.location_ids.begin());
}

std::vector<int> columns_of(const BlockMaximaPanel& panel, const std::vector<std::string>& ids) {
  std::vector<int> cols;
  for (const auto& id : ids) cols.push_back(column_of(panel, id));
  return cols;
}

std::vector<int> all_columns(const BlockMaximaPanel& panel) {
  std::vector<int> cols(panel.n_locations());
  std::iota(cols.begin(), cols.end(), 0);
  return cols;
}

// panel ingestion with an optional loi; defaults to the first location id
BlockMaximaPanel ingest(const std::string& panel_path, const std::string& coords_path,
                        const std::string& loi_id) {
  const auto rows = read_panel_csv(panel_path);
  const auto coords = read_coords_csv(coords_path);
  std::string loi = loi_id;
  if (loi.empty()) {
    if (rows.empty()) throw std::invalid_argument(panel_path + ": no data rows");
    loi = rows.front().location_id;
    for (const auto& r : rows) loi = std::min(loi, r.location_id);
  }
  return build_panel(rows, coords, loi);
}

struct CommonOpts {
  std::string panel_path;
  std::string coords_path;
  std::string loi;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool loi_required) {
  cmd->add_option("--panel", opts.panel_path, "block maxima CSV (year,location_id,maximum,covariate)")
      ->required();
  cmd->add_option("--coords", opts.coords_path, "coordinates CSV (location_id,x,y)")->required();
  auto* loi = cmd->add_option("--loi", opts.loi, "location of interest id");
  if (loi_required) loi->required();
  cmd->add_option("--out-dir", opts.out_dir, "output directory (created if missing)");
}

struct BootOpts {
  int B = 200;
  std::uint64_t seed = 0;
  std::string statistic = "ed";
  std::string bootstrap = "ms";
  std::string ms_families;
  std::string biv_families;
};

void add_boot(CLI::App* cmd, BootOpts& opts) {
  cmd->add_option("--B", opts.B, "bootstrap replicates")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--statistic", opts.statistic, "test statistic")
      ->check(CLI::IsMember({"ed", "ls"}));
  cmd->add_option("--bootstrap", opts.bootstrap, "dependence model class for the null")
      ->check(CLI::IsMember({"ms", "biv"}));
  cmd->add_option("--ms-families", opts.ms_families,
                  "comma list of max-stable candidates (smith,schlather,brown_resnick)");
  cmd->add_option("--biv-families", opts.biv_families,
                  "comma list of bivariate candidates (logistic,asym_logistic,husler_reiss)");
}

BootstrapConfig boot_config(const BootOpts& opts) {
  BootstrapConfig cfg;
  cfg.B = opts.B;
  cfg.seed = opts.seed;
  cfg.statistic = opts.statistic == "ls" ? TestStatistic::kLs : TestStatistic::kEd;
  cfg.dependence =
      opts.bootstrap == "biv" ? DependenceKind::kBivariate : DependenceKind::kMaxStable;
  if (!opts.ms_families.empty()) {
    cfg.ms_candidates.clear();
    for (const auto& name : split_list(opts.ms_families)) {
      cfg.ms_candidates.push_back(max_stable_family_from_string(name));
    }
  }
  if (!opts.biv_families.empty()) {
    cfg.biv_candidates.clear();
    for (const auto& name : split_list(opts.biv_families)) {
      cfg.biv_candidates.push_back(biv_family_from_string(name));
    }
  }
  return cfg;
}

json theta_json(const ScaleGevParams& theta) {
  return json{{"mu", sig4(theta.mu)},
              {"sigma", sig4(theta.sigma)},
              {"gamma", sig4(theta.gamma)},
              {"alpha", sig4(theta.alpha)}};
}

// ---------------------------------------------------------------------------

struct FitOpts {
  CommonOpts common;
  std::string pool;
};

int cmd_fit(const FitOpts& opts) {
  const BlockMaximaPanel panel = ingest(opts.common.panel_path, opts.common.coords_path,
                                        opts.common.loi);
  const fs::path dir = prepare_out_dir(opts.common.out_dir);

  json j;
  j["schema"] = "gevpool/fit/v1";
  j["loi"] = panel.location_ids[static_cast<std::size_t>(panel.loi)];
  std::ostringstream csv;
  csv << "location_id,mu,sigma,gamma,alpha,nll,converged,error\n";
  bool any_failed = false;
  json rows = json::array();
  for (int d = 0; d < panel.n_locations(); ++d) {
    const std::string& id = panel.location_ids[static_cast<std::size_t>(d)];
    json row{{"location_id", id}};
    try {
      const ScaleGevFit fit = fit_scale_gev(panel.column(d), panel.covariate);
      row["params"] = theta_json(fit.theta);
      row["nll"] = sig4(fit.nll);
      row["converged"] = fit.converged;
      csv << id << "," << fmt_par(fit.theta.mu) << "," << fmt_par(fit.theta.sigma) << ","
          << fmt_par(fit.theta.gamma) << "," << fmt_par(fit.theta.alpha) << ","
          << fmt_par(fit.nll) << "," << (fit.converged ? "true" : "false") << ",\n";
    } catch (const std::exception& e) {
      any_failed = true;
      row["error"] = e.what();
      csv << id << ",,,,,,false," << e.what() << "\n";
    }
    rows.push_back(row);
  }
  j["locations"] = rows;

  if (!opts.pool.empty()) {
    const std::vector<int> cols = columns_of(panel, split_list(opts.pool));
    const ScaleGevFit fit = fit_pooled_scale_gev(panel, cols);
    json pooled;
    pooled["members"] = split_list(opts.pool);
    pooled["params"] = theta_json(fit.theta);
    pooled["nll"] = sig4(fit.nll);
    pooled["converged"] = fit.converged;
    j["pooled"] = pooled;
    csv << "pooled(" << opts.pool << ")," << fmt_par(fit.theta.mu) << ","
        << fmt_par(fit.theta.sigma) << "," << fmt_par(fit.theta.gamma) << ","
        << fmt_par(fit.theta.alpha) << "," << fmt_par(fit.nll) << ","
        << (fit.converged ? "true" : "false") << ",\n";
  }

  write_atomic(dir / "fit.json", j.dump(2) + "\n");
  write_atomic(dir / "fit.csv", csv.str());
  std::cout << "wrote " << (dir / "fit.json").string() << " and " << (dir / "fit.csv").string()
            << "\n";
  return any_failed ? 2 : 0;
}

// ---------------------------------------------------------------------------

struct PairsOpts {
  CommonOpts common;
  BootOpts boot;
  std::string partners;
  std::string method = "bh";
  double alpha = 0.1;
};

int cmd_test_pairs(const PairsOpts& opts) {
  const BlockMaximaPanel panel = ingest(opts.common.panel_path, opts.common.coords_path,
                                        opts.common.loi);
  const fs::path dir = prepare_out_dir(opts.common.out_dir);
  std::vector<int> partners;
  if (opts.partners.empty()) {
    for (int d = 0; d < panel.n_locations(); ++d) {
      if (d != panel.loi) partners.push_back(d);
    }
  } else {
    partners = columns_of(panel, split_list(opts.partners));
  }
  const BootstrapConfig cfg = boot_config(opts.boot);
  const std::vector<PairTestRecord> records = bootstrap_pairwise(panel, partners, cfg);
  const AdjustMethod headline =
      opts.method == "all" ? AdjustMethod::kBh : adjust_method_from_string(opts.method);
  const PoolingReport report = recommend(records, panel.loi, headline, opts.alpha);

  // rows sorted by raw p ascending, ties by partner id, as in the report tables
  std::vector<std::size_t> order(report.partners.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.partners[a].p_raw < report.partners[b].p_raw;
  });

  const auto id_of = [&panel](int d) { return panel.location_ids[static_cast<std::size_t>(d)]; };
  json j;
  j["schema"] = "gevpool/test-pairs/v1";
  j["loi"] = id_of(panel.loi);
  j["alpha"] = opts.alpha;
  j["B"] = cfg.B;
  j["seed"] = cfg.seed;
  j["statistic"] = to_string(cfg.statistic);
  j["bootstrap"] = to_string(cfg.dependence);
  j["method"] = to_string(headline);
  std::ostringstream csv;
  csv << "partner,t,p_raw,p_holm,p_bh,reject_im,reject_holm,reject_bh\n";
  json rows = json::array();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const PartnerDecision& dec = report.partners[order[k]];
    const PairTestRecord& rec = records[order[k]];
    json row;
    row["partner"] = id_of(dec.partner);
    row["t"] = sig4(rec.observed_t);
    row["p_raw"] = round_p(dec.p_raw);
    row["p_holm"] = round_p(dec.p_holm);
    row["p_bh"] = round_p(dec.p_bh);
    row["reject_im"] = dec.reject_im;
    row["reject_holm"] = dec.reject_holm;
    row["reject_bh"] = dec.reject_bh;
    row["dependence"] = rec.dependence;
    row["dropped"] = rec.dropped;
    if (!rec.warnings.empty()) row["warnings"] = rec.warnings;
    rows.push_back(row);
    csv << id_of(dec.partner) << "," << fmt_par(rec.observed_t) << "," << fmt_p(dec.p_raw) << ","
        << fmt_p(dec.p_holm) << "," << fmt_p(dec.p_bh) << "," << (dec.reject_im ? "true" : "false")
        << "," << (dec.reject_holm ? "true" : "false") << ","
        << (dec.reject_bh ? "true" : "false") << "\n";
  }
  j["partners"] = rows;
  for (const AdjustMethod m : {AdjustMethod::kIm, AdjustMethod::kHolm, AdjustMethod::kBh}) {
    const PoolingReport r = recommend(records, panel.loi, m, opts.alpha);
    json ids = json::array();
    for (int d : r.recommended) ids.push_back(id_of(d));
    j["recommended_" + to_string(m)] = ids;
  }
  json ids = json::array();
  for (int d : report.recommended) ids.push_back(id_of(d));
  j["recommended"] = ids;

  write_atomic(dir / "pairs.json", j.dump(2) + "\n");
  write_atomic(dir / "pairs.csv", csv.str());
  std::cout << "recommended pooling set:";
  for (int d : report.recommended) std::cout << " " << id_of(d);
  std::cout << "\nwrote " << (dir / "pairs.json").string() << " and "
            << (dir / "pairs.csv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct GlobalOpts {
  CommonOpts common;
  BootOpts boot;
  std::string subset;
  double alpha = 0.1;
};

int cmd_test_global(const GlobalOpts& opts) {
  const BlockMaximaPanel panel = ingest(opts.common.panel_path, opts.common.coords_path,
                                        opts.common.loi);
  const fs::path dir = prepare_out_dir(opts.common.out_dir);
  const std::vector<int> subset =
      opts.subset.empty() ? all_columns(panel) : columns_of(panel, split_list(opts.subset));
  const BootstrapConfig cfg = boot_config(opts.boot);
  const std::vector<PairTestRecord> records = bootstrap_global(panel, {subset}, cfg);
  const PairTestRecord& rec = records[0];
  const int k = static_cast<int>(subset.size());
  const int df = cfg.statistic == TestStatistic::kEd ? 4 * (k - 1) : 3 * (k - 1);

  json j;
  j["schema"] = "gevpool/test-global/v1";
  json ids = json::array();
  for (int d : subset) ids.push_back(panel.location_ids[static_cast<std::size_t>(d)]);
  j["subset"] = ids;
  j["alpha"] = opts.alpha;
  j["B"] = cfg.B;
  j["seed"] = cfg.seed;
  j["statistic"] = to_string(cfg.statistic);
  j["bootstrap"] = to_string(cfg.dependence);
  j["t"] = sig4(rec.observed_t);
  j["df"] = df;
  j["p_raw"] = round_p(rec.p_raw);
  j["reject"] = rec.p_raw <= opts.alpha;
  j["dependence"] = rec.dependence;
  j["dropped"] = rec.dropped;
  if (!rec.warnings.empty()) j["warnings"] = rec.warnings;

  std::ostringstream csv;
  csv << "t,df,p_raw,reject\n"
      << fmt_par(rec.observed_t) << "," << df << "," << fmt_p(rec.p_raw) << ","
      << (rec.p_raw <= opts.alpha ? "true" : "false") << "\n";
  write_atomic(dir / "global.json", j.dump(2) + "\n");
  write_atomic(dir / "global.csv", csv.str());
  std::cout << "T = " << fmt_par(rec.observed_t) << ", p = " << fmt_p(rec.p_raw) << " ("
            << (rec.p_raw <= opts.alpha ? "reject" : "no rejection") << " at alpha = "
            << opts.alpha << ")\nwrote " << (dir / "global.json").string() << " and "
            << (dir / "global.csv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct RegionalOpts {
  CommonOpts common;
  std::string pool;
  double T = 100.0;
  double r = 0.0;
  bool has_r = false;
  int ref_year = 0;
  int B_sim = 100000;
  std::uint64_t seed = 0;
  std::string dep_family;
  std::string dep_params;
  std::string ms_families;
};

int cmd_regional_rl(const RegionalOpts& opts) {
  const BlockMaximaPanel panel = ingest(opts.common.panel_path, opts.common.coords_path,
                                        opts.common.loi);
  const fs::path dir = prepare_out_dir(opts.common.out_dir);
  const std::vector<int> pool =
      opts.pool.empty() ? all_columns(panel) : columns_of(panel, split_list(opts.pool));

  const auto year_it = std::find(panel.years.begin(), panel.years.end(), opts.ref_year);
  if (year_it == panel.years.end()) {
    std::ostringstream msg;
    msg << "reference year " << opts.ref_year << " not in panel; available years:";
    for (int y : panel.years) msg << " " << y;
    throw std::invalid_argument(msg.str());
  }
  const double reference_c =
      panel.covariate[static_cast<std::size_t>(year_it - panel.years.begin())];

  const ScaleGevFit pooled = fit_pooled_scale_gev(panel, pool);
  std::vector<std::string> warnings;
  if (!pooled.converged) warnings.push_back("pooled fit did not converge");

  Eigen::MatrixXd coords_pool(pool.size(), 2);
  Eigen::MatrixXd frechet(panel.n_years(), pool.size());
  for (std::size_t m = 0; m < pool.size(); ++m) {
    coords_pool.row(static_cast<Eigen::Index>(m)) = panel.coords.row(pool[m]);
    const std::vector<double> y = to_frechet(panel.column(pool[m]), panel.covariate, pooled.theta);
    for (int t = 0; t < panel.n_years(); ++t) frechet(t, static_cast<Eigen::Index>(m)) = y[static_cast<std::size_t>(t)];
  }

  MaxStableSpec spec;
  std::string dep_desc;
  if (!opts.dep_family.empty()) {
    spec.family = max_stable_family_from_string(opts.dep_family);
    for (const auto& item : split_list(opts.dep_params)) spec.params.push_back(std::stod(item));
    dep_desc = "override";
  } else {
    std::vector<MaxStableFamily> candidates = default_max_stable_candidates();
    if (!opts.ms_families.empty()) {
      candidates.clear();
      for (const auto& name : split_list(opts.ms_families)) {
        candidates.push_back(max_stable_family_from_string(name));
      }
    }
    if (pool.size() < 2) {
      // a single site has no dependence structure to fit; any spec gives the
      // same regionwise maximum
      spec = MaxStableSpec{MaxStableFamily::kSmith, {1.0, 0.0, 1.0}};
      dep_desc = "single site";
    } else {
      const MaxStableFit ms = select_max_stable(frechet, coords_pool, candidates);
      spec = ms.spec;
      dep_desc = "selected";
      for (const auto& w : ms.warnings) warnings.push_back(w);
      if (!ms.converged) warnings.push_back("selected dependence model fit did not converge");
    }
  }

  ReturnSpec rspec;
  rspec.T = opts.T;
  rspec.has_r = opts.has_r;
  rspec.r = opts.r;
  rspec.reference_c = reference_c;
  Rng rng(derive_seed(opts.seed, 3));
  RegionalEstimate est = regional_rl_rp(pooled.theta, spec, coords_pool, rspec, opts.B_sim, rng);
  for (const auto& w : est.warnings) warnings.push_back(w);

  json j;
  j["schema"] = "gevpool/regional-rl/v1";
  json ids = json::array();
  for (int d : pool) ids.push_back(panel.location_ids[static_cast<std::size_t>(d)]);
  j["pool"] = ids;
  j["T"] = opts.T;
  j["reference_year"] = opts.ref_year;
  j["reference_c"] = sig4(reference_c);
  j["pooled_params"] = theta_json(pooled.theta);
  j["dependence"] = json{{"family", to_string(spec.family)}, {"params", spec.params},
                         {"source", dep_desc}};
  j["B_sim"] = est.B_sim;
  j["local_rl"] = sig4(est.local);
  j["rl_regional"] = sig4(est.rl_regional);
  j["rp_regional"] = sig4(est.rp_regional);
  j["r"] = sig4(opts.has_r ? opts.r : est.local);
  json cdf = json::array();
  for (std::size_t i = 0; i < est.cdf_probs.size(); ++i) {
    cdf.push_back(json{{"p", est.cdf_probs[i]}, {"value", sig4(est.cdf_values[i])}});
  }
  j["regional_maxima_quantiles"] = cdf;
  if (!warnings.empty()) j["warnings"] = warnings;

  std::ostringstream csv;
  csv << "local_rl,rp_regional,rl_regional\n"
      << fmt_par(est.local) << "," << fmt_par(est.rp_regional) << "," << fmt_par(est.rl_regional)
      << "\n";
  write_atomic(dir / "regional.json", j.dump(2) + "\n");
  write_atomic(dir / "regional.csv", csv.str());
  std::cout << "local RL(" << opts.T << ") = " << fmt_par(est.local) << ", regional RP = "
            << fmt_par(est.rp_regional) << ", regional RL(" << opts.T << ") = "
            << fmt_par(est.rl_regional) << "\nwrote " << (dir / "regional.json").string()
            << " and " << (dir / "regional.csv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateOpts {
  std::string out_dir = ".";
  std::string scenarios = "default";
  int reps = 200;
  int B = 99;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  std::string statistic = "ed";
  std::string procedures = "b2";
  std::string methods = "im,holm,bh";
};

int cmd_simulate(const SimulateOpts& opts) {
  const fs::path dir = prepare_out_dir(opts.out_dir);
  StudyConfig cfg;
  cfg.reps = opts.reps;
  cfg.alpha = opts.alpha;
  cfg.seed = opts.seed;
  cfg.bootstrap.B = opts.B;
  cfg.bootstrap.statistic = opts.statistic == "ls" ? TestStatistic::kLs : TestStatistic::kEd;
  cfg.run_global = false;
  cfg.run_pairwise_ms = false;
  cfg.run_pairwise_biv = false;
  for (const auto& p : split_list(opts.procedures)) {
    if (p == "b1") {
      cfg.run_global = true;
    } else if (p == "b2") {
      cfg.run_pairwise_ms = true;
    } else if (p == "b3") {
      cfg.run_pairwise_biv = true;
    } else {
      throw std::invalid_argument("unknown procedure '" + p + "' (expected b1, b2 or b3)");
    }
  }
  cfg.methods.clear();
  for (const auto& m : split_list(opts.methods)) {
    cfg.methods.push_back(adjust_method_from_string(m));
  }

  std::vector<Scenario> scenarios;
  if (opts.scenarios == "default") {
    scenarios = default_scenarios();
  } else if (opts.scenarios == "full") {
    scenarios = full_scenarios();
    std::cerr << "warning: the full sweep covers " << scenarios.size()
              << " scenarios and runs for many hours at the default settings\n";
  } else {
    throw std::invalid_argument("unknown scenario set '" + opts.scenarios + "'");
  }

  std::vector<StudyMetrics> all;
  for (const auto& s : scenarios) {
    const auto t0 = std::chrono::steady_clock::now();
    all.push_back(run_study(s, cfg));
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "scenario " << s.name << ": "
              << std::chrono::duration<double>(t1 - t0).count() << " s\n";
  }
  const std::vector<SummaryRow> rows = summarize(all);

  json j;
  j["schema"] = "gevpool/simulate/v1";
  j["reps"] = opts.reps;
  j["B"] = opts.B;
  j["alpha"] = opts.alpha;
  j["seed"] = opts.seed;
  j["statistic"] = opts.statistic;
  json studies = json::array();
  for (const auto& m : all) {
    json sj;
    sj["scenario"] = m.scenario.name;
    sj["c_mu"] = m.scenario.c_mu;
    sj["c_sigma"] = m.scenario.c_sigma;
    sj["c_gamma"] = m.scenario.c_gamma;
    sj["c_alpha"] = m.scenario.c_alpha;
    sj["dev_size"] = m.scenario.deviating.size();
    sj["reps"] = m.reps;
    sj["failed"] = m.failed;
    sj["truth_rl"] = sig4(m.truth_rl);
    if (std::isfinite(m.global_rejection)) sj["global_rejection"] = m.global_rejection;
    json methods = json::array();
    for (const auto& mm : m.methods) {
      methods.push_back(json{{"label", mm.label},
                             {"fwer", mm.fwer},
                             {"fdr", mm.fdr},
                             {"power", mm.power},
                             {"rl_mse", mm.rl_mse},
                             {"mean_pool", mm.mean_pool}});
    }
    sj["methods"] = methods;
    if (!m.warnings.empty()) sj["warnings"] = m.warnings;
    studies.push_back(sj);
  }
  j["studies"] = studies;

  write_atomic(dir / "study.json", j.dump(2) + "\n");
  write_atomic(dir / "study_metrics.csv", metrics_csv(all));
  write_atomic(dir / "study_summary.csv", summary_csv(rows));
  std::cout << "wrote " << (dir / "study.json").string() << ", "
            << (dir / "study_metrics.csv").string() << " and "
            << (dir / "study_summary.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pooling diagnostics for spatial block maxima under scale-GEV trend models"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "INI config file; flags override file values");
  app.require_subcommand(1);

  FitOpts fit_opts;
  auto* fit_cmd = app.add_subcommand("fit", "per-location (and optional pooled) model fits");
  add_common(fit_cmd, fit_opts.common, false);
  fit_cmd->add_option("--pool", fit_opts.pool, "comma list of ids for a pooled fit");

  PairsOpts pairs_opts;
  auto* pairs_cmd =
      app.add_subcommand("test-pairs", "pairwise homogeneity tests against the loi");
  add_common(pairs_cmd, pairs_opts.common, true);
  add_boot(pairs_cmd, pairs_opts.boot);
  pairs_cmd->add_option("--partners", pairs_opts.partners,
                        "comma list of partner ids (default: all other locations)");
  pairs_cmd->add_option("--method", pairs_opts.method, "method driving the recommended set")
      ->check(CLI::IsMember({"im", "holm", "bh", "all"}));
  pairs_cmd->add_option("--alpha", pairs_opts.alpha, "test level")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));

  GlobalOpts global_opts;
  auto* global_cmd = app.add_subcommand("test-global", "one homogeneity test of a location set");
  add_common(global_cmd, global_opts.common, false);
  add_boot(global_cmd, global_opts.boot);
  global_cmd->add_option("--subset", global_opts.subset,
                         "comma list of ids to test jointly (default: all)");
  global_cmd->add_option("--alpha", global_opts.alpha, "test level")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));

  RegionalOpts regional_opts;
  auto* regional_cmd =
      app.add_subcommand("regional-rl", "regionwise return level and period for a pooled set");
  add_common(regional_cmd, regional_opts.common, false);
  regional_cmd->add_option("--pool", regional_opts.pool,
                           "comma list of pooled ids (default: all)");
  regional_cmd->add_option("--T", regional_opts.T, "return period in blocks")
      ->check(CLI::Range(1.0 + 1e-9, 1e12));
  auto* r_opt = regional_cmd->add_option("--r", regional_opts.r,
                                         "event magnitude for the regional return period "
                                         "(default: the local return level)");
  regional_cmd->add_option("--ref-year", regional_opts.ref_year, "reference year in the panel")
      ->required();
  regional_cmd->add_option("--B-sim", regional_opts.B_sim, "simulation replicates")
      ->check(CLI::PositiveNumber);
  regional_cmd->add_option("--seed", regional_opts.seed, "master seed");
  regional_cmd->add_option("--dep-family", regional_opts.dep_family,
                           "dependence override family (skips model selection)")
      ->check(CLI::IsMember({"smith", "schlather", "brown_resnick"}));
  regional_cmd->add_option("--dep-params", regional_opts.dep_params,
                           "comma list of parameters for --dep-family");
  regional_cmd->add_option("--ms-families", regional_opts.ms_families,
                           "comma list of max-stable candidates");

  SimulateOpts sim_opts;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of the pooling procedures");
  sim_cmd->add_option("--out-dir", sim_opts.out_dir, "output directory");
  sim_cmd->add_option("--scenarios", sim_opts.scenarios, "scenario set")
      ->check(CLI::IsMember({"default", "full"}));
  sim_cmd->add_option("--reps", sim_opts.reps, "replications per scenario")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--B", sim_opts.B, "bootstrap replicates per test")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--alpha", sim_opts.alpha, "test level")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));
  sim_cmd->add_option("--seed", sim_opts.seed, "master seed");
  sim_cmd->add_option("--statistic", sim_opts.statistic, "test statistic")
      ->check(CLI::IsMember({"ed", "ls"}));
  sim_cmd->add_option("--procedures", sim_opts.procedures,
                      "comma list from b1 (global), b2 (pairwise max-stable), b3 (pairwise "
                      "bivariate)");
  sim_cmd->add_option("--methods", sim_opts.methods, "comma list from im, holm, bh");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit_opts);
    if (pairs_cmd->parsed()) return cmd_test_pairs(pairs_opts);
    if (global_cmd->parsed()) return cmd_test_global(global_opts);
    if (regional_cmd->parsed()) {
      regional_opts.has_r = r_opt->count() > 0;
      return cmd_regional_rl(regional_opts);
    }
    if (sim_cmd->parsed()) return cmd_simulate(sim_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
