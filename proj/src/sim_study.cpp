#include "gevpool/sim_study.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gevpool/fit.hpp"
#include "gevpool/return_levels.hpp"

namespace gevpool {

namespace {

constexpr int kGridSize = kGridSide * kGridSide;
constexpr double kCovariatePeak = 0.925;
constexpr double kRlHorizon = 100.0;

// per-replication seed streams
constexpr std::uint64_t kStreamPanel = 10;
constexpr std::uint64_t kStreamBootstrap = 11;

std::string format_grid_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool null_deviation(const Scenario& s) {
  return s.c_mu == 0.0 && s.c_sigma == 1.0 && s.c_gamma == 0.0 && s.c_alpha == 0.0;
}

// partner columns whose generating parameters differ from the base model
std::vector<int> true_deviators(const Scenario& s) {
  if (null_deviation(s)) return {};
  return s.deviating;
}

struct Tally {
  int reps = 0;
  int fwer_hits = 0;
  double fdr_sum = 0.0;
  double power_sum = 0.0;
  int power_reps = 0;
  double sq_err_sum = 0.0;
  double pool_sum = 0.0;
};

void tally_rep(Tally& tally, const std::vector<int>& rejected, const std::vector<int>& truth,
               const std::vector<int>& pool, double rl_sq_err) {
  int false_rej = 0;
  int correct_rej = 0;
  for (int d : rejected) {
    if (std::find(truth.begin(), truth.end(), d) != truth.end()) {
      ++correct_rej;
    } else {
      ++false_rej;
    }
  }
  ++tally.reps;
  if (false_rej > 0) ++tally.fwer_hits;
  if (!rejected.empty()) {
    tally.fdr_sum += static_cast<double>(false_rej) / static_cast<double>(rejected.size());
  }
  if (!truth.empty()) {
    tally.power_sum += static_cast<double>(correct_rej) / static_cast<double>(truth.size());
    ++tally.power_reps;
  }
  tally.sq_err_sum += rl_sq_err;
  tally.pool_sum += static_cast<double>(pool.size());
}

MethodMetrics finish(const std::string& label, const Tally& tally) {
  MethodMetrics m;
  m.label = label;
  if (tally.reps > 0) {
    m.fwer = static_cast<double>(tally.fwer_hits) / tally.reps;
    m.fdr = tally.fdr_sum / tally.reps;
    m.power = tally.power_reps > 0 ? tally.power_sum / tally.power_reps : 0.0;
    m.rl_mse = tally.sq_err_sum / tally.reps;
    m.mean_pool = tally.pool_sum / tally.reps;
  }
  return m;
}

double pooled_rl(const BlockMaximaPanel& panel, const std::vector<int>& pool) {
  FitOptions opt;
  opt.compute_info = false;
  const ScaleGevFit fit = fit_pooled_scale_gev(panel, pool, opt);
  return local_rl(fit.theta, kRlHorizon, kCovariatePeak);
}

}  // namespace

std::vector<int> dev_set_small() { return {3, 7}; }

std::vector<int> dev_set_large() { return {0, 1, 2, 3, 7, 11, 15}; }

std::vector<double> study_covariate(int n) {
  if (n < 2) throw std::invalid_argument("study_covariate: need at least two blocks");
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    const double u = static_cast<double>(t) / static_cast<double>(n - 1);
    c[static_cast<std::size_t>(t)] = kCovariatePeak * u * u;
  }
  return c;
}

Eigen::MatrixXd grid_coords() {
  Eigen::MatrixXd coords(kGridSize, 2);
  for (int l = 0; l < kGridSize; ++l) {
    coords(l, 0) = static_cast<double>(l % kGridSide);
    coords(l, 1) = static_cast<double>(l / kGridSide);
  }
  return coords;
}

ScaleGevParams deviated_params(const Scenario& s) {
  return ScaleGevParams{s.base.mu + s.c_mu, s.base.sigma * s.c_sigma, s.base.gamma + s.c_gamma,
                        s.base.alpha + s.c_alpha};
}

std::vector<Scenario> default_scenarios() {
  std::vector<Scenario> out;
  Scenario hom;
  hom.name = "homogeneous";
  out.push_back(hom);
  const double corners[5][2] = {{-3.0, 0.7}, {-3.0, 1.3}, {3.0, 0.7}, {3.0, 1.3}, {0.0, 1.0}};
  for (const auto& c : corners) {
    Scenario s;
    s.deviating = dev_set_small();
    s.c_mu = c[0];
    s.c_sigma = c[1];
    s.name = "dev2_cm" + format_grid_value(c[0]) + "_cs" + format_grid_value(c[1]);
    out.push_back(s);
  }
  return out;
}

std::vector<Scenario> full_scenarios() {
  const std::vector<double> mu_grid{-3.0, -1.5, 0.0, 1.5, 3.0};
  const std::vector<double> sigma_grid{0.7, 0.85, 1.0, 1.15, 1.3};
  const std::vector<double> gamma_grid{-0.1, 0.0, 0.1};
  const std::vector<double> alpha_grid{-1.0, 0.0, 1.0};

  std::vector<Scenario> out;
  Scenario hom;
  hom.name = "homogeneous";
  out.push_back(hom);
  const std::vector<std::pair<std::string, std::vector<int>>> dev_sets{
      {"dev2", dev_set_small()}, {"dev7", dev_set_large()}};
  for (const auto& [tag, dev] : dev_sets) {
    for (double cm : mu_grid) {
      for (double cs : sigma_grid) {
        for (double cg : gamma_grid) {
          for (double ca : alpha_grid) {
            if (cm == 0.0 && cs == 1.0 && cg == 0.0 && ca == 0.0) continue;
            Scenario s;
            s.deviating = dev;
            s.c_mu = cm;
            s.c_sigma = cs;
            s.c_gamma = cg;
            s.c_alpha = ca;
            s.name = tag + "_cm" + format_grid_value(cm) + "_cs" + format_grid_value(cs) + "_cg" +
                     format_grid_value(cg) + "_ca" + format_grid_value(ca);
            out.push_back(s);
          }
        }
      }
    }
  }
  return out;
}

BlockMaximaPanel generate_scenario_data(const Scenario& s, Rng& rng) {
  if (s.n_years < 2) throw std::invalid_argument("generate_scenario_data: need at least 2 blocks");
  for (int d : s.deviating) {
    if (d < 0 || d >= kGridSize || d == kGridLoi) {
      throw std::invalid_argument("generate_scenario_data: invalid deviating column");
    }
  }
  const int n = s.n_years;
  const Eigen::MatrixXd coords = grid_coords();
  const Eigen::MatrixXd fields = simulate_max_stable(s.dependence, coords, n, rng);
  const ScaleGevParams dev_theta = deviated_params(s);

  BlockMaximaPanel panel;
  panel.covariate = study_covariate(n);
  panel.coords = coords;
  panel.loi = kGridLoi;
  panel.maxima.resize(n, kGridSize);
  for (int t = 0; t < n; ++t) panel.years.push_back(2025 - n + t);
  std::vector<double> ycol(static_cast<std::size_t>(n));
  for (int d = 0; d < kGridSize; ++d) {
    std::ostringstream id;
    id << "s" << (d + 1 < 10 ? "0" : "") << (d + 1);
    panel.location_ids.push_back(id.str());
    const bool deviates =
        std::find(s.deviating.begin(), s.deviating.end(), d) != s.deviating.end();
    const ScaleGevParams& theta = deviates ? dev_theta : s.base;
    for (int t = 0; t < n; ++t) ycol[static_cast<std::size_t>(t)] = fields(t, d);
    const std::vector<double> x = from_frechet(ycol, panel.covariate, theta);
    for (int t = 0; t < n; ++t) panel.maxima(t, d) = x[static_cast<std::size_t>(t)];
  }
  validate_panel(panel);
  return panel;
}

StudyMetrics run_study(const Scenario& s, const StudyConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("run_study: reps must be at least 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw std::invalid_argument("run_study: alpha must lie in (0, 1)");
  }
  if (cfg.methods.empty()) throw std::invalid_argument("run_study: no adjustment methods");

  StudyMetrics result;
  result.scenario = s;
  result.truth_rl = local_rl(s.base, kRlHorizon, kCovariatePeak);

  std::vector<int> partners;
  for (int d = 0; d < kGridSize; ++d) {
    if (d != kGridLoi) partners.push_back(d);
  }
  std::vector<int> all_locations(kGridSize);
  std::iota(all_locations.begin(), all_locations.end(), 0);
  const std::vector<int> truth = true_deviators(s);

  std::map<std::string, Tally> tallies;
  int global_rejections = 0;
  int global_reps = 0;
  std::set<std::string> warned;

  for (int rep = 0; rep < cfg.reps; ++rep) {
    try {
      Rng rng(derive_seed(cfg.seed, kStreamPanel, static_cast<std::uint64_t>(rep)));
      const BlockMaximaPanel panel = generate_scenario_data(s, rng);
      BootstrapConfig bcfg = cfg.bootstrap;
      bcfg.seed = derive_seed(cfg.seed, kStreamBootstrap, static_cast<std::uint64_t>(rep));

      // baselines: never pool, always pool
      {
        const double rl = pooled_rl(panel, {kGridLoi});
        const double err = rl - result.truth_rl;
        tally_rep(tallies["loi-only"], partners, truth, {kGridLoi}, err * err);
      }
      {
        const double rl = pooled_rl(panel, all_locations);
        const double err = rl - result.truth_rl;
        tally_rep(tallies["pool-all"], {}, truth, all_locations, err * err);
      }

      const auto run_pairwise = [&](DependenceKind kind, const std::string& prefix) {
        BootstrapConfig pcfg = bcfg;
        pcfg.dependence = kind;
        const std::vector<PairTestRecord> records = bootstrap_pairwise(panel, partners, pcfg);
        for (const auto& rec : records) {
          for (const auto& w : rec.warnings) warned.insert(w);
        }
        for (AdjustMethod method : cfg.methods) {
          const PoolingReport report = recommend(records, kGridLoi, method, cfg.alpha);
          std::vector<int> rejected;
          for (const auto& dec : report.partners) {
            const bool reject = method == AdjustMethod::kIm     ? dec.reject_im
                                : method == AdjustMethod::kHolm ? dec.reject_holm
                                                                : dec.reject_bh;
            if (reject) rejected.push_back(dec.partner);
          }
          const double rl = pooled_rl(panel, report.recommended);
          const double err = rl - result.truth_rl;
          tally_rep(tallies[prefix + "-" + to_string(method)], rejected, truth,
                    report.recommended, err * err);
        }
      };

      if (cfg.run_pairwise_ms) run_pairwise(DependenceKind::kMaxStable, "ms");
      if (cfg.run_pairwise_biv) run_pairwise(DependenceKind::kBivariate, "biv");

      if (cfg.run_global) {
        BootstrapConfig gcfg = bcfg;
        gcfg.dependence = DependenceKind::kMaxStable;
        const std::vector<PairTestRecord> recs =
            bootstrap_global(panel, {all_locations}, gcfg);
        ++global_reps;
        if (recs[0].p_raw <= cfg.alpha) ++global_rejections;
        for (const auto& w : recs[0].warnings) warned.insert(w);
      }
    } catch (const std::exception& e) {
      ++result.failed;
      warned.insert(std::string("replication failed: ") + e.what());
    }
  }

  result.reps = cfg.reps - result.failed;
  if (global_reps > 0) {
    result.global_rejection = static_cast<double>(global_rejections) / global_reps;
  }
  const std::vector<std::string> label_order{"loi-only", "pool-all", "ms-im",  "ms-holm",
                                             "ms-bh",    "biv-im",   "biv-holm", "biv-bh"};
  for (const auto& label : label_order) {
    const auto it = tallies.find(label);
    if (it != tallies.end()) result.methods.push_back(finish(label, it->second));
  }
  result.warnings.assign(warned.begin(), warned.end());
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<StudyMetrics>& all) {
  if (all.empty()) throw std::invalid_argument("summarize: no study results");
  struct Agg {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    int count = 0;
  };
  std::map<std::pair<std::string, std::string>, Agg> aggs;
  std::vector<std::pair<std::string, std::string>> order;
  const auto feed = [&](const std::string& label, const std::string& metric, double value) {
    const auto key = std::make_pair(label, metric);
    auto it = aggs.find(key);
    if (it == aggs.end()) {
      order.push_back(key);
      it = aggs.emplace(key, Agg{}).first;
    }
    Agg& a = it->second;
    a.min = std::min(a.min, value);
    a.max = std::max(a.max, value);
    a.sum += value;
    ++a.count;
  };
  for (const auto& study : all) {
    for (const auto& m : study.methods) {
      feed(m.label, "fwer", m.fwer);
      feed(m.label, "fdr", m.fdr);
      feed(m.label, "power", m.power);
      feed(m.label, "rl_mse", m.rl_mse);
      feed(m.label, "mean_pool", m.mean_pool);
    }
    if (std::isfinite(study.global_rejection)) {
      feed("global-ms", "rejection", study.global_rejection);
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& key : order) {
    const Agg& a = aggs.at(key);
    rows.push_back(SummaryRow{key.first, key.second, a.min, a.max, a.sum / a.count});
  }
  return rows;
}

std::string metrics_csv(const std::vector<StudyMetrics>& all) {
  std::ostringstream os;
  os << "scenario,c_mu,c_sigma,c_gamma,c_alpha,dev_size,reps,failed,truth_rl,"
        "global_rejection,label,fwer,fdr,power,rl_mse,mean_pool\n";
  for (const auto& study : all) {
    const Scenario& s = study.scenario;
    std::ostringstream head;
    head << s.name << "," << s.c_mu << "," << s.c_sigma << "," << s.c_gamma << "," << s.c_alpha
         << "," << s.deviating.size() << "," << study.reps << "," << study.failed << ","
         << study.truth_rl << ",";
    if (std::isfinite(study.global_rejection)) head << study.global_rejection;
    for (const auto& m : study.methods) {
      os << head.str() << "," << m.label << "," << m.fwer << "," << m.fdr << "," << m.power << ","
         << m.rl_mse << "," << m.mean_pool << "\n";
    }
  }
  return os.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os << "label,metric,min,max,mean\n";
  for (const auto& r : rows) {
    os << r.label << "," << r.metric << "," << r.min << "," << r.max << "," << r.mean << "\n";
  }
  return os.str();
}

}  // namespace gevpool
