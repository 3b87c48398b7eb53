#include "gevpool/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gevpool/covariance.hpp"
#include "gevpool/wald.hpp"

namespace gevpool {

namespace {

// stream ids for seed derivation, so the different consumers of the master
// seed never overlap
constexpr std::uint64_t kStreamFields = 1;
constexpr std::uint64_t kStreamPairSim = 2;

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::string describe(const MaxStableSpec& spec) {
  std::string s = to_string(spec.family) + "(";
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    if (i) s += ", ";
    s += format_value(spec.params[i]);
  }
  return s + ")";
}

std::string describe(const BivariateSpec& spec) {
  std::string s = to_string(spec.family) + "(";
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    if (i) s += ", ";
    s += format_value(spec.params[i]);
  }
  return s + ")";
}

void check_config(const BootstrapConfig& cfg) {
  if (cfg.B < 1) throw std::invalid_argument("bootstrap: B must be at least 1");
}

struct PreparedPanel {
  std::vector<ScaleGevFit> fits;
  std::vector<ScaleGevParams> thetas;
  Eigen::MatrixXd frechet;
  Eigen::MatrixXd sigma_full;
  std::vector<std::string> warnings;
};

PreparedPanel prepare(const BlockMaximaPanel& panel) {
  validate_panel(panel);
  PreparedPanel prep;
  const int d = panel.n_locations();
  const int n = panel.n_years();
  prep.fits.reserve(static_cast<std::size_t>(d));
  prep.frechet.resize(n, d);
  for (int j = 0; j < d; ++j) {
    ScaleGevFit fit = fit_scale_gev(panel.column(j), panel.covariate);
    if (!fit.converged) {
      prep.warnings.push_back("fit for location " + panel.location_ids[static_cast<std::size_t>(j)] +
                              " did not converge");
    }
    const std::vector<double> y = to_frechet(panel.column(j), panel.covariate, fit.theta);
    for (int t = 0; t < n; ++t) prep.frechet(t, j) = y[static_cast<std::size_t>(t)];
    prep.thetas.push_back(fit.theta);
    prep.fits.push_back(std::move(fit));
  }
  SigmaEstimate sigma = estimate_sigma(panel, prep.fits);
  prep.sigma_full = std::move(sigma.sigma);
  for (auto& w : sigma.warnings) prep.warnings.push_back(std::move(w));
  return prep;
}

double subset_statistic(const std::vector<ScaleGevParams>& thetas, const Eigen::MatrixXd& sigma,
                        TestStatistic stat, int n) {
  std::vector<int> local(thetas.size());
  std::iota(local.begin(), local.end(), 0);
  return stat == TestStatistic::kEd ? wald_statistic_ed(thetas, sigma, local, n)
                                    : wald_statistic_ls(thetas, sigma, local, n);
}

BlockMaximaPanel make_sub_panel(const BlockMaximaPanel& panel, const std::vector<int>& subset) {
  BlockMaximaPanel sub;
  sub.years = panel.years;
  sub.covariate = panel.covariate;
  const int k = static_cast<int>(subset.size());
  const int n = panel.n_years();
  sub.maxima.resize(n, k);
  sub.coords.resize(k, 2);
  for (int m = 0; m < k; ++m) {
    const int d = subset[static_cast<std::size_t>(m)];
    sub.location_ids.push_back(panel.location_ids[static_cast<std::size_t>(d)]);
    sub.maxima.col(m) = panel.maxima.col(d);
    sub.coords.row(m) = panel.coords.row(d);
  }
  sub.loi = 0;
  return sub;
}

// simulated unit Frechet values for replicate b, local column m of the target
using ReplicateSource = std::function<double(int b, int t, int m)>;

PairTestRecord run_target(const BlockMaximaPanel& panel, const PreparedPanel& prep,
                          const std::vector<int>& subset, const BootstrapConfig& cfg,
                          const std::string& dependence_desc, const ReplicateSource& source) {
  const int n = panel.n_years();
  const int k = static_cast<int>(subset.size());

  PairTestRecord rec;
  rec.subset = subset;
  rec.dependence = dependence_desc;

  // observed statistic from the full panel estimates
  std::vector<ScaleGevParams> theta_subset;
  std::vector<ScaleGevFit> fits_subset;
  for (int d : subset) {
    theta_subset.push_back(prep.thetas[static_cast<std::size_t>(d)]);
    fits_subset.push_back(prep.fits[static_cast<std::size_t>(d)]);
  }
  const Eigen::MatrixXd sigma_sub = pairwise_block(prep.sigma_full, subset);
  rec.observed_t = subset_statistic(theta_subset, sigma_sub, cfg.statistic, n);
  if (!std::isfinite(rec.observed_t)) {
    throw std::runtime_error("bootstrap: observed statistic is not finite");
  }

  // null fit used to put the simulated fields back on the data scale
  std::vector<ScaleGevParams> generator(static_cast<std::size_t>(k));
  if (cfg.statistic == TestStatistic::kEd) {
    FitOptions opt;
    opt.compute_info = false;
    ScaleGevFit pooled = fit_pooled_scale_gev(panel, subset, opt);
    if (!pooled.converged) rec.warnings.push_back("pooled null fit did not converge");
    rec.null_fit = {pooled.theta};
    std::fill(generator.begin(), generator.end(), pooled.theta);
  } else {
    LsNullFit ls = fit_ls_null_scale_gev(panel, subset, &fits_subset);
    if (!ls.converged) rec.warnings.push_back("ratio constrained null fit did not converge");
    rec.null_fit = ls.thetas;
    generator = ls.thetas;
  }

  // replicates
  const BlockMaximaPanel skeleton = make_sub_panel(panel, subset);
  rec.boot_ts.reserve(static_cast<std::size_t>(cfg.B));
  std::vector<double> ycol(static_cast<std::size_t>(n));
  for (int b = 0; b < cfg.B; ++b) {
    try {
      BlockMaximaPanel rep = skeleton;
      for (int m = 0; m < k; ++m) {
        for (int t = 0; t < n; ++t) ycol[static_cast<std::size_t>(t)] = source(b, t, m);
        const std::vector<double> x =
            from_frechet(ycol, panel.covariate, generator[static_cast<std::size_t>(m)]);
        for (int t = 0; t < n; ++t) rep.maxima(t, m) = x[static_cast<std::size_t>(t)];
      }
      std::vector<ScaleGevFit> refits;
      std::vector<ScaleGevParams> rethetas;
      bool ok = true;
      for (int m = 0; m < k; ++m) {
        FitOptions opt;
        opt.has_start = true;
        opt.start = generator[static_cast<std::size_t>(m)];
        opt.nm_max_evals = 150;
        ScaleGevFit refit = fit_scale_gev(rep.column(m), rep.covariate, opt);
        if (!refit.converged) {
          ok = false;
          break;
        }
        rethetas.push_back(refit.theta);
        refits.push_back(std::move(refit));
      }
      if (!ok) {
        ++rec.dropped;
        continue;
      }
      const SigmaEstimate rep_sigma = estimate_sigma(rep, refits);
      const double t_star = subset_statistic(rethetas, rep_sigma.sigma, cfg.statistic, n);
      if (!std::isfinite(t_star)) {
        ++rec.dropped;
        continue;
      }
      rec.boot_ts.push_back(t_star);
    } catch (const std::exception&) {
      ++rec.dropped;
    }
  }

  if (rec.dropped > kDropWarnShare * cfg.B) {
    rec.warnings.push_back("dropped " + std::to_string(rec.dropped) + " of " +
                           std::to_string(cfg.B) + " bootstrap replicates");
  }
  rec.p_raw = compute_pvalue(rec.observed_t, rec.boot_ts);
  return rec;
}

}  // namespace

std::string to_string(TestStatistic statistic) {
  return statistic == TestStatistic::kEd ? "ed" : "ls";
}

std::string to_string(DependenceKind kind) {
  return kind == DependenceKind::kMaxStable ? "ms" : "biv";
}

double compute_pvalue(double observed, const std::vector<double>& boots) {
  if (boots.empty()) {
    throw std::invalid_argument("compute_pvalue: no surviving bootstrap replicates");
  }
  if (!std::isfinite(observed)) {
    throw std::invalid_argument("compute_pvalue: observed statistic is not finite");
  }
  std::size_t count = 0;
  for (double t : boots) {
    if (observed <= t) ++count;
  }
  return static_cast<double>(count) / (static_cast<double>(boots.size()) + 1.0);
}

std::vector<PairTestRecord> bootstrap_pairwise(const BlockMaximaPanel& panel,
                                               const std::vector<int>& partners,
                                               const BootstrapConfig& cfg) {
  check_config(cfg);
  validate_subset(panel, partners);
  for (int d : partners) {
    if (d == panel.loi) {
      throw std::invalid_argument("bootstrap_pairwise: the location of interest is not a partner");
    }
  }
  const PreparedPanel prep = prepare(panel);
  const int n = panel.n_years();

  std::vector<PairTestRecord> records;
  records.reserve(partners.size());

  if (cfg.dependence == DependenceKind::kMaxStable) {
    const MaxStableFit ms = select_max_stable(prep.frechet, panel.coords, cfg.ms_candidates);
    std::vector<std::string> ms_warnings = ms.warnings;
    if (!ms.converged) {
      ms_warnings.push_back("selected dependence model fit did not converge");
    }
    Rng rng(derive_seed(cfg.seed, kStreamFields));
    std::vector<Eigen::MatrixXd> fields;
    fields.reserve(static_cast<std::size_t>(cfg.B));
    for (int b = 0; b < cfg.B; ++b) {
      fields.push_back(simulate_max_stable(ms.spec, panel.coords, n, rng));
    }
    for (int d : partners) {
      const std::vector<int> subset{panel.loi, d};
      auto source = [&fields, &subset](int b, int t, int m) {
        return fields[static_cast<std::size_t>(b)](t, subset[static_cast<std::size_t>(m)]);
      };
      PairTestRecord rec = run_target(panel, prep, subset, cfg, describe(ms.spec), source);
      rec.warnings.insert(rec.warnings.begin(), ms_warnings.begin(), ms_warnings.end());
      rec.warnings.insert(rec.warnings.begin(), prep.warnings.begin(), prep.warnings.end());
      records.push_back(std::move(rec));
    }
    return records;
  }

  for (std::size_t i = 0; i < partners.size(); ++i) {
    const int d = partners[i];
    const std::vector<int> subset{panel.loi, d};
    Eigen::MatrixXd pair(n, 2);
    pair.col(0) = prep.frechet.col(panel.loi);
    pair.col(1) = prep.frechet.col(d);
    const BivariateFit biv = select_biv_ev(pair, cfg.biv_candidates);
    Rng rng(derive_seed(cfg.seed, kStreamPairSim, static_cast<std::uint64_t>(d)));
    std::vector<Eigen::MatrixXd> sims;
    sims.reserve(static_cast<std::size_t>(cfg.B));
    for (int b = 0; b < cfg.B; ++b) sims.push_back(simulate_biv_ev(biv.spec, n, rng));
    auto source = [&sims](int b, int t, int m) {
      return sims[static_cast<std::size_t>(b)](t, m);
    };
    PairTestRecord rec = run_target(panel, prep, subset, cfg, describe(biv.spec), source);
    rec.warnings.insert(rec.warnings.begin(), biv.warnings.begin(), biv.warnings.end());
    if (!biv.converged) {
      rec.warnings.push_back("selected dependence model fit did not converge");
    }
    rec.warnings.insert(rec.warnings.begin(), prep.warnings.begin(), prep.warnings.end());
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<PairTestRecord> bootstrap_global(const BlockMaximaPanel& panel,
                                             const std::vector<std::vector<int>>& targets,
                                             const BootstrapConfig& cfg) {
  check_config(cfg);
  if (targets.empty()) throw std::invalid_argument("bootstrap_global: no targets");
  for (const auto& target : targets) {
    validate_subset(panel, target);
    if (target.size() < 2) {
      throw std::invalid_argument("bootstrap_global: each target needs at least two locations");
    }
    if (cfg.dependence == DependenceKind::kBivariate && target.size() != 2) {
      throw std::invalid_argument(
          "bootstrap_global: bivariate dependence requires targets of exactly two locations");
    }
  }
  const PreparedPanel prep = prepare(panel);
  const int n = panel.n_years();

  std::vector<PairTestRecord> records;
  records.reserve(targets.size());

  if (cfg.dependence == DependenceKind::kMaxStable) {
    const MaxStableFit ms = select_max_stable(prep.frechet, panel.coords, cfg.ms_candidates);
    std::vector<std::string> ms_warnings = ms.warnings;
    if (!ms.converged) {
      ms_warnings.push_back("selected dependence model fit did not converge");
    }
    Rng rng(derive_seed(cfg.seed, kStreamFields));
    std::vector<Eigen::MatrixXd> fields;
    fields.reserve(static_cast<std::size_t>(cfg.B));
    for (int b = 0; b < cfg.B; ++b) {
      fields.push_back(simulate_max_stable(ms.spec, panel.coords, n, rng));
    }
    for (const auto& target : targets) {
      auto source = [&fields, &target](int b, int t, int m) {
        return fields[static_cast<std::size_t>(b)](t, target[static_cast<std::size_t>(m)]);
      };
      PairTestRecord rec = run_target(panel, prep, target, cfg, describe(ms.spec), source);
      rec.warnings.insert(rec.warnings.begin(), ms_warnings.begin(), ms_warnings.end());
      rec.warnings.insert(rec.warnings.begin(), prep.warnings.begin(), prep.warnings.end());
      records.push_back(std::move(rec));
    }
    return records;
  }

  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& target = targets[i];
    Eigen::MatrixXd pair(n, 2);
    pair.col(0) = prep.frechet.col(target[0]);
    pair.col(1) = prep.frechet.col(target[1]);
    const BivariateFit biv = select_biv_ev(pair, cfg.biv_candidates);
    Rng rng(derive_seed(cfg.seed, kStreamPairSim, static_cast<std::uint64_t>(i)));
    std::vector<Eigen::MatrixXd> sims;
    sims.reserve(static_cast<std::size_t>(cfg.B));
    for (int b = 0; b < cfg.B; ++b) sims.push_back(simulate_biv_ev(biv.spec, n, rng));
    auto source = [&sims](int b, int t, int m) {
      return sims[static_cast<std::size_t>(b)](t, m);
    };
    PairTestRecord rec = run_target(panel, prep, target, cfg, describe(biv.spec), source);
    rec.warnings.insert(rec.warnings.begin(), biv.warnings.begin(), biv.warnings.end());
    if (!biv.converged) {
      rec.warnings.push_back("selected dependence model fit did not converge");
    }
    rec.warnings.insert(rec.warnings.begin(), prep.warnings.begin(), prep.warnings.end());
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace gevpool
