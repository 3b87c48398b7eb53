#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gevpool/bootstrap.hpp"
#include "gevpool/multiple_testing.hpp"
#include "gevpool/panel.hpp"
#include "gevpool/rng.hpp"

namespace gevpool {

// 4 x 4 grid with unit spacing; column 9 (0-based) is the location of interest.
inline constexpr int kGridSide = 4;
inline constexpr int kGridLoi = 9;

// deviating sets used in the study: two locations or seven locations, 0-based
std::vector<int> dev_set_small();
std::vector<int> dev_set_large();

struct Scenario {
  std::string name;
  int n_years = 75;
  ScaleGevParams base{20.0, 5.5, 0.1, 1.5};
  std::vector<int> deviating;  // 0-based panel columns, never the loi
  double c_mu = 0.0;           // added to mu
  double c_sigma = 1.0;        // multiplies sigma
  double c_gamma = 0.0;        // added to gamma
  double c_alpha = 0.0;        // added to alpha
  MaxStableSpec dependence{MaxStableFamily::kSmith, {0.4, 0.2, 0.9}};
};

// Smooth monotone covariate ramp from 0 to 0.925 over n blocks.
std::vector<double> study_covariate(int n);

Eigen::MatrixXd grid_coords();

ScaleGevParams deviated_params(const Scenario& s);

// Homogeneous baseline plus the corners and center of the (c_mu, c_sigma)
// face with two deviating locations.
std::vector<Scenario> default_scenarios();

// Full deviation grid c_mu x c_sigma x c_gamma x c_alpha minus the null
// combination, for both deviating sets, plus the homogeneous baseline
// (449 scenarios). Hours of runtime at default settings.
std::vector<Scenario> full_scenarios();

// Unit Frechet fields from the scenario's dependence model with margins
// mapped to the per-location trend models.
BlockMaximaPanel generate_scenario_data(const Scenario& s, Rng& rng);

struct StudyConfig {
  int reps = 200;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  BootstrapConfig bootstrap;     // B, statistic and candidate families; seeds are per replication
  bool run_global = false;       // homogeneity test of all locations at once
  bool run_pairwise_ms = true;   // pairwise tests against max-stable nulls
  bool run_pairwise_biv = false; // pairwise tests against bivariate nulls
  std::vector<AdjustMethod> methods{AdjustMethod::kIm, AdjustMethod::kHolm, AdjustMethod::kBh};
};

struct MethodMetrics {
  std::string label;       // loi-only, pool-all, ms-im, ..., biv-bh
  double fwer = 0.0;       // share of replications rejecting a truly homogeneous partner
  double fdr = 0.0;        // mean share of false rejections among rejections (0/0 counts as 0)
  double power = 0.0;      // mean share of deviating partners rejected; 0 when none deviate
  double rl_mse = 0.0;     // squared error of the pooled 100-block return level vs the truth
  double mean_pool = 0.0;  // average size of the recommended pooling set
};

struct StudyMetrics {
  Scenario scenario;
  int reps = 0;    // completed replications
  int failed = 0;  // replications lost to errors
  double truth_rl = 0.0;
  double global_rejection = std::numeric_limits<double>::quiet_NaN();
  std::vector<MethodMetrics> methods;
  std::vector<std::string> warnings;
};

// Runs the replications sequentially; the loi-only and pool-all baselines are
// always reported alongside the requested test procedures.
StudyMetrics run_study(const Scenario& s, const StudyConfig& cfg);

struct SummaryRow {
  std::string label;
  std::string metric;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// min / max / mean of every metric per method label across scenarios
std::vector<SummaryRow> summarize(const std::vector<StudyMetrics>& all);

// tidy tables keyed by the deviation components
std::string metrics_csv(const std::vector<StudyMetrics>& all);
std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace gevpool
