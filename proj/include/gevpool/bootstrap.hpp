#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gevpool/dependence.hpp"
#include "gevpool/fit.hpp"
#include "gevpool/panel.hpp"

namespace gevpool {

enum class TestStatistic { kEd, kLs };
enum class DependenceKind { kMaxStable, kBivariate };

std::string to_string(TestStatistic statistic);
std::string to_string(DependenceKind kind);

struct BootstrapConfig {
  int B = 200;  // number of bootstrap replicates, at least 1
  std::uint64_t seed = 0;
  TestStatistic statistic = TestStatistic::kEd;
  DependenceKind dependence = DependenceKind::kMaxStable;
  std::vector<MaxStableFamily> ms_candidates = default_max_stable_candidates();
  std::vector<BivariateFamily> biv_candidates = default_biv_candidates();
};

struct PairTestRecord {
  std::vector<int> subset;               // panel column indices tested for homogeneity
  double observed_t = 0.0;
  std::vector<double> boot_ts;           // statistics of the surviving replicates
  double p_raw = 1.0;
  std::string dependence;                // description of the selected dependence model
  std::vector<ScaleGevParams> null_fit;  // single entry for ED, one per member for LS
  int dropped = 0;
  std::vector<std::string> warnings;
};

// share of replicates that may be dropped before a warning is recorded
inline constexpr double kDropWarnShare = 0.05;

// p = #(observed <= replicate) / (surviving + 1); can be zero, meaning the
// observed statistic exceeded every replicate (below 1/(B+1) resolution)
double compute_pvalue(double observed, const std::vector<double>& boots);

// One homogeneity test per partner location d, each on the pair {loi, d}.
std::vector<PairTestRecord> bootstrap_pairwise(const BlockMaximaPanel& panel,
                                               const std::vector<int>& partners,
                                               const BootstrapConfig& cfg);

// One homogeneity test per target subset; the dependence model and simulated
// fields are shared across targets.
std::vector<PairTestRecord> bootstrap_global(const BlockMaximaPanel& panel,
                                             const std::vector<std::vector<int>>& targets,
                                             const BootstrapConfig& cfg);

}  // namespace gevpool
