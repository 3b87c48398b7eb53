#pragma once

#include <string>
#include <vector>

#include "gevpool/bootstrap.hpp"

namespace gevpool {

enum class AdjustMethod { kIm, kHolm, kBh };

std::string to_string(AdjustMethod method);
AdjustMethod adjust_method_from_string(const std::string& name);

// Raw p-values together with their multiplicity-adjusted counterparts; a
// hypothesis is rejected when its adjusted value is at most alpha.
struct AdjustedPValues {
  AdjustMethod method = AdjustMethod::kIm;
  std::vector<double> raw;
  std::vector<double> adjusted;  // aligned with raw
  double alpha = 0.1;
};

// No correction: adjusted equals raw.
AdjustedPValues adjust_im(const std::vector<double>& raw, double alpha = 0.1);

// Holm stepdown: sorted p_(j) scaled by (m - j + 1) and made monotone by a
// running maximum, capped at 1. Controls the family-wise error rate.
AdjustedPValues adjust_holm(const std::vector<double>& raw, double alpha = 0.1);

// Benjamini-Hochberg stepup: backward minimum of m * p_(j) / j, capped at 1.
// Controls the false discovery rate.
AdjustedPValues adjust_bh(const std::vector<double>& raw, double alpha = 0.1);

AdjustedPValues adjust_pvalues(const std::vector<double>& raw, AdjustMethod method,
                               double alpha = 0.1);

// True where adjusted[i] <= alpha.
std::vector<bool> rejections(const AdjustedPValues& adj);

struct PartnerDecision {
  int partner = -1;  // panel column index
  double p_raw = 1.0;
  double p_holm = 1.0;
  double p_bh = 1.0;
  bool reject_im = false;
  bool reject_holm = false;
  bool reject_bh = false;
};

// Decisions for every partner under all three methods plus the pooling set
// recommended by the requested method.
struct PoolingReport {
  int loi = 0;
  double alpha = 0.1;
  AdjustMethod method = AdjustMethod::kBh;
  std::vector<PartnerDecision> partners;  // record order
  std::vector<int> recommended;           // loi plus non-rejected partners, ascending
};

// Each record must test a pair {loi, partner}; partners must be distinct.
PoolingReport recommend(const std::vector<PairTestRecord>& records, int loi, AdjustMethod method,
                        double alpha);

}  // namespace gevpool
