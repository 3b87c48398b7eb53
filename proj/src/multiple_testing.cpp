#include "gevpool/multiple_testing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gevpool {

namespace {

void check_input(const std::vector<double>& raw, double alpha) {
  if (raw.empty()) throw std::invalid_argument("p-value adjustment: empty input");
  for (double p : raw) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("p-value adjustment: values must lie in [0, 1]");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("p-value adjustment: alpha must lie in (0, 1)");
  }
}

// indices that sort raw ascending, stable in the original order for ties
std::vector<std::size_t> ascending_order(const std::vector<double>& raw) {
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&raw](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  return order;
}

}  // namespace

std::string to_string(AdjustMethod method) {
  switch (method) {
    case AdjustMethod::kIm: return "im";
    case AdjustMethod::kHolm: return "holm";
    case AdjustMethod::kBh: return "bh";
  }
  throw std::logic_error("unknown adjustment method");
}

AdjustMethod adjust_method_from_string(const std::string& name) {
  if (name == "im") return AdjustMethod::kIm;
  if (name == "holm") return AdjustMethod::kHolm;
  if (name == "bh") return AdjustMethod::kBh;
  throw std::invalid_argument("unknown adjustment method '" + name + "'");
}

AdjustedPValues adjust_im(const std::vector<double>& raw, double alpha) {
  check_input(raw, alpha);
  return AdjustedPValues{AdjustMethod::kIm, raw, raw, alpha};
}

AdjustedPValues adjust_holm(const std::vector<double>& raw, double alpha) {
  check_input(raw, alpha);
  const std::size_t m = raw.size();
  const auto order = ascending_order(raw);
  std::vector<double> adjusted(m);
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double scaled = static_cast<double>(m - j) * raw[order[j]];
    running = std::min(1.0, std::max(running, scaled));
    adjusted[order[j]] = running;
  }
  return AdjustedPValues{AdjustMethod::kHolm, raw, std::move(adjusted), alpha};
}

AdjustedPValues adjust_bh(const std::vector<double>& raw, double alpha) {
  check_input(raw, alpha);
  const std::size_t m = raw.size();
  const auto order = ascending_order(raw);
  std::vector<double> adjusted(m);
  double running = 1.0;
  for (std::size_t j = m; j-- > 0;) {
    const double scaled =
        static_cast<double>(m) * raw[order[j]] / static_cast<double>(j + 1);
    running = std::min(running, std::min(1.0, scaled));
    adjusted[order[j]] = running;
  }
  return AdjustedPValues{AdjustMethod::kBh, raw, std::move(adjusted), alpha};
}

AdjustedPValues adjust_pvalues(const std::vector<double>& raw, AdjustMethod method, double alpha) {
  switch (method) {
    case AdjustMethod::kIm: return adjust_im(raw, alpha);
    case AdjustMethod::kHolm: return adjust_holm(raw, alpha);
    case AdjustMethod::kBh: return adjust_bh(raw, alpha);
  }
  throw std::logic_error("unknown adjustment method");
}

std::vector<bool> rejections(const AdjustedPValues& adj) {
  std::vector<bool> out(adj.adjusted.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = adj.adjusted[i] <= adj.alpha;
  return out;
}

PoolingReport recommend(const std::vector<PairTestRecord>& records, int loi, AdjustMethod method,
                        double alpha) {
  if (records.empty()) throw std::invalid_argument("recommend: no test records");
  std::vector<double> raw;
  std::vector<int> partner_of;
  std::set<int> seen;
  for (const auto& rec : records) {
    if (rec.subset.size() != 2) {
      throw std::invalid_argument("recommend: records must test pairs");
    }
    int partner;
    if (rec.subset[0] == loi) {
      partner = rec.subset[1];
    } else if (rec.subset[1] == loi) {
      partner = rec.subset[0];
    } else {
      throw std::invalid_argument("recommend: record does not involve the location of interest");
    }
    if (!seen.insert(partner).second) {
      throw std::invalid_argument("recommend: duplicate partner in records");
    }
    raw.push_back(rec.p_raw);
    partner_of.push_back(partner);
  }

  const AdjustedPValues im = adjust_im(raw, alpha);
  const AdjustedPValues holm = adjust_holm(raw, alpha);
  const AdjustedPValues bh = adjust_bh(raw, alpha);
  const std::vector<bool> rej_im = rejections(im);
  const std::vector<bool> rej_holm = rejections(holm);
  const std::vector<bool> rej_bh = rejections(bh);

  PoolingReport report;
  report.loi = loi;
  report.alpha = alpha;
  report.method = method;
  report.recommended.push_back(loi);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    PartnerDecision dec;
    dec.partner = partner_of[i];
    dec.p_raw = raw[i];
    dec.p_holm = holm.adjusted[i];
    dec.p_bh = bh.adjusted[i];
    dec.reject_im = rej_im[i];
    dec.reject_holm = rej_holm[i];
    dec.reject_bh = rej_bh[i];
    const bool rejected = method == AdjustMethod::kIm     ? dec.reject_im
                          : method == AdjustMethod::kHolm ? dec.reject_holm
                                                          : dec.reject_bh;
    if (!rejected) report.recommended.push_back(dec.partner);
    report.partners.push_back(dec);
  }
  std::sort(report.recommended.begin(), report.recommended.end());
  return report;
}

}  // namespace gevpool
