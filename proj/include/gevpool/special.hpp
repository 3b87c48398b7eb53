#pragma once

namespace gevpool {

// standard normal density
double norm_pdf(double x);

// standard normal cdf, accurate to ~1e-15 via erfc
double norm_cdf(double x);

// inverse standard normal cdf on (0,1); refined to ~1e-14
double norm_quantile(double p);

// regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x), a > 0, x >= 0
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// upper tail of the chi-square distribution with df degrees of freedom;
// throws std::domain_error for df < 1 or x < 0
double chi_square_upper_tail(double x, int df);

}  // namespace gevpool
