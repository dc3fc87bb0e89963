#pragma once

// Intervals from the split-sample estimator
//   thetahat = (Y1/n1 + Y2/n2) / 2
// with n = n1 + n2 and gcd(n1, n2) = 1. All comparisons use the integer
// numerator T = y1*n2 + y2*n1, so thetahat = T / (2*n1*n2).

#include <cstdint>
#include <vector>

#include "binci/intervals.hpp"
#include "binci/numerics.hpp"

namespace binci {

class SplitDesign {
 public:
  // Both parts >= 1 and coprime; throws std::domain_error otherwise.
  SplitDesign(int n1, int n2);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int n() const { return n1_ + n2_; }

  std::int64_t numerator(int y1, int y2) const;
  std::int64_t max_numerator() const { return 2LL * n1_ * n2_; }

  friend bool operator==(const SplitDesign&, const SplitDesign&) = default;

 private:
  int n1_;
  int n2_;
};

// Closest coprime split with n1 <= n2, scanning n1 down from floor(n/2).
SplitDesign split_design(int n);

// P_theta(Y1*n2 + Y2*n1 <= t_numerator).
double split_sample_cdf(const SplitDesign& design, double theta, std::int64_t t_numerator);

// P_theta(Y1*n2 + Y2*n1 >= t_numerator).
double split_sample_sf(const SplitDesign& design, double theta, std::int64_t t_numerator);

Interval split_sample_interval(int y1, int y2, const SplitDesign& design, double alpha);

// Distinct values of thetahat, reduced and ascending.
std::vector<Fraction> thetahat_support(const SplitDesign& design);

}  // namespace binci
