#include "binci/split_sample.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace binci {

namespace {

template <typename Pred>
double lattice_mass(const SplitDesign& d, double theta, Pred keep) {
  const auto f1 = binom_pmf_all(BinomialModel(d.n1(), theta));
  const auto f2 = binom_pmf_all(BinomialModel(d.n2(), theta));
  double sum = 0.0;
  for (int y1 = 0; y1 <= d.n1(); ++y1) {
    for (int y2 = 0; y2 <= d.n2(); ++y2) {
      if (keep(d.numerator(y1, y2))) sum += f1[y1] * f2[y2];
    }
  }
  return std::min(sum, 1.0);
}

}  // namespace

SplitDesign::SplitDesign(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 1 || n2 < 1) throw std::domain_error("split parts must both be >= 1");
  if (std::gcd(n1, n2) != 1) throw std::domain_error("split parts must be coprime");
}

std::int64_t SplitDesign::numerator(int y1, int y2) const {
  if (y1 < 0 || y1 > n1_ || y2 < 0 || y2 > n2_) {
    throw std::domain_error("split counts outside [0, n1] x [0, n2]");
  }
  return static_cast<std::int64_t>(y1) * n2_ + static_cast<std::int64_t>(y2) * n1_;
}

SplitDesign split_design(int n) {
  if (n < 3) throw std::domain_error("split design needs n >= 3");
  for (int k = n / 2; k >= 1; --k) {
    if (std::gcd(k, n - k) == 1) return SplitDesign(k, n - k);
  }
  throw std::logic_error("unreachable: k = 1 is always coprime");
}

double split_sample_cdf(const SplitDesign& design, double theta, std::int64_t t_numerator) {
  return lattice_mass(design, theta, [&](std::int64_t t) { return t <= t_numerator; });
}

double split_sample_sf(const SplitDesign& design, double theta, std::int64_t t_numerator) {
  return lattice_mass(design, theta, [&](std::int64_t t) { return t >= t_numerator; });
}

Interval split_sample_interval(int y1, int y2, const SplitDesign& design, double alpha) {
  validate_alpha(alpha);
  const std::int64_t t_obs = design.numerator(y1, y2);
  const double target = 0.5 * alpha;
  Interval out;
  out.method = Method::SplitSample;
  out.inputs.n = design.n();
  out.inputs.y = y1 + y2;
  out.inputs.alpha = alpha;
  out.inputs.y1 = y1;
  out.inputs.y2 = y2;
  out.inputs.n1 = design.n1();
  out.inputs.n2 = design.n2();
  out.upper = t_obs == design.max_numerator()
                  ? 1.0
                  : solve_decreasing(
                        [&](double th) { return split_sample_cdf(design, th, t_obs); }, target);
  out.lower = t_obs == 0
                  ? 0.0
                  : solve_decreasing(
                        [&](double th) { return -split_sample_sf(design, th, t_obs); }, -target);
  return out;
}

std::vector<Fraction> thetahat_support(const SplitDesign& design) {
  std::vector<std::int64_t> nums;
  nums.reserve(static_cast<std::size_t>(design.n1() + 1) * (design.n2() + 1));
  for (int y1 = 0; y1 <= design.n1(); ++y1) {
    for (int y2 = 0; y2 <= design.n2(); ++y2) nums.push_back(design.numerator(y1, y2));
  }
  std::sort(nums.begin(), nums.end());
  nums.erase(std::unique(nums.begin(), nums.end()), nums.end());
  std::vector<Fraction> out;
  out.reserve(nums.size());
  const auto den = static_cast<uint128_t>(design.max_numerator());
  for (auto t : nums) {
    out.push_back(Fraction{WideCount(static_cast<uint128_t>(t)), WideCount(den)}.reduced());
  }
  return out;
}

}  // namespace binci
