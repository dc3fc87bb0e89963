#include <algorithm>
#include <cmath>
#include <vector>

#include "binci/aux_sources.hpp"
#include "doctest.h"

using namespace binci;

namespace {

// Kolmogorov distance between the empirical cdf of xs and U(0,1).
double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, std::max((i + 1) / n - xs[i], xs[i] - i / n));
  }
  return d;
}

void check_equidistributed(AuxSource src, int m) {
  std::vector<int> below(9, 0);
  for (int k = 0; k < m; ++k) {
    const double v = src.next().upper;
    for (int t = 1; t <= 9; ++t) below[t - 1] += v <= t / 10.0;
  }
  for (int t = 1; t <= 9; ++t) CHECK(std::abs(below[t - 1] / double(m) - t / 10.0) < 0.01);
}

}  // namespace

TEST_CASE("seeded uniform replays and stays in (0,1)") {
  auto a = AuxSource::seeded_uniform(42);
  auto b = AuxSource::seeded_uniform(42);
  for (int i = 0; i < 3; ++i) CHECK(uniform_draw(a) == uniform_draw(b));
  auto c = AuxSource::seeded_uniform(43);
  CHECK(uniform_draw(c) != uniform_draw(a));
  auto w = AuxSource::weyl();
  CHECK_THROWS_AS(uniform_draw(w), std::invalid_argument);
}

TEST_CASE("seeded uniform mean and Kolmogorov distance") {
  auto src = AuxSource::seeded_uniform(20240601);
  std::vector<double> xs;
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = uniform_draw(src);
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    xs.push_back(v);
    sum += v;
  }
  CHECK(std::abs(sum / xs.size() - 0.5) < 0.01);
  CHECK(ks_uniform(xs) < 0.01);
}

TEST_CASE("weyl fractional parts") {
  CHECK(weyl(std::sqrt(2.0), 1) == doctest::Approx(0.41421356237).epsilon(1e-10));
  CHECK(weyl(std::sqrt(2.0), 2) == doctest::Approx(0.82842712475).epsilon(1e-10));
  CHECK(weyl(std::sqrt(2.0), 3) == doctest::Approx(0.24264068712).epsilon(1e-10));
  CHECK_THROWS(weyl(std::sqrt(2.0), 0));
}

TEST_CASE("van der Corput radical inverse") {
  CHECK(van_der_corput(1, 2) == 0.5);
  CHECK(van_der_corput(2, 2) == 0.25);
  CHECK(van_der_corput(3, 2) == 0.75);
  CHECK(van_der_corput(4, 2) == 0.125);
  CHECK(van_der_corput(1, 3) == doctest::Approx(1.0 / 3));
  CHECK(van_der_corput(5, 3) == doctest::Approx(2.0 / 3 + 1.0 / 9));
  CHECK_THROWS(van_der_corput(1, 1));
}

TEST_CASE("equidistribution of deterministic sequences") {
  check_equidistributed(AuxSource::weyl(), 100000);
  check_equidistributed(AuxSource::van_der_corput(2), 100000);
  check_equidistributed(AuxSource::van_der_corput(3), 100000);
}

TEST_CASE("periodic permutation sequence") {
  const std::vector<int> identity{1, 2, 3, 4};
  const double expected[] = {0.25, 0.5, 0.75, 1.0};
  for (int k = 1; k <= 4; ++k) CHECK(periodic_perm(identity, k).w() == expected[k - 1]);
  CHECK(periodic_perm(identity, 5).w() == 0.25);

  const std::vector<int> shuffled{3, 1, 4, 2};
  std::vector<double> ws;
  for (int k = 1; k <= 4; ++k) ws.push_back(periodic_perm(shuffled, k).w());
  std::sort(ws.begin(), ws.end());
  CHECK(ws == std::vector<double>{0.25, 0.5, 0.75, 1.0});

  const std::vector<int> bad{1, 1, 3};
  CHECK_THROWS_AS(periodic_perm(bad, 1), std::invalid_argument);
  const std::vector<int> out_of_range{1, 4, 2};
  CHECK_THROWS_AS(AuxSource::periodic_perm(out_of_range), std::invalid_argument);
  CHECK_THROWS_AS(AuxSource::periodic_perm({1}), std::invalid_argument);
}

TEST_CASE("periodic source: every window of N is the full level set, companion is w - 1/N") {
  const std::vector<int> perm{5, 2, 7, 1, 3, 6, 4};
  const int n = static_cast<int>(perm.size());
  auto src = AuxSource::periodic_perm(perm);
  std::vector<PeriodicValue> seen;
  for (int k = 1; k <= 5 * n; ++k) {
    const auto d = src.next();
    const auto pv = periodic_perm(perm, k);
    CHECK(d.upper == pv.w());
    CHECK(d.lower == pv.w_tilde());
    CHECK(pv.w_tilde() == static_cast<double>(pv.numerator - 1) / n);
    seen.push_back(pv);
  }
  for (std::size_t start = 0; start + n <= seen.size(); ++start) {
    std::vector<int> nums;
    for (int i = 0; i < n; ++i) nums.push_back(seen[start + i].numerator);
    std::sort(nums.begin(), nums.end());
    for (int i = 0; i < n; ++i) CHECK(nums[i] == i + 1);
  }
}

TEST_CASE("declared range conventions hold on every emission") {
  for (auto src : {AuxSource::seeded_uniform(7), AuxSource::weyl(std::sqrt(3.0)),
                   AuxSource::van_der_corput(5), AuxSource::periodic_perm({2, 1, 3})}) {
    for (int k = 0; k < 1000; ++k) {
      const auto d = src.next();
      CHECK(in_range(src.convention(), d.upper));
      CHECK((in_range(RangeConvention::ClosedOpen, d.lower) ||
             in_range(RangeConvention::OpenClosed, d.lower)));
    }
    CHECK(src.position() == 1000);
  }
  CHECK(AuxSource::periodic_perm({2, 1}).convention() == RangeConvention::OpenClosed);
  CHECK(AuxSource::van_der_corput().convention() == RangeConvention::ClosedOpen);
}

TEST_CASE("describe is stable") {
  CHECK(AuxSource::van_der_corput(2).describe() == "vdc(base=2)");
  CHECK(AuxSource::periodic_perm({2, 1, 3}).describe() == "perm(N=3,perm=2 1 3)");
  CHECK(AuxSource::seeded_uniform(9).describe() == "uniform(generator=mt19937_64,seed=9)");
  CHECK(AuxSource::weyl().describe() == "weyl(lambda=1.41421356237)");
}
