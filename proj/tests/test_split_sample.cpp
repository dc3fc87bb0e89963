#include <numeric>
#include <set>
#include <utility>

#include "binci/split_sample.hpp"
#include "doctest.h"

using namespace binci;

TEST_CASE("split design search") {
  CHECK(split_design(47) == SplitDesign(23, 24));
  CHECK(split_design(5) == SplitDesign(2, 3));
  CHECK(split_design(10) == SplitDesign(3, 7));
  CHECK(split_design(3) == SplitDesign(1, 2));
  CHECK_THROWS_AS(split_design(2), std::domain_error);
  CHECK_THROWS_AS(SplitDesign(2, 4), std::domain_error);
  CHECK_THROWS_AS(SplitDesign(0, 3), std::domain_error);

  // Against a full scan for the closest coprime pair.
  for (int n = 3; n <= 200; ++n) {
    int best = -1;
    for (int k = 1; k <= n / 2; ++k) {
      if (std::gcd(k, n - k) == 1) best = k;
    }
    const auto d = split_design(n);
    CHECK(d.n1() == best);
    CHECK(d.n() == n);
  }
}

TEST_CASE("split cdf") {
  const SplitDesign d(3, 7);
  for (double theta : {0.0, 0.2, 0.9}) CHECK(split_sample_cdf(d, theta, d.max_numerator()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(split_sample_cdf(d, 0.0, 0) == 1.0);
  CHECK(split_sample_cdf(d, 0.0, 5) == 1.0);

  const auto t = d.numerator(1, 2);
  CHECK(t == 13);
  // Brute-force double sum, evaluated independently in high precision.
  CHECK(std::abs(split_sample_cdf(d, 0.4, t) - 0.376607232) < 1e-14);
  CHECK(std::abs(split_sample_cdf(d, 0.4, t) + split_sample_sf(d, 0.4, t + 1) - 1.0) < 1e-14);

  double prev = 1.0;
  for (int i = 1; i < 100; ++i) {
    const double f = split_sample_cdf(d, i / 100.0, t);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("split interval boundaries and the one-half tie") {
  const SplitDesign d(23, 24);
  CHECK(split_sample_interval(0, 0, d, 0.05).lower == 0.0);
  CHECK(split_sample_interval(23, 24, d, 0.05).upper == 1.0);
  const auto a = split_sample_interval(0, 24, d, 0.05);
  const auto b = split_sample_interval(23, 0, d, 0.05);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
  CHECK(a.inputs.y1 == 0);
  CHECK(b.inputs.n2 == 24);
  CHECK_THROWS_AS(split_sample_interval(24, 0, d, 0.05), std::domain_error);

  const SplitDesign e(3, 7);
  for (int y1 = 0; y1 <= 3; ++y1) {
    for (int y2 = 0; y2 <= 7; ++y2) {
      const auto iv = split_sample_interval(y1, y2, e, 0.05);
      CHECK(iv.lower <= iv.upper);
      if (y1 + y2 > 0) {
        CHECK(std::abs(split_sample_sf(e, iv.lower, e.numerator(y1, y2)) - 0.025) < 1e-10);
      }
      if (y1 + y2 < 10) {
        CHECK(std::abs(split_sample_cdf(e, iv.upper, e.numerator(y1, y2)) - 0.025) < 1e-10);
      }
    }
  }
}

TEST_CASE("support of the split estimator") {
  const auto s12 = thetahat_support(SplitDesign(1, 2));
  REQUIRE(s12.size() == 5);
  const char* expect[] = {"0/1", "1/4", "1/2", "3/4", "1/1"};
  for (int i = 0; i < 5; ++i) CHECK(s12[i].to_string() == expect[i]);

  for (auto [n1, n2] : {std::pair{3, 7}, std::pair{23, 24}, std::pair{5, 8}}) {
    const SplitDesign d(n1, n2);
    std::set<std::pair<std::int64_t, std::int64_t>> distinct;
    for (int y1 = 0; y1 <= n1; ++y1) {
      for (int y2 = 0; y2 <= n2; ++y2) {
        const std::int64_t num = d.numerator(y1, y2), den = d.max_numerator();
        const std::int64_t g = std::gcd(num, den);
        distinct.insert({num / g, den / g});
      }
    }
    const auto s = thetahat_support(d);
    CHECK(s.size() == distinct.size());
    CHECK(s.front().num == WideCount(0));
    CHECK(s.back() == parse_fraction("1/1"));
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1] < s[i]);
  }
  CHECK(thetahat_support(SplitDesign(23, 24)).size() == 599);
}
