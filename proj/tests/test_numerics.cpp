#include <cmath>
#include <vector>

#include "binci/numerics.hpp"
#include "doctest.h"

using namespace binci;

namespace {

// Direct product formula in long double; independent of the log-space path.
long double oracle_pmf(int n, long double theta, int y) {
  long double c = 1.0L;
  for (int i = 1; i <= y; ++i) c = c * (n - y + i) / i;
  return c * std::pow(theta, y) * std::pow(1.0L - theta, n - y);
}

// Pascal triangle up to 64.
std::vector<std::vector<uint128_t>> pascal(int max_n) {
  std::vector<std::vector<uint128_t>> t(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    t[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

}  // namespace

TEST_CASE("pmf small cases") {
  CHECK(binom_pmf(BinomialModel(1, 0.5), 1) == doctest::Approx(0.5));
  CHECK(binom_pmf(BinomialModel(10, 0.0), 0) == 1.0);
  CHECK(binom_pmf(BinomialModel(10, 0.0), 3) == 0.0);
  CHECK(binom_pmf(BinomialModel(10, 1.0), 10) == 1.0);
  // mpmath: C(10,3) 0.3^3 0.7^7 = 0.266827932
  CHECK(std::abs(binom_pmf(BinomialModel(10, 0.3), 3) - 0.266827932) < 1e-14);
  CHECK(std::abs(binom_pmf(BinomialModel(10, 0.3), 3) -
                 static_cast<double>(oracle_pmf(10, 0.3L, 3))) < 2e-15);
}

TEST_CASE("pmf and cdf domain errors") {
  const BinomialModel m(5, 0.4);
  CHECK_THROWS_AS(binom_pmf(m, -1), std::domain_error);
  CHECK_THROWS_AS(binom_pmf(m, 6), std::domain_error);
  CHECK_THROWS_AS(binom_cdf(m, -2), std::domain_error);
  CHECK_THROWS_AS(binom_cdf(m, 6), std::domain_error);
  CHECK_THROWS_AS(BinomialModel(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(BinomialModel(3, 1.5), std::domain_error);
  CHECK_THROWS_AS(BinomialModel(3, std::nan("")), std::domain_error);
}

TEST_CASE("cdf conventions and oracle") {
  for (int n : {1, 7, 30}) {
    for (double theta : {0.0, 0.2, 0.9, 1.0}) {
      const BinomialModel m(n, theta);
      CHECK(binom_cdf(m, -1) == 0.0);
      CHECK(binom_cdf(m, n) == 1.0);
    }
  }
  // mpmath: sum_{j<=3} pmf(10, 0.3, j) = 0.6496107184
  CHECK(std::abs(binom_cdf(BinomialModel(10, 0.3), 3) - 0.6496107184) < 1e-14);
}

TEST_CASE("pmf mass, cdf increments and agreement with product formula") {
  for (int n = 1; n <= 30; ++n) {
    for (int i = 1; i < 40; ++i) {
      const double theta = i / 40.0;
      const BinomialModel m(n, theta);
      double total = 0.0;
      for (int y = 0; y <= n; ++y) {
        const double p = binom_pmf(m, y);
        CHECK(p >= 0.0);
        CHECK(std::abs(p - static_cast<double>(oracle_pmf(n, theta, y))) < 1e-13);
        CHECK(std::abs(binom_cdf(m, y) - binom_cdf(m, y - 1) - p) < 1e-12);
        CHECK(std::abs(binom_sf(m, y) - (1.0 - binom_cdf(m, y - 1))) < 1e-12);
        total += p;
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("cdf strictly decreasing in theta below y = n") {
  for (int n : {3, 10, 25}) {
    for (int y = 0; y < n; ++y) {
      double prev = 1.0;
      for (int i = 1; i < 100; ++i) {
        const double f = binom_cdf(BinomialModel(n, i / 100.0), y);
        // Strictness is only visible away from underflow and from rounding to 1.
        if (prev > 1e-300 && prev < 1.0) CHECK(f < prev);
        prev = f;
      }
    }
  }
}

TEST_CASE("choose is exact") {
  CHECK(choose(4, 2) == WideCount(6));
  CHECK_THROWS_AS(choose(4, 5), std::domain_error);
  CHECK_THROWS_AS(choose(4, -1), std::domain_error);
  CHECK_THROWS_AS(choose(65, 1), std::domain_error);

  const auto tri = pascal(64);
  for (int n = 0; n <= 64; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(choose(n, k) == WideCount(tri[n][k]));
      CHECK(choose(n, k) == choose(n, n - k));
      if (n >= 1 && k >= 1 && k <= n - 1) {
        CHECK(choose(n, k) == choose(n - 1, k - 1) + choose(n - 1, k));
      }
    }
  }
  CHECK(choose(47, 23).to_string() == "16123801841550");

  WideCount sum;
  for (int y = 0; y <= 47; ++y) sum += choose(47, y);
  CHECK(sum.to_string() == "140737488355328");

  WideCount sum64;
  for (int y = 0; y <= 64; ++y) sum64 += choose(64, y);
  CHECK(sum64.to_string() == "18446744073709551616");
}

TEST_CASE("fraction parsing and ordering") {
  const Fraction f = parse_fraction("2/4");
  CHECK(f.num == WideCount(2));
  CHECK(f.den == WideCount(4));
  CHECK(f == parse_fraction("1/2"));
  CHECK(f.reduced().to_string() == "1/2");
  CHECK(parse_fraction("1/3") < parse_fraction("1/2"));
  CHECK(parse_fraction("3").value() == 3.0);
  CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction("-1/2"), std::invalid_argument);
}

TEST_CASE("solve_decreasing") {
  CHECK(solve_decreasing([](double t) { return 1.0 - t; }, 0.5) == doctest::Approx(0.5).epsilon(1e-12));

  // (1 - t)^10 = 0.025  ->  t = 1 - 0.025^(1/10); mpmath 0.30849710781876082...
  const double r = solve_decreasing([](double t) { return std::pow(1.0 - t, 10); }, 0.025);
  CHECK(std::abs(r - 0.3084971078187608) < 1e-12);
  CHECK(std::abs(r - (1.0 - std::pow(0.025, 0.1))) < 1e-12);

  CHECK_THROWS_AS(solve_decreasing([](double t) { return 1.0 - t; }, 2.0), BracketError);
  CHECK_THROWS_AS(solve_decreasing([](double t) { return t; }, 0.5), BracketError);

  // Re-solving on [r - tol, r + tol] reproduces r.
  auto f = [](double t) { return binom_cdf(BinomialModel(10, t), 3); };
  const double root = solve_decreasing(f, 0.025);
  const double again = solve_decreasing(f, 0.025, Bracket{root - 1e-12, root + 1e-12});
  CHECK(std::abs(again - root) <= 1e-12);
  CHECK(std::abs(f(root) - 0.025) < 1e-11);
}
