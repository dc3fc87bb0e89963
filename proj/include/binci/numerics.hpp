#pragma once

// Binomial probability kernels, exact combinatorial counts and the monotone
// root solver shared by every interval construction.

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace binci {

__extension__ typedef unsigned __int128 uint128_t;

/// Largest n accepted by choose() and the exact pattern-counting code.
inline constexpr int kMaxExactN = 64;

/// Raised when a root search is started on an interval that does not
/// straddle the target value.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BinomialModel {
  BinomialModel(int n, double theta);

  int n;
  double theta;
};

// Exact unsigned count, wide enough for 2^64 and every C(n, k) with n <= 64.
class WideCount {
 public:
  constexpr WideCount() = default;
  constexpr explicit WideCount(uint128_t v) : value_(v) {}

  constexpr uint128_t value() const { return value_; }
  double to_double() const { return static_cast<double>(value_); }
  std::string to_string() const;

  constexpr WideCount& operator+=(WideCount o) {
    value_ += o.value_;
    return *this;
  }
  friend constexpr WideCount operator+(WideCount a, WideCount b) { return a += b; }
  friend constexpr WideCount operator-(WideCount a, WideCount b) {
    return WideCount(a.value_ - b.value_);
  }
  friend constexpr WideCount operator*(WideCount a, WideCount b) {
    return WideCount(a.value_ * b.value_);
  }
  friend constexpr bool operator==(WideCount, WideCount) = default;
  friend constexpr auto operator<=>(WideCount a, WideCount b) {
    return a.value_ <=> b.value_;
  }

 private:
  uint128_t value_ = 0;
};

// Exact nonnegative rational num/den with den > 0. Not normalised unless
// reduced() is called; comparisons are by value.
struct Fraction {
  WideCount num;
  WideCount den{1};

  double value() const { return num.to_double() / den.to_double(); }
  Fraction reduced() const;
  std::string to_string() const;

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return (a.num * b.den) <=> (b.num * a.den);
  }
};

/// Parses "k/M" (or a bare integer) into a Fraction. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Fraction parse_fraction(const std::string& text);

uint128_t gcd(uint128_t a, uint128_t b);

// P(Y = y). Domain error unless 0 <= y <= n.
double binom_pmf(const BinomialModel& model, int y);

// P(Y <= y), with F(-1) = 0 and F(n) = 1. Domain error unless -1 <= y <= n.
double binom_cdf(const BinomialModel& model, int y);

// P(Y >= y), summed over the upper tail directly. Valid for 0 <= y <= n + 1.
double binom_sf(const BinomialModel& model, int y);

// pmf values for y = 0..n in one pass.
std::vector<double> binom_pmf_all(const BinomialModel& model);

// Exact binomial coefficient, 0 <= k <= n <= kMaxExactN.
WideCount choose(int n, int k);

struct Bracket {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr int kMaxBisections = 200;

/// Bisection for the point where a continuous, decreasing `f` crosses
/// `target` on `bracket`. Requires f(lo) >= target >= f(hi); throws
/// BracketError otherwise. Stops once the bracket is no wider than `tol`
/// and returns its midpoint.
double solve_decreasing(const std::function<double(double)>& f, double target,
                        Bracket bracket = {}, double tol = kDefaultTolerance);

}  // namespace binci
