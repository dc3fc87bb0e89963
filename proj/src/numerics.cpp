#include "binci/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace binci {

namespace {

constexpr int kLogFactorialTableSize = 1025;

// log(k!) for k < kLogFactorialTableSize. Built once; std::lgamma is only
// touched during the (thread-safe) static initialisation.
const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTableSize);
    for (int k = 0; k < kLogFactorialTableSize; ++k) {
      t[k] = std::lgamma(static_cast<double>(k) + 1.0);
    }
    return t;
  }();
  return table;
}

double log_factorial(int k) {
  if (k < kLogFactorialTableSize) return log_factorial_table()[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_choose(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// Log-space pmf with log(theta) and log(1 - theta) precomputed. Only valid
// for 0 < theta < 1.
struct LogKernel {
  int n;
  double log_p;
  double log_q;

  double pmf(int y) const {
    return std::exp(log_choose(n, y) + y * log_p + (n - y) * log_q);
  }
};

// Degenerate theta puts all mass on y = 0 or y = n.
double degenerate_pmf(const BinomialModel& m, int y) {
  if (m.theta == 0.0) return y == 0 ? 1.0 : 0.0;
  return y == m.n ? 1.0 : 0.0;
}

bool degenerate(const BinomialModel& m) { return m.theta == 0.0 || m.theta == 1.0; }

}  // namespace

BinomialModel::BinomialModel(int n_, double theta_) : n(n_), theta(theta_) {
  if (n < 1) throw std::domain_error("binomial model needs n >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::domain_error("binomial model needs 0 <= theta <= 1");
  }
}

std::string WideCount::to_string() const {
  if (value_ == 0) return "0";
  std::string digits;
  uint128_t v = value_;
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

uint128_t gcd(uint128_t a, uint128_t b) {
  while (b != 0) {
    uint128_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Fraction Fraction::reduced() const {
  uint128_t g = gcd(num.value(), den.value());
  if (g == 0) return *this;
  return Fraction{WideCount(num.value() / g), WideCount(den.value() / g)};
}

std::string Fraction::to_string() const { return num.to_string() + "/" + den.to_string(); }

Fraction parse_fraction(const std::string& text) {
  auto parse_count = [&](const std::string& s) {
    if (s.empty() || s.size() > 30 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw std::invalid_argument("malformed fraction '" + text + "'");
    }
    uint128_t v = 0;
    for (char c : s) v = v * 10 + static_cast<uint128_t>(c - '0');
    return WideCount(v);
  };
  auto slash = text.find('/');
  Fraction f;
  if (slash == std::string::npos) {
    f = Fraction{parse_count(text), WideCount(1)};
  } else {
    f = Fraction{parse_count(text.substr(0, slash)), parse_count(text.substr(slash + 1))};
  }
  if (f.den == WideCount(0)) throw std::invalid_argument("fraction with zero denominator");
  return f;
}

double binom_pmf(const BinomialModel& model, int y) {
  if (y < 0 || y > model.n) throw std::domain_error("pmf argument outside [0, n]");
  if (degenerate(model)) return degenerate_pmf(model, y);
  LogKernel k{model.n, std::log(model.theta), std::log1p(-model.theta)};
  return k.pmf(y);
}

double binom_cdf(const BinomialModel& model, int y) {
  if (y < -1 || y > model.n) throw std::domain_error("cdf argument outside [-1, n]");
  if (y == -1) return 0.0;
  if (y == model.n) return 1.0;
  if (degenerate(model)) return model.theta == 0.0 ? 1.0 : 0.0;
  LogKernel k{model.n, std::log(model.theta), std::log1p(-model.theta)};
  double sum = 0.0;
  for (int j = 0; j <= y; ++j) sum += k.pmf(j);
  return std::min(sum, 1.0);
}

double binom_sf(const BinomialModel& model, int y) {
  if (y < 0 || y > model.n + 1) throw std::domain_error("survival argument outside [0, n+1]");
  if (y == 0) return 1.0;
  if (y == model.n + 1) return 0.0;
  if (degenerate(model)) return model.theta == 1.0 ? 1.0 : 0.0;
  LogKernel k{model.n, std::log(model.theta), std::log1p(-model.theta)};
  double sum = 0.0;
  for (int j = model.n; j >= y; --j) sum += k.pmf(j);
  return std::min(sum, 1.0);
}

std::vector<double> binom_pmf_all(const BinomialModel& model) {
  std::vector<double> out(static_cast<std::size_t>(model.n) + 1);
  if (degenerate(model)) {
    for (int y = 0; y <= model.n; ++y) out[y] = degenerate_pmf(model, y);
    return out;
  }
  LogKernel k{model.n, std::log(model.theta), std::log1p(-model.theta)};
  for (int y = 0; y <= model.n; ++y) out[y] = k.pmf(y);
  return out;
}

WideCount choose(int n, int k) {
  if (n < 0 || n > kMaxExactN) throw std::domain_error("choose supports 0 <= n <= 64");
  if (k < 0 || k > n) throw std::domain_error("choose argument k outside [0, n]");
  k = std::min(k, n - k);
  uint128_t r = 1;
  // r * (n - k + i) stays below 2^128 for n <= 64; division is exact at each step.
  for (int i = 1; i <= k; ++i) r = r * static_cast<uint128_t>(n - k + i) / static_cast<uint128_t>(i);
  return WideCount(r);
}

double solve_decreasing(const std::function<double(double)>& f, double target, Bracket bracket,
                        double tol) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo <= hi)) throw BracketError("solver bracket has lo > hi");
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo >= target && target >= f_hi)) {
    throw BracketError("target " + std::to_string(target) + " not straddled on [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]: f(lo)=" +
                       std::to_string(f_lo) + " f(hi)=" + std::to_string(f_hi));
  }
  for (int it = 0; it < kMaxBisections && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace binci
