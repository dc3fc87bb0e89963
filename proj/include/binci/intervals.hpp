#pragma once

// Clopper-Pearson, Stevens randomized, two-variable and discrete-auxiliary
// equi-tailed intervals for a binomial probability.

#include <optional>
#include <string>
#include <vector>

#include "binci/numerics.hpp"

namespace binci {

enum class Method {
  ClopperPearson,
  Stevens,
  StevensGeneralized,
  StevensMirrored,  // generalized with v_lower = 1 - v_upper
  DiscreteAux,
  Korn,
  SplitSample,
};

std::string method_name(Method m);
Method parse_method(const std::string& name);

// Everything needed to reproduce an interval.
struct IntervalInputs {
  int n = 0;
  int y = 0;
  double alpha = 0.05;
  std::optional<double> v_lower;  // auxiliary value behind the lower endpoint
  std::optional<double> v_upper;  // auxiliary value behind the upper endpoint
  std::optional<Fraction> w;
  std::optional<Fraction> w_tilde;
  std::optional<std::string> bits;
  std::optional<int> y1, y2, n1, n2;
};

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
  Method method = Method::ClopperPearson;
  IntervalInputs inputs;
  // Only the two-variable construction can produce lower > upper.
  bool crossed = false;

  bool contains(double theta) const { return lower <= theta && theta <= upper; }
  double length() const { return upper - lower; }
};

void validate_alpha(double alpha);

Interval cp_interval(int n, int y, double alpha);

// Endpoint roots of the randomized statistic Z = Y + v.
//
// The upper endpoint solves (1 - v) F(y-1) + v F(y) = alpha/2 and is 1 when
// y = n and v > alpha/2. When y = 0 and v < alpha/2 the upper confidence
// set is empty and the endpoint is pinned at 0.
//
// The lower endpoint solves (1 - v)(1 - F(y-1)) + v (1 - F(y)) = alpha/2 and
// is 0 when y = 0 and v < 1 - alpha/2. When y = n and v > 1 - alpha/2 it is
// pinned at 1.
double stevens_upper(int n, int y, double v, double alpha);
double stevens_lower(int n, int y, double v, double alpha);

Interval stevens_interval(int n, int y, double v, double alpha);

// Lower endpoint from v_lower, upper from v_upper. The raw pair is returned;
// `crossed` is set when lower > upper.
Interval stevens_generalized(int n, int y, double v_lower, double v_upper, double alpha);

// [lower(y, w_tilde), upper(y, w)] for a discrete level w = k/M with
// w_tilde = (k-1)/M and M > 1.
Interval discrete_aux_interval(int n, int y, const Fraction& w, const Fraction& w_tilde,
                               double alpha);

namespace detail {
// Level interval without the M > 1 restriction (M = 1 reduces to CP).
Interval level_interval(int n, int y, WideCount k, WideCount levels, double alpha);
}  // namespace detail

}  // namespace binci
