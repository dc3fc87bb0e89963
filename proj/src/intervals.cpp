#include "binci/intervals.hpp"

#include <cmath>
#include <stdexcept>

namespace binci {

namespace {

void validate_counts(int n, int y) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (y < 0 || y > n) throw std::domain_error("y must lie in [0, n]");
}

void validate_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::ClopperPearson:
      return "cp";
    case Method::Stevens:
      return "stevens";
    case Method::StevensGeneralized:
      return "generalized";
    case Method::StevensMirrored:
      return "mirrored";
    case Method::DiscreteAux:
      return "discrete";
    case Method::Korn:
      return "korn";
    case Method::SplitSample:
      return "split";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::ClopperPearson, Method::Stevens, Method::StevensGeneralized,
                   Method::StevensMirrored, Method::DiscreteAux, Method::Korn,
                   Method::SplitSample}) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + name + "'");
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
}

Interval cp_interval(int n, int y, double alpha) {
  validate_counts(n, y);
  validate_alpha(alpha);
  const double target = 0.5 * alpha;
  Interval out;
  out.method = Method::ClopperPearson;
  out.inputs.n = n;
  out.inputs.y = y;
  out.inputs.alpha = alpha;
  out.upper = y == n ? 1.0
                     : solve_decreasing(
                           [&](double t) { return binom_cdf(BinomialModel(n, t), y); }, target);
  // P(Y >= y) increases in theta; solve its negation.
  out.lower = y == 0 ? 0.0
                     : solve_decreasing(
                           [&](double t) { return -binom_sf(BinomialModel(n, t), y); }, -target);
  return out;
}

double stevens_upper(int n, int y, double v, double alpha) {
  validate_counts(n, y);
  validate_unit(v, "v");
  validate_alpha(alpha);
  const double target = 0.5 * alpha;
  if (y == n && v > target) return 1.0;
  auto g = [&](double t) {
    const BinomialModel m(n, t);
    return binom_cdf(m, y - 1) + v * binom_pmf(m, y);
  };
  // g(0) = v when y = 0; nothing in [0,1] reaches alpha/2 then.
  if (y == 0 && v < target) return 0.0;
  return solve_decreasing(g, target);
}

double stevens_lower(int n, int y, double v, double alpha) {
  validate_counts(n, y);
  validate_unit(v, "v");
  validate_alpha(alpha);
  const double target = 0.5 * alpha;
  // h(0) = 1 - v when y = 0 and h(1) = 1 - v when y = n. Testing the computed
  // 1 - v keeps the pin consistent with h at v = 1 - alpha/2.
  if (y == 0 && 1.0 - v >= target) return 0.0;
  if (y == n && 1.0 - v < target) return 1.0;
  auto h = [&](double t) {
    const BinomialModel m(n, t);
    return binom_sf(m, y + 1) + (1.0 - v) * binom_pmf(m, y);
  };
  return solve_decreasing([&](double t) { return -h(t); }, -target);
}

Interval stevens_interval(int n, int y, double v, double alpha) {
  Interval out;
  out.method = Method::Stevens;
  out.inputs.n = n;
  out.inputs.y = y;
  out.inputs.alpha = alpha;
  out.inputs.v_lower = v;
  out.inputs.v_upper = v;
  out.lower = stevens_lower(n, y, v, alpha);
  out.upper = stevens_upper(n, y, v, alpha);
  return out;
}

Interval stevens_generalized(int n, int y, double v_lower, double v_upper, double alpha) {
  Interval out;
  out.method = Method::StevensGeneralized;
  out.inputs.n = n;
  out.inputs.y = y;
  out.inputs.alpha = alpha;
  out.inputs.v_lower = v_lower;
  out.inputs.v_upper = v_upper;
  out.lower = stevens_lower(n, y, v_lower, alpha);
  out.upper = stevens_upper(n, y, v_upper, alpha);
  out.crossed = out.lower > out.upper;
  return out;
}

namespace detail {

Interval level_interval(int n, int y, WideCount k, WideCount levels, double alpha) {
  if (levels == WideCount(0) || k == WideCount(0) || k > levels) {
    throw std::domain_error("level index must lie in 1..M");
  }
  const Fraction w{k, levels};
  const Fraction w_tilde{k - WideCount(1), levels};
  Interval out;
  out.method = Method::DiscreteAux;
  out.inputs.n = n;
  out.inputs.y = y;
  out.inputs.alpha = alpha;
  out.inputs.w = w;
  out.inputs.w_tilde = w_tilde;
  out.inputs.v_upper = w.value();
  out.inputs.v_lower = w_tilde.value();
  out.lower = stevens_lower(n, y, w_tilde.value(), alpha);
  out.upper = stevens_upper(n, y, w.value(), alpha);
  return out;
}

}  // namespace detail

Interval discrete_aux_interval(int n, int y, const Fraction& w, const Fraction& w_tilde,
                               double alpha) {
  if (w.den != w_tilde.den) {
    throw std::domain_error("w and w_tilde must be expressed over the same level count M");
  }
  if (w.den <= WideCount(1)) throw std::domain_error("level count M must exceed 1");
  if (w.num == WideCount(0) || w.num > w.den) throw std::domain_error("w must lie in (0, 1]");
  if (w_tilde.num + WideCount(1) != w.num) {
    throw std::domain_error("w_tilde must equal w - 1/M");
  }
  return detail::level_interval(n, y, w.num, w.den, alpha);
}

}  // namespace binci
