#include "binci/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "binci/korn.hpp"
#include "binci/quadrature.hpp"

namespace binci {

namespace {

void validate_theta_open(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("theta must lie in (0, 1)");
}

// Upper bound on sum over y of M(y) for exact level-averaged lengths.
constexpr std::uint64_t kMaxTotalLevels = 5'000'000;

double clamp_unit(double r) { return std::clamp(r, 0.0, 1.0); }

// Ratios (alpha/2 - F(y-1)) / f(y) and (alpha/2 - P(Y >= y+1)) / f(y); NaN
// where f(y) underflows to zero.
struct CriticalRatios {
  std::vector<double> pmf;
  std::vector<double> upper;
  std::vector<double> lower;
};

CriticalRatios critical_ratios(int n, double alpha, double theta) {
  CriticalRatios c;
  c.pmf = binom_pmf_all(BinomialModel(n, theta));
  const double target = 0.5 * alpha;
  c.upper.resize(c.pmf.size());
  c.lower.resize(c.pmf.size());
  double cdf_below = 0.0;
  for (int y = 0; y <= n; ++y) {
    c.upper[y] = c.pmf[y] > 0.0 ? (target - cdf_below) / c.pmf[y] : std::nan("");
    cdf_below += c.pmf[y];
  }
  double sf_above = 0.0;
  for (int y = n; y >= 0; --y) {
    c.lower[y] = c.pmf[y] > 0.0 ? (target - sf_above) / c.pmf[y] : std::nan("");
    sf_above += c.pmf[y];
  }
  return c;
}

double level_mean_length(int n, int y, double alpha, std::uint64_t m) {
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= m; ++k) {
    const double w = static_cast<double>(k) / static_cast<double>(m);
    const double w_tilde = static_cast<double>(k - 1) / static_cast<double>(m);
    sum += stevens_upper(n, y, w, alpha) - stevens_lower(n, y, w_tilde, alpha);
  }
  return sum / static_cast<double>(m);
}

double composite_mean(const QuadratureRule& rule, double alpha,
                      const std::function<double(double)>& f) {
  const double a = 0.5 * alpha;
  const double b = 1.0 - 0.5 * alpha;
  return integrate(rule, f, 0.0, a) + integrate(rule, f, a, b) + integrate(rule, f, b, 1.0);
}

}  // namespace

LevelFunction constant_levels(std::uint64_t m) {
  if (m < 1) throw std::domain_error("level count must be >= 1");
  return [m](int) { return m; };
}

LevelFunction korn_levels(int n) {
  return [n](int y) { return static_cast<std::uint64_t>(choose(n, y).value()); };
}

std::uint64_t levels_below(std::uint64_t m, double ratio) {
  if (!(ratio > 0.0)) return 0;
  if (ratio > 1.0) return m;
  const double md = static_cast<double>(m);
  const double guess = std::ceil(md * ratio) - 1.0;
  std::uint64_t x = guess <= 0.0 ? 0 : std::min(m, static_cast<std::uint64_t>(guess));
  // Settle on the same double comparison the interval endpoints see.
  while (x > 0 && !(static_cast<double>(x) / md < ratio)) --x;
  while (x < m && static_cast<double>(x + 1) / md < ratio) ++x;
  return x;
}

std::vector<Interval> cp_table(int n, double alpha) {
  std::vector<Interval> t;
  t.reserve(static_cast<std::size_t>(n) + 1);
  for (int y = 0; y <= n; ++y) t.push_back(cp_interval(n, y, alpha));
  return t;
}

Noncoverage noncoverage_cp(std::span<const Interval> table, double theta) {
  validate_theta_open(theta);
  const int n = static_cast<int>(table.size()) - 1;
  const auto f = binom_pmf_all(BinomialModel(n, theta));
  Noncoverage out{0.0, 0.0};
  for (int y = 0; y <= n; ++y) {
    if (table[y].upper < theta) out.upper += f[y];
    if (table[y].lower > theta) out.lower += f[y];
  }
  return out;
}

Noncoverage noncoverage_cp(int n, double alpha, double theta) {
  const auto table = cp_table(n, alpha);
  return noncoverage_cp(table, theta);
}

Noncoverage noncoverage_randomized_exact(int n, double alpha, double theta) {
  validate_theta_open(theta);
  validate_alpha(alpha);
  const auto f = binom_pmf_all(BinomialModel(n, theta));
  const double target = 0.5 * alpha;
  Noncoverage out{0.0, 0.0};
  // f(y) * clamp(ratio, 0, 1) == clamp(alpha/2 - F(y-1), 0, f(y)).
  double cdf_below = 0.0;
  for (int y = 0; y <= n; ++y) {
    out.upper += std::clamp(target - cdf_below, 0.0, f[y]);
    cdf_below += f[y];
  }
  double sf_above = 0.0;
  for (int y = n; y >= 0; --y) {
    out.lower += std::clamp(target - sf_above, 0.0, f[y]);
    sf_above += f[y];
  }
  return out;
}

Noncoverage noncoverage_mirrored_exact(int n, double alpha, double theta) {
  validate_theta_open(theta);
  validate_alpha(alpha);
  const auto c = critical_ratios(n, alpha, theta);
  Noncoverage out{0.0, 0.0};
  for (int y = 0; y <= n; ++y) {
    if (c.pmf[y] == 0.0) continue;
    // Upper endpoint uses v: measure of {v < r_u}.
    out.upper += c.pmf[y] * clamp_unit(c.upper[y]);
    // Lower endpoint uses 1 - v, so 1 - (1 - v) = v < r_l.
    out.lower += c.pmf[y] * clamp_unit(c.lower[y]);
  }
  return out;
}

Noncoverage noncoverage_discrete_exact(int n, double alpha, double theta,
                                       const LevelFunction& levels) {
  validate_theta_open(theta);
  validate_alpha(alpha);
  const auto c = critical_ratios(n, alpha, theta);
  Noncoverage out{0.0, 0.0};
  for (int y = 0; y <= n; ++y) {
    const std::uint64_t m = levels(y);
    if (m < 1) throw std::domain_error("level count must be >= 1");
    if (c.pmf[y] == 0.0) continue;
    const double md = static_cast<double>(m);
    // theta > u(y, w) for w = i/M with i/M < r_u.
    out.upper += c.pmf[y] * (static_cast<double>(levels_below(m, c.upper[y])) / md);
    // theta < l(y, w_tilde) for 1 - w_tilde = (M - j + 1)/M < r_l.
    out.lower += c.pmf[y] * (static_cast<double>(levels_below(m, c.lower[y])) / md);
  }
  return out;
}

Noncoverage noncoverage_korn_exact(int n, double alpha, double theta) {
  return noncoverage_discrete_exact(n, alpha, theta, korn_levels(n));
}

SplitTable split_table(const SplitDesign& design, double alpha) {
  SplitTable t{design, alpha, {}};
  t.lattice.reserve(static_cast<std::size_t>(design.n1() + 1) * (design.n2() + 1));
  // Equal numerators give identical intervals; solve each once.
  std::map<std::int64_t, Interval> by_numerator;
  for (int y1 = 0; y1 <= design.n1(); ++y1) {
    for (int y2 = 0; y2 <= design.n2(); ++y2) {
      const auto key = design.numerator(y1, y2);
      auto it = by_numerator.find(key);
      if (it == by_numerator.end()) {
        it = by_numerator.emplace(key, split_sample_interval(y1, y2, design, alpha)).first;
      }
      Interval iv = it->second;
      iv.inputs.y1 = y1;
      iv.inputs.y2 = y2;
      iv.inputs.y = y1 + y2;
      t.lattice.push_back(iv);
    }
  }
  return t;
}

Noncoverage noncoverage_split(const SplitTable& table, double theta) {
  validate_theta_open(theta);
  const auto& d = table.design;
  const auto f1 = binom_pmf_all(BinomialModel(d.n1(), theta));
  const auto f2 = binom_pmf_all(BinomialModel(d.n2(), theta));
  Noncoverage out{0.0, 0.0};
  for (int y1 = 0; y1 <= d.n1(); ++y1) {
    for (int y2 = 0; y2 <= d.n2(); ++y2) {
      const Interval& iv = table.at(y1, y2);
      const double p = f1[y1] * f2[y2];
      if (iv.upper < theta) out.upper += p;
      if (iv.lower > theta) out.lower += p;
    }
  }
  return out;
}

Noncoverage noncoverage_split(const SplitDesign& design, double alpha, double theta) {
  return noncoverage_split(split_table(design, alpha), theta);
}

double stevens_mean_length(int n, int y, double alpha, int order) {
  const auto rule = gauss_legendre(order);
  return composite_mean(rule, alpha, [&](double v) {
    return stevens_upper(n, y, v, alpha) - stevens_lower(n, y, v, alpha);
  });
}

double mirrored_mean_length(int n, int y, double alpha, int order) {
  const auto rule = gauss_legendre(order);
  return composite_mean(rule, alpha, [&](double v) {
    return stevens_upper(n, y, v, alpha) - stevens_lower(n, y, 1.0 - v, alpha);
  });
}

std::string procedure_label(const ProcedureSpec& spec) {
  switch (spec.method) {
    case Method::DiscreteAux:
      return "discrete(" + (spec.levels_label.empty() ? std::string("M(y)") : spec.levels_label) +
             ")";
    case Method::SplitSample: {
      const SplitDesign d = spec.design ? *spec.design : split_design(spec.n);
      return "split(" + std::to_string(d.n1()) + "," + std::to_string(d.n2()) + ")";
    }
    default:
      return method_name(spec.method);
  }
}

Procedure::Procedure(ProcedureSpec spec) : spec_(std::move(spec)) {
  validate_alpha(spec_.alpha);
  if (spec_.n < 1) throw std::domain_error("n must be >= 1");
  const int n = spec_.n;
  const double alpha = spec_.alpha;
  mean_length_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  switch (spec_.method) {
    case Method::ClopperPearson:
      cp_ = cp_table(n, alpha);
      for (int y = 0; y <= n; ++y) mean_length_[y] = cp_[y].length();
      break;
    case Method::Stevens:
    case Method::StevensGeneralized:
      // Independent uniform V_l and V_u have the same marginals as Stevens.
      for (int y = 0; y <= n; ++y) {
        mean_length_[y] = stevens_mean_length(n, y, alpha, spec_.quadrature_order);
      }
      break;
    case Method::StevensMirrored:
      for (int y = 0; y <= n; ++y) {
        mean_length_[y] = mirrored_mean_length(n, y, alpha, spec_.quadrature_order);
      }
      break;
    case Method::Korn:
      if (n > kMaxExactN) throw std::domain_error("korn procedure supports n <= 64");
      spec_.levels = korn_levels(n);
      spec_.levels_label = "C(n,y)";
      [[fallthrough]];
    case Method::DiscreteAux: {
      if (!spec_.levels) throw std::invalid_argument("discrete procedure needs a level function");
      std::uint64_t total = 0;
      for (int y = 0; y <= n; ++y) {
        const auto m = spec_.levels(y);
        if (m < 1) throw std::domain_error("level count must be >= 1");
        total += m;
        if (total > kMaxTotalLevels) {
          throw std::domain_error("too many discrete levels for exact expected length");
        }
      }
      for (int y = 0; y <= n; ++y) mean_length_[y] = level_mean_length(n, y, alpha, spec_.levels(y));
      break;
    }
    case Method::SplitSample:
      if (!spec_.design) spec_.design = split_design(n);
      if (spec_.design->n() != n) throw std::domain_error("split design does not sum to n");
      split_ = split_table(*spec_.design, alpha);
      mean_length_.clear();
      break;
  }
}

Noncoverage Procedure::noncoverage(double theta) const {
  switch (spec_.method) {
    case Method::ClopperPearson:
      return noncoverage_cp(cp_, theta);
    case Method::Stevens:
    case Method::StevensGeneralized:
      return noncoverage_randomized_exact(spec_.n, spec_.alpha, theta);
    case Method::StevensMirrored:
      return noncoverage_mirrored_exact(spec_.n, spec_.alpha, theta);
    case Method::DiscreteAux:
    case Method::Korn:
      return noncoverage_discrete_exact(spec_.n, spec_.alpha, theta, spec_.levels);
    case Method::SplitSample:
      return noncoverage_split(*split_, theta);
  }
  throw std::logic_error("unhandled method");
}

double Procedure::expected_length(double theta) const {
  validate_theta_open(theta);
  if (split_) {
    const auto& d = split_->design;
    const auto f1 = binom_pmf_all(BinomialModel(d.n1(), theta));
    const auto f2 = binom_pmf_all(BinomialModel(d.n2(), theta));
    double sum = 0.0;
    for (int y1 = 0; y1 <= d.n1(); ++y1) {
      for (int y2 = 0; y2 <= d.n2(); ++y2) sum += f1[y1] * f2[y2] * split_->at(y1, y2).length();
    }
    return sum;
  }
  const auto f = binom_pmf_all(BinomialModel(spec_.n, theta));
  double sum = 0.0;
  for (int y = 0; y <= spec_.n; ++y) sum += f[y] * mean_length_[y];
  return sum;
}

double expected_length(const ProcedureSpec& spec, double theta) {
  return Procedure(spec).expected_length(theta);
}

std::vector<double> uniform_theta_grid(int k) {
  if (k < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) g[i - 1] = static_cast<double>(i) / (k + 1);
  return g;
}

std::vector<double> default_theta_grid(int n, double alpha) {
  auto g = uniform_theta_grid(999);
  constexpr double kOffset = 1e-9;
  for (const auto& iv : cp_table(n, alpha)) {
    for (double e : {iv.lower, iv.upper}) {
      for (double t : {e - kOffset, e + kOffset}) {
        if (t > 0.0 && t < 1.0) g.push_back(t);
      }
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

CoverageCurve coverage_curve(const Procedure& procedure, std::span<const double> grid) {
  CoverageCurve c{procedure.spec().method, procedure.label(), procedure.spec().n,
                  procedure.spec().alpha, {}, {}, {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("theta grid must be strictly increasing");
    }
  }
  c.theta_grid.assign(grid.begin(), grid.end());
  for (double theta : grid) {
    const auto nc = procedure.noncoverage(theta);
    c.upper_noncoverage.push_back(nc.upper);
    c.lower_noncoverage.push_back(nc.lower);
    c.expected_length.push_back(procedure.expected_length(theta));
  }
  return c;
}

DominationReport domination_report(int n, double alpha, std::span<const double> v_grid) {
  DominationReport r;
  r.method = "stevens";
  r.n = n;
  r.alpha = alpha;
  r.worst_slack = r.worst_upper_slack = r.worst_lower_slack = std::numeric_limits<double>::infinity();
  const double half = 0.5 * alpha;
  const auto cp = cp_table(n, alpha);
  for (int y = 0; y <= n; ++y) {
    for (double v : v_grid) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("v grid must lie in [0, 1]");
      const double u = stevens_upper(n, y, v, alpha);
      const double l = stevens_lower(n, y, v, alpha);
      const double up_slack = cp[y].upper - u;
      const double lo_slack = l - cp[y].lower;
      ++r.pairs_checked;
      r.worst_upper_slack = std::min(r.worst_upper_slack, up_slack);
      r.worst_lower_slack = std::min(r.worst_lower_slack, lo_slack);
      r.worst_slack = std::min(r.worst_slack, up_slack + lo_slack);
      if (up_slack < -kEndpointTolerance || lo_slack < -kEndpointTolerance) {
        ++r.containment_violations;
      }
      const bool up_strict = up_slack > kEndpointTolerance;
      const bool lo_strict = lo_slack > kEndpointTolerance;
      if (v == 0.0 || v == 1.0) {
        if (!up_strict && !lo_strict) ++r.strictness_violations;
      } else {
        const bool upper_pinned = y == n && v >= half;
        const bool lower_pinned = y == 0 && 1.0 - v >= half;
        if ((!upper_pinned && !up_strict) || (!lower_pinned && !lo_strict)) {
          ++r.strictness_violations;
        }
      }
    }
  }
  return r;
}

DominationReport korn_domination_report(int n, double alpha) {
  if (n < 1 || n > 20) throw std::domain_error("exhaustive Korn check supports 1 <= n <= 20");
  DominationReport r;
  r.method = "korn";
  r.n = n;
  r.alpha = alpha;
  r.worst_slack = r.worst_upper_slack = r.worst_lower_slack = std::numeric_limits<double>::infinity();
  const auto cp = cp_table(n, alpha);
  std::map<std::pair<int, uint128_t>, Interval> cache;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
    const BernoulliSequence seq(std::move(bits));
    const KornRank kr = korn_rank(seq);
    const auto key = std::make_pair(seq.y(), kr.rank.value());
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, detail::level_interval(n, seq.y(), kr.rank, kr.count, alpha)).first;
    }
    const Interval& iv = it->second;
    const double up_slack = cp[seq.y()].upper - iv.upper;
    const double lo_slack = iv.lower - cp[seq.y()].lower;
    ++r.pairs_checked;
    r.worst_upper_slack = std::min(r.worst_upper_slack, up_slack);
    r.worst_lower_slack = std::min(r.worst_lower_slack, lo_slack);
    r.worst_slack = std::min(r.worst_slack, up_slack + lo_slack);
    if (up_slack < -kEndpointTolerance || lo_slack < -kEndpointTolerance) {
      ++r.containment_violations;
    }
  }
  return r;
}

namespace {

struct Block {
  Fraction lo;
  bool lo_inclusive;
  Fraction hi;
  bool hi_inclusive;
};

RefinementReport check_blocks(std::string statistic, const std::vector<Block>& blocks) {
  RefinementReport r;
  r.statistic = std::move(statistic);
  for (std::size_t t = 0; t + 1 < blocks.size(); ++t) {
    const Block& a = blocks[t];
    const Block& b = blocks[t + 1];
    const bool separated =
        a.hi < b.lo || (a.hi == b.lo && !(a.hi_inclusive && b.lo_inclusive));
    if (!separated) r.is_refinement = false;
  }
  return r;
}

Fraction integer_plus(int y, const Fraction& f) {
  return Fraction{WideCount(static_cast<uint128_t>(y)) * f.den + f.num, f.den};
}

}  // namespace

RefinementReport refinement_check(const SplitDesign& design) {
  RefinementReport r;
  r.statistic = "thetahat(" + std::to_string(design.n1()) + "," + std::to_string(design.n2()) + ")";
  const int n = design.n();
  const auto den = static_cast<uint128_t>(design.max_numerator());
  std::vector<std::vector<std::pair<int, int>>> blocks(static_cast<std::size_t>(n) + 1);
  for (int y1 = 0; y1 <= design.n1(); ++y1) {
    for (int y2 = 0; y2 <= design.n2(); ++y2) blocks[y1 + y2].emplace_back(y1, y2);
  }
  auto point = [&](std::pair<int, int> p) {
    const auto num = static_cast<uint128_t>(design.numerator(p.first, p.second));
    return LatticePoint{p.first, p.second, Fraction{WideCount(num), WideCount(den)}.reduced()};
  };
  for (int t = 0; t < n; ++t) {
    for (auto a : blocks[t]) {
      for (auto b : blocks[t + 1]) {
        const auto va = design.numerator(a.first, a.second);
        const auto vb = design.numerator(b.first, b.second);
        if (va >= vb) {
          r.is_refinement = false;
          r.witnesses.push_back(RefinementWitness{point(a), point(b), va == vb});
        }
      }
    }
  }
  return r;
}

RefinementReport stevens_refinement_check(int n) {
  std::vector<Block> blocks;
  for (int y = 0; y <= n; ++y) {
    blocks.push_back(Block{Fraction{WideCount(static_cast<uint128_t>(y)), WideCount(1)}, true,
                           Fraction{WideCount(static_cast<uint128_t>(y + 1)), WideCount(1)},
                           false});
  }
  return check_blocks("y+v", blocks);
}

RefinementReport korn_refinement_check(int n) {
  std::vector<Block> blocks;
  for (int y = 0; y <= n; ++y) {
    const WideCount c = choose(n, y);
    blocks.push_back(Block{integer_plus(y, Fraction{WideCount(1), c}), true,
                           integer_plus(y, Fraction{c, c}), true});
  }
  return check_blocks("y+w", blocks);
}

}  // namespace binci
