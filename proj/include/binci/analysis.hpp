#pragma once

// Exact coverage and length analysis.
//
// Non-coverage of the randomized constructions is computed from the measure
// of the auxiliary values that push an endpoint past theta, never by
// integrating endpoint roots:
//   theta > u(y, v)  iff  v < (alpha/2 - F(y-1)) / f(y)
//   theta < l(y, v)  iff  1 - v < (alpha/2 - P(Y >= y+1)) / f(y)

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binci/intervals.hpp"
#include "binci/split_sample.hpp"

namespace binci {

struct Noncoverage {
  double upper;  // P(theta > u)
  double lower;  // P(theta < l)
};

// Number of discrete levels M(y) >= 1 used for count y.
using LevelFunction = std::function<std::uint64_t(int y)>;

LevelFunction constant_levels(std::uint64_t m);
LevelFunction korn_levels(int n);

// Number of levels i in 1..M with i/M < ratio.
std::uint64_t levels_below(std::uint64_t m, double ratio);

std::vector<Interval> cp_table(int n, double alpha);

Noncoverage noncoverage_cp(int n, double alpha, double theta);
Noncoverage noncoverage_cp(std::span<const Interval> table, double theta);

Noncoverage noncoverage_randomized_exact(int n, double alpha, double theta);

// Two-variable construction with v_lower = 1 - v_upper.
Noncoverage noncoverage_mirrored_exact(int n, double alpha, double theta);

Noncoverage noncoverage_discrete_exact(int n, double alpha, double theta,
                                       const LevelFunction& levels);

Noncoverage noncoverage_korn_exact(int n, double alpha, double theta);

// Intervals for every (y1, y2), row-major in y1.
struct SplitTable {
  SplitDesign design;
  double alpha;
  std::vector<Interval> lattice;

  const Interval& at(int y1, int y2) const {
    return lattice[static_cast<std::size_t>(y1) * (design.n2() + 1) + y2];
  }
};

SplitTable split_table(const SplitDesign& design, double alpha);

Noncoverage noncoverage_split(const SplitDesign& design, double alpha, double theta);
Noncoverage noncoverage_split(const SplitTable& table, double theta);

struct ProcedureSpec {
  Method method = Method::ClopperPearson;
  int n = 10;
  double alpha = 0.05;
  // DiscreteAux only.
  LevelFunction levels;
  std::string levels_label;
  // SplitSample only; defaults to split_design(n).
  std::optional<SplitDesign> design;
  int quadrature_order = 64;
};

std::string procedure_label(const ProcedureSpec& spec);

// A procedure with everything that does not depend on theta precomputed:
// CP endpoints, the split lattice, and per-count mean lengths over the
// auxiliary variable.
class Procedure {
 public:
  explicit Procedure(ProcedureSpec spec);

  const ProcedureSpec& spec() const { return spec_; }
  std::string label() const { return procedure_label(spec_); }

  Noncoverage noncoverage(double theta) const;
  double expected_length(double theta) const;

  // Mean over the auxiliary variable of the interval length given Y = y.
  // Empty for the split-sample procedure.
  const std::vector<double>& mean_length_by_count() const { return mean_length_; }

 private:
  ProcedureSpec spec_;
  std::vector<Interval> cp_;
  std::optional<SplitTable> split_;
  std::vector<double> mean_length_;
};

double expected_length(const ProcedureSpec& spec, double theta);

// Mean of u(y, v) - l(y, v) over v ~ U(0,1), by composite Gauss-Legendre on
// [0, alpha/2], [alpha/2, 1 - alpha/2], [1 - alpha/2, 1]; the endpoint
// functions have kinks only at those breakpoints.
double stevens_mean_length(int n, int y, double alpha, int order = 64);
double mirrored_mean_length(int n, int y, double alpha, int order = 64);

struct CoverageCurve {
  Method method;
  std::string label;
  int n;
  double alpha;
  std::vector<double> theta_grid;
  std::vector<double> upper_noncoverage;
  std::vector<double> lower_noncoverage;
  std::vector<double> expected_length;
};

// 999 equally spaced interior points plus every CP endpoint +- 1e-9.
std::vector<double> default_theta_grid(int n, double alpha);
// k equally spaced interior points i/(k+1).
std::vector<double> uniform_theta_grid(int k);

CoverageCurve coverage_curve(const Procedure& procedure, std::span<const double> grid);

struct DominationReport {
  std::string method;
  int n = 0;
  double alpha = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t containment_violations = 0;
  std::size_t strictness_violations = 0;
  double worst_slack = 0.0;        // min of (u_CP - u) + (l - l_CP)
  double worst_upper_slack = 0.0;  // min of u_CP - u
  double worst_lower_slack = 0.0;  // min of l - l_CP

  bool dominated() const { return containment_violations == 0; }
};

// Tolerance used when comparing endpoints that came out of the root solver.
inline constexpr double kEndpointTolerance = 1e-10;

// Stevens interval against CP for every (y, v) on the grid. For v in (0,1)
// each endpoint must be strictly inside unless it is pinned (upper at 1 for
// y = n and v >= alpha/2; lower at 0 for y = 0 and v <= 1 - alpha/2); for v in
// {0, 1} at least one endpoint must be strictly inside.
DominationReport domination_report(int n, double alpha, std::span<const double> v_grid);

// Korn interval against CP for all 2^n sequences (n <= 20).
DominationReport korn_domination_report(int n, double alpha);

struct LatticePoint {
  int y1;
  int y2;
  Fraction value;
};

// A point with count t whose statistic value is not below that of a point
// with count t + 1.
struct RefinementWitness {
  LatticePoint smaller_count;
  LatticePoint larger_count;
  bool tie;
};

struct RefinementReport {
  std::string statistic;
  bool is_refinement = true;
  std::vector<RefinementWitness> witnesses;
};

RefinementReport refinement_check(const SplitDesign& design);
// Y + V with V in [0, 1).
RefinementReport stevens_refinement_check(int n);
// Y + W with W in {1/C(n,y), ..., 1}.
RefinementReport korn_refinement_check(int n);

}  // namespace binci
