#include "binci/simulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "binci/intervals.hpp"

namespace binci {

int draw_binomial(std::mt19937_64& engine, int n, double theta) {
  int y = 0;
  for (int i = 0; i < n; ++i) {
    if (uniform_open01(engine) < theta) ++y;
  }
  return y;
}

SimulationReport longrun_simulate(AuxSource source, int n, double alpha, double theta,
                                  std::uint64_t m, std::uint64_t seed,
                                  std::uint64_t checkpoint_every) {
  if (m < 1) throw std::domain_error("simulation needs m >= 1");
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("theta must lie in [0, 1]");
  validate_alpha(alpha);
  if (checkpoint_every == 0) checkpoint_every = std::max<std::uint64_t>(1, m / 100);

  SimulationReport r;
  r.source = source.describe();
  r.source_kind = source.kind_name();
  r.n = n;
  r.alpha = alpha;
  r.theta = theta;
  r.m = m;
  r.seed = seed;

  std::mt19937_64 engine(seed);
  std::uint64_t upper_misses = 0;
  std::uint64_t lower_misses = 0;
  double total_length = 0.0;
  for (std::uint64_t k = 1; k <= m; ++k) {
    const int y = draw_binomial(engine, n, theta);
    const AuxDraw aux = source.next();
    const double u = stevens_upper(n, y, aux.upper, alpha);
    const double l = stevens_lower(n, y, aux.lower, alpha);
    if (theta > u) ++upper_misses;
    if (theta < l) ++lower_misses;
    total_length += u - l;
    if (k % checkpoint_every == 0 || k == m) {
      const double kd = static_cast<double>(k);
      r.checkpoints.push_back(SimulationCheckpoint{k, static_cast<double>(upper_misses) / kd,
                                                   static_cast<double>(lower_misses) / kd,
                                                   total_length / kd});
    }
  }
  const auto& last = r.checkpoints.back();
  r.upper_prop = last.upper_prop;
  r.lower_prop = last.lower_prop;
  r.average_length = last.average_length;
  return r;
}

}  // namespace binci
