#pragma once

// Long-run behaviour of intervals driven by an auxiliary sequence: repeated
// experiments Y_k ~ Binomial(n, theta), each paired with the next auxiliary
// value, with running non-coverage proportions and average length.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "binci/aux_sources.hpp"

namespace binci {

struct SimulationCheckpoint {
  std::uint64_t k;
  double upper_prop;
  double lower_prop;
  double average_length;
};

struct SimulationReport {
  std::string source;       // AuxSource::describe()
  std::string source_kind;  // AuxSource::kind_name()
  int n = 0;
  double alpha = 0.0;
  double theta = 0.0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;  // seed of the Y_k stream
  double upper_prop = 0.0;
  double lower_prop = 0.0;
  double average_length = 0.0;
  std::vector<SimulationCheckpoint> checkpoints;
};

// Sum of n Bernoulli(theta) trials, each from uniform_open01.
int draw_binomial(std::mt19937_64& engine, int n, double theta);

// Checkpoints every `checkpoint_every` experiments (0 means max(1, m/100)),
// plus the final one. The Y_k stream is mt19937_64 seeded with `seed`.
SimulationReport longrun_simulate(AuxSource source, int n, double alpha, double theta,
                                  std::uint64_t m, std::uint64_t seed,
                                  std::uint64_t checkpoint_every = 0);

}  // namespace binci
