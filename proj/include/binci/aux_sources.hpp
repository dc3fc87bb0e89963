#pragma once

// Auxiliary-variable generators: a seeded uniform stream, Weyl sequences
// {k * lambda}, van der Corput radical inverses, and periodic permutation
// sequences of the levels 1/N, ..., N/N.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace binci {

enum class RangeConvention {
  OpenOpen,    // (0,1): satisfies both half-open conventions
  ClosedOpen,  // [0,1)
  OpenClosed,  // (0,1]
};

bool in_range(RangeConvention convention, double x);

// Value used for the upper endpoint and value used for the lower endpoint.
// Continuous sources emit the same value twice; periodic permutation sources
// emit (w_k, w_k - 1/N).
struct AuxDraw {
  double upper;
  double lower;
};

struct SeededUniformParams {
  std::uint64_t seed = 0;
};

struct WeylParams {
  // Assumed irrational; only the fractional parts of its multiples are used.
  double lambda = std::sqrt(2.0);
};

struct VanDerCorputParams {
  int base = 2;
};

struct PeriodicPermParams {
  // A permutation of 1..N; w_k = perm[(k - 1) mod N] / N.
  std::vector<int> perm;
};

using AuxParams =
    std::variant<SeededUniformParams, WeylParams, VanDerCorputParams, PeriodicPermParams>;

// Exact periodic-sequence level: w = numerator / N, w_tilde = (numerator - 1) / N.
struct PeriodicValue {
  int numerator;
  int period;

  double w() const { return static_cast<double>(numerator) / period; }
  double w_tilde() const { return static_cast<double>(numerator - 1) / period; }
};

/// Fractional part of k * lambda, k >= 1.
double weyl(double lambda, std::uint64_t k);

/// Radical inverse of k in `base` (k >= 1, base >= 2).
double van_der_corput(std::uint64_t k, int base);

/// k-th element (k >= 1) of the periodic sequence built from `perm`.
/// Throws std::invalid_argument if perm is not a bijection of 1..N or N < 2.
PeriodicValue periodic_perm(std::span<const int> perm, std::uint64_t k);

void validate_permutation(std::span<const int> perm);

// Portable uniform double on (0,1) from a 64-bit Mersenne twister word:
// the top 53 bits scaled by 2^-53, redrawn while zero.
double uniform_open01(std::mt19937_64& engine);

// A sequential auxiliary-value generator. Not safe for concurrent mutation.
class AuxSource {
 public:
  static AuxSource seeded_uniform(std::uint64_t seed);
  static AuxSource weyl(double lambda = std::sqrt(2.0));
  static AuxSource van_der_corput(int base = 2);
  static AuxSource periodic_perm(std::vector<int> perm);

  const AuxParams& params() const { return params_; }
  RangeConvention convention() const;

  // Number of values emitted so far; the next emission has index position()+1.
  std::uint64_t position() const { return k_; }

  AuxDraw next();

  // e.g. "weyl(lambda=1.41421356237)"; stable, used in report metadata.
  std::string describe() const;
  std::string kind_name() const;

 private:
  explicit AuxSource(AuxParams params);

  AuxParams params_;
  std::uint64_t k_ = 0;
  std::mt19937_64 engine_;
};

/// Next draw of a SeededUniform source, in (0,1). Throws
/// std::invalid_argument for any other kind.
double uniform_draw(AuxSource& source);

}  // namespace binci
