#pragma once

// Data-randomized intervals: the position of the ones-pattern among the
// C(n, y) equally likely patterns acts as a discrete auxiliary level.
//
// Patterns with the same count are ordered by the sum of their one-positions
// (ones near the start rank first, as in a one-sided rank-sum test), and
// equal sums are broken lexicographically on the sorted position tuple.
// This makes the map pattern -> rank a bijection onto 1..C(n, y).

#include <cstdint>
#include <string>
#include <vector>

#include "binci/intervals.hpp"
#include "binci/numerics.hpp"

namespace binci {

class BernoulliSequence {
 public:
  explicit BernoulliSequence(std::vector<std::uint8_t> bits);
  // Compact form, e.g. "11000".
  static BernoulliSequence from_string(const std::string& bits);

  int n() const { return static_cast<int>(bits_.size()); }
  int y() const { return y_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string to_string() const;

  // 1-based positions of the ones, ascending.
  std::vector<int> one_positions() const;

 private:
  std::vector<std::uint8_t> bits_;
  int y_ = 0;
};

struct KornRank {
  WideCount rank;   // 1..count
  WideCount count;  // C(n, y)

  Fraction w() const { return Fraction{rank, count}; }
  Fraction w_tilde() const { return Fraction{rank - WideCount(1), count}; }
};

KornRank korn_rank(const BernoulliSequence& seq);

// Inverse of korn_rank for a fixed (n, y): the pattern holding `rank`.
BernoulliSequence korn_unrank(int n, int y, WideCount rank);

Interval korn_interval(const BernoulliSequence& seq, double alpha);

// Applies a fixed relabelling of trial positions: out[i] = bits[perm[i] - 1].
BernoulliSequence permute(const BernoulliSequence& seq, const std::vector<int>& perm);

}  // namespace binci
