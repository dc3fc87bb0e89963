#include "binci/korn.hpp"

#include <stdexcept>

namespace binci {

namespace {

// counts(m, j, t) = number of j-subsets of {1..m} whose elements sum to t,
// for m <= n, j <= max_size, t <= max_sum. Every entry is at most C(64, 32),
// which fits in 64 bits.
class SubsetSumTable {
 public:
  SubsetSumTable(int n, int max_size, int max_sum)
      : n_(n), js_(max_size + 1), ts_(max_sum + 1),
        data_(static_cast<std::size_t>(n + 1) * js_ * ts_, 0) {
    at(0, 0, 0) = 1;
    for (int m = 1; m <= n_; ++m) {
      for (int j = 0; j < js_; ++j) {
        for (int t = 0; t < ts_; ++t) {
          std::uint64_t c = at(m - 1, j, t);
          if (j > 0 && t >= m) c += at(m - 1, j - 1, t - m);
          at(m, j, t) = c;
        }
      }
    }
  }

  std::uint64_t count(int m, int j, long t) const {
    if (m < 0 || j < 0 || j >= js_ || t < 0 || t >= ts_) return 0;
    return data_[index(m, j, static_cast<int>(t))];
  }

  // j-subsets of {lo+1..n} summing to t, by shifting onto {1..n-lo}.
  std::uint64_t count_above(int lo, int j, long t) const {
    return count(n_ - lo, j, t - static_cast<long>(j) * lo);
  }

 private:
  std::size_t index(int m, int j, int t) const {
    return (static_cast<std::size_t>(m) * js_ + j) * ts_ + t;
  }
  std::uint64_t& at(int m, int j, int t) { return data_[index(m, j, t)]; }
  std::uint64_t at(int m, int j, int t) const { return data_[index(m, j, t)]; }

  int n_;
  int js_;
  int ts_;
  std::vector<std::uint64_t> data_;
};

int max_position_sum(int n, int y) { return y * (2 * n - y + 1) / 2; }

}  // namespace

BernoulliSequence::BernoulliSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::domain_error("Bernoulli sequence needs n >= 1");
  if (static_cast<int>(bits_.size()) > kMaxExactN) {
    throw std::domain_error("Bernoulli sequence longer than 64 trials");
  }
  for (auto b : bits_) {
    if (b > 1) throw std::domain_error("Bernoulli sequence entries must be 0 or 1");
    y_ += b;
  }
}

BernoulliSequence BernoulliSequence::from_string(const std::string& bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BernoulliSequence(std::move(out));
}

std::string BernoulliSequence::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::vector<int> BernoulliSequence::one_positions() const {
  std::vector<int> pos;
  pos.reserve(static_cast<std::size_t>(y_));
  for (int i = 0; i < n(); ++i) {
    if (bits_[i]) pos.push_back(i + 1);
  }
  return pos;
}

KornRank korn_rank(const BernoulliSequence& seq) {
  const int n = seq.n();
  const int y = seq.y();
  const WideCount count = choose(n, y);
  if (y == 0 || y == n) return KornRank{WideCount(1), count};

  const auto pos = seq.one_positions();
  long sum = 0;
  for (int p : pos) sum += p;
  const SubsetSumTable table(n, y, static_cast<int>(sum));

  uint128_t below = 0;
  for (long t = 0; t < sum; ++t) below += table.count(n, y, t);

  // Same sum, lexicographically smaller position tuple.
  long prefix = 0;
  int prev = 0;
  for (int i = 0; i < y; ++i) {
    const int rest = y - i - 1;
    for (int q = prev + 1; q < pos[i]; ++q) {
      below += table.count_above(q, rest, sum - prefix - q);
    }
    prefix += pos[i];
    prev = pos[i];
  }
  return KornRank{WideCount(below + 1), count};
}

BernoulliSequence korn_unrank(int n, int y, WideCount rank) {
  if (n < 1 || n > kMaxExactN || y < 0 || y > n) {
    throw std::domain_error("korn_unrank needs 1 <= n <= 64 and 0 <= y <= n");
  }
  const WideCount count = choose(n, y);
  if (rank < WideCount(1) || rank > count) throw std::domain_error("rank outside 1..C(n,y)");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
  if (y == 0) return BernoulliSequence(std::move(bits));

  const int max_sum = max_position_sum(n, y);
  const SubsetSumTable table(n, y, max_sum);
  uint128_t remaining = rank.value();
  long sum = 0;
  for (long t = 0; t <= max_sum; ++t) {
    const uint128_t c = table.count(n, y, t);
    if (remaining <= c) {
      sum = t;
      break;
    }
    remaining -= c;
  }

  long prefix = 0;
  int prev = 0;
  for (int i = 0; i < y; ++i) {
    const int rest = y - i - 1;
    for (int q = prev + 1; q <= n; ++q) {
      const uint128_t c = table.count_above(q, rest, sum - prefix - q);
      if (remaining <= c) {
        bits[q - 1] = 1;
        prefix += q;
        prev = q;
        break;
      }
      remaining -= c;
    }
  }
  return BernoulliSequence(std::move(bits));
}

Interval korn_interval(const BernoulliSequence& seq, double alpha) {
  const KornRank r = korn_rank(seq);
  Interval out = detail::level_interval(seq.n(), seq.y(), r.rank, r.count, alpha);
  out.method = Method::Korn;
  out.inputs.bits = seq.to_string();
  return out;
}

BernoulliSequence permute(const BernoulliSequence& seq, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != seq.n()) {
    throw std::invalid_argument("permutation length must equal n");
  }
  std::vector<bool> seen(perm.size() + 1, false);
  std::vector<std::uint8_t> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int p = perm[i];
    if (p < 1 || p > seq.n() || seen[p]) throw std::invalid_argument("not a permutation of 1..n");
    seen[p] = true;
    out[i] = seq.bits()[p - 1];
  }
  return BernoulliSequence(std::move(out));
}

}  // namespace binci
