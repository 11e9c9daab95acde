#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hcf {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set_all();
  std::size_t count() const;
  bool none() const;
  std::size_t and_count(const Bitset& o) const;
  bool intersects(const Bitset& o) const;
  bool subset_of(const Bitset& o) const;
  // (*this & mask) ⊆ o
  bool masked_subset_of(const Bitset& mask, const Bitset& o) const;
  void and_not(const Bitset& o);
  void or_with(const Bitset& o);
  void and_with(const Bitset& o);
  std::vector<std::size_t> indices() const;
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t b = 0; b < w_.size(); ++b) {
      std::uint64_t x = w_[b];
      while (x) {
        int t = __builtin_ctzll(x);
        f(b * 64 + static_cast<std::size_t>(t));
        x &= x - 1;
      }
    }
  }
  std::size_t hash() const;
  bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

struct SetCoverProblem {
  std::size_t elements = 0;
  std::vector<Bitset> sets;
  std::vector<double> weights;
  // Every cover has integer cost, so lower bounds may be rounded up.
  bool integral = false;
  // Optional lower bound on the cost of covering the given uncovered elements.
  std::function<double(const Bitset&)> extra_bound;
};

struct SetCoverSolution {
  std::vector<std::size_t> chosen;  // sorted set indices
  double cost = 0;
  double lower = 0;
  bool optimal = false;
  std::size_t nodes = 0;
  std::vector<double> dual;  // feasible LP dual at the root, one entry per element
  double dual_value = 0;
  double extra_value = 0;
  std::string bound_kind;  // "search", "lp-dual" or "volume"
};

// Throws UncoverableError if the union of the sets misses an element.
void check_coverable(const SetCoverProblem& p);
SetCoverSolution solve_greedy(const SetCoverProblem& p);
SetCoverSolution solve_exact(const SetCoverProblem& p, std::size_t node_budget);
// Feasible dual of the covering LP restricted to `uncovered`; returns its value.
double dual_bound(const SetCoverProblem& p, const Bitset& uncovered, std::vector<double>* y, bool ascent);

}  // namespace hcf
