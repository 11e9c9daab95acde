#include "hcf/set_cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "hcf/errors.hpp"

namespace hcf {

void Bitset::set_all() {
  for (auto& x : w_) x = ~std::uint64_t{0};
  if (n_ & 63) w_.back() = (std::uint64_t{1} << (n_ & 63)) - 1;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
  return c;
}

bool Bitset::none() const {
  for (auto x : w_)
    if (x) return false;
  return true;
}

std::size_t Bitset::and_count(const Bitset& o) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(__builtin_popcountll(w_[i] & o.w_[i]));
  return c;
}

bool Bitset::intersects(const Bitset& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & o.w_[i]) return true;
  return false;
}

bool Bitset::subset_of(const Bitset& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

bool Bitset::masked_subset_of(const Bitset& mask, const Bitset& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & mask.w_[i] & ~o.w_[i]) return false;
  return true;
}

void Bitset::and_not(const Bitset& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
}

void Bitset::or_with(const Bitset& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
}

void Bitset::and_with(const Bitset& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::size_t Bitset::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ n_;
  for (auto x : w_) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

double round_up(double x, bool integral) {
  if (!integral) return x;
  return std::ceil(x - 1e-9 * std::max(1.0, std::fabs(x)));
}

std::vector<std::vector<std::uint32_t>> incidence(const SetCoverProblem& p) {
  std::vector<std::vector<std::uint32_t>> adj(p.elements);
  for (std::size_t j = 0; j < p.sets.size(); ++j)
    p.sets[j].for_each([&](std::size_t e) { adj[e].push_back(static_cast<std::uint32_t>(j)); });
  return adj;
}

class Search {
 public:
  Search(const SetCoverProblem& p, std::size_t budget)
      : p_(p), adj_(incidence(p)), budget_(budget), excluded_(p.sets.size(), 0), counts_(p.sets.size(), 0) {}

  void run(double incumbent, std::vector<std::size_t> incumbent_sets) {
    best_ = incumbent;
    best_sets_ = std::move(incumbent_sets);
    Bitset u(p_.elements);
    u.set_all();
    std::vector<std::size_t> chosen;
    dfs(u, 0.0, chosen, 0);
  }

  double best() const { return best_; }
  const std::vector<std::size_t>& best_sets() const { return best_sets_; }
  std::size_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  double node_bound(const Bitset& u) {
    double lb = 0;
    bool dead = false;
    u.for_each([&](std::size_t e) {
      double y = std::numeric_limits<double>::infinity();
      for (auto j : adj_[e]) {
        if (excluded_[j]) continue;
        if (counts_[j] == 0) counts_[j] = static_cast<std::uint32_t>(p_.sets[j].and_count(u));
        y = std::min(y, p_.weights[j] / counts_[j]);
      }
      if (!std::isfinite(y)) dead = true;
      else lb += y;
    });
    if (dead) return std::numeric_limits<double>::infinity();
    return lb;
  }

  void dfs(const Bitset& u, double cost, std::vector<std::size_t>& chosen, int depth) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (u.none()) {
      if (cost < best_ - 1e-12 * std::max(1.0, best_)) {
        best_ = cost;
        best_sets_ = chosen;
        std::sort(best_sets_.begin(), best_sets_.end());
      }
      return;
    }
    auto it = memo_.find(u);
    if (it != memo_.end() && it->second <= cost + 1e-12 * std::max(1.0, cost)) return;
    if (memo_.size() < (1u << 18)) memo_[u] = cost;

    std::fill(counts_.begin(), counts_.end(), 0);
    double lb = node_bound(u);
    if (p_.extra_bound && depth <= 2) lb = std::max(lb, p_.extra_bound(u));
    lb *= (1 - 1e-12);
    double bound = cost + round_up(lb, p_.integral);
    if (p_.integral ? bound >= best_ - 0.5 : bound >= best_ - 1e-12 * std::max(1.0, best_)) return;

    // Branch on the uncovered element with the fewest admissible sets.
    std::size_t pick = p_.elements, pick_deg = std::numeric_limits<std::size_t>::max();
    u.for_each([&](std::size_t e) {
      std::size_t d = 0;
      for (auto j : adj_[e])
        if (!excluded_[j]) ++d;
      if (d < pick_deg) {
        pick_deg = d;
        pick = e;
      }
    });
    if (pick_deg == 0) return;

    struct Option {
      std::uint32_t j;
      double ratio;
    };
    std::vector<Option> opts;
    for (auto j : adj_[pick]) {
      if (excluded_[j]) continue;
      std::uint32_t c = counts_[j] ? counts_[j] : static_cast<std::uint32_t>(p_.sets[j].and_count(u));
      opts.push_back({j, p_.weights[j] / c});
    }
    std::sort(opts.begin(), opts.end(), [](const Option& a, const Option& b) {
      if (a.ratio != b.ratio) return a.ratio < b.ratio;
      return a.j < b.j;
    });
    std::vector<std::uint32_t> kept;
    for (const auto& o : opts) {
      bool dominated = false;
      for (auto k : kept)
        if (p_.weights[k] <= p_.weights[o.j] && p_.sets[o.j].masked_subset_of(u, p_.sets[k])) {
          dominated = true;
          break;
        }
      if (!dominated) kept.push_back(o.j);
    }

    std::vector<std::uint32_t> newly_excluded;
    for (auto j : kept) {
      Bitset next = u;
      next.and_not(p_.sets[j]);
      chosen.push_back(j);
      dfs(next, cost + p_.weights[j], chosen, depth + 1);
      chosen.pop_back();
      if (aborted_) break;
      // Later branches cover `pick` with a different set.
      excluded_[j] = 1;
      newly_excluded.push_back(j);
    }
    for (auto j : newly_excluded) excluded_[j] = 0;
  }

  const SetCoverProblem& p_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::size_t budget_;
  std::vector<std::uint8_t> excluded_;
  std::vector<std::uint32_t> counts_;
  std::unordered_map<Bitset, double, BitsetHash> memo_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_sets_;
  std::size_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

void check_coverable(const SetCoverProblem& p) {
  Bitset all(p.elements);
  for (const auto& s : p.sets) all.or_with(s);
  if (all.count() != p.elements) throw UncoverableError("ball family cannot cover the target");
}

double dual_bound(const SetCoverProblem& p, const Bitset& uncovered, std::vector<double>* y_out, bool ascent) {
  std::vector<double> y(p.elements, 0.0);
  std::vector<double> cnt(p.sets.size(), 0.0);
  for (std::size_t j = 0; j < p.sets.size(); ++j) cnt[j] = static_cast<double>(p.sets[j].and_count(uncovered));
  auto adj = incidence(p);
  uncovered.for_each([&](std::size_t e) {
    double v = std::numeric_limits<double>::infinity();
    for (auto j : adj[e]) v = std::min(v, p.weights[j] / cnt[j]);
    y[e] = std::isfinite(v) ? v : 0.0;
  });
  if (ascent) {
    std::vector<double> slack(p.sets.size());
    for (std::size_t j = 0; j < p.sets.size(); ++j) {
      double used = 0;
      p.sets[j].for_each([&](std::size_t e) {
        if (uncovered.test(e)) used += y[e];
      });
      slack[j] = std::max(0.0, p.weights[j] - used);
    }
    uncovered.for_each([&](std::size_t e) {
      double inc = std::numeric_limits<double>::infinity();
      for (auto j : adj[e]) inc = std::min(inc, slack[j]);
      if (!std::isfinite(inc) || inc <= 0) return;
      y[e] += inc;
      for (auto j : adj[e]) slack[j] = std::max(0.0, slack[j] - inc);
    });
  }
  double total = 0;
  uncovered.for_each([&](std::size_t e) { total += y[e]; });
  total *= (1 - 1e-12);
  if (y_out) *y_out = std::move(y);
  return total;
}

SetCoverSolution solve_greedy(const SetCoverProblem& p) {
  check_coverable(p);
  Bitset u(p.elements);
  u.set_all();
  std::vector<std::size_t> chosen;
  while (!u.none()) {
    std::size_t best = p.sets.size();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p.sets.size(); ++j) {
      std::size_t c = p.sets[j].and_count(u);
      if (c == 0) continue;
      double r = p.weights[j] / static_cast<double>(c);
      if (r < best_ratio) {
        best_ratio = r;
        best = j;
      }
    }
    chosen.push_back(best);
    u.and_not(p.sets[best]);
  }
  // Drop redundant sets, heaviest first.
  std::vector<std::size_t> order = chosen;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.weights[a] > p.weights[b]; });
  std::vector<char> keep(p.sets.size(), 0);
  for (auto j : chosen) keep[j] = 1;
  for (auto j : order) {
    keep[j] = 0;
    Bitset cov(p.elements);
    for (auto k : chosen)
      if (keep[k]) cov.or_with(p.sets[k]);
    if (cov.count() != p.elements) keep[j] = 1;
  }
  SetCoverSolution s;
  for (auto j : chosen)
    if (keep[j]) s.chosen.push_back(j);
  std::sort(s.chosen.begin(), s.chosen.end());
  for (auto j : s.chosen) s.cost += p.weights[j];
  Bitset all(p.elements);
  all.set_all();
  s.dual_value = dual_bound(p, all, &s.dual, true);
  s.extra_value = p.extra_bound ? p.extra_bound(all) : 0.0;
  s.lower = round_up(std::max(s.dual_value, s.extra_value), p.integral);
  s.bound_kind = s.extra_value > s.dual_value ? "volume" : "lp-dual";
  s.optimal = s.lower >= s.cost - 1e-12 * std::max(1.0, s.cost);
  if (s.optimal) s.lower = s.cost;
  s.lower = std::min(s.lower, s.cost);
  return s;
}

SetCoverSolution solve_exact(const SetCoverProblem& p, std::size_t node_budget) {
  SetCoverSolution g = solve_greedy(p);
  if (g.optimal) {
    g.bound_kind = g.extra_value > g.dual_value ? "volume" : "lp-dual";
    return g;
  }
  Search search(p, node_budget);
  search.run(g.cost, g.chosen);
  SetCoverSolution s = g;
  s.chosen = search.best_sets();
  s.cost = 0;
  for (auto j : s.chosen) s.cost += p.weights[j];
  s.nodes = search.nodes();
  if (!search.aborted()) {
    s.optimal = true;
    s.lower = s.cost;
    s.bound_kind = "search";
  } else {
    s.optimal = false;
    s.lower = std::min(g.lower, s.cost);
  }
  return s;
}

}  // namespace hcf
