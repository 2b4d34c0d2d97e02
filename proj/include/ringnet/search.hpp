#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ringnet/catalog.hpp"
#include "ringnet/error.hpp"
#include "ringnet/finite.hpp"
#include "ringnet/matrix.hpp"
#include "ringnet/network.hpp"
#include "ringnet/rings.hpp"

namespace ringnet {

// ---------------------------------------------------------------------------
// Constraint plan

/// One demand equation: the (receiver, source) block of the transfer matrix
/// must be the identity (demanded) or zero. Paths hold variable positions in
/// traversal order, tail edge first.
struct PlannedConstraint {
  int receiver = 0;
  int source = 0;
  bool demanded = false;
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> variables;  // sorted, distinct
  std::size_t depth = 0;               // number of assigned variables when checked
};

struct SearchPlan {
  std::vector<Edge> order;  // variable i is edge order[i]
  std::vector<PlannedConstraint> constraints;
  std::vector<std::vector<std::size_t>> checks;  // checks[d]: constraints first determined at depth d

  std::size_t depth_of(int receiver, int source) const {
    for (const auto& c : constraints) {
      if (c.receiver == receiver && c.source == source) return c.depth;
    }
    throw InvalidNetwork("no constraint (" + std::to_string(receiver) + ", " + std::to_string(source) + ") in plan");
  }
};

/// Selection of demand blocks as (receiver, source) pairs.
using BlockSelection = std::vector<std::pair<int, int>>;

namespace detail {

/// Greedy variable order. Repeatedly takes the open constraint with the
/// smallest key (single-path identity constraints first, then fewest
/// unassigned edges, then the lexicographically smallest sorted list of edge
/// indices) and appends its unassigned edges in network order. Edges outside
/// every selected constraint go last when `all_edges` is set.
inline SearchPlan make_plan(const Network& net, const BlockSelection& blocks, bool all_edges) {
  require_valid(net);
  struct Raw {
    int receiver, source;
    bool demanded;
    std::vector<std::vector<std::size_t>> paths;  // network edge indices
    std::vector<std::size_t> edges;
  };
  auto edge_index = [&](const Edge& e) {
    return static_cast<std::size_t>(std::find(net.edges.begin(), net.edges.end(), e) - net.edges.begin());
  };
  std::vector<Raw> raw;
  for (const auto& [t, s] : blocks) {
    const Node& rx = net.node(t);
    const Node& tx = net.node(s);
    if (rx.kind != NodeKind::Receiver || tx.kind != NodeKind::Source) {
      throw InvalidNetwork("block (" + std::to_string(t) + ", " + std::to_string(s) + ") is not a (receiver, source) pair");
    }
    Raw r{t, s, rx.demands == tx.message, {}, {}};
    for (const auto& path : enumerate_paths(net, s, t)) {
      std::vector<std::size_t> idx;
      for (const auto& e : path) idx.push_back(edge_index(e));
      r.edges.insert(r.edges.end(), idx.begin(), idx.end());
      r.paths.push_back(std::move(idx));
    }
    std::sort(r.edges.begin(), r.edges.end());
    r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
    raw.push_back(std::move(r));
  }

  std::vector<std::size_t> position(net.edges.size(), std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> order;
  std::vector<bool> done(raw.size(), false);
  auto unassigned = [&](const Raw& r) {
    std::size_t u = 0;
    for (auto e : r.edges) u += position[e] == std::numeric_limits<std::size_t>::max();
    return u;
  };
  for (std::size_t round = 0; round < raw.size(); ++round) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (done[i]) continue;
      if (!best) {
        best = i;
        continue;
      }
      auto key = [&](const Raw& r) { return std::make_tuple(!(r.demanded && r.paths.size() == 1), unassigned(r), r.edges); };
      if (key(raw[i]) < key(raw[*best])) best = i;
    }
    done[*best] = true;
    for (auto e : raw[*best].edges) {
      if (position[e] == std::numeric_limits<std::size_t>::max()) {
        position[e] = order.size();
        order.push_back(e);
      }
    }
  }
  if (all_edges) {
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
      if (position[e] == std::numeric_limits<std::size_t>::max()) {
        position[e] = order.size();
        order.push_back(e);
      }
    }
  }

  SearchPlan plan;
  for (auto e : order) plan.order.push_back(net.edges[e]);
  plan.checks.resize(order.size() + 1);
  for (const auto& r : raw) {
    PlannedConstraint c{r.receiver, r.source, r.demanded, {}, {}, 0};
    for (const auto& path : r.paths) {
      std::vector<std::size_t> vars;
      for (auto e : path) vars.push_back(position[e]);
      c.paths.push_back(std::move(vars));
    }
    for (auto e : r.edges) c.variables.push_back(position[e]);
    std::sort(c.variables.begin(), c.variables.end());
    c.depth = c.variables.empty() ? 0 : c.variables.back() + 1;
    plan.checks[c.depth].push_back(plan.constraints.size());
    plan.constraints.push_back(std::move(c));
  }
  return plan;
}

inline BlockSelection all_blocks(const Network& net) {
  BlockSelection out;
  for (int t : net.receivers()) {
    for (int s : net.sources()) out.emplace_back(t, s);
  }
  return out;
}

}  // namespace detail

/// Plan over every edge and every (receiver, source) block.
inline SearchPlan plan(const Network& net) { return detail::make_plan(net, detail::all_blocks(net), true); }

// ---------------------------------------------------------------------------
// Outcome

enum class Verdict { SolutionsFound, ExhaustedNone, BudgetExceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::SolutionsFound:
      return "solutions-found";
    case Verdict::ExhaustedNone:
      return "exhausted-none";
    case Verdict::BudgetExceeded:
      return "budget-exceeded";
  }
  return "?";
}

struct SearchLimits {
  std::size_t max_solutions = 10;
  std::uint64_t max_nodes = 100'000'000;
  unsigned partitions = 1;
};

/// Search-tree counters. Every node is visited, then either pruned by a
/// determined constraint, accepted as a leaf, or expanded.
struct SearchCounters {
  std::uint64_t nodes_visited = 0;
  std::uint64_t pruned = 0;
  std::uint64_t expanded = 0;
  std::uint64_t leaves = 0;
  std::uint64_t children_owed = 0;  // the root plus the domain size of every expansion

  SearchCounters& operator+=(const SearchCounters& o) {
    nodes_visited += o.nodes_visited;
    pruned += o.pruned;
    expanded += o.expanded;
    leaves += o.leaves;
    children_owed += o.children_owed;
    return *this;
  }
  friend bool operator==(const SearchCounters&, const SearchCounters&) = default;
};

struct SearchOutcome {
  Verdict verdict = Verdict::ExhaustedNone;
  std::vector<Assignment> solutions;
  SearchCounters counters;
  bool stopped_early = false;  // max_solutions or max_nodes cut the tree
  unsigned partitions = 1;
  std::size_t variables = 0;
  std::chrono::nanoseconds elapsed{0};

  /// True when the tree was walked to the end: every owed child was visited
  /// and every visited node was classified.
  bool complete() const {
    return !stopped_early && counters.nodes_visited == counters.children_owed &&
           counters.nodes_visited == counters.pruned + counters.expanded + counters.leaves;
  }
};

// ---------------------------------------------------------------------------
// Algebra policies

/// Scalar edge values as indices into the ring's operation tables.
class ScalarAlgebra {
 public:
  using Index = FiniteRingTable::Index;

  explicit ScalarAlgebra(const Ring& r, std::uint64_t cap) : table_(r, cap) {}

  std::size_t domain_size(std::size_t) const { return table_.size(); }

  bool holds(const PlannedConstraint& c, const std::vector<Index>& values) const {
    Index sum = table_.zero();
    for (const auto& path : c.paths) {
      Index prod = values[path.front()];
      for (std::size_t i = 1; i < path.size(); ++i) prod = table_.mul(values[path[i]], prod);
      sum = table_.add(sum, prod);
    }
    return sum == (c.demanded ? table_.one() : table_.zero());
  }

  Matrix value(std::size_t, Index v) const { return Matrix::scalar(table_.element(v)); }

 private:
  FiniteRingTable table_;
};

/// Edge values as matrices of a fixed shape per variable over a finite base
/// ring, enumerated in row-major lexicographic order.
class BlockAlgebra {
 public:
  using Index = std::uint32_t;

  static constexpr std::uint64_t kDomainCap = 1u << 20;

  BlockAlgebra(const Network& net, const SearchPlan& plan, const Ring& r, std::size_t k, std::size_t n)
      : ring_(r), k_(k) {
    const std::vector<Element> base = enumerate(r, FiniteRingTable::kDefaultCap);
    for (const auto& e : plan.order) {
      const auto [rows, cols] = edge_shape(net, e, k, n);
      const std::uint64_t size = Ring::saturating_pow(base.size(), rows * cols);
      if (size > kDomainCap) throw BudgetExceeded("edge " + to_string(e) + " domain over " + r.to_string(), size, kDomainCap);
      auto shape = std::make_pair(rows, cols);
      auto it = std::find(shapes_.begin(), shapes_.end(), shape);
      if (it == shapes_.end()) {
        shapes_.push_back(shape);
        domains_.emplace_back();
        for (std::uint64_t i = 0; i < size; ++i) {
          std::vector<Element> entries(rows * cols, base.front());
          std::uint64_t rest = i;
          for (std::size_t c = rows * cols; c-- > 0;) {
            entries[c] = base[rest % base.size()];
            rest /= base.size();
          }
          domains_.back().emplace_back(r, rows, cols, std::move(entries));
        }
        it = shapes_.end() - 1;
      }
      domain_of_.push_back(static_cast<std::size_t>(it - shapes_.begin()));
    }
  }

  std::size_t domain_size(std::size_t var) const { return domains_[domain_of_[var]].size(); }

  bool holds(const PlannedConstraint& c, const std::vector<Index>& values) const {
    std::optional<Matrix> sum;
    for (const auto& path : c.paths) {
      Matrix prod = value(path.front(), values[path.front()]);
      for (std::size_t i = 1; i < path.size(); ++i) prod = mat_mul(value(path[i], values[path[i]]), prod);
      sum = sum ? mat_add(*sum, prod) : prod;
    }
    if (!sum) return !c.demanded;
    return c.demanded ? sum->is_identity() : sum->is_zero();
  }

  const Matrix& value(std::size_t var, Index v) const { return domains_[domain_of_[var]][v]; }

 private:
  Ring ring_;
  std::size_t k_;
  std::vector<std::pair<std::size_t, std::size_t>> shapes_;
  std::vector<std::vector<Matrix>> domains_;
  std::vector<std::size_t> domain_of_;
};

// ---------------------------------------------------------------------------
// Backtracking

namespace detail {

/// Depth-first walk of one partition: the first variable takes only values
/// v with v % partitions == part. The root is counted by partition 0 alone so
/// that partition counters sum to the single-partition counters.
template <class Algebra>
class Backtracker {
 public:
  using Index = typename Algebra::Index;

  Backtracker(const Algebra& alg, const SearchPlan& plan, const SearchLimits& limits, unsigned part)
      : alg_(alg), plan_(plan), limits_(limits), part_(part), values_(plan.order.size(), 0) {}

  void run() { visit(0); }

  const SearchCounters& counters() const { return counters_; }
  bool aborted() const { return aborted_; }
  bool stopped() const { return stopped_; }
  std::vector<std::vector<Index>>& found() { return found_; }

 private:
  bool visit(std::size_t depth) {
    const bool counted = depth > 0 || part_ == 0;
    if (counted) {
      if (counters_.nodes_visited >= limits_.max_nodes) {
        aborted_ = true;
        return false;
      }
      ++counters_.nodes_visited;
      if (depth == 0) ++counters_.children_owed;
    }
    for (std::size_t c : plan_.checks[depth]) {
      if (!alg_.holds(plan_.constraints[c], values_)) {
        if (counted) ++counters_.pruned;
        return true;
      }
    }
    if (depth == values_.size()) {
      if (counted) ++counters_.leaves;
      if (depth == 0 && part_ != 0) return true;
      found_.push_back(values_);
      if (found_.size() >= limits_.max_solutions) {
        stopped_ = true;
        return false;
      }
      return true;
    }
    if (counted) ++counters_.expanded;
    const std::size_t domain = alg_.domain_size(depth);
    const std::size_t parts = depth == 0 ? std::max(1u, limits_.partitions) : 1;
    const std::size_t first = depth == 0 ? part_ : 0;
    for (std::size_t v = first; v < domain; v += parts) ++counters_.children_owed;
    for (std::size_t v = first; v < domain; v += parts) {
      values_[depth] = static_cast<Index>(v);
      if (!visit(depth + 1)) return false;
    }
    values_[depth] = 0;
    return true;
  }

  const Algebra& alg_;
  const SearchPlan& plan_;
  SearchLimits limits_;
  unsigned part_;
  std::vector<Index> values_;
  SearchCounters counters_;
  std::vector<std::vector<Index>> found_;
  bool aborted_ = false;
  bool stopped_ = false;
};

template <class Algebra>
SearchOutcome run_search(const Algebra& alg, const SearchPlan& plan, const SearchLimits& limits,
                         const std::function<Assignment(const std::vector<typename Algebra::Index>&)>& to_assignment,
                         const std::function<bool(const Assignment&)>& reverify) {
  using Index = typename Algebra::Index;
  const auto start = std::chrono::steady_clock::now();
  const unsigned parts = std::max(1u, limits.partitions);
  std::vector<Backtracker<Algebra>> workers;
  workers.reserve(parts);
  for (unsigned p = 0; p < parts; ++p) workers.emplace_back(alg, plan, limits, p);
  if (parts == 1) {
    workers[0].run();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(parts);
    for (auto& w : workers) threads.emplace_back([&w] { w.run(); });
    for (auto& t : threads) t.join();
  }

  SearchOutcome out;
  out.partitions = parts;
  out.variables = plan.order.size();
  std::vector<std::vector<Index>> found;
  bool aborted = false;
  for (auto& w : workers) {
    out.counters += w.counters();
    aborted = aborted || w.aborted();
    out.stopped_early = out.stopped_early || w.aborted() || w.stopped();
    for (auto& f : w.found()) found.push_back(std::move(f));
  }
  std::sort(found.begin(), found.end());
  if (found.size() > limits.max_solutions) found.resize(limits.max_solutions);

  if (!found.empty()) {
    out.verdict = Verdict::SolutionsFound;
  } else if (aborted || out.counters.nodes_visited > limits.max_nodes) {
    out.verdict = Verdict::BudgetExceeded;
  } else {
    out.verdict = Verdict::ExhaustedNone;
  }
  for (const auto& f : found) {
    Assignment a = to_assignment(f);
    if (!reverify(a)) throw Error("search produced an assignment that fails independent verification");
    out.solutions.push_back(std::move(a));
  }
  out.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return out;
}

/// True iff the selected blocks of the transfer matrix meet their demands,
/// with every edge outside `asg` set to zero.
inline bool blocks_satisfied(const Network& net, const Assignment& asg, const BlockSelection& blocks) {
  Assignment full = asg;
  for (const auto& e : net.edges) {
    if (!full.entries.count(e)) {
      const auto [r, c] = edge_shape(net, e, asg.k, asg.n);
      full.set(e, Matrix::zeros(asg.ring, r, c));
    }
  }
  const TransferMatrix tm = transfer(net, full);
  for (const auto& [t, s] : blocks) {
    const Matrix& b = tm.at(t, s);
    const bool demanded = net.node(t).demands == net.node(s).message;
    if (demanded ? !b.is_identity() : !b.is_zero()) return false;
  }
  return true;
}

}  // namespace detail

/// Exhaustive search for a solution of the selected demand blocks with edge
/// matrices of shape given by (k, n). Only edges on some path of a selected
/// block are variables; returned assignments cover exactly those edges.
inline SearchOutcome search_system(const Network& net, const Ring& ring, std::size_t k, std::size_t n,
                                   const BlockSelection& blocks, const SearchLimits& limits = {}) {
  if (!ring.is_finite()) throw InfiniteRing("search needs a finite ring, got " + ring.to_string());
  if (k < 1 || n < 1) throw ShapeError("search needs k, n >= 1");
  const SearchPlan p = detail::make_plan(net, blocks, false);
  const BlockAlgebra alg(net, p, ring, k, n);
  return detail::run_search<BlockAlgebra>(
      alg, p, limits,
      [&](const std::vector<BlockAlgebra::Index>& values) {
        Assignment a{ring, k, n, {}};
        for (std::size_t i = 0; i < values.size(); ++i) a.set(p.order[i], alg.value(i, values[i]));
        return a;
      },
      [&](const Assignment& a) { return detail::blocks_satisfied(net, a, blocks); });
}

/// Exhaustive scalar (k = n = 1) search over every edge, enforcing every
/// demand block. Values are tried in ring enumeration order.
inline SearchOutcome search_scalar(const Network& net, const Ring& ring, const SearchLimits& limits = {},
                                   std::uint64_t ring_cap = FiniteRingTable::kDefaultCap) {
  if (!ring.is_finite()) throw InfiniteRing("search needs a finite ring, got " + ring.to_string());
  const SearchPlan p = plan(net);
  const ScalarAlgebra alg(ring, ring_cap);
  return detail::run_search<ScalarAlgebra>(
      alg, p, limits,
      [&](const std::vector<ScalarAlgebra::Index>& values) {
        Assignment a{ring, 1, 1, {}};
        for (std::size_t i = 0; i < values.size(); ++i) a.set(p.order[i], alg.value(i, values[i]));
        return a;
      },
      [&](const Assignment& a) { return verify(net, a).satisfied; });
}

/// Scalar search restricted to a subset of the demand blocks; every edge is
/// still a variable.
inline SearchOutcome search_scalar(const Network& net, const Ring& ring, const BlockSelection& blocks,
                                   const SearchLimits& limits = {}) {
  if (!ring.is_finite()) throw InfiniteRing("search needs a finite ring, got " + ring.to_string());
  const SearchPlan p = detail::make_plan(net, blocks, true);
  const ScalarAlgebra alg(ring, FiniteRingTable::kDefaultCap);
  return detail::run_search<ScalarAlgebra>(
      alg, p, limits,
      [&](const std::vector<ScalarAlgebra::Index>& values) {
        Assignment a{ring, 1, 1, {}};
        for (std::size_t i = 0; i < values.size(); ++i) a.set(p.order[i], alg.value(i, values[i]));
        return a;
      },
      [&](const Assignment& a) { return detail::blocks_satisfied(net, a, blocks); });
}

/// Scan for r1, r2, d1, d2 with d1 r1 = d2 r2 = 1 and d1 r2 = d2 r1 = 0: a
/// scalar search on the wingless butterfly, whose four demand blocks are
/// exactly these identities. Solutions map 1->3, 2->3, 3->4, 3->5 to r1, r2,
/// d1, d2.
inline SearchOutcome search_star_star(const Ring& ring, std::uint64_t cap, const SearchLimits& limits = {}) {
  if (!ring.is_finite()) throw InfiniteRing("search needs a finite ring, got " + ring.to_string());
  const std::uint64_t size = ring.cardinality();
  if (size > cap) throw BudgetExceeded("ring " + ring.to_string() + " is too large to enumerate", size, cap);
  return search_scalar(wingless_butterfly(), ring, limits, cap);
}

}  // namespace ringnet
