#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ringnet/catalog.hpp"
#include "ringnet/element.hpp"
#include "ringnet/finite.hpp"
#include "ringnet/matrix.hpp"
#include "ringnet/network.hpp"
#include "ringnet/rings.hpp"

// Oracles and generators shared by the unit, property and acceptance suites.
// Nothing here calls the code path it is used to check.

namespace testing_support {

using namespace ringnet;

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// ---------------------------------------------------------------------------
// Generators

/// Random element of a ring of the tower. Rationals and Jacobson elements
/// stay small so products do not overflow.
inline Element random_element(const Ring& r, Rng& rng) {
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      return from_int(r, uniform(rng, 0, r.modulus() - 1));
    case RingKind::Rationals:
      return rational(uniform(rng, -9, 9), uniform(rng, 1, 9));
    case RingKind::MatrixRing: {
      std::vector<Element> e;
      for (std::size_t i = 0; i < r.dim() * r.dim(); ++i) e.push_back(random_element(r.base(), rng));
      return matrix_element(r, std::move(e));
    }
    case RingKind::Jacobson: {
      Element acc = zero(r);
      const auto terms = uniform(rng, 0, 3);
      for (std::int64_t t = 0; t < terms; ++t) {
        const auto i = static_cast<std::uint64_t>(uniform(rng, 0, 3));
        const auto j = static_cast<std::uint64_t>(uniform(rng, 0, 3));
        acc = add(acc, Element(r, Element::Terms{JacobsonTerm{i, j, random_element(r.base(), rng)}}));
      }
      return acc;
    }
  }
  return zero(r);
}

inline Matrix random_matrix(const Ring& r, std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<Element> e;
  for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(random_element(r, rng));
  return Matrix(r, rows, cols, std::move(e));
}

/// Matrix for rank checks. Over Q the entries are kept to halves and
/// integers in [-3, 3] so elimination stays inside int64.
inline Matrix random_rank_matrix(const Ring& f, std::size_t rows, std::size_t cols, Rng& rng) {
  if (f.kind() != RingKind::Rationals) return random_matrix(f, rows, cols, rng);
  std::vector<Element> e;
  for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(rational(uniform(rng, -3, 3), uniform(rng, 1, 2)));
  return Matrix(f, rows, cols, std::move(e));
}

/// Random shape-valid assignment for (k, n).
inline Assignment random_assignment(const Network& net, const Ring& r, std::size_t k, std::size_t n, Rng& rng) {
  Assignment a{r, k, n, {}};
  for (const auto& e : net.edges) {
    const std::size_t rows = net.node(e.to).kind == NodeKind::Relay ? n : k;
    const std::size_t cols = net.node(e.from).kind == NodeKind::Relay ? n : k;
    a.set(e, random_matrix(r, rows, cols, rng));
  }
  return a;
}

/// Random small DAG with 1-2 sources, 0-2 relays and 1-2 receivers; edges
/// only go forward in node order, so it is acyclic by construction.
inline Network random_network(Rng& rng, std::size_t max_edges) {
  for (;;) {
    Network net;
    const int sources = static_cast<int>(uniform(rng, 1, 2));
    const int relays = static_cast<int>(uniform(rng, 0, 2));
    const int receivers = static_cast<int>(uniform(rng, 1, 2));
    int id = 1;
    for (int s = 0; s < sources; ++s) net.nodes.push_back(Node{id++, NodeKind::Source, "m" + std::to_string(s), {}});
    for (int j = 0; j < relays; ++j) net.nodes.push_back(Node{id++, NodeKind::Relay, {}, {}});
    for (int t = 0; t < receivers; ++t) {
      net.nodes.push_back(Node{id++, NodeKind::Receiver, {}, "m" + std::to_string(uniform(rng, 0, sources - 1))});
    }
    std::vector<Edge> candidates;
    for (const auto& a : net.nodes) {
      for (const auto& b : net.nodes) {
        if (a.id >= b.id || a.kind == NodeKind::Receiver || b.kind == NodeKind::Source) continue;
        candidates.push_back({a.id, b.id});
      }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const auto count = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(std::min(max_edges, candidates.size()))));
    candidates.resize(count);
    std::sort(candidates.begin(), candidates.end());
    net.edges = candidates;
    if (validate(net).empty()) return net;
  }
}

// ---------------------------------------------------------------------------
// Oracles

/// All directed s->t paths by an independent DFS over the edge list.
inline std::vector<std::vector<Edge>> oracle_paths(const Network& net, int s, int t) {
  std::vector<std::vector<Edge>> out;
  std::vector<Edge> stack;
  std::function<void(int)> dfs = [&](int u) {
    if (u == t) {
      out.push_back(stack);
      return;
    }
    for (const auto& e : net.edges) {
      if (e.from != u) continue;
      stack.push_back(e);
      dfs(e.to);
      stack.pop_back();
    }
  };
  dfs(s);
  return out;
}

/// Transfer block by the path-sum definition: sum over paths e1..em of
/// M_em ... M_e1, with each product formed entry by entry.
inline Matrix oracle_block(const Network& net, const Assignment& a, int s, int t) {
  const Ring& r = a.ring;
  const std::size_t k = a.k;
  auto multiply = [&](const Matrix& x, const Matrix& y) {
    std::vector<Element> e;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < y.cols(); ++j) {
        Element acc = zero(r);
        for (std::size_t m = 0; m < x.cols(); ++m) acc = acc + x(i, m) * y(m, j);
        e.push_back(acc);
      }
    }
    return Matrix(r, x.rows(), y.cols(), std::move(e));
  };
  std::vector<Element> sum(k * k, zero(r));
  for (const auto& path : oracle_paths(net, s, t)) {
    Matrix prod = a.entries.at(path.front());
    for (std::size_t i = 1; i < path.size(); ++i) prod = multiply(a.entries.at(path[i]), prod);
    for (std::size_t i = 0; i < k * k; ++i) sum[i] = sum[i] + prod.entries()[i];
  }
  return Matrix(r, k, k, std::move(sum));
}

/// Demand satisfaction by the path-sum definition.
inline bool oracle_satisfied(const Network& net, const Assignment& a) {
  for (const auto& rx : net.nodes) {
    if (rx.kind != NodeKind::Receiver) continue;
    for (const auto& tx : net.nodes) {
      if (tx.kind != NodeKind::Source) continue;
      const Matrix b = oracle_block(net, a, tx.id, rx.id);
      const bool want_identity = rx.demands == tx.message;
      for (std::size_t i = 0; i < a.k; ++i) {
        for (std::size_t j = 0; j < a.k; ++j) {
          const bool one_expected = want_identity && i == j;
          if (b(i, j) != (one_expected ? one(a.ring) : zero(a.ring))) return false;
        }
      }
    }
  }
  return true;
}

/// Every scalar assignment over a finite ring, no pruning; returns the
/// satisfying ones in odometer order over the network's edge list.
inline std::vector<Assignment> naive_scalar_solutions(const Network& net, const Ring& r) {
  const auto elems = enumerate(r, 4096);
  std::vector<std::size_t> idx(net.edges.size(), 0);
  std::vector<Assignment> out;
  for (;;) {
    Assignment a{r, 1, 1, {}};
    for (std::size_t i = 0; i < idx.size(); ++i) a.set(net.edges[i], Matrix::scalar(elems[idx[i]]));
    if (oracle_satisfied(net, a)) out.push_back(a);
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jacobson algebra as operators on finitely supported sequences.
//
// x drops the first coordinate, y prepends a zero. Then xy = 1 while
// yx = 1 - e0, and y^i x^j acts as "drop j, prepend i zeros". This action
// is faithful, so products can be checked by composing operators.

using Sequence = std::vector<Element>;

inline Sequence act(const Element& a, const Sequence& v) {
  const Ring& f = a.ring().base();
  Sequence out;
  for (const auto& t : a.terms()) {
    Sequence w;
    for (std::uint64_t i = 0; i < t.y_degree; ++i) w.push_back(zero(f));
    for (std::size_t p = t.x_degree; p < v.size(); ++p) w.push_back(t.coeff * v[p]);
    if (out.size() < w.size()) out.resize(w.size(), zero(f));
    for (std::size_t p = 0; p < w.size(); ++p) out[p] = out[p] + w[p];
  }
  return out;
}

inline bool same_sequence(Sequence a, Sequence b) {
  if (a.empty() && b.empty()) return true;
  const Ring f = a.empty() ? b.front().ring() : a.front().ring();
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, zero(f));
  b.resize(n, zero(f));
  return a == b;
}

inline Sequence random_sequence(const Ring& f, std::size_t len, Rng& rng) {
  Sequence v;
  for (std::size_t i = 0; i < len; ++i) v.push_back(random_element(f, rng));
  return v;
}

}  // namespace testing_support
