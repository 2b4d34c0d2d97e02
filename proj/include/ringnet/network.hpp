#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ringnet/error.hpp"
#include "ringnet/matrix.hpp"
#include "ringnet/rings.hpp"

namespace ringnet {

enum class NodeKind { Source, Relay, Receiver };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Source:
      return "source";
    case NodeKind::Relay:
      return "relay";
    case NodeKind::Receiver:
      return "receiver";
  }
  return "?";
}

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::Relay;
  std::string message;  // sources only
  std::string demands;  // receivers only

  friend bool operator==(const Node&, const Node&) = default;
};

/// Directed edge tail -> head.
struct Edge {
  int from = 0;
  int to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) { return std::to_string(e.from) + "->" + std::to_string(e.to); }

/// Communication network: a DAG with typed nodes, named messages at the
/// sources and one demanded message per receiver.
struct Network {
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  const Node* find(int id) const {
    for (const auto& n : nodes) {
      if (n.id == id) return &n;
    }
    return nullptr;
  }

  const Node& node(int id) const {
    const Node* n = find(id);
    if (!n) throw InvalidNetwork("no node with id " + std::to_string(id));
    return *n;
  }

  std::vector<int> ids_of(NodeKind kind) const {
    std::vector<int> out;
    for (const auto& n : nodes) {
      if (n.kind == kind) out.push_back(n.id);
    }
    return out;
  }
  std::vector<int> sources() const { return ids_of(NodeKind::Source); }
  std::vector<int> receivers() const { return ids_of(NodeKind::Receiver); }

  /// Source id producing `message`, if exactly one does.
  std::optional<int> source_of(const std::string& message) const {
    std::optional<int> found;
    for (const auto& n : nodes) {
      if (n.kind == NodeKind::Source && n.message == message) {
        if (found) return std::nullopt;
        found = n.id;
      }
    }
    return found;
  }

  bool has_edge(const Edge& e) const { return std::find(edges.begin(), edges.end(), e) != edges.end(); }

  friend bool operator==(const Network&, const Network&) = default;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Code {
    DuplicateId,
    UnknownEndpoint,
    ParallelEdge,
    Cycle,
    SourceInDegree,
    ReceiverOutDegree,
    MissingMessage,
    MissingDemand,
    DuplicateMessage,
    UnknownDemand,
    UnreachableReceiver,
  };
  Code code;
  std::string detail;
};

namespace detail {

/// Kahn's algorithm, ties broken by node-list order. Nodes on a cycle are
/// left out of the result.
inline std::vector<int> topological_order(const Network& net) {
  std::map<int, int> indeg;
  for (const auto& n : net.nodes) indeg[n.id] = 0;
  for (const auto& e : net.edges) {
    if (indeg.count(e.from) && indeg.count(e.to)) ++indeg[e.to];
  }
  std::vector<int> order;
  std::set<int> done;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& n : net.nodes) {
      if (done.count(n.id) || indeg[n.id] != 0) continue;
      done.insert(n.id);
      order.push_back(n.id);
      for (const auto& e : net.edges) {
        if (e.from == n.id && indeg.count(e.to)) --indeg[e.to];
      }
      progress = true;
    }
  }
  return order;
}

}  // namespace detail

/// Checks every structural invariant; an empty result means the network is valid.
inline std::vector<Violation> validate(const Network& net) {
  using C = Violation::Code;
  std::vector<Violation> out;
  auto report = [&](C code, std::string detail) { out.push_back({code, std::move(detail)}); };

  std::set<int> ids;
  for (const auto& n : net.nodes) {
    if (!ids.insert(n.id).second) report(C::DuplicateId, "node id " + std::to_string(n.id) + " repeated");
  }

  std::set<Edge> seen;
  std::map<int, int> indeg, outdeg;
  for (const auto& e : net.edges) {
    if (!ids.count(e.from) || !ids.count(e.to)) {
      report(C::UnknownEndpoint, "edge " + to_string(e) + " references an unknown node");
      continue;
    }
    if (!seen.insert(e).second) report(C::ParallelEdge, "edge " + to_string(e) + " repeated");
    ++outdeg[e.from];
    ++indeg[e.to];
  }

  if (detail::topological_order(net).size() != ids.size()) report(C::Cycle, "directed cycle present");

  std::map<std::string, int> producers;
  for (const auto& n : net.nodes) {
    if (n.kind == NodeKind::Source) {
      if (n.message.empty()) report(C::MissingMessage, "source " + std::to_string(n.id) + " has no message");
      if (indeg[n.id] != 0) report(C::SourceInDegree, "source " + std::to_string(n.id) + " has incoming edges");
      ++producers[n.message];
    }
    if (n.kind == NodeKind::Receiver) {
      if (n.demands.empty()) report(C::MissingDemand, "receiver " + std::to_string(n.id) + " demands nothing");
      if (outdeg[n.id] != 0) report(C::ReceiverOutDegree, "receiver " + std::to_string(n.id) + " has outgoing edges");
    }
  }
  for (const auto& [msg, count] : producers) {
    if (count > 1 && !msg.empty()) report(C::DuplicateMessage, "message '" + msg + "' produced by " + std::to_string(count) + " sources");
  }
  for (const auto& n : net.nodes) {
    if (n.kind == NodeKind::Receiver && !n.demands.empty() && !producers.count(n.demands)) {
      report(C::UnknownDemand, "receiver " + std::to_string(n.id) + " demands unknown message '" + n.demands + "'");
    }
  }

  // Reachability from the sources.
  std::set<int> reached;
  std::vector<int> stack = net.sources();
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (!reached.insert(v).second) continue;
    for (const auto& e : net.edges) {
      if (e.from == v) stack.push_back(e.to);
    }
  }
  for (const int t : net.receivers()) {
    if (!reached.count(t)) report(C::UnreachableReceiver, "receiver " + std::to_string(t) + " unreachable from every source");
  }
  return out;
}

inline void require_valid(const Network& net) {
  const auto v = validate(net);
  if (!v.empty()) {
    std::string msg = "invalid network:";
    for (const auto& x : v) msg += " " + x.detail + ";";
    throw InvalidNetwork(msg);
  }
}

/// Every directed path s -> t as a tail-to-head edge list. Out-edges are
/// explored in edge-list order, so the result is deterministic.
inline std::vector<std::vector<Edge>> enumerate_paths(const Network& net, int s, int t) {
  std::vector<std::vector<Edge>> out;
  std::vector<Edge> path;
  auto dfs = [&](auto&& self, int v) -> void {
    if (v == t) {
      out.push_back(path);
      return;
    }
    for (const auto& e : net.edges) {
      if (e.from != v) continue;
      path.push_back(e);
      self(self, e.to);
      path.pop_back();
    }
  };
  dfs(dfs, s);
  return out;
}

// ---------------------------------------------------------------------------
// Assignments

/// Edge operators of one candidate solution. Scalar solutions are the
/// k = n = 1 case with 1x1 matrices.
struct Assignment {
  Ring ring;
  std::size_t k = 1;
  std::size_t n = 1;
  std::map<Edge, Matrix> entries;

  const Matrix& at(const Edge& e) const {
    auto it = entries.find(e);
    if (it == entries.end()) throw ShapeError("assignment has no entry for edge " + to_string(e));
    return it->second;
  }

  void set(const Edge& e, Matrix m) { entries.insert_or_assign(e, std::move(m)); }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.ring == b.ring && a.k == b.k && a.n == b.n && a.entries == b.entries;
  }
};

/// Dimension carried at a node: k at sources and receivers, n at relays.
inline std::size_t node_dimension(NodeKind kind, std::size_t k, std::size_t n) {
  return kind == NodeKind::Relay ? n : k;
}

/// Shape rule: source->relay n x k, relay->relay n x n, relay->receiver
/// k x n, source->receiver k x k.
inline std::pair<std::size_t, std::size_t> edge_shape(const Network& net, const Edge& e, std::size_t k, std::size_t n) {
  return {node_dimension(net.node(e.to).kind, k, n), node_dimension(net.node(e.from).kind, k, n)};
}

/// Throws ShapeError unless `asg` has exactly one correctly shaped entry per network edge.
inline void check_assignment(const Network& net, const Assignment& asg) {
  if (asg.k < 1 || asg.n < 1) throw ShapeError("assignment needs k, n >= 1");
  for (const auto& [e, m] : asg.entries) {
    if (!net.has_edge(e)) throw ShapeError("assignment entry " + to_string(e) + " is not an edge of the network");
  }
  for (const auto& e : net.edges) {
    auto it = asg.entries.find(e);
    if (it == asg.entries.end()) throw ShapeError("assignment has no entry for edge " + to_string(e));
    const Matrix& m = it->second;
    if (!(m.ring() == asg.ring)) {
      throw RingMismatch("entry " + to_string(e) + " is over " + m.ring().to_string() + ", assignment ring is " + asg.ring.to_string());
    }
    const auto [r, c] = edge_shape(net, e, asg.k, asg.n);
    if (m.rows() != r || m.cols() != c) {
      throw ShapeError("entry " + to_string(e) + " has shape " + m.shape_string() + ", expected " + std::to_string(r) + "x" +
                       std::to_string(c));
    }
  }
}

/// Scalar (k = n = 1) assignment putting `value` on every edge.
inline Assignment uniform_assignment(const Network& net, const Ring& ring, std::int64_t value = 1) {
  Assignment a{ring, 1, 1, {}};
  for (const auto& e : net.edges) a.set(e, Matrix::scalar(from_int(ring, value)));
  return a;
}

// ---------------------------------------------------------------------------
// Transfer matrix and verification

/// Receivers x sources array of k x k blocks.
struct TransferMatrix {
  std::vector<int> receivers;
  std::vector<int> sources;
  std::vector<Matrix> blocks;  // receiver-major

  const Matrix& block(std::size_t ti, std::size_t si) const { return blocks[ti * sources.size() + si]; }

  const Matrix& at(int receiver, int source) const {
    const auto ti = std::find(receivers.begin(), receivers.end(), receiver) - receivers.begin();
    const auto si = std::find(sources.begin(), sources.end(), source) - sources.begin();
    if (static_cast<std::size_t>(ti) == receivers.size() || static_cast<std::size_t>(si) == sources.size()) {
      throw InvalidNetwork("no transfer block (" + std::to_string(receiver) + ", " + std::to_string(source) + ")");
    }
    return block(ti, si);
  }

  friend bool operator==(const TransferMatrix&, const TransferMatrix&) = default;
};

/// Path-sum transfer matrix by one dynamic-programming pass in topological
/// order: value(v) = sum over in-edges (u,v) of M_(u,v) * value(u), seeded with
/// identity blocks at the sources. An edge operator multiplies on the left,
/// so a path e1..em contributes M_em ... M_e1.
inline TransferMatrix transfer(const Network& net, const Assignment& asg) {
  require_valid(net);
  check_assignment(net, asg);
  const std::size_t k = asg.k;
  const auto sources = net.sources();

  std::map<int, std::vector<Matrix>> value;
  for (const int v : detail::topological_order(net)) {
    const Node& node = net.node(v);
    const std::size_t dim = node_dimension(node.kind, k, asg.n);
    std::vector<Matrix> acc;
    acc.reserve(sources.size());
    for (const int s : sources) {
      acc.push_back(node.kind == NodeKind::Source && s == v ? Matrix::identity(asg.ring, k) : Matrix::zeros(asg.ring, dim, k));
    }
    for (const auto& e : net.edges) {
      if (e.to != v) continue;
      const Matrix& m = asg.at(e);
      const auto& upstream = value.at(e.from);
      for (std::size_t si = 0; si < sources.size(); ++si) acc[si] = mat_add(acc[si], mat_mul(m, upstream[si]));
    }
    value.emplace(v, std::move(acc));
  }

  TransferMatrix tm{net.receivers(), sources, {}};
  for (const int t : tm.receivers) {
    for (auto& b : value.at(t)) tm.blocks.push_back(std::move(b));
  }
  return tm;
}

struct BlockResidual {
  int receiver = 0;
  int source = 0;
  bool demanded = false;  // expected block is the identity rather than zero
  Matrix block;
  Matrix residual;  // block - expected

  bool ok() const { return residual.is_zero(); }
};

struct Verification {
  bool satisfied = false;
  std::vector<BlockResidual> residuals;  // receiver-major, source order
};

/// A receiver demanding the message of source s* must see the k x k
/// identity from s* and zero from every other source.
inline Verification verify(const Network& net, const Assignment& asg) {
  const TransferMatrix tm = transfer(net, asg);
  Verification v{true, {}};
  for (std::size_t ti = 0; ti < tm.receivers.size(); ++ti) {
    const Node& rx = net.node(tm.receivers[ti]);
    for (std::size_t si = 0; si < tm.sources.size(); ++si) {
      const Node& tx = net.node(tm.sources[si]);
      const bool demanded = rx.demands == tx.message;
      const Matrix& b = tm.block(ti, si);
      const Matrix expected = demanded ? Matrix::identity(asg.ring, asg.k) : Matrix::zeros(asg.ring, asg.k, asg.k);
      BlockResidual res{rx.id, tx.id, demanded, b, mat_sub(b, expected)};
      if (!res.ok()) v.satisfied = false;
      v.residuals.push_back(std::move(res));
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Relabelling

/// Renames node ids through `mapping`; ids absent from the map are kept.
inline Network relabel(const Network& net, const std::map<int, int>& mapping) {
  auto m = [&](int id) {
    auto it = mapping.find(id);
    return it == mapping.end() ? id : it->second;
  };
  Network out = net;
  for (auto& n : out.nodes) n.id = m(n.id);
  for (auto& e : out.edges) e = Edge{m(e.from), m(e.to)};
  return out;
}

inline Assignment relabel(const Assignment& asg, const std::map<int, int>& mapping) {
  auto m = [&](int id) {
    auto it = mapping.find(id);
    return it == mapping.end() ? id : it->second;
  };
  Assignment out{asg.ring, asg.k, asg.n, {}};
  for (const auto& [e, mat] : asg.entries) out.set(Edge{m(e.from), m(e.to)}, mat);
  return out;
}

}  // namespace ringnet
