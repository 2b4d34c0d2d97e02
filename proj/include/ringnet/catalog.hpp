#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringnet/catalog_data.hpp"
#include "ringnet/error.hpp"
#include "ringnet/io.hpp"
#include "ringnet/network.hpp"
#include "ringnet/rings.hpp"

// Built-in networks.
//
// The digital and analogue networks have no published drawing; their edge
// sets are read off the demand equations. Each equation lists, for one
// (source, receiver) pair, the products of edge variables along every
// directed path between them. The union of those variables is the edge set,
// and the factor order inside each product fixes the direction of every edge,
// so the graph is determined. Transfer on the resulting graph regenerates
// exactly the published path lists, which the test suite checks monomial by
// monomial.
//
// Two readings are forced by the edge set:
//  - in the digital network the product written r_{6,10} r_{6,2} is taken as
//    the path 2->6->10, since 6->2 is not an edge;
//  - the analogue network's variables are written head first (r_{4,1} is the
//    edge 1->4); the catalog stores every edge tail->head.

namespace ringnet {

/// An explicit solution shipped with a catalog network. `text` is an
/// assignment file; `expectations` lists ring specs under which the same
/// literals are re-read and the verdict each must produce.
struct KnownAssignment {
  std::string label;
  std::string text;
  std::vector<std::pair<std::string, bool>> expectations;

  Assignment load(const std::optional<Ring>& ring = std::nullopt) const { return parse_assignment(text, ring); }
};

struct CatalogEntry {
  std::string name;
  std::string description;
  Network network;
  std::vector<KnownAssignment> known;
};

namespace detail {

inline Node source(int id, std::string message) { return Node{id, NodeKind::Source, std::move(message), {}}; }
inline Node relay(int id) { return Node{id, NodeKind::Relay, {}, {}}; }
inline Node receiver(int id, std::string demands) { return Node{id, NodeKind::Receiver, {}, std::move(demands)}; }

inline Network make_network(std::vector<Node> nodes, std::vector<Edge> edges) {
  Network net{std::move(nodes), std::move(edges)};
  require_valid(net);
  return net;
}

inline std::string uniform_text(const Network& net, const char* ring, std::int64_t value = 1) {
  return emit_assignment(uniform_assignment(net, parse_ring(ring), value));
}

}  // namespace detail

/// Two senders w and e share a satellite; each receiver also hears the
/// sender on its own side over a direct wing and demands the far message.
/// Nodes: 1 = w, 2 = e, 3 = satellite, 4 = west receiver, 5 = east receiver.
inline Network butterfly() {
  return detail::make_network(
      {detail::source(1, "w"), detail::source(2, "e"), detail::relay(3), detail::receiver(4, "e"), detail::receiver(5, "w")},
      {{1, 3}, {2, 3}, {3, 4}, {3, 5}, {1, 4}, {2, 5}});
}

/// Butterfly without wings: both messages must pass one relay.
/// Edges in order r1 = 1->3, r2 = 2->3, d1 = 3->4, d2 = 3->5.
inline Network wingless_butterfly() {
  return detail::make_network(
      {detail::source(1, "m1"), detail::source(2, "m2"), detail::relay(3), detail::receiver(4, "m1"), detail::receiver(5, "m2")},
      {{1, 3}, {2, 3}, {3, 4}, {3, 5}});
}

/// k + 1 sources (ids 1..k+1), k relays (k+2..2k+1), k receivers
/// (2k+2..3k+1). Every source feeds every relay and every relay feeds every
/// receiver; receiver t demands message t, so source k + 1 is unwanted
/// everywhere.
inline Network capacity_network(int k) {
  if (k < 1) throw InvalidNetwork("capacity_network needs k >= 1, got " + std::to_string(k));
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  for (int s = 1; s <= k + 1; ++s) nodes.push_back(detail::source(s, "m" + std::to_string(s)));
  for (int j = 0; j < k; ++j) nodes.push_back(detail::relay(k + 2 + j));
  for (int t = 0; t < k; ++t) nodes.push_back(detail::receiver(2 * k + 2 + t, "m" + std::to_string(t + 1)));
  for (int s = 1; s <= k + 1; ++s) {
    for (int j = 0; j < k; ++j) edges.push_back({s, k + 2 + j});
  }
  for (int j = 0; j < k; ++j) {
    for (int t = 0; t < k; ++t) edges.push_back({k + 2 + j, 2 * k + 2 + t});
  }
  return detail::make_network(std::move(nodes), std::move(edges));
}

/// Solvable over rings with 1 + 1 = 0 and over no Dedekind finite ring
/// where 1 + 1 != 0. Sources 1 (x), 2 (y), 3 (z); relays 4, 5, 6, 8;
/// receivers 7 (z), 9 (x), 10 (y), 11 (x).
inline Network digital_network() {
  return detail::make_network(
      {detail::source(1, "x"), detail::source(2, "y"), detail::source(3, "z"), detail::relay(4), detail::relay(5),
       detail::relay(6), detail::receiver(7, "z"), detail::relay(8), detail::receiver(9, "x"), detail::receiver(10, "y"),
       detail::receiver(11, "x")},
      {{1, 4}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 5}, {3, 6}, {3, 11}, {4, 7},
       {4, 8}, {5, 8}, {5, 9}, {6, 7}, {6, 9}, {6, 10}, {8, 10}, {8, 11}});
}

/// Solvable exactly when 1 + 1 is invertible (among Dedekind finite rings).
/// Sources 1 (a), 2 (b), 3 (c); relays 4..7; receivers 8 (c), 9 (b),
/// 10 (a), 11 (c).
inline Network analogue_network() {
  return detail::make_network(
      {detail::source(1, "a"), detail::source(2, "b"), detail::source(3, "c"), detail::relay(4), detail::relay(5),
       detail::relay(6), detail::relay(7), detail::receiver(8, "c"), detail::receiver(9, "b"), detail::receiver(10, "a"),
       detail::receiver(11, "c")},
      {{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 7}, {3, 4}, {3, 6}, {3, 7},
       {4, 8}, {4, 9}, {4, 10}, {5, 8}, {5, 11}, {6, 9}, {6, 11}, {7, 10}, {7, 11}});
}

/// Capacity 1/2: receiver 4 must cancel x, which it also hears directly.
/// Sources 1 (x), 2 (y); relay 3; receivers 4 (y), 5 (x).
inline Network simple_satellite() {
  return detail::make_network(
      {detail::source(1, "x"), detail::source(2, "y"), detail::relay(3), detail::receiver(4, "y"), detail::receiver(5, "x")},
      {{1, 3}, {2, 3}, {3, 4}, {3, 5}, {1, 4}});
}

/// Scalar assignment routing message t straight through relay t; source
/// k + 1 is silenced. Solves capacity_network(k) over every ring.
inline Assignment capacity_diagonal(int k, const Ring& ring) {
  const Network net = capacity_network(k);
  Assignment a{ring, 1, 1, {}};
  for (const auto& e : net.edges) {
    const bool on = e.from <= k + 1 ? e.from == e.to - (k + 1) : e.to - (2 * k + 1) == e.from - (k + 1);
    a.set(e, Matrix::scalar(from_int(ring, on ? 1 : 0)));
  }
  return a;
}

namespace detail {

inline CatalogEntry capacity_entry(int k) {
  const Network net = capacity_network(k);
  return {"capacity_" + std::to_string(k),
          "strengthened capacity condition, k = " + std::to_string(k),
          net,
          {{"diagonal", emit_assignment(capacity_diagonal(k, Ring::prime_field(2))), {{"GF2", true}, {"GF3", true}, {"Q", true}}}}};
}

inline std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;

  {
    const Network net = butterfly();
    Assignment wings = uniform_assignment(net, Ring::rationals());
    wings.set({1, 4}, Matrix::scalar(rational(-1)));
    wings.set({2, 5}, Matrix::scalar(rational(-1)));
    out.push_back({"butterfly",
                   "two senders, one satellite, two wings",
                   net,
                   {{"all-ones-GF2", uniform_text(net, "GF2"), {{"GF2", true}}},
                    {"all-ones-GF3", uniform_text(net, "GF3"), {{"GF3", false}, {"Q", false}}},
                    {"wings-minus-one-Q", emit_assignment(wings), {{"Q", true}, {"GF3", true}, {"GF2", true}}}}});
  }
  {
    const Network net = wingless_butterfly();
    const Ring gf2 = Ring::prime_field(2);
    Assignment a{gf2, 1, 1, {}};
    a.set({1, 3}, Matrix::scalar(one(gf2)));
    a.set({2, 3}, Matrix::scalar(zero(gf2)));
    a.set({3, 4}, Matrix::scalar(one(gf2)));
    a.set({3, 5}, Matrix::scalar(zero(gf2)));
    out.push_back({"wingless_butterfly",
                   "two messages through a single relay",
                   net,
                   {{"r1-d1-only", emit_assignment(a), {{"GF2", false}, {"Q", false}}}}});
  }
  out.push_back(capacity_entry(1));
  out.push_back(capacity_entry(2));
  {
    const Network net = digital_network();
    out.push_back({"digital_network",
                   "solvable over rings with 1+1=0 only",
                   net,
                   {{"all-ones-GF2", uniform_text(net, "GF2"), {{"GF2", true}, {"GF3", false}, {"Q", false}}},
                    {"digital-3-4", std::string(catalog_data::kDigital34), {{"GF2", true}, {"GF3", true}, {"Q", true}}}}});
  }
  {
    const Network net = analogue_network();
    out.push_back({"analogue_network",
                   "solvable over rings where 1+1 is invertible",
                   net,
                   {{"scalar-halves", std::string(catalog_data::kAnalogueScalar), {{"Q", true}, {"GF3", true}, {"GF5", true}}},
                    {"analogue-3-4", std::string(catalog_data::kAnalogue34), {{"GF2", true}, {"GF3", false}, {"Q", false}}}}});
  }
  out.push_back({"simple_satellite",
                 "one relay, one wing; capacity 1/2",
                 simple_satellite(),
                 {{"satellite-1-2", std::string(catalog_data::kSimpleSatellite12), {{"GF2", true}, {"GF3", true}, {"Q", true}}}}});
  return out;
}

}  // namespace detail

/// Every built-in entry, in listing order.
inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = detail::build_catalog();
  return entries;
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  return names;
}

/// Looks up a listed entry; "capacity_<k>" is accepted for any k >= 1.
inline CatalogEntry find_entry(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  const std::string prefix = "capacity_";
  if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
    std::int64_t k = 0;
    try {
      k = detail::parse_int64(std::string_view(name).substr(prefix.size()), "capacity index");
    } catch (const ParseError&) {
      k = 0;
    }
    if (k >= 1 && k <= 64) return detail::capacity_entry(static_cast<int>(k));
  }
  throw ParseError("no catalog entry named '" + name + "'");
}

/// Writes <name>.network.json and one <name>.<label>.assignment.json per
/// known assignment into `dir`, creating it if needed. Returns the paths.
inline std::vector<std::string> emit_entry(const CatalogEntry& entry, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir + "': " + ec.message());
  const std::filesystem::path base(dir);
  std::vector<std::string> written;
  const std::string net_path = (base / (entry.name + ".network.json")).string();
  write_file(net_path, emit_network(entry.network));
  written.push_back(net_path);
  for (const auto& k : entry.known) {
    const std::string p = (base / (entry.name + "." + k.label + ".assignment.json")).string();
    write_file(p, k.text);
    written.push_back(p);
  }
  return written;
}

}  // namespace ringnet
