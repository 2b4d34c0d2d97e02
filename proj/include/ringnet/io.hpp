#pragma once

#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ringnet/element.hpp"
#include "ringnet/error.hpp"
#include "ringnet/matrix.hpp"
#include "ringnet/network.hpp"
#include "ringnet/rings.hpp"

// File formats
//
// Network file:
//   {"nodes": [{"id": 1, "kind": "source", "message": "x"}, ...],
//    "edges": [{"from": 1, "to": 4}, ...]}
//
// Assignment file:
//   {"ring": "GF2", "k": 3, "n": 4,
//    "entries": {"1->4": [[1, 0, 0], ...], ...}}
//
// Element literals: decimal integers for Z<m> and GF<p>; integers or "a/b"
// strings for Q; nested arrays for M<k>(R); arrays of [i, j, c] triples
// (c * y^i x^j) for J(F).
//
// emit_* output is canonical: parse followed by emit reproduces it byte for byte.

namespace ringnet {

using json = nlohmann::json;

namespace detail {

inline json parse_json(std::string_view text, const char* what) {
  std::vector<std::set<std::string>> keys;
  const json::parser_callback_t reject_duplicates = [&](int, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::object_start) {
      keys.emplace_back();
    } else if (event == json::parse_event_t::object_end) {
      keys.pop_back();
    } else if (event == json::parse_event_t::key && !keys.back().insert(parsed.get<std::string>()).second) {
      throw ParseError(std::string(what) + ": duplicate key '" + parsed.get<std::string>() + "'");
    }
    return true;
  };
  try {
    return json::parse(text, reject_duplicates);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

inline std::int64_t as_int(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) throw ParseError(ctx + ": expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

inline std::int64_t parse_int64(std::string_view s, const std::string& ctx) {
  if (s.empty()) throw ParseError(ctx + ": empty integer");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw ParseError(ctx + ": bad integer '" + std::string(s) + "'");
  std::int64_t v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError(ctx + ": bad integer '" + std::string(s) + "'");
    if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s[i] - '0', &v)) {
      throw ParseError(ctx + ": integer out of range '" + std::string(s) + "'");
    }
  }
  return negative ? -v : v;
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError(ctx + ": unknown field '" + it.key() + "'");
  }
}

inline const json& require_key(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(ctx + ": missing field '" + key + "'");
  return *it;
}

inline std::string quote(const std::string& s) { return json(s).dump(); }

/// Inverse of a unit of Z<m> or GF<p> by extended Euclid.
inline Element unit_inverse(const Element& a) {
  const std::int64_t m = a.ring().modulus();
  std::int64_t t0 = 0, t1 = 1, r0 = m, r1 = a.residue();
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
  }
  if (r0 != 1) throw Error("element " + std::to_string(a.residue()) + " is not a unit of " + a.ring().to_string());
  return from_int(a.ring(), t0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Element and matrix literals

inline Element parse_element(const json& j, const Ring& r) {
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField: {
      if (!j.is_string()) return from_int(r, detail::as_int(j, "element of " + r.to_string()));
      // "a/b" reads as a * b^-1 when b is a unit mod m.
      const std::string s = j.get<std::string>();
      const auto slash = s.find('/');
      const Element num = from_int(r, detail::parse_int64(std::string_view(s).substr(0, slash), "residue literal"));
      if (slash == std::string::npos) return num;
      const std::int64_t den = detail::parse_int64(std::string_view(s).substr(slash + 1), "residue literal");
      if (std::gcd(detail::mod_reduce(den, r.modulus()), r.modulus()) != 1) {
        throw ParseError("literal " + s + ": " + std::to_string(den) + " is not invertible in " + r.to_string());
      }
      return mul(num, detail::unit_inverse(from_int(r, den)));
    }
    case RingKind::Rationals: {
      if (j.is_number_integer()) return Element(r, Rational(j.get<std::int64_t>()));
      if (!j.is_string()) throw ParseError("rational literal must be an integer or \"a/b\" string, got " + j.dump());
      const std::string s = j.get<std::string>();
      const auto slash = s.find('/');
      if (slash == std::string::npos) return Element(r, Rational(detail::parse_int64(s, "rational")));
      const std::int64_t num = detail::parse_int64(std::string_view(s).substr(0, slash), "rational numerator");
      const std::int64_t den = detail::parse_int64(std::string_view(s).substr(slash + 1), "rational denominator");
      if (den == 0) throw ParseError("rational literal with zero denominator: " + s);
      return Element(r, Rational(num, den));
    }
    case RingKind::MatrixRing: {
      const std::size_t k = r.dim();
      if (!j.is_array() || j.size() != k) throw ParseError("element of " + r.to_string() + " must be a " + std::to_string(k) + "x" + std::to_string(k) + " nested array");
      Element::Entries e;
      e.reserve(k * k);
      for (const auto& row : j) {
        if (!row.is_array() || row.size() != k) throw ParseError("row of " + r.to_string() + " element must have " + std::to_string(k) + " entries");
        for (const auto& x : row) e.push_back(parse_element(x, r.base()));
      }
      return Element(r, std::move(e));
    }
    case RingKind::Jacobson: {
      if (!j.is_array()) throw ParseError("element of " + r.to_string() + " must be an array of [i, j, c] triples");
      Element::Terms t;
      for (const auto& term : j) {
        if (!term.is_array() || term.size() != 3) throw ParseError("Jacobson term must be [i, j, c], got " + term.dump());
        const std::int64_t i = detail::as_int(term[0], "Jacobson y-degree");
        const std::int64_t d = detail::as_int(term[1], "Jacobson x-degree");
        if (i < 0 || d < 0) throw ParseError("Jacobson degrees must be >= 0");
        t.push_back(JacobsonTerm{static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(d), parse_element(term[2], r.base())});
      }
      return Element(r, std::move(t));
    }
  }
  throw ParseError("unreachable ring kind");
}

inline Element parse_element(std::string_view text, const Ring& r) {
  return parse_element(detail::parse_json(text, "element literal"), r);
}
inline Element parse_element(const std::string& text, const Ring& r) { return parse_element(std::string_view(text), r); }
inline Element parse_element(const char* text, const Ring& r) { return parse_element(std::string_view(text), r); }

/// Nested rows of element literals.
inline Matrix parse_matrix(const json& j, const Ring& r) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix literal must be a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<Element> e;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw ParseError("matrix row must be a non-empty array");
    if (cols == 0) cols = row.size();
    if (row.size() != cols) throw ParseError("ragged matrix literal");
    for (const auto& x : row) e.push_back(parse_element(x, r));
  }
  return Matrix(r, rows, cols, std::move(e));
}

// ---------------------------------------------------------------------------
// Networks

inline NodeKind parse_node_kind(const std::string& s) {
  if (s == "source") return NodeKind::Source;
  if (s == "relay") return NodeKind::Relay;
  if (s == "receiver") return NodeKind::Receiver;
  throw ParseError("unknown node kind '" + s + "'");
}

inline Network parse_network(std::string_view text) {
  const json doc = detail::parse_json(text, "network file");
  if (!doc.is_object()) throw ParseError("network file must be an object");
  detail::reject_unknown_keys(doc, {"nodes", "edges"}, "network file");
  Network net;
  const json& nodes = detail::require_key(doc, "nodes", "network file");
  if (!nodes.is_array()) throw ParseError("network file: 'nodes' must be an array");
  for (const auto& n : nodes) {
    if (!n.is_object()) throw ParseError("network node must be an object");
    detail::reject_unknown_keys(n, {"id", "kind", "message", "demands"}, "network node");
    Node node;
    node.id = static_cast<int>(detail::as_int(detail::require_key(n, "id", "network node"), "node id"));
    const json& kind = detail::require_key(n, "kind", "network node");
    if (!kind.is_string()) throw ParseError("node kind must be a string");
    node.kind = parse_node_kind(kind.get<std::string>());
    const std::string ctx = "node " + std::to_string(node.id);
    if (n.contains("message")) {
      if (node.kind != NodeKind::Source) throw ParseError(ctx + ": only sources carry a message");
      if (!n["message"].is_string()) throw ParseError(ctx + ": message must be a string");
      node.message = n["message"].get<std::string>();
    }
    if (n.contains("demands")) {
      if (node.kind != NodeKind::Receiver) throw ParseError(ctx + ": only receivers carry a demand");
      if (!n["demands"].is_string()) throw ParseError(ctx + ": demands must be a string");
      node.demands = n["demands"].get<std::string>();
    }
    net.nodes.push_back(std::move(node));
  }
  const json& edges = detail::require_key(doc, "edges", "network file");
  if (!edges.is_array()) throw ParseError("network file: 'edges' must be an array");
  for (const auto& e : edges) {
    if (!e.is_object()) throw ParseError("network edge must be an object");
    detail::reject_unknown_keys(e, {"from", "to"}, "network edge");
    net.edges.push_back(Edge{static_cast<int>(detail::as_int(detail::require_key(e, "from", "edge"), "edge tail")),
                             static_cast<int>(detail::as_int(detail::require_key(e, "to", "edge"), "edge head"))});
  }
  return net;
}

inline std::string emit_network(const Network& net) {
  std::ostringstream out;
  out << "{\n  \"nodes\": [";
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const Node& n = net.nodes[i];
    out << (i ? ",\n    " : "\n    ") << "{\"id\": " << n.id << ", \"kind\": \"" << to_string(n.kind) << "\"";
    if (n.kind == NodeKind::Source && !n.message.empty()) out << ", \"message\": " << detail::quote(n.message);
    if (n.kind == NodeKind::Receiver && !n.demands.empty()) out << ", \"demands\": " << detail::quote(n.demands);
    out << "}";
  }
  out << (net.nodes.empty() ? "],\n" : "\n  ],\n");
  out << "  \"edges\": [";
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << "{\"from\": " << net.edges[i].from << ", \"to\": " << net.edges[i].to << "}";
  }
  out << (net.edges.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

// ---------------------------------------------------------------------------
// Assignments

inline Edge parse_edge_key(const std::string& key) {
  const auto arrow = key.find("->");
  if (arrow == std::string::npos) throw ParseError("assignment key '" + key + "' is not of the form \"<from>-><to>\"");
  const auto from = detail::parse_int64(std::string_view(key).substr(0, arrow), "edge key");
  const auto to = detail::parse_int64(std::string_view(key).substr(arrow + 2), "edge key");
  return Edge{static_cast<int>(from), static_cast<int>(to)};
}

/// Parses an assignment file. `ring_override` re-reads every literal in a
/// different ring, e.g. to check a 0/+1/-1 solution over both GF2 and Q.
inline Assignment parse_assignment(std::string_view text, const std::optional<Ring>& ring_override = std::nullopt) {
  const json doc = detail::parse_json(text, "assignment file");
  if (!doc.is_object()) throw ParseError("assignment file must be an object");
  detail::reject_unknown_keys(doc, {"ring", "k", "n", "entries"}, "assignment file");
  const json& ring_spec = detail::require_key(doc, "ring", "assignment file");
  if (!ring_spec.is_string()) throw ParseError("assignment ring must be a spec string");
  const Ring ring = ring_override ? *ring_override : parse_ring(ring_spec.get<std::string>());
  const std::int64_t k = detail::as_int(detail::require_key(doc, "k", "assignment file"), "k");
  const std::int64_t n = detail::as_int(detail::require_key(doc, "n", "assignment file"), "n");
  if (k < 1 || n < 1) throw ParseError("assignment needs k, n >= 1");
  Assignment asg{ring, static_cast<std::size_t>(k), static_cast<std::size_t>(n), {}};
  const json& entries = detail::require_key(doc, "entries", "assignment file");
  if (!entries.is_object()) throw ParseError("assignment entries must be an object keyed by \"<from>-><to>\"");
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    const Edge e = parse_edge_key(it.key());
    if (asg.entries.count(e)) throw ParseError("assignment repeats edge " + it.key());
    asg.set(e, parse_matrix(it.value(), ring));
  }
  return asg;
}

inline std::string emit_assignment(const Assignment& asg) {
  std::ostringstream out;
  out << "{\n  \"ring\": " << detail::quote(asg.ring.to_string()) << ",\n  \"k\": " << asg.k << ",\n  \"n\": " << asg.n
      << ",\n  \"entries\": {";
  bool first = true;
  for (const auto& [e, m] : asg.entries) {
    out << (first ? "\n    " : ",\n    ") << detail::quote(to_string(e)) << ": " << format_matrix(m, true);
    first = false;
  }
  out << (asg.entries.empty() ? "}\n}\n" : "\n  }\n}\n");
  return out.str();
}

// ---------------------------------------------------------------------------
// File helpers

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace ringnet
