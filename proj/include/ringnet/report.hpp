#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ringnet/finite.hpp"
#include "ringnet/io.hpp"
#include "ringnet/matrix.hpp"
#include "ringnet/network.hpp"
#include "ringnet/search.hpp"

// Plain-text and JSON renderings of command results. Both carry the same
// fields; neither contains timestamps.

namespace ringnet {

namespace detail {

inline json matrix_json(const Matrix& m) { return json::parse(format_matrix(m, true)); }

inline std::string block_name(int receiver, int source) { return std::to_string(receiver) + "<-" + std::to_string(source); }

inline std::string witness_text(const std::vector<Element>& w) {
  static const char* names[] = {"x", "y", "z"};
  std::string out;
  for (std::size_t i = 0; i < w.size() && i < 3; ++i) {
    if (i) out += ", ";
    out += std::string(names[i]) + "=" + format_element(w[i]);
  }
  return out;
}

inline json witness_json(const std::vector<Element>& w) {
  static const char* names[] = {"x", "y", "z"};
  json j = json::object();
  for (std::size_t i = 0; i < w.size() && i < 3; ++i) j[names[i]] = json::parse(format_element(w[i], true));
  return j;
}

/// Reduced k/n, e.g. "3/4" or "1".
inline std::string rate_string(std::size_t k, std::size_t n) {
  const std::size_t g = std::gcd(k, n);
  return n / g == 1 ? std::to_string(k / g) : std::to_string(k / g) + "/" + std::to_string(n / g);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ring-check

struct RingCheckResult {
  Ring ring;
  std::uint64_t elements = 0;
  bool dedekind_finite = true;
  std::vector<Element> witness;  // x, y with xy = 1 != yx
  std::optional<BatteryReport> battery;
  std::optional<std::pair<std::size_t, bool>> k_stable;
};

inline std::string render_text(const RingCheckResult& r) {
  std::ostringstream out;
  out << "ring: " << r.ring.to_string() << "\n";
  out << "elements: " << r.elements << "\n";
  out << "dedekind-finite: " << (r.dedekind_finite ? "true" : "false") << "\n";
  if (!r.dedekind_finite) out << "  counterexample: " << detail::witness_text(r.witness) << "\n";
  if (r.battery) {
    for (const auto& c : r.battery->conditions) {
      out << "condition " << c.number << ": " << (c.holds ? "true " : "false") << "  " << c.statement << "\n";
      if (!c.holds) out << "  counterexample: " << detail::witness_text(c.counterexample) << "\n";
    }
    out << "conditions-agree: " << (r.battery->all_agree() ? "true" : "false") << "\n";
  }
  if (r.k_stable) out << r.k_stable->first << "-stable: " << (r.k_stable->second ? "true" : "false") << "\n";
  return out.str();
}

inline json render_json(const RingCheckResult& r) {
  json j;
  j["command"] = "ring-check";
  j["ring"] = r.ring.to_string();
  j["elements"] = r.elements;
  j["dedekind_finite"] = r.dedekind_finite;
  if (!r.dedekind_finite) j["counterexample"] = detail::witness_json(r.witness);
  if (r.battery) {
    json conds = json::array();
    for (const auto& c : r.battery->conditions) {
      json cj{{"number", c.number}, {"statement", c.statement}, {"holds", c.holds}};
      if (!c.holds) cj["counterexample"] = detail::witness_json(c.counterexample);
      conds.push_back(std::move(cj));
    }
    j["battery"] = std::move(conds);
    j["conditions_agree"] = r.battery->all_agree();
  }
  if (r.k_stable) j["k_stable"] = {{"k", r.k_stable->first}, {"holds", r.k_stable->second}};
  return j;
}

// ---------------------------------------------------------------------------
// verify

inline std::string render_text(const Network& net, const Assignment& asg, const Verification& v) {
  std::ostringstream out;
  out << "network: " << net.nodes.size() << " nodes, " << net.edges.size() << " edges\n";
  out << "assignment: ring " << asg.ring.to_string() << ", k=" << asg.k << ", n=" << asg.n << "\n";
  for (const auto& b : v.residuals) {
    out << "block " << detail::block_name(b.receiver, b.source) << " expect " << (b.demanded ? "identity" : "zero")
        << ": " << (b.ok() ? "ok" : "FAIL") << "  block " << format_matrix(b.block) << "  residual "
        << format_matrix(b.residual) << "\n";
  }
  out << "verdict: " << (v.satisfied ? "satisfied" : "unsatisfied") << "\n";
  if (v.satisfied) out << "lower-bound: capacity >= " << detail::rate_string(asg.k, asg.n) << " over " << asg.ring.to_string() << "\n";
  return out.str();
}

inline json render_json(const Network& net, const Assignment& asg, const Verification& v) {
  json j;
  j["command"] = "verify";
  j["nodes"] = net.nodes.size();
  j["edges"] = net.edges.size();
  j["ring"] = asg.ring.to_string();
  j["k"] = asg.k;
  j["n"] = asg.n;
  json blocks = json::array();
  for (const auto& b : v.residuals) {
    blocks.push_back({{"receiver", b.receiver},
                      {"source", b.source},
                      {"expect", b.demanded ? "identity" : "zero"},
                      {"ok", b.ok()},
                      {"block", detail::matrix_json(b.block)},
                      {"residual", detail::matrix_json(b.residual)}});
  }
  j["blocks"] = std::move(blocks);
  j["verdict"] = v.satisfied ? "satisfied" : "unsatisfied";
  if (v.satisfied) j["capacity_lower_bound"] = detail::rate_string(asg.k, asg.n);
  return j;
}

// ---------------------------------------------------------------------------
// transfer

/// The full (receivers * k) x (sources * k) matrix assembled from the blocks.
inline Matrix assemble(const TransferMatrix& tm) {
  const Matrix& first = tm.blocks.front();
  const std::size_t k = first.rows();
  Matrix m = Matrix::zeros(first.ring(), tm.receivers.size() * k, tm.sources.size() * k);
  for (std::size_t ti = 0; ti < tm.receivers.size(); ++ti) {
    for (std::size_t si = 0; si < tm.sources.size(); ++si) {
      const Matrix& b = tm.block(ti, si);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m.set(ti * k + i, si * k + j, b(i, j));
      }
    }
  }
  return m;
}

inline std::string render_text(const TransferMatrix& tm) {
  std::ostringstream out;
  auto ids = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
  };
  out << "receivers: " << ids(tm.receivers) << "\n";
  out << "sources: " << ids(tm.sources) << "\n";
  for (std::size_t ti = 0; ti < tm.receivers.size(); ++ti) {
    for (std::size_t si = 0; si < tm.sources.size(); ++si) {
      out << "block " << detail::block_name(tm.receivers[ti], tm.sources[si]) << ": " << format_matrix(tm.block(ti, si)) << "\n";
    }
  }
  if (!tm.blocks.empty()) out << "matrix: " << format_matrix(assemble(tm)) << "\n";
  return out.str();
}

inline json render_json(const TransferMatrix& tm) {
  json j;
  j["command"] = "transfer";
  j["receivers"] = tm.receivers;
  j["sources"] = tm.sources;
  json blocks = json::array();
  for (std::size_t ti = 0; ti < tm.receivers.size(); ++ti) {
    for (std::size_t si = 0; si < tm.sources.size(); ++si) {
      blocks.push_back({{"receiver", tm.receivers[ti]}, {"source", tm.sources[si]}, {"block", detail::matrix_json(tm.block(ti, si))}});
    }
  }
  j["blocks"] = std::move(blocks);
  if (!tm.blocks.empty()) j["matrix"] = detail::matrix_json(assemble(tm));
  return j;
}

// ---------------------------------------------------------------------------
// search

inline std::string render_text(const SearchOutcome& o, const Ring& ring) {
  std::ostringstream out;
  out << "ring: " << ring.to_string() << "\n";
  out << "variables: " << o.variables << "\n";
  out << "partitions: " << o.partitions << "\n";
  out << "verdict: " << to_string(o.verdict) << "\n";
  out << "nodes-visited: " << o.counters.nodes_visited << "\n";
  out << "pruned: " << o.counters.pruned << "\n";
  out << "expanded: " << o.counters.expanded << "\n";
  out << "leaves: " << o.counters.leaves << "\n";
  out << "children-owed: " << o.counters.children_owed << "\n";
  out << "complete: " << (o.complete() ? "true" : "false") << "\n";
  out << "solutions: " << o.solutions.size() << "\n";
  for (std::size_t i = 0; i < o.solutions.size(); ++i) {
    out << "solution " << (i + 1) << ":\n" << emit_assignment(o.solutions[i]);
  }
  return out.str();
}

inline json render_json(const SearchOutcome& o, const Ring& ring) {
  json j;
  j["command"] = "search";
  j["ring"] = ring.to_string();
  j["variables"] = o.variables;
  j["partitions"] = o.partitions;
  j["verdict"] = to_string(o.verdict);
  j["counters"] = {{"nodes_visited", o.counters.nodes_visited},
                   {"pruned", o.counters.pruned},
                   {"expanded", o.counters.expanded},
                   {"leaves", o.counters.leaves},
                   {"children_owed", o.counters.children_owed}};
  j["complete"] = o.complete();
  json sols = json::array();
  for (const auto& s : o.solutions) sols.push_back(json::parse(emit_assignment(s)));
  j["solutions"] = std::move(sols);
  return j;
}

}  // namespace ringnet
