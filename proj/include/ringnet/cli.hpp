#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ringnet/catalog.hpp"
#include "ringnet/error.hpp"
#include "ringnet/finite.hpp"
#include "ringnet/io.hpp"
#include "ringnet/network.hpp"
#include "ringnet/report.hpp"
#include "ringnet/rings.hpp"
#include "ringnet/search.hpp"

// ringnet command line.
//
// Exit codes: 0 the property holds / verification satisfied / solutions
// found, 1 refuted / unsatisfied / exhausted with no solution, 2 usage or
// input error, 3 budget exceeded.

namespace ringnet {

enum ExitCode : int { kHolds = 0, kRefuted = 1, kUsage = 2, kBudget = 3 };

namespace detail {

struct CliOptions {
  bool machine = false;
  bool verbose = false;

  std::string ring_spec;
  bool battery = false;
  std::uint64_t max_elems = FiniteRingTable::kDefaultCap;
  std::optional<std::size_t> k_stable;
  std::uint64_t max_pairs = 1'000'000;

  std::string network_path;
  std::string assignment_path;
  std::optional<std::string> ring_override;

  std::size_t max_solutions = 10;
  std::uint64_t max_nodes = 100'000'000;
  unsigned partitions = 1;
  std::size_t k = 1;
  std::size_t n = 1;
  std::vector<std::string> blocks;
  std::optional<std::string> out_dir;

  std::string catalog_name;
  std::string catalog_dir;
};

inline void print(std::ostream& out, const CliOptions& o, const std::string& text, const json& j) {
  if (o.machine) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

inline std::pair<int, int> parse_block(const std::string& s) {
  const auto arrow = s.find("<-");
  if (arrow == std::string::npos) throw ParseError("block '" + s + "' is not of the form <receiver><-<source>");
  return {static_cast<int>(parse_int64(std::string_view(s).substr(0, arrow), "block receiver")),
          static_cast<int>(parse_int64(std::string_view(s).substr(arrow + 2), "block source"))};
}

inline int cmd_ring_check(const CliOptions& o, std::ostream& out) {
  RingCheckResult r{parse_ring(o.ring_spec), 0, true, {}, std::nullopt, std::nullopt};
  const auto elems = enumerate(r.ring, o.max_elems);
  r.elements = elems.size();
  const FiniteRingTable t(r.ring, o.max_elems);
  for (FiniteRingTable::Index x = 0; x < t.size() && r.dedekind_finite; ++x) {
    for (FiniteRingTable::Index y = 0; y < t.size(); ++y) {
      if (t.mul(x, y) == t.one() && t.mul(y, x) != t.one()) {
        r.dedekind_finite = false;
        r.witness = {t.element(x), t.element(y)};
        break;
      }
    }
  }
  if (o.battery) r.battery = theorem1_battery(r.ring, o.max_elems);
  if (o.k_stable) r.k_stable = std::make_pair(*o.k_stable, is_k_stable(r.ring, *o.k_stable, o.max_pairs));
  print(out, o, render_text(r), render_json(r));
  bool holds = r.dedekind_finite;
  if (r.battery) holds = holds && r.battery->all_hold();
  if (r.k_stable) holds = holds && r.k_stable->second;
  return holds ? kHolds : kRefuted;
}

inline std::optional<Ring> override_ring(const CliOptions& o) {
  if (!o.ring_override) return std::nullopt;
  return parse_ring(*o.ring_override);
}

inline int cmd_verify(const CliOptions& o, std::ostream& out) {
  const Network net = parse_network(read_file(o.network_path));
  require_valid(net);
  const Assignment asg = parse_assignment(read_file(o.assignment_path), override_ring(o));
  const Verification v = verify(net, asg);
  print(out, o, render_text(net, asg, v), render_json(net, asg, v));
  return v.satisfied ? kHolds : kRefuted;
}

inline int cmd_transfer(const CliOptions& o, std::ostream& out) {
  const Network net = parse_network(read_file(o.network_path));
  require_valid(net);
  const Assignment asg = parse_assignment(read_file(o.assignment_path), override_ring(o));
  const TransferMatrix tm = transfer(net, asg);
  print(out, o, render_text(tm), render_json(tm));
  return kHolds;
}

inline int cmd_search(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const Network net = parse_network(read_file(o.network_path));
  require_valid(net);
  const Ring ring = parse_ring(o.ring_spec);
  if (o.partitions < 1) throw ParseError("--partitions must be >= 1");
  if (o.max_solutions < 1) throw ParseError("--max-solutions must be >= 1");
  const SearchLimits limits{o.max_solutions, o.max_nodes, o.partitions};

  SearchOutcome res;
  if (o.k == 1 && o.n == 1 && o.blocks.empty()) {
    res = search_scalar(net, ring, limits);
  } else {
    BlockSelection sel;
    for (const auto& b : o.blocks) sel.push_back(parse_block(b));
    if (sel.empty()) sel = all_blocks(net);
    res = search_system(net, ring, o.k, o.n, sel, limits);
  }
  print(out, o, render_text(res, ring), render_json(res, ring));
  if (o.out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*o.out_dir, ec);
    if (ec) throw Error("cannot create directory '" + *o.out_dir + "': " + ec.message());
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      const auto path = std::filesystem::path(*o.out_dir) / ("solution-" + std::to_string(i + 1) + ".assignment.json");
      write_file(path.string(), emit_assignment(res.solutions[i]));
    }
  }
  if (o.verbose) {
    err << "elapsed-ms: " << std::chrono::duration<double, std::milli>(res.elapsed).count() << "\n";
  }
  switch (res.verdict) {
    case Verdict::SolutionsFound:
      return kHolds;
    case Verdict::ExhaustedNone:
      return kRefuted;
    case Verdict::BudgetExceeded:
      return kBudget;
  }
  return kUsage;
}

inline int cmd_catalog_list(const CliOptions& o, std::ostream& out) {
  std::ostringstream text;
  json arr = json::array();
  for (const auto& e : catalog()) {
    text << e.name << "  " << e.network.nodes.size() << " nodes, " << e.network.edges.size() << " edges  " << e.description;
    json labels = json::array();
    for (const auto& k : e.known) labels.push_back(k.label);
    if (!e.known.empty()) {
      text << "  [";
      for (std::size_t i = 0; i < e.known.size(); ++i) text << (i ? ", " : "") << e.known[i].label;
      text << "]";
    }
    text << "\n";
    arr.push_back({{"name", e.name},
                   {"nodes", e.network.nodes.size()},
                   {"edges", e.network.edges.size()},
                   {"description", e.description},
                   {"assignments", labels}});
  }
  print(out, o, text.str(), json{{"command", "catalog list"}, {"entries", arr}});
  return kHolds;
}

inline int cmd_catalog_emit(const CliOptions& o, std::ostream& out) {
  const CatalogEntry entry = find_entry(o.catalog_name);
  const auto written = emit_entry(entry, o.catalog_dir);
  std::string text;
  for (const auto& p : written) text += "wrote " + p + "\n";
  print(out, o, text, json{{"command", "catalog emit"}, {"name", entry.name}, {"files", written}});
  return kHolds;
}

}  // namespace detail

/// Runs one invocation and returns its exit code. Reports go to `out`,
/// diagnostics and timing to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  detail::CliOptions o;
  CLI::App app{"Exact linear network coding over rings"};
  app.name("ringnet");
  app.require_subcommand(1);
  app.add_flag("--machine", o.machine, "Machine-readable JSON report");
  app.add_flag("--verbose", o.verbose, "Timing information on stderr");

  auto* ring_check = app.add_subcommand("ring-check", "Dedekind finiteness and related conditions of a finite ring");
  ring_check->add_option("ring", o.ring_spec, "Ring spec, e.g. GF2, Z6, M2(GF2)")->required();
  ring_check->add_flag("--battery", o.battery, "Evaluate all nine equivalent conditions");
  ring_check->add_option("--max-elems", o.max_elems, "Largest ring to enumerate")->check(CLI::PositiveNumber);
  ring_check->add_option("--k-stable", o.k_stable, "Also decide whether M_k(R) is Dedekind finite")->check(CLI::PositiveNumber);
  ring_check->add_option("--max-pairs", o.max_pairs, "Pair budget for --k-stable")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Check an assignment against every demand");
  verify_cmd->add_option("network", o.network_path, "Network file")->required();
  verify_cmd->add_option("assignment", o.assignment_path, "Assignment file")->required();
  verify_cmd->add_option("--ring", o.ring_override, "Re-read the assignment literals over this ring");

  auto* transfer_cmd = app.add_subcommand("transfer", "Print the transfer matrix of an assignment");
  transfer_cmd->add_option("network", o.network_path, "Network file")->required();
  transfer_cmd->add_option("assignment", o.assignment_path, "Assignment file")->required();
  transfer_cmd->add_option("--ring", o.ring_override, "Re-read the assignment literals over this ring");

  auto* search_cmd = app.add_subcommand("search", "Exhaustive search for a solution over a finite ring");
  search_cmd->add_option("network", o.network_path, "Network file")->required();
  search_cmd->add_option("ring", o.ring_spec, "Ring spec")->required();
  search_cmd->add_option("--max-solutions", o.max_solutions, "Stop after this many solutions");
  search_cmd->add_option("--max-nodes", o.max_nodes, "Search-tree node budget");
  search_cmd->add_option("--partitions", o.partitions, "Split the first edge's values across this many threads");
  search_cmd->add_option("--k", o.k, "Message dimension")->check(CLI::PositiveNumber);
  search_cmd->add_option("--n", o.n, "Relay dimension")->check(CLI::PositiveNumber);
  search_cmd->add_option("--block", o.blocks, "Restrict to a demand block <receiver><-<source> (repeatable)");
  search_cmd->add_option("--out-dir", o.out_dir, "Write each solution as an assignment file here");

  auto* catalog_cmd = app.add_subcommand("catalog", "Built-in networks and solutions");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "List catalog entries");
  auto* emit_cmd = catalog_cmd->add_subcommand("emit", "Write an entry's network and assignment files");
  emit_cmd->add_option("name", o.catalog_name, "Entry name")->required();
  emit_cmd->add_option("dir", o.catalog_dir, "Output directory")->required();

  for (auto* sub : {ring_check, verify_cmd, transfer_cmd, search_cmd, catalog_cmd, list_cmd, emit_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (ring_check->parsed()) return detail::cmd_ring_check(o, out);
    if (verify_cmd->parsed()) return detail::cmd_verify(o, out);
    if (transfer_cmd->parsed()) return detail::cmd_transfer(o, out);
    if (search_cmd->parsed()) return detail::cmd_search(o, out, err);
    if (list_cmd->parsed()) return detail::cmd_catalog_list(o, out);
    if (emit_cmd->parsed()) return detail::cmd_catalog_emit(o, out);
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace ringnet
