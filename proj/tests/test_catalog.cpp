#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "ringnet/catalog.hpp"
#include "support.hpp"

using namespace ringnet;

namespace {

using Monomial = std::vector<std::pair<int, int>>;  // factors as printed, leftmost first
using Path = std::vector<Edge>;

struct Equation {
  int source;
  int receiver;
  std::vector<Monomial> monomials;
};

// Digital network: r_{a,b} is the edge a->b, the last edge printed first.
Path digital_path(const Monomial& m) {
  Path p;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    // r_{6,2} in the y->o_y equation is the edge 2->6.
    if (it->first == 6 && it->second == 2) p.push_back({2, 6});
    else p.push_back({it->first, it->second});
  }
  return p;
}

// Analogue network: r_{a,b} is the edge b->a.
Path analogue_path(const Monomial& m) {
  Path p;
  for (auto it = m.rbegin(); it != m.rend(); ++it) p.push_back({it->second, it->first});
  return p;
}

// i_x, i_y, i_z = 1, 2, 3; o_x = 9, o_y = 10, o_z = 7, o-bar_x = 11.
const std::vector<Equation> kDigital = {
    {1, 9, {{{6, 9}, {1, 6}}}},
    {1, 10, {{{8, 10}, {4, 8}, {1, 4}}, {{6, 10}, {1, 6}}}},
    {1, 7, {{{4, 7}, {1, 4}}, {{6, 7}, {1, 6}}}},
    {1, 11, {{{8, 11}, {4, 8}, {1, 4}}}},
    {2, 9, {{{5, 9}, {2, 5}}, {{6, 9}, {2, 6}}}},
    {2, 10, {{{8, 10}, {4, 8}, {2, 4}}, {{8, 10}, {5, 8}, {2, 5}}, {{6, 10}, {6, 2}}}},
    {2, 7, {{{4, 7}, {2, 4}}, {{6, 7}, {2, 6}}}},
    {2, 11, {{{8, 11}, {4, 8}, {2, 4}}, {{8, 11}, {5, 8}, {2, 5}}}},
    {3, 9, {{{5, 9}, {3, 5}}, {{6, 9}, {3, 6}}}},
    {3, 10, {{{6, 10}, {3, 6}}, {{8, 10}, {5, 8}, {3, 5}}}},
    {3, 7, {{{6, 7}, {3, 6}}}},
    {3, 11, {{{8, 11}, {5, 8}, {3, 5}}, {{3, 11}}}},
};

// a, b, c = 1, 2, 3; receivers a -> 10, b -> 9, c_l -> 8, c_r -> 11.
const std::vector<Equation> kAnalogue = {
    {1, 10, {{{10, 4}, {4, 1}}}},
    {2, 9, {{{9, 4}, {4, 2}}}},
    {3, 8, {{{8, 4}, {4, 3}}}},
    {3, 11, {{{11, 7}, {7, 3}}, {{11, 6}, {6, 3}}}},
    {1, 9, {{{9, 6}, {6, 1}}, {{9, 4}, {4, 1}}}},
    {1, 8, {{{8, 5}, {5, 1}}, {{8, 4}, {4, 1}}}},
    {1, 11, {{{11, 6}, {6, 1}}, {{11, 5}, {5, 1}}}},
    {2, 10, {{{10, 7}, {7, 2}}, {{10, 4}, {4, 2}}}},
    {2, 8, {{{8, 5}, {5, 2}}, {{8, 4}, {4, 2}}}},
    {2, 11, {{{11, 7}, {7, 2}}, {{11, 5}, {5, 2}}}},
    {3, 10, {{{10, 7}, {7, 3}}, {{10, 4}, {4, 3}}}},
    {3, 9, {{{9, 6}, {6, 3}}, {{9, 4}, {4, 3}}}},
};

void expect_paths_match(const Network& net, const std::vector<Equation>& eqs, Path (*to_path)(const Monomial&)) {
  std::set<std::pair<int, int>> seen;
  std::set<Edge> used;
  for (const auto& eq : eqs) {
    std::set<Path> want;
    for (const auto& m : eq.monomials) want.insert(to_path(m));
    const auto got_list = enumerate_paths(net, eq.source, eq.receiver);
    const std::set<Path> got(got_list.begin(), got_list.end());
    EXPECT_EQ(got_list.size(), eq.monomials.size()) << eq.source << "->" << eq.receiver;
    EXPECT_EQ(got, want) << eq.source << "->" << eq.receiver;
    seen.insert({eq.source, eq.receiver});
    for (const auto& p : want) used.insert(p.begin(), p.end());
  }
  EXPECT_EQ(seen.size(), 12u);
  EXPECT_EQ(used, std::set<Edge>(net.edges.begin(), net.edges.end()));
}

}  // namespace

TEST(Catalog, ListsAtLeastSixEntries) {
  EXPECT_GE(catalog().size(), 6u);
  for (const char* n : {"butterfly", "wingless_butterfly", "capacity_1", "capacity_2", "digital_network",
                        "analogue_network", "simple_satellite"}) {
    EXPECT_NO_THROW(find_entry(n)) << n;
  }
}

TEST(Catalog, EveryKnownAssignmentMeetsItsExpectations) {
  std::size_t checked = 0;
  for (const auto& e : catalog()) {
    for (const auto& k : e.known) {
      for (const auto& [spec, expected] : k.expectations) {
        const Assignment a = k.load(parse_ring(spec));
        EXPECT_EQ(verify(e.network, a).satisfied, expected) << e.name << " " << k.label << " over " << spec;
        EXPECT_EQ(testing_support::oracle_satisfied(e.network, a), expected) << e.name << " " << k.label << " over " << spec;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 25u);
}

TEST(Catalog, DigitalPathListsMatchEquations) { expect_paths_match(digital_network(), kDigital, digital_path); }

TEST(Catalog, AnaloguePathListsMatchEquations) { expect_paths_match(analogue_network(), kAnalogue, analogue_path); }

TEST(Catalog, DigitalShape) {
  const Network net = digital_network();
  EXPECT_EQ(net.edges.size(), 17u);
  EXPECT_EQ(net.sources().size(), 3u);
  EXPECT_EQ(net.receivers().size(), 4u);
  EXPECT_EQ(enumerate_paths(net, 2, 10).size(), 3u);
}

TEST(Catalog, AnalogueShape) {
  const Network net = analogue_network();
  EXPECT_EQ(net.edges.size(), 18u);
  EXPECT_EQ(net.sources().size(), 3u);
  EXPECT_EQ(net.receivers().size(), 4u);
}

TEST(Catalog, CapacityNetworkFamily) {
  for (int k = 1; k <= 6; ++k) {
    const Network net = capacity_network(k);
    EXPECT_EQ(net.edges.size(), static_cast<std::size_t>((k + 1) * k + k * k)) << k;
    EXPECT_TRUE(validate(net).empty()) << k;
    EXPECT_TRUE(verify(net, capacity_diagonal(k, parse_ring("GF3"))).satisfied) << k;
  }
  const CatalogEntry e = find_entry("capacity_5");
  EXPECT_EQ(e.network, capacity_network(5));
  EXPECT_THROW(find_entry("capacity_0"), ParseError);
  EXPECT_THROW(find_entry("capacity_x"), ParseError);
  EXPECT_THROW(find_entry("nosuch"), ParseError);
}

TEST(Catalog, SimpleSatelliteTransfer) {
  const Network net = simple_satellite();
  const Assignment a = parse_assignment(catalog_data::kSimpleSatellite12);
  EXPECT_EQ(a.k, 1u);
  EXPECT_EQ(a.n, 2u);
  const TransferMatrix tm = transfer(net, a);
  EXPECT_TRUE(tm.at(4, 1).is_zero());
  EXPECT_TRUE(tm.at(4, 2).is_identity());
  EXPECT_TRUE(tm.at(5, 1).is_identity());
  EXPECT_TRUE(tm.at(5, 2).is_zero());
}

TEST(Catalog, FractionalSolutionsCertifyThreeQuarters) {
  const Assignment d = parse_assignment(catalog_data::kDigital34);
  EXPECT_EQ(d.k, 3u);
  EXPECT_EQ(d.n, 4u);
  EXPECT_EQ(d.entries.size(), 17u);
  const Assignment a = parse_assignment(catalog_data::kAnalogue34);
  EXPECT_EQ(a.k, 3u);
  EXPECT_EQ(a.n, 4u);
  EXPECT_EQ(a.entries.size(), 18u);
  // The digital matrices do not fit the analogue network.
  EXPECT_THROW(verify(analogue_network(), d), ShapeError);
}

TEST(Catalog, EmitWritesNetworkAndAssignments) {
  const auto dir = std::filesystem::temp_directory_path() / "ringnet_catalog_emit";
  std::filesystem::remove_all(dir);
  const auto written = emit_entry(find_entry("digital_network"), dir.string());
  ASSERT_EQ(written.size(), 3u);
  EXPECT_TRUE(std::filesystem::exists(dir / "digital_network.network.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "digital_network.all-ones-GF2.assignment.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "digital_network.digital-3-4.assignment.json"));
  const Network net = parse_network(read_file((dir / "digital_network.network.json").string()));
  EXPECT_EQ(net, digital_network());
  const Assignment a = parse_assignment(read_file((dir / "digital_network.digital-3-4.assignment.json").string()), parse_ring("GF2"));
  EXPECT_TRUE(verify(net, a).satisfied);
  std::filesystem::remove_all(dir);
}
