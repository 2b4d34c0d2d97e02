#include <gtest/gtest.h>

#include <algorithm>

#include "ringnet/catalog.hpp"
#include "ringnet/io.hpp"
#include "ringnet/network.hpp"
#include "support.hpp"

using namespace ringnet;

namespace {

bool has_code(const std::vector<Violation>& v, Violation::Code c) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.code == c; });
}

Assignment scalars(const Network& net, const char* ring, std::initializer_list<std::pair<Edge, std::int64_t>> values) {
  Assignment a = uniform_assignment(net, parse_ring(ring), 0);
  for (const auto& [e, v] : values) a.set(e, Matrix::scalar(from_int(a.ring, v)));
  return a;
}

}  // namespace

TEST(Validate, CatalogNetworksAreValid) {
  for (const auto& e : catalog()) EXPECT_TRUE(validate(e.network).empty()) << e.name;
}

TEST(Validate, ReceiverOutEdgeAndCycle) {
  Network net = butterfly();
  net.edges.push_back({4, 1});
  const auto v = validate(net);
  EXPECT_TRUE(has_code(v, Violation::Code::ReceiverOutDegree));
  EXPECT_TRUE(has_code(v, Violation::Code::Cycle));
  EXPECT_THROW(require_valid(net), InvalidNetwork);
}

TEST(Validate, DuplicateMessage) {
  Network net = butterfly();
  net.nodes[1].message = "w";
  EXPECT_TRUE(has_code(validate(net), Violation::Code::DuplicateMessage));
}

TEST(Validate, OtherViolations) {
  Network net = butterfly();
  net.edges.push_back({1, 3});
  EXPECT_TRUE(has_code(validate(net), Violation::Code::ParallelEdge));
  net = butterfly();
  net.edges.push_back({1, 99});
  EXPECT_TRUE(has_code(validate(net), Violation::Code::UnknownEndpoint));
  net = butterfly();
  net.nodes[3].demands = "nobody";
  EXPECT_TRUE(has_code(validate(net), Violation::Code::UnknownDemand));
  net = butterfly();
  net.nodes.push_back(Node{9, NodeKind::Receiver, {}, "w"});
  EXPECT_TRUE(has_code(validate(net), Violation::Code::UnreachableReceiver));
  net = butterfly();
  net.nodes.push_back(Node{3, NodeKind::Relay, {}, {}});
  EXPECT_TRUE(has_code(validate(net), Violation::Code::DuplicateId));
  net = butterfly();
  net.edges.push_back({3, 1});
  EXPECT_TRUE(has_code(validate(net), Violation::Code::SourceInDegree));
}

TEST(EnumeratePaths, Examples) {
  const auto bf = enumerate_paths(butterfly(), 1, 4);
  ASSERT_EQ(bf.size(), 2u);
  EXPECT_EQ(bf[0], (std::vector<Edge>{{1, 3}, {3, 4}}));
  EXPECT_EQ(bf[1], (std::vector<Edge>{{1, 4}}));
  const auto nd = enumerate_paths(digital_network(), 3, 11);
  ASSERT_EQ(nd.size(), 2u);
  EXPECT_EQ(nd[0], (std::vector<Edge>{{3, 5}, {5, 8}, {8, 11}}));
  EXPECT_EQ(nd[1], (std::vector<Edge>{{3, 11}}));
  EXPECT_EQ(enumerate_paths(wingless_butterfly(), 1, 5).size(), 1u);
}

TEST(Transfer, ButterflyAllOnesGF2) {
  const Network net = butterfly();
  const TransferMatrix tm = transfer(net, uniform_assignment(net, parse_ring("GF2")));
  EXPECT_EQ(tm.receivers, (std::vector<int>{4, 5}));
  EXPECT_EQ(tm.sources, (std::vector<int>{1, 2}));
  EXPECT_TRUE(tm.at(4, 1).is_zero());
  EXPECT_TRUE(tm.at(4, 2).is_identity());
  EXPECT_TRUE(tm.at(5, 1).is_identity());
  EXPECT_TRUE(tm.at(5, 2).is_zero());
}

TEST(Transfer, ZeroAssignmentGivesZeroBlocks) {
  for (const auto& e : catalog()) {
    const TransferMatrix tm = transfer(e.network, uniform_assignment(e.network, parse_ring("GF3"), 0));
    for (const auto& b : tm.blocks) EXPECT_TRUE(b.is_zero()) << e.name;
  }
}

TEST(Transfer, WinglessOverGF3) {
  const Network net = wingless_butterfly();
  const Assignment a = scalars(net, "GF3", {{{1, 3}, 1}, {{2, 3}, 1}, {{3, 4}, 1}, {{3, 5}, 2}});
  const TransferMatrix tm = transfer(net, a);
  const Ring gf3 = parse_ring("GF3");
  EXPECT_EQ(tm.at(4, 1)(0, 0), from_int(gf3, 1));
  EXPECT_EQ(tm.at(4, 2)(0, 0), from_int(gf3, 1));
  EXPECT_EQ(tm.at(5, 1)(0, 0), from_int(gf3, 2));
  EXPECT_EQ(tm.at(5, 2)(0, 0), from_int(gf3, 2));
}

TEST(Transfer, RejectsBadAssignments) {
  const Network net = butterfly();
  Assignment a = uniform_assignment(net, parse_ring("GF2"));
  a.entries.erase(Edge{1, 3});
  EXPECT_THROW(transfer(net, a), ShapeError);
  a = uniform_assignment(net, parse_ring("GF2"));
  a.set({1, 2}, Matrix::scalar(one(parse_ring("GF2"))));
  EXPECT_THROW(transfer(net, a), ShapeError);
  a = uniform_assignment(net, parse_ring("GF2"));
  a.set({1, 3}, Matrix::scalar(one(parse_ring("GF3"))));
  EXPECT_THROW(transfer(net, a), RingMismatch);
  a = uniform_assignment(net, parse_ring("GF2"));
  a.n = 2;
  EXPECT_THROW(transfer(net, a), ShapeError);
}

TEST(EdgeShape, Rule) {
  const Network net = simple_satellite();
  EXPECT_EQ(edge_shape(net, {1, 3}, 2, 3), std::make_pair(std::size_t{3}, std::size_t{2}));
  EXPECT_EQ(edge_shape(net, {3, 4}, 2, 3), std::make_pair(std::size_t{2}, std::size_t{3}));
  EXPECT_EQ(edge_shape(net, {1, 4}, 2, 3), std::make_pair(std::size_t{2}, std::size_t{2}));
  const Network nd = digital_network();
  EXPECT_EQ(edge_shape(nd, {4, 8}, 3, 4), std::make_pair(std::size_t{4}, std::size_t{4}));
}

TEST(Verify, DigitalNetwork) {
  const Network net = digital_network();
  EXPECT_EQ(net.edges.size(), 17u);
  EXPECT_TRUE(verify(net, uniform_assignment(net, parse_ring("GF2"))).satisfied);
  const Verification v = verify(net, uniform_assignment(net, parse_ring("GF3")));
  EXPECT_FALSE(v.satisfied);
  // x -> o_y: two paths, so the block is 1 + 1 = 2.
  const auto it = std::find_if(v.residuals.begin(), v.residuals.end(), [](const BlockResidual& r) { return r.receiver == 10 && r.source == 1; });
  ASSERT_NE(it, v.residuals.end());
  EXPECT_FALSE(it->demanded);
  EXPECT_EQ(it->block(0, 0), from_int(parse_ring("GF3"), 2));
  EXPECT_FALSE(it->ok());
}

TEST(Verify, AnalogueScalarOverQ) {
  const Assignment a = parse_assignment(catalog_data::kAnalogueScalar);
  EXPECT_EQ(a.ring, Ring::rationals());
  EXPECT_EQ(a.at({6, 11})(0, 0), rational(1, 2));
  EXPECT_EQ(a.at({5, 11})(0, 0), rational(-1, 2));
  const Verification v = verify(analogue_network(), a);
  EXPECT_TRUE(v.satisfied);
  EXPECT_EQ(v.residuals.size(), 12u);
}

TEST(Verify, ResidualIsBlockMinusExpected) {
  const Network net = wingless_butterfly();
  const Assignment a = scalars(net, "GF2", {{{1, 3}, 1}, {{3, 4}, 1}});
  const Verification v = verify(net, a);
  EXPECT_FALSE(v.satisfied);
  for (const auto& r : v.residuals) {
    EXPECT_EQ(r.residual, mat_sub(r.block, r.demanded ? mat_identity(a.ring, 1) : mat_zero(a.ring, 1, 1)));
    if (r.receiver == 5 && r.source == 2) {
      EXPECT_FALSE(r.ok());
    }
  }
}

TEST(Relabel, VerdictInvariant) {
  const Network net = analogue_network();
  const Assignment a = parse_assignment(catalog_data::kAnalogueScalar, parse_ring("GF3"));
  std::map<int, int> m;
  for (const auto& n : net.nodes) m[n.id] = 100 - n.id;
  EXPECT_TRUE(verify(relabel(net, m), relabel(a, m)).satisfied);
  const Assignment bad = uniform_assignment(net, parse_ring("GF3"));
  EXPECT_FALSE(verify(relabel(net, m), relabel(bad, m)).satisfied);
}

TEST(Transfer, ScalingSourceEdgeScalesColumn) {
  // On the wingless butterfly every (t, s) block is a single path, so
  // replacing r_s by c * r_s multiplies the blocks from s by c on the right.
  const Network net = wingless_butterfly();
  const Ring q = Ring::rationals();
  testing_support::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Assignment a = testing_support::random_assignment(net, q, 1, 1, rng);
    const Element c = testing_support::random_element(q, rng);
    Assignment b = a;
    b.set({1, 3}, Matrix::scalar(a.at({1, 3})(0, 0) * c));
    const auto ta = transfer(net, a);
    const auto tb = transfer(net, b);
    for (int t : {4, 5}) {
      EXPECT_EQ(tb.at(t, 1)(0, 0), ta.at(t, 1)(0, 0) * c);
      EXPECT_EQ(tb.at(t, 2), ta.at(t, 2));
    }
  }
}

TEST(Transfer, MatchesPathOracleOnPublishedFractionalSolutions) {
  const Network nd = digital_network();
  const Assignment d = parse_assignment(catalog_data::kDigital34, parse_ring("GF2"));
  const auto tm = transfer(nd, d);
  for (int t : tm.receivers)
    for (int s : tm.sources) EXPECT_EQ(tm.at(t, s), testing_support::oracle_block(nd, d, s, t));
}
