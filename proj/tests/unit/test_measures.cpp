#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "graphforge/layout.hpp"
#include "graphforge/measures.hpp"
#include "oracles.hpp"

using namespace graphforge;
namespace m = graphforge::measures;

namespace {

constexpr double kTol = 1e-9;

void check_close(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < kTol);
}

}  // namespace

TEST_CASE("centralities, clustering and efficiency agree with brute force on small graphs") {
  Rng rng({77, "measure-oracles"});
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    const Dag d = oracle::random_dag(n, 0.2 + 0.6 * rng.uniform(), rng);
    const UndirectedGraph g = underlying_undirected(d);
    const Adjacency adj = g.adjacency();
    CAPTURE(trial);
    check_close(m::betweenness(d.successors(), true), oracle::betweenness(d.successors()));
    check_close(m::betweenness(adj, false), oracle::betweenness(adj));
    check_close(m::closeness(d.predecessors()), oracle::closeness(d.successors()));
    check_close(m::closeness(adj), oracle::closeness(adj));
    check_close(m::clustering(adj), oracle::clustering(adj));
    CHECK(std::abs(m::transitivity(adj) - oracle::transitivity(adj)) < kTol);
    CHECK(std::abs(m::global_efficiency(adj) - oracle::efficiency(adj)) < kTol);
    CHECK(std::abs(m::local_efficiency(adj) - oracle::local_efficiency(adj)) < kTol);
    const auto census = m::triadic_census(d);
    const auto expected = oracle::triad_census(d);
    CHECK(census.t003 == expected.t003);
    CHECK(census.t012 == expected.t012);
    CHECK(census.t021D == expected.t021D);
    CHECK(census.t021U == expected.t021U);
    CHECK(census.t021C == expected.t021C);
    CHECK(census.t030T == expected.t030T);
  }
}

TEST_CASE("distances") {
  const auto adj = fixture::path_graph(4).adjacency();
  CHECK(m::wiener_index(adj) == 10.0);
  CHECK(m::average_shortest_path_length(adj) == doctest::Approx(20.0 / 12.0));
  CHECK(m::eccentricities(adj) == std::vector<int>{3, 2, 2, 3});
  // directed chain: only forward pairs are reachable
  CHECK(m::average_shortest_path_length(fixture::chain(4).successors()) == doctest::Approx(10.0 / 6.0));
}

TEST_CASE("reaching centrality") {
  const auto succ = fixture::chain(4).successors();
  CHECK(m::local_reaching_centrality(succ) == std::vector<double>{1.0, 2.0 / 3, 1.0 / 3, 0.0});
  CHECK(m::global_reaching_centrality(succ) == doctest::Approx((1.0 / 3 + 2.0 / 3 + 1.0) / 3));
  CHECK(m::global_reaching_centrality(fixture::full_dag(5).successors()) == doctest::Approx(0.625));
}

TEST_CASE("connectivity") {
  const auto succ = fixture::full_dag(5).successors();
  CHECK(m::local_node_connectivity(succ, 0, 4) == 4);
  CHECK(m::local_edge_connectivity(succ, 0, 4) == 4);
  CHECK(m::local_node_connectivity(fixture::diamond().successors(), 0, 3) == 2);
  CHECK(m::local_node_connectivity(fixture::diamond().successors(), 3, 0) == 0);
  // chain: pairs i < j have one path, reverse pairs none
  CHECK(m::average_node_connectivity(fixture::chain(4).successors()) == doctest::Approx(0.5));
}

TEST_CASE("assortativity is undefined without degree variance") {
  CHECK(std::isnan(m::degree_assortativity(fixture::chain(5))));
  CHECK(std::isfinite(m::degree_assortativity(fixture::diamond().with_edges({{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 3}}))));
}

TEST_CASE("closeness vitality stays finite across bridges") {
  // Removing the middle of a path disconnects it; only surviving pairs count.
  const auto v = m::closeness_vitality(fixture::path_graph(3).adjacency());
  CHECK(v[1] == doctest::Approx(4.0));
  CHECK(v[0] == doctest::Approx(4.0 - 1.0));
}

TEST_CASE("pagerank sums to one and ranks the sink highest on a chain") {
  const auto pr = m::pagerank(fixture::chain(6).successors());
  double total = 0;
  for (double x : pr) total += x;
  CHECK(total == doctest::Approx(1.0));
  CHECK(std::max_element(pr.begin(), pr.end()) - pr.begin() == 5);
}

TEST_CASE("modularity spectrum sums to minus the squared-degree share") {
  const auto g = fixture::cycle_graph(6);
  const auto spec = m::modularity_spectrum(g);
  double trace = 0;
  for (double x : spec) trace += x;
  // trace(A - k k^T / 2m) = -sum k^2 / 2m = -(6 * 4) / 12
  CHECK(trace == doctest::Approx(-2.0));
}

TEST_CASE("communicability of a single edge") {
  const auto c = m::communicability(UndirectedGraph(2, {{0, 1}}));
  CHECK(c[0][0] == doctest::Approx(std::cosh(1.0)));
  CHECK(c[0][1] == doctest::Approx(std::sinh(1.0)));
}
