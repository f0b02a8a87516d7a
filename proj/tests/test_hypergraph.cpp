#include <doctest.h>

#include <functional>
#include <random>

#include "rectcolor/errors.hpp"
#include "rectcolor/hypergraph.hpp"

using namespace rectcolor;

namespace {

OrderedHypergraph cycle_graph(std::size_t n) {
  OrderedHypergraph h(n);
  for (Vertex i = 0; i + 1 < n; ++i) h.add_edge({i, i + 1});
  h.add_edge({0, static_cast<Vertex>(n - 1)});
  return h;
}

OrderedHypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n, std::size_t edges, std::size_t max_size) {
  OrderedHypergraph h(n);
  for (std::size_t e = 0; e < edges; ++e) {
    std::vector<Vertex> members;
    const std::size_t size = 2 + rng() % (max_size - 1);
    while (members.size() < size) {
      const Vertex v = static_cast<Vertex>(rng() % n);
      if (std::find(members.begin(), members.end(), v) == members.end()) members.push_back(v);
    }
    std::sort(members.begin(), members.end());
    h.add_edge(members);
  }
  return h;
}

// Any proper coloring among all c^n assignments.
bool brute_colorable(const OrderedHypergraph& h, std::uint32_t c) {
  const std::size_t n = h.vertex_count();
  std::vector<Color> col(n, 0);
  while (true) {
    if (is_proper_coloring(h, Coloring{c, col})) return true;
    std::size_t i = 0;
    while (i < n && ++col[i] == c) col[i++] = 0;
    if (i == n) return false;
  }
}

// Shortest alternating cycle by exhaustive search over vertex and edge
// sequences.
std::optional<std::size_t> brute_girth(const OrderedHypergraph& h) {
  const std::size_t n = h.vertex_count(), m = h.edge_count();
  auto in = [&](Vertex v, EdgeId e) {
    const auto ed = h.edge(e);
    return std::binary_search(ed.begin(), ed.end(), v);
  };
  for (std::size_t len = 2; len <= std::min(n, m); ++len) {
    std::vector<Vertex> vs;
    std::vector<EdgeId> es;
    std::vector<bool> vused(n), eused(m);
    std::function<bool()> rec = [&]() -> bool {
      if (vs.size() == len) {
        for (EdgeId e = 0; e < m; ++e) {
          if (!eused[e] && in(vs.back(), e) && in(vs.front(), e)) return true;
        }
        return false;
      }
      for (EdgeId e = 0; e < m; ++e) {
        if (eused[e] || !in(vs.back(), e)) continue;
        eused[e] = true;
        for (Vertex w = 0; w < n; ++w) {
          if (vused[w] || !in(w, e)) continue;
          vused[w] = true;
          vs.push_back(w);
          const bool found = rec();
          vs.pop_back();
          vused[w] = false;
          if (found) {
            eused[e] = false;
            return true;
          }
        }
        eused[e] = false;
      }
      return false;
    };
    for (Vertex s = 0; s < n; ++s) {
      vs = {s};
      vused.assign(n, false);
      vused[s] = true;
      if (rec()) return len;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("edges must be strictly increasing and in range") {
  OrderedHypergraph h(4);
  CHECK(h.add_edge({0, 2, 3}) == 0);
  CHECK_THROWS_AS(h.add_edge({2, 1}), DomainError);
  CHECK_THROWS_AS(h.add_edge({1, 1}), DomainError);
  CHECK_THROWS_AS(h.add_edge({0, 4}), DomainError);
  CHECK(h.edge_count() == 1);
  h.add_edge({});
  CHECK(h.edge_size(1) == 0);
}

TEST_CASE("uniformity and induced sub-hypergraphs") {
  OrderedHypergraph h(5, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(h.uniformity() == std::optional<std::size_t>(2));
  h.add_edge({0, 2, 4});
  CHECK_FALSE(h.uniformity().has_value());
  CHECK_FALSE(OrderedHypergraph(3).uniformity().has_value());

  const std::vector<Vertex> keep{0, 2, 4};
  const OrderedHypergraph sub = h.induced(keep);
  CHECK(sub.vertex_count() == 3);
  REQUIRE(sub.edge_count() == 1);
  CHECK(std::vector<Vertex>(sub.edge(0).begin(), sub.edge(0).end()) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("edge multisets compare with multiplicity") {
  const OrderedHypergraph a(3, {{0, 1}, {1, 2}, {0, 1}});
  const OrderedHypergraph b(3, {{1, 2}, {0, 1}, {0, 1}});
  const OrderedHypergraph c(3, {{1, 2}, {0, 1}, {1, 2}});
  CHECK(edge_multiset_equal(a, b));
  CHECK_FALSE(edge_multiset_equal(a, c));
  CHECK_THROWS_AS(edge_multiset_equal(a, OrderedHypergraph(4, a.edge_lists())), DomainError);
}

TEST_CASE("coloring validation") {
  CHECK_THROWS_AS((Coloring{2, {0, 2}}).validate(), DomainError);
  CHECK_THROWS_AS((Coloring{0, {}}).validate(), DomainError);
  CHECK((Coloring{3, {0, 2, 2}}).distinct_colors() == 2);
  const OrderedHypergraph h(3, {{0, 1, 2}});
  CHECK_THROWS_AS(is_proper_coloring(h, Coloring{2, {0, 1}}), DomainError);
}

TEST_CASE("naive scanner returns the smallest monochromatic edge") {
  const OrderedHypergraph h(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(naive_monochromatic_edge(h, Coloring{2, {0, 1, 1, 1}}) == std::optional<EdgeId>(1));
  CHECK_FALSE(naive_monochromatic_edge(h, Coloring{2, {0, 1, 0, 1}}).has_value());
}

TEST_CASE("chromatic numbers of small graphs") {
  CHECK(chromatic_number(cycle_graph(5)) == 3);
  CHECK(chromatic_number(cycle_graph(6)) == 2);
  OrderedHypergraph k4(4);
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = a + 1; b < 4; ++b) k4.add_edge({a, b});
  CHECK(chromatic_number(k4) == 4);
  CHECK(chromatic_number(OrderedHypergraph(3)) == 1);
  CHECK_THROWS_AS(chromatic_number(OrderedHypergraph(2, {{0}})), DomainError);
}

TEST_CASE("search pins vertex 0 to color 0 and respects the budget") {
  const auto col = is_c_colorable(cycle_graph(7), 3);
  REQUIRE(col.has_value());
  CHECK(col->colors[0] == 0);
  CHECK(is_proper_coloring(cycle_graph(7), *col));
  CHECK_THROWS_AS(is_c_colorable(cycle_graph(51), 2, SearchLimits{10}), ResourceLimitError);
}

TEST_CASE("search agrees with brute force on random hypergraphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng() % 5;
    const OrderedHypergraph h = random_hypergraph(rng, n, 1 + rng() % 12, 3);
    for (std::uint32_t c = 1; c <= 3; ++c) {
      const auto found = is_c_colorable(h, c);
      CHECK(found.has_value() == brute_colorable(h, c));
      if (found) CHECK(is_proper_coloring(h, *found));
    }
  }
}

TEST_CASE("girth of graphs and hypergraphs") {
  CHECK(hypergraph_girth(cycle_graph(9)).girth == std::optional<std::size_t>(9));
  const OrderedHypergraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(hypergraph_girth(path).infinite());
  CHECK(hypergraph_girth(path).witness.empty());
  // Two edges sharing two vertices form a cycle of length 2.
  const OrderedHypergraph two(4, {{0, 1, 2}, {0, 1, 3}});
  const CyclesReport r = hypergraph_girth(two);
  CHECK(r.girth == std::optional<std::size_t>(2));
  CHECK(is_valid_cycle(two, r.witness));
  // A repeated edge also closes a 2-cycle.
  CHECK(hypergraph_girth(OrderedHypergraph(2, {{0, 1}, {0, 1}})).girth == std::optional<std::size_t>(2));
}

TEST_CASE("witness cycles are rejected when malformed") {
  const OrderedHypergraph c5 = cycle_graph(5);
  const CyclesReport r = hypergraph_girth(c5);
  REQUIRE(r.witness.size() == 5);
  CHECK(is_valid_cycle(c5, r.witness));
  auto broken = r.witness;
  std::swap(broken[0], broken[1]);
  CHECK_FALSE(is_valid_cycle(c5, broken));
  CHECK_FALSE(is_valid_cycle(c5, std::vector<CycleStep>{{0, 0}}));
}

TEST_CASE("girth agrees with exhaustive cycle search") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 4;
    const OrderedHypergraph h = random_hypergraph(rng, n, 1 + rng() % 5, 3);
    const CyclesReport r = hypergraph_girth(h);
    CHECK(r.girth == brute_girth(h));
    if (r.girth) {
      CHECK(r.witness.size() == *r.girth);
      CHECK(is_valid_cycle(h, r.witness));
    }
  }
}
