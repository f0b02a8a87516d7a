#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "rectcolor/construction.hpp"
#include "rectcolor/errors.hpp"

using namespace rectcolor;

namespace {

bool monochromatic(const OrderedHypergraph& h, EdgeId e, const std::vector<Color>& col) {
  const auto ed = h.edge(e);
  return std::all_of(ed.begin(), ed.end(), [&](Vertex v) { return col[v] == col[ed[0]]; });
}

std::vector<std::vector<Vertex>> all_subsets(std::span<const Vertex> items, std::size_t m) {
  FmSubsets f(items, m);
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> buf;
  while (f.next(buf)) out.push_back(buf);
  return out;
}

}  // namespace

TEST_CASE("k-ary tree hypergraph") {
  // Binary tree with three levels: 7 vertices, 4 path edges, 3 sibling edges.
  const OrderedHypergraph t = build_kary_tree_hypergraph(2, 3);
  CHECK(t.vertex_count() == 7);
  const std::vector<std::vector<Vertex>> expected{{0, 1, 3}, {0, 1, 4}, {0, 2, 5}, {0, 2, 6}, {1, 2}, {3, 4}, {5, 6}};
  CHECK(edge_multiset_equal(t, OrderedHypergraph(7, expected)));
  CHECK(build_kary_tree_hypergraph(3, 1).vertex_count() == 1);
  CHECK_THROWS_AS(build_kary_tree_hypergraph(0, 2), DomainError);
  CHECK_THROWS_AS(build_kary_tree_hypergraph(10, 9, BuildLimits{1000}), ResourceLimitError);
}

TEST_CASE("f_m enumerates one element per block in lexicographic order") {
  const std::vector<Vertex> items{10, 11, 12, 13, 14, 15};
  FmSubsets f(items, 2);
  CHECK(f.block_count() == 3);
  CHECK(f.count() == std::optional<std::uint64_t>(8));
  const auto subsets = all_subsets(items, 2);
  REQUIRE(subsets.size() == 8);
  CHECK(subsets.front() == std::vector<Vertex>{10, 12, 14});
  CHECK(subsets[1] == std::vector<Vertex>{10, 12, 15});
  CHECK(subsets.back() == std::vector<Vertex>{11, 13, 15});
  CHECK(std::is_sorted(subsets.begin(), subsets.end()));
  CHECK_THROWS_AS(FmSubsets(std::span<const Vertex>(items).first(5), 2), DomainError);
}

TEST_CASE("H_k^1 is a single edge") {
  const StagedHypergraph s = build_hkc(4, 1);
  CHECK(s.vertex_count() == 4);
  REQUIRE(s.base.edge_count() == 1);
  CHECK(s.base.edge_size(0) == 4);
  s.validate();
}

TEST_CASE("H_2^2 structure") {
  const StagedHypergraph s = build_hkc(2, 2);
  s.validate();
  CHECK(s.m == 2);
  CHECK(s.vertex_count() == 12);
  CHECK(s.path_edges.size() == 8);
  CHECK(s.transversal_edges.size() == 6);
  // Level 0: one stage of 4 roots; level 1: 2^2 child stages of 2.
  REQUIRE(s.stages.size() == 5);
  CHECK(s.stage_vertices(0).size() == 4);
  for (std::size_t st = 1; st < 5; ++st) {
    CHECK(s.stages[st].level == 1);
    CHECK(s.stage_vertices(st).size() == 2);
  }
  // Paths are ascending with the root last.
  for (EdgeId e : s.path_edges) {
    const auto ed = s.base.edge(e);
    CHECK(ed.size() == 2);
    CHECK(s.parent[ed[0]] == ed[1]);
    CHECK(s.path(ed[0]) == std::vector<Vertex>(ed.begin(), ed.end()));
  }
  // A stage never holds two vertices of one tree.
  for (std::size_t st = 0; st < s.stages.size(); ++st) {
    std::set<Vertex> roots;
    for (Vertex v : s.stage_vertices(st)) CHECK(roots.insert(s.root[v]).second);
  }
}

TEST_CASE("closed-form counts match the builder") {
  for (auto [k, c] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 1}, {3, 1}, {1, 3}, {2, 2}, {1, 5}}) {
    CAPTURE(k);
    CAPTURE(c);
    const StagedHypergraph s = build_hkc(k, c);
    s.validate();
    const HkcCounts p = predict_hkc_counts(k, c);
    CHECK(p.vertices == static_cast<unsigned long>(s.vertex_count()));
    CHECK(p.edges == static_cast<unsigned long>(s.base.edge_count()));
    CHECK(p.path_edges == static_cast<unsigned long>(s.path_edges.size()));
    CHECK(p.transversal_edges == static_cast<unsigned long>(s.transversal_edges.size()));
  }
  const HkcCounts big = predict_hkc_counts(3, 2);
  CHECK(big.vertices == 1771497);
  CHECK(big.edges == 2184822);
}

TEST_CASE("size limits refuse oversized builds") {
  CHECK_THROWS_AS(build_hkc(2, 3), ResourceLimitError);
  CHECK_THROWS_AS(build_hkc(2, 2, BuildLimits{11}), ResourceLimitError);
  CHECK_THROWS_AS(build_hkc(0, 2), DomainError);
}

TEST_CASE("finder on every 2-coloring of H_2^2 and on 3-colorings") {
  const StagedHypergraph s = build_hkc(2, 2);
  std::vector<Color> col(12);
  for (std::uint32_t mask = 0; mask < 4096; ++mask) {
    for (std::size_t v = 0; v < 12; ++v) col[v] = (mask >> v) & 1u;
    const EdgeId e = find_monochromatic_edge(s, Coloring{2, col});
    REQUIRE(monochromatic(s.base, e, col));
    // Tracking the other color also ends on a monochromatic edge.
    CHECK(monochromatic(s.base, find_monochromatic_edge(s, Coloring{2, col}, 1), col));
  }
  const auto proper = is_c_colorable(s.base, 3);
  REQUIRE(proper.has_value());
  CHECK_THROWS_AS(find_monochromatic_edge(s, *proper), DomainError);
  CHECK_THROWS_AS(find_monochromatic_edge(s, Coloring{2, std::vector<Color>(5)}), DomainError);
}

TEST_CASE("finder on H_1^c with c colors") {
  // Deep recursion with 1-uniform edges; any palette up to c is defeated.
  const StagedHypergraph s = build_hkc(1, 4);
  s.validate();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Color> col(s.vertex_count());
    for (auto& x : col) x = static_cast<Color>(rng() % 4);
    const EdgeId e = find_monochromatic_edge(s, Coloring{4, col});
    CHECK(monochromatic(s.base, e, col));
  }
}

TEST_CASE("odd cycle provider and certification") {
  const AuxiliaryHypergraph c5 = odd_cycle_provider(4);
  CHECK(c5.base.vertex_count() == 5);
  CHECK(c5.certificate == Certificate::verified_exhaustively);
  CHECK(odd_cycle_provider(8).base.vertex_count() == 9);

  const AuxiliaryHypergraph cert = certify_auxiliary(c5.base, 5, 3);
  CHECK(cert.certificate == Certificate::verified_exhaustively);
  CHECK_THROWS_AS(certify_auxiliary(c5.base, 6, 3), DomainError);
  CHECK_THROWS_AS(certify_auxiliary(OrderedHypergraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 4, 3), DomainError);
}

TEST_CASE("random search provider is seeded and certified") {
  const AuxiliaryHypergraph a = random_search_provider(2, 4, 2, 2000, 5);
  const AuxiliaryHypergraph b = random_search_provider(2, 4, 2, 2000, 5);
  CHECK(a.base == b.base);
  const CyclesReport r = hypergraph_girth(a.base);
  CHECK((r.infinite() || *r.girth >= 4));
  CHECK_FALSE(is_c_colorable(a.base, 2).has_value());
  CHECK_THROWS_AS(random_search_provider(2, 4, 2, 0, 5), ResourceLimitError);
}

TEST_CASE("G^2(g) over odd cycles") {
  for (std::uint32_t g : {3u, 5u, 6u}) {
    CAPTURE(g);
    const StagedHypergraph s = build_gcg(2, g, odd_cycle_auxiliary());
    s.validate();
    const std::size_t cycle = g % 2 ? g : g + 1;
    CHECK(s.vertex_count() == 3 * cycle);
    CHECK(s.base.uniformity() == std::optional<std::size_t>(2));
    const CyclesReport r = hypergraph_girth(s.base);
    REQUIRE(r.girth.has_value());
    CHECK(*r.girth >= g);
    CHECK_FALSE(is_c_colorable(s.base, 2).has_value());
  }
  const StagedHypergraph k2 = build_gcg(1, 7, odd_cycle_auxiliary());
  CHECK(k2.vertex_count() == 2);
  CHECK(k2.base.edge_count() == 1);
}

TEST_CASE("finder on every 2-coloring of G^2(5)") {
  const StagedHypergraph s = build_gcg(2, 5, odd_cycle_auxiliary());
  const std::size_t n = s.vertex_count();
  std::vector<Color> col(n);
  std::size_t confirmed = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (std::size_t v = 0; v < n; ++v) col[v] = (mask >> v) & 1u;
    confirmed += monochromatic(s.base, find_monochromatic_edge(s, Coloring{2, col}), col);
  }
  CHECK(confirmed == (1u << n));
}

TEST_CASE("fixed auxiliary must match the request") {
  const AuxiliaryProvider p = fixed_auxiliary(odd_cycle_provider(5));
  CHECK_NOTHROW(build_gcg(2, 5, p));
  CHECK_THROWS_AS(build_gcg(2, 7, p), DomainError);
}
