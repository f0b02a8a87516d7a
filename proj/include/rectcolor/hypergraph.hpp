#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace rectcolor {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Color = std::uint32_t;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);
inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

/// Vertices 0..n-1 in a fixed linear order and a list of edges. Each edge is
/// a strictly increasing list of vertex indices. The index order carries
/// meaning (it is the x-order of a realization), so nothing here renumbers.
///
/// Edges are stored contiguously; `edge(e)` is a view into that storage.
/// Repeated and empty edges are allowed, the list is a multiset.
class OrderedHypergraph {
 public:
  OrderedHypergraph() = default;
  explicit OrderedHypergraph(std::size_t n) : n_(n) {}
  OrderedHypergraph(std::size_t n, const std::vector<std::vector<Vertex>>& edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return offsets_.size() - 1; }
  std::size_t incidence_count() const { return members_.size(); }

  std::span<const Vertex> edge(std::size_t e) const {
    return {members_.data() + offsets_[e], offsets_[e + 1] - offsets_[e]};
  }
  std::size_t edge_size(std::size_t e) const { return offsets_[e + 1] - offsets_[e]; }

  // Throws DomainError unless `members` is strictly increasing and in range.
  EdgeId add_edge(std::span<const Vertex> members);
  EdgeId add_edge(std::initializer_list<Vertex> members) {
    return add_edge(std::span<const Vertex>(members.begin(), members.size()));
  }

  void reserve(std::size_t edges, std::size_t incidences);

  // Some k with every edge of size k, or nullopt (also for no edges).
  std::optional<std::size_t> uniformity() const;

  // Sub-hypergraph induced on `vertices` (strictly increasing), renumbered
  // to 0..|vertices|-1 in the given order. Only edges fully inside are kept.
  OrderedHypergraph induced(std::span<const Vertex> vertices) const;

  std::vector<std::vector<Vertex>> edge_lists() const;

  friend bool operator==(const OrderedHypergraph&, const OrderedHypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> members_;
};

struct Coloring {
  std::uint32_t palette = 1;  // c
  std::vector<Color> colors;

  // Throws DomainError when an entry is >= palette or palette == 0.
  void validate() const;
  std::size_t distinct_colors() const;
};

struct SearchLimits {
  std::uint64_t node_budget = 1'000'000'000;
};

// Edges of size <= 1 count as monochromatic under every coloring.
bool is_proper_coloring(const OrderedHypergraph& h, const Coloring& col);

// Smallest monochromatic edge index, scanning every edge.
std::optional<EdgeId> naive_monochromatic_edge(const OrderedHypergraph& h, const Coloring& col);

// Backtracking over vertices in index order; vertex i may only open color
// (max used so far)+1, which pins vertex 0 to color 0. Returns the first
// proper coloring in that order. Throws ResourceLimitError once the number of
// tried assignments exceeds the node budget.
std::optional<Coloring> is_c_colorable(const OrderedHypergraph& h, std::uint32_t c,
                                       const SearchLimits& limits = {});

// Throws DomainError if some edge has size <= 1 (no proper coloring exists).
std::uint32_t chromatic_number(const OrderedHypergraph& h, const SearchLimits& limits = {});

struct CycleStep {
  Vertex vertex;
  EdgeId edge;
  friend bool operator==(const CycleStep&, const CycleStep&) = default;
};

/// Shortest alternating cycle (v1,E1,...,vg,Eg) with distinct vertices and
/// distinct edges, vi,vi+1 in Ei and vg,v1 in Eg. `girth` is empty when the
/// hypergraph has no cycle at all.
struct CyclesReport {
  std::optional<std::size_t> girth;
  std::vector<CycleStep> witness;

  bool infinite() const { return !girth.has_value(); }
};

// Girth via BFS on the vertex-edge incidence graph from every node. The
// witness is the lexicographically smallest minimum cycle, comparing the
// flattened sequence (v1,E1,v2,E2,...).
CyclesReport hypergraph_girth(const OrderedHypergraph& h);

// True iff `witness` is a cycle of `h` in the alternating-sequence sense.
bool is_valid_cycle(const OrderedHypergraph& h, std::span<const CycleStep> witness);

// Multiset equality of edges under the identity vertex map.
bool edge_multiset_equal(const OrderedHypergraph& a, const OrderedHypergraph& b);

}  // namespace rectcolor
