#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "rectcolor/hypergraph.hpp"
#include "rectcolor/rational.hpp"

namespace rectcolor {

// Vertex counts grow doubly exponentially in c; every builder checks its
// predicted size against these limits before allocating anything.
struct BuildLimits {
  std::uint64_t max_vertices = 10'000'000;
  SearchLimits search{};
};

// Complete tree of the given depth (root-leaf paths have `depth` vertices),
// each non-leaf with k children. Vertices in breadth-first order; path edges
// (one per leaf, leaves in BFS order) come first, then sibling edges (one per
// non-leaf, BFS order).
OrderedHypergraph build_kary_tree_hypergraph(std::uint32_t k, std::uint32_t depth,
                                             const BuildLimits& limits = {});

/// Subsets of an ordered list taking exactly one element from each
/// consecutive block of m. Enumerated lazily in lexicographic order of the
/// per-block choices (first block most significant).
class FmSubsets {
 public:
  FmSubsets(std::span<const Vertex> ordered, std::size_t m);

  // Writes the next subset into `out`; false once exhausted.
  bool next(std::vector<Vertex>& out);

  std::size_t block_count() const { return choice_.size(); }
  // m^(block count), or nullopt if it does not fit in 64 bits.
  std::optional<std::uint64_t> count() const;

 private:
  std::span<const Vertex> items_;
  std::size_t m_;
  std::vector<std::size_t> choice_;
  bool started_ = false;
  bool done_ = false;
};

enum class StagedKind { hkc, gcg };

inline constexpr std::uint32_t kNoStage = static_cast<std::uint32_t>(-1);

struct Stage {
  std::uint32_t level = 0;
  std::uint32_t block_size = 0;  // 0: the stage carries no embedded copies
  std::uint32_t parent_stage = kNoStage;
  std::uint32_t first_child = 0;
  std::uint32_t child_count = 0;
  std::size_t first_tag = 0;  // index of (block 0, copy edge 0) in transversal_edges
};

struct TransversalTag {
  std::uint32_t stage = 0;
  std::uint32_t block = 0;
  std::uint32_t copy_edge = 0;
  friend bool operator==(const TransversalTag&, const TransversalTag&) = default;
};

struct AuxiliaryHypergraph;

/// A hypergraph together with the forest/stage/block structure it was built
/// from. Used for both H_k^c and the girth graphs G^c(g).
///
/// Global vertex order: post-order of the forest, where the children of a
/// vertex precede it in the creation order of their stages. This is exactly
/// the left-to-right order of the planar realization, so a block of m stage
/// vertices is order-isomorphic to its embedded copy. Stages are numbered in
/// creation order (level-major; children of a stage in lexicographic order of
/// the subset that spawned them). Edge order: path edges by leaf, then
/// transversal edges by (stage, block, copy edge). The c = 1 base (k
/// vertices, or K_2) is one level-0 stage holding one edge.
struct StagedHypergraph {
  StagedKind kind = StagedKind::hkc;
  std::uint32_t k = 0;  // uniformity; 2 for gcg
  std::uint32_t c = 0;
  std::uint32_t g = 0;  // girth parameter, gcg only
  std::size_t m = 0;    // vertex count of copy_template; 0 when c == 1

  OrderedHypergraph base;
  std::vector<Vertex> parent;  // kNoVertex for roots
  std::vector<Vertex> root;

  std::vector<Stage> stages;
  std::vector<std::size_t> stage_offsets{0};
  std::vector<Vertex> stage_members;  // each stage ascending (= <_S)

  std::vector<EdgeId> path_edges;  // ascending by leaf vertex
  std::vector<EdgeId> path_edge_of;  // per vertex, kNoEdge unless a leaf
  std::vector<EdgeId> transversal_edges;
  std::vector<TransversalTag> transversal_tags;  // parallel to transversal_edges

  std::shared_ptr<const StagedHypergraph> copy_template;
  std::shared_ptr<const AuxiliaryHypergraph> auxiliary;  // gcg, c > 1

  std::size_t vertex_count() const { return base.vertex_count(); }
  std::span<const Vertex> stage_vertices(std::size_t s) const {
    return {stage_members.data() + stage_offsets[s], stage_offsets[s + 1] - stage_offsets[s]};
  }
  std::size_t block_count(std::size_t s) const {
    const auto b = stages[s].block_size;
    return b == 0 ? 0 : stage_vertices(s).size() / b;
  }
  std::span<const Vertex> block(std::size_t s, std::size_t b) const {
    return stage_vertices(s).subspan(b * stages[s].block_size, stages[s].block_size);
  }
  // Level of the deepest stages (k-1 for hkc, 1 for gcg, 0 for the base).
  std::uint32_t leaf_level() const;
  // {v, parent(v), ..., root(v)}, ascending.
  std::vector<Vertex> path(Vertex v) const;

  // Re-checks every structural invariant; throws VerificationError.
  void validate() const;
};

struct HkcCounts {
  BigInt vertices;
  BigInt edges;
  BigInt path_edges;
  BigInt transversal_edges;
  std::vector<BigInt> stages_per_level;
};

// Closed-form sizes of H_k^c without building it.
HkcCounts predict_hkc_counts(std::uint32_t k, std::uint32_t c);

// Throws ResourceLimitError (with the predicted count) above the limits.
StagedHypergraph build_hkc(std::uint32_t k, std::uint32_t c, const BuildLimits& limits = {});

// Walks the non-colorability argument: follows the tracked color down the
// stages, descending into an embedded copy as soon as a block misses it.
// Cost is proportional to the stages visited, not to the edge count. Throws
// DomainError("palette exceeds guarantee") if the coloring uses more colors
// than the construction defeats and the walk ends on a non-monochromatic
// edge.
EdgeId find_monochromatic_edge(const StagedHypergraph& s, const Coloring& col,
                               Color tracked = 0);

enum class Certificate { verified_exhaustively, user_asserted };

struct AuxiliaryHypergraph {
  OrderedHypergraph base;
  std::size_t claimed_girth = 0;
  std::uint32_t claimed_chromatic_lower_bound = 0;
  Certificate certificate = Certificate::user_asserted;
};

// (uniformity, girth, chromatic lower bound) -> certified hypergraph.
using AuxiliaryProvider =
    std::function<AuxiliaryHypergraph(std::size_t, std::size_t, std::uint32_t)>;

// The cycle C_g' with g' the smallest odd integer >= max(g, 3).
AuxiliaryHypergraph odd_cycle_provider(std::size_t g);

// Random girth-constrained edge sets (a random edge order, keeping each edge
// that leaves the girth >= g), accepted once exhaustive search shows they
// are not c-colorable. Throws ResourceLimitError after `budget` trials.
AuxiliaryHypergraph random_search_provider(std::size_t uniformity, std::size_t g,
                                           std::uint32_t c, std::uint64_t budget,
                                           std::uint64_t seed, const SearchLimits& search = {});

// Checks a user-supplied hypergraph; certificate is verified_exhaustively
// when the coloring search fits the budget, user_asserted otherwise.
AuxiliaryHypergraph certify_auxiliary(OrderedHypergraph h, std::size_t g,
                                      std::uint32_t chromatic_lower_bound,
                                      const SearchLimits& search = {});

// Adapters usable with build_gcg.
AuxiliaryProvider odd_cycle_auxiliary();
AuxiliaryProvider random_search_auxiliary(std::uint64_t budget, std::uint64_t seed,
                                          const SearchLimits& search = {});
AuxiliaryProvider fixed_auxiliary(AuxiliaryHypergraph h);

StagedHypergraph build_gcg(std::uint32_t c, std::uint32_t g, const AuxiliaryProvider& provider,
                           const BuildLimits& limits = {});

}  // namespace rectcolor
