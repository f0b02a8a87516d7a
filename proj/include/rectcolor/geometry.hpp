#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rectcolor/construction.hpp"
#include "rectcolor/hypergraph.hpp"
#include "rectcolor/rational.hpp"

namespace rectcolor {

struct Point2 {
  Rational x;
  Rational y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Closed box.
struct Rect {
  Rational x_lo, x_hi, y_lo, y_hi;
  bool contains(const Point2& p) const {
    return x_lo <= p.x && p.x <= x_hi && y_lo <= p.y && p.y <= y_hi;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// points[v] realizes vertex v and rects[e] realizes edge e of `hypergraph`.
struct Realization {
  std::vector<Point2> points;
  std::vector<Rect> rects;
  OrderedHypergraph hypergraph;
};

struct IncidenceResult {
  OrderedHypergraph hypergraph;   // vertex i = i-th point in x-order (ties by y)
  std::vector<Vertex> x_order;    // x_order[i] = index into the input points
  std::vector<EdgeId> empty_edges;
};

// Closed containment, one edge per rectangle. Scans the x-window of each
// rectangle, so cost grows with the number of points under each rectangle.
IncidenceResult incidence_hypergraph(std::span<const Point2> points, std::span<const Rect> rects);

// Midpoint-expanded bounding box of each edge's members. An edge's box
// reaches halfway to the nearest point coordinate beyond it on every side
// (1/2 past the extreme when there is none).
std::vector<Rect> bounding_rects(std::span<const Point2> points, const OrderedHypergraph& h);

// Realizations of H_k^c. Every call verifies the full incidence structure
// before returning and throws VerificationError if it does not match.
Realization realize_hkc(const StagedHypergraph& s);
// Same points up to y-order-preserving changes; the y-projections of all
// rectangles form a nested family and path rectangles share their top.
Realization realize_hkc_nested(const StagedHypergraph& s);
Realization realize_gcg(const StagedHypergraph& s);

struct VerificationReport {
  std::size_t rects_checked = 0;
  std::vector<EdgeId> mismatches;  // at most 16 listed
  std::size_t mismatch_count = 0;
  bool ok() const { return mismatch_count == 0; }
};

// Exact check of every rectangle. With pairwise distinct x and pairwise
// distinct y this counts points per rectangle offline (sweep plus Fenwick
// tree) and compares with the edge size; otherwise it falls back to
// incidence_hypergraph.
VerificationReport verify_realization(const Realization& r);

// Checks only the listed rectangles, each by scanning its window in the
// x-sorted point list.
VerificationReport verify_realization_sample(const Realization& r, std::span<const EdgeId> rects);

// The y-projections [y_lo, y_hi] of the rectangles.
struct ClosedInterval {
  Rational lo, hi;
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};
// Half-open [lo, hi); lo == hi is the empty interval.
struct Interval {
  Rational lo, hi;
  bool contains(const Rational& y) const { return lo <= y && y < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

std::vector<ClosedInterval> y_projections(std::span<const Rect> rects);

bool is_ascending(std::span<const Point2> points);
// Any two members disjoint or comparable; repeats allowed.
bool is_nested(std::span<const Interval> family);
bool is_nested(std::span<const ClosedInterval> family);

// Replaces each closed projection by a half-open interval with the same
// members among `values`: the upper end moves to the midpoint between hi and
// the next larger value (hi + 1 if none). Nestedness is preserved.
std::vector<Interval> to_half_open(std::span<const ClosedInterval> family,
                                   std::span<const Rational> values);

/// Binary tree of half-open intervals where every internal node is the
/// union of its two children (left child below right child). Labels are
/// strings over {0,1}; "" is the root. Only the explicit part is stored:
/// below an explicit leaf s the family continues implicitly, with s0...0 = I_s
/// and every other extension empty ([hi, hi)).
class PerfectNestedFamily {
 public:
  struct Node {
    Interval interval;
    std::string label;
    std::uint32_t left = kNone;
    std::uint32_t right = kNone;
    bool is_leaf() const { return left == kNone; }
  };
  static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

  // t: labels have length <= t-1.
  std::size_t depth() const { return depth_; }
  std::span<const Node> nodes() const { return nodes_; }
  const Node& root() const { return nodes_.front(); }

  // I_s for any label of length <= t-1, padding included.
  Interval interval_of(std::string_view label) const;
  // Full-length label of the leaf containing y; nullopt outside the root.
  std::optional<std::string> leaf_label(const Rational& y) const;
  // Union property at every explicit node and nestedness.
  bool is_perfect() const;

 private:
  friend struct PerfectNestedBuilder;
  std::size_t depth_ = 1;
  std::vector<Node> nodes_;
};

struct NestedExtension {
  PerfectNestedFamily family;
  std::vector<std::string> interval_labels;  // per input interval
  std::vector<std::string> point_labels;     // per input point, length t-1
};

// Builds the containment forest of the (deduplicated) family, adds a root
// when the forest has several roots, some point lies outside it, or
// `reserve_root` is set, fills the gaps so each node's children cover it,
// then binarizes left-first. Throws DomainError if the family is not nested
// or contains an empty interval.
NestedExtension extend_to_perfect_nested(std::span<const Interval> family,
                                         std::span<const Rational> points_y,
                                         bool reserve_root = false);

struct HasseDiagram {
  OrderedHypergraph graph;       // vertex i = i-th point in x-order
  std::vector<Vertex> x_order;   // x_order[i] = index into the input points
};

// Covering pairs of the dominance order. Throws DomainError on a repeated x
// or a repeated y.
HasseDiagram dominance_hasse(std::span<const Point2> points);

// Chain of k points (input indices, increasing) of one color whose
// consecutive members are Hasse-adjacent; k counts vertices.
std::optional<std::vector<std::size_t>> monochromatic_increasing_path(
    std::span<const Point2> points, std::span<const Color> colors, std::size_t k);

struct SvgStyle {
  // Coordinates replaced by ranks among the point coordinates; realizations
  // span many orders of magnitude, so this is the readable default.
  bool rank_coordinates = true;
  double scale = 20.0;
  double point_radius = 0.18;
};

std::string emit_svg(const Realization& r, const SvgStyle& style = {});

}  // namespace rectcolor
