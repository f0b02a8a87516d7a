#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rectcolor/geometry.hpp"
#include "rectcolor/hypergraph.hpp"
#include "rectcolor/rational.hpp"

namespace rectcolor {

// {start + i*difference : 0 <= i < length}
struct FiniteAP {
  BigInt start;
  BigInt difference = 1;
  BigInt length = 1;

  BigInt last() const { return start + difference * (length - 1); }
  bool contains(const BigInt& v) const;
  friend bool operator==(const FiniteAP&, const FiniteAP&) = default;
};

struct Congruence {
  BigInt residue;
  BigInt modulus;
};

// x = residue (mod modulus), 0 <= residue < modulus.
struct ResidueClass {
  BigInt residue;
  BigInt modulus = 1;
  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

// Mirror of the binary digits of n about the radix point.
Rational van_der_corput(const BigInt& n);

struct IntegerEmbedding {
  BigInt offset;                 // added to every input value
  std::vector<BigInt> values;    // translated, ascending, distinct
  std::vector<Point2> points;    // (n, a_n) for each translated n
};

// Throws DomainError for an empty set.
IntegerEmbedding embed_integers(std::span<const BigInt> values);

// Closed rectangle whose intersection with {(n, a_n) : n in V} is the part
// of A inside V. A must have a power-of-two difference and nonnegative
// members; V must be nonnegative.
Rect ap_capture_rectangle(const FiniteAP& a, std::span<const BigInt> v);

// Members of A inside V, ascending.
std::vector<BigInt> ap_intersection(const FiniteAP& a, std::span<const BigInt> v);

struct APIncidence {
  OrderedHypergraph hypergraph;  // vertex i = i-th smallest element of V
  std::vector<EdgeId> empty_edges;
};

// V strictly increasing.
APIncidence ap_incidence_hypergraph(std::span<const BigInt> v, std::span<const FiniteAP> aps);

// Generalized Chinese remainder merge. Moduli must be >= 1; residues may be
// any integers. nullopt when unsolvable.
std::optional<ResidueClass> solve_modular_system(std::span<const Congruence> system);

// Residues rho mod d_next for which {x = r (mod L), x = rho (mod d_next)} is
// solvable: first, first + step, ..., count terms.
struct ResidueProgression {
  BigInt first;
  BigInt step;
  BigInt count;
  BigInt at(const BigInt& i) const { return first + step * i; }
};
ResidueProgression extension_residues(const ResidueClass& cls, const BigInt& d_next);

/// An infinite set D of positive integers, accessed through "least element
/// above a bound".
class DifferenceSet {
 public:
  virtual ~DifferenceSet() = default;
  // Least d in D with d > bound; nullopt once the source is exhausted.
  virtual std::optional<BigInt> least_above(const BigInt& bound) const = 0;
  virtual std::string name() const = 0;
  // Cheap membership test where one exists; the default uses least_above.
  virtual bool contains(const BigInt& d) const;
};

std::unique_ptr<DifferenceSet> powers_of(unsigned long base);  // base^0, base^1, ...
std::unique_ptr<DifferenceSet> primes();
// Finite, so it can run out.
std::unique_ptr<DifferenceSet> explicit_set(std::vector<BigInt> members);
// An increasing stream; least_above restarts it and gives up after
// `scan_limit` terms.
std::unique_ptr<DifferenceSet> stream_set(std::string name, std::function<std::function<BigInt()>()> make,
                                          std::uint64_t scan_limit);

struct DifferenceSequence {
  std::vector<BigInt> d;     // d_1, d_2, ...
  std::vector<BigInt> lcm;   // L_j = lcm(d_1, ..., d_j)
};

// d_i = min{ d in D : d > 2^(i-1) * L_(i-1) }, L_0 = 1. Throws DomainError
// if D runs out, VerificationError if the growth inequality fails.
DifferenceSequence greedy_difference_sequence(const DifferenceSet& set, std::size_t count);

/// Residues for every binary string of length 1..depth. Strings of length j
/// are indexed 0..2^j-1 with the first symbol as the most significant bit.
struct ResidueTree {
  DifferenceSequence seq;
  std::vector<std::vector<BigInt>> residue;  // residue[j-1][idx] in [0, d_j)
  std::vector<std::vector<BigInt>> solution; // solution[j-1][idx] in [0, L_j)

  std::size_t depth() const { return residue.size(); }
  const BigInt& leaf_solution(std::size_t idx) const { return solution.back()[idx]; }
};

inline constexpr std::size_t kMaxResidueTreeDepth = 22;

// Level by level; parents in lexicographic order, each child takes the
// smallest residue in its parent's extension set not used yet on its level.
ResidueTree build_residue_tree(const DifferenceSequence& seq, std::size_t depth);

// Index of a binary label (first symbol most significant).
std::size_t label_index(std::string_view label);

struct APRealization {
  BigInt offset;                  // 0 for the translations below
  std::vector<BigInt> v;          // ascending, v[i] stands for the i-th point in x-order
  std::vector<FiniteAP> aps;
  std::vector<EdgeId> edge_of_ap;
  std::vector<EdgeId> empty_edges;
  std::size_t edge_count = 0;
};

struct APTranslation {
  APRealization ap;
  NestedExtension extension;
  IncidenceResult source;                 // incidence of the input, x-order
  std::optional<ResidueTree> tree;        // general mode only
};

// Differences 2^r, v_i = sum s_j 2^(j-1) + i 2^(t-1). Verifies that the AP
// incidence equals the rectangle incidence and throws VerificationError
// otherwise; DomainError when the y-projections are not nested.
APTranslation rects_to_pow2_aps(std::span<const Point2> points, std::span<const Rect> rects);

// Differences d_r from the greedy sequence of D, v_i = f_s + i L_(t-1).
APTranslation rects_to_D_aps(std::span<const Point2> points, std::span<const Rect> rects,
                             const DifferenceSet& set);

// The edge hypergraph of an AP realization including its empty edges, in
// edge order. Empty edges are the flagged ids without an AP.
OrderedHypergraph ap_realization_hypergraph(const APRealization& r);

}  // namespace rectcolor
