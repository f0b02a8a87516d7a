#include "rectcolor/arithmetic.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "rectcolor/errors.hpp"

namespace rectcolor {

namespace {

BigInt pow2(std::size_t e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
  return out;
}

std::size_t bit_length(const BigInt& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

std::optional<ResidueClass> merge(const ResidueClass& a, const Congruence& b) {
  if (b.modulus < 1) throw DomainError("modulus must be >= 1, got " + b.modulus.get_str());
  const BigInt r2 = mod_floor(b.residue, b.modulus);
  const BigInt g = gcd(a.modulus, b.modulus);
  const BigInt diff = r2 - a.residue;
  if (mod_floor(diff, g) != 0) return std::nullopt;
  const BigInt m2g = b.modulus / g;
  BigInt k = 0;
  if (m2g > 1) {
    BigInt inv;
    const BigInt m1g = a.modulus / g;
    mpz_invert(inv.get_mpz_t(), m1g.get_mpz_t(), m2g.get_mpz_t());
    k = mod_floor(BigInt(diff / g) * inv, m2g);
  }
  ResidueClass out;
  out.modulus = a.modulus * m2g;
  out.residue = mod_floor(a.residue + a.modulus * k, out.modulus);
  return out;
}

void check_strictly_increasing(std::span<const BigInt> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i - 1] < v[i])) throw DomainError("V must be strictly increasing");
  }
}

}  // namespace

bool FiniteAP::contains(const BigInt& v) const {
  if (v < start || v > last()) return false;
  return mod_floor(v - start, difference) == 0;
}

Rational van_der_corput(const BigInt& n) {
  if (n < 0) throw DomainError("van der Corput index must be >= 0");
  const std::size_t bits = bit_length(n);
  BigInt rev = 0;
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), i)) mpz_setbit(rev.get_mpz_t(), bits - 1 - i);
  }
  return make_rational(rev, pow2(bits));
}

IntegerEmbedding embed_integers(std::span<const BigInt> values) {
  if (values.empty()) throw DomainError("cannot embed an empty set");
  IntegerEmbedding out;
  const BigInt lo = *std::min_element(values.begin(), values.end());
  out.offset = lo < 0 ? BigInt(-lo) : BigInt(0);
  for (const BigInt& v : values) out.values.push_back(v + out.offset);
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  for (const BigInt& n : out.values) out.points.push_back({Rational(n), van_der_corput(n)});
  return out;
}

Rect ap_capture_rectangle(const FiniteAP& a, std::span<const BigInt> v) {
  if (a.difference < 1 || mpz_popcount(a.difference.get_mpz_t()) != 1) {
    throw DomainError("difference " + a.difference.get_str() + " is not a power of two");
  }
  if (a.length < 1) throw DomainError("progression length must be >= 1");
  if (a.start < 0) throw DomainError("progression must lie in the nonnegative integers");
  const std::size_t t = bit_length(a.difference) - 1;
  std::size_t top_bits = t;
  for (const BigInt& n : v) {
    if (n < 0) throw DomainError("V must be nonnegative; translate it first");
    top_bits = std::max(top_bits, bit_length(n));
  }
  const BigInt b = mod_floor(a.start, a.difference);
  const Rational a_b = van_der_corput(b);
  const Rational y_hi = a_b + make_rational(1, pow2(t)) - make_rational(1, pow2(top_bits + 1));
  return {Rational(a.start), Rational(a.last()), a_b, y_hi};
}

std::vector<BigInt> ap_intersection(const FiniteAP& a, std::span<const BigInt> v) {
  std::vector<BigInt> out;
  for (const BigInt& n : v) {
    if (a.contains(n)) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

APIncidence ap_incidence_hypergraph(std::span<const BigInt> v, std::span<const FiniteAP> aps) {
  check_strictly_increasing(v);
  APIncidence out;
  out.hypergraph = OrderedHypergraph(v.size());
  std::vector<Vertex> buf;
  for (std::size_t e = 0; e < aps.size(); ++e) {
    const FiniteAP& a = aps[e];
    if (a.difference < 1 || a.length < 1) throw DomainError("malformed progression " + std::to_string(e));
    const BigInt last = a.last();
    buf.clear();
    for (auto it = std::lower_bound(v.begin(), v.end(), a.start); it != v.end() && *it <= last; ++it) {
      if (mod_floor(*it - a.start, a.difference) == 0) {
        buf.push_back(static_cast<Vertex>(it - v.begin()));
      }
    }
    if (buf.empty()) out.empty_edges.push_back(static_cast<EdgeId>(e));
    out.hypergraph.add_edge(buf);
  }
  return out;
}

std::optional<ResidueClass> solve_modular_system(std::span<const Congruence> system) {
  ResidueClass cls;
  for (const Congruence& c : system) {
    auto next = merge(cls, c);
    if (!next) return std::nullopt;
    cls = std::move(*next);
  }
  return cls;
}

ResidueProgression extension_residues(const ResidueClass& cls, const BigInt& d_next) {
  if (d_next < 1 || cls.modulus < 1) throw DomainError("moduli must be >= 1");
  const BigInt g = gcd(cls.modulus, d_next);
  return {mod_floor(cls.residue, g), g, BigInt(d_next / g)};
}

bool DifferenceSet::contains(const BigInt& d) const {
  const auto next = least_above(d - 1);
  return next && *next == d;
}

namespace {

class PowersOf : public DifferenceSet {
 public:
  explicit PowersOf(unsigned long base) : base_(base) {
    if (base < 2) throw DomainError("powers need a base >= 2");
  }
  std::optional<BigInt> least_above(const BigInt& bound) const override {
    BigInt p = 1;
    while (p <= bound) p *= base_;
    return p;
  }
  bool contains(const BigInt& d) const override {
    if (d < 1) return false;
    BigInt x = d;
    while (mod_floor(x, base_) == 0) x /= base_;
    return x == 1;
  }
  std::string name() const override { return "pow" + std::to_string(base_); }

 private:
  unsigned long base_;
};

class Primes : public DifferenceSet {
 public:
  std::optional<BigInt> least_above(const BigInt& bound) const override {
    BigInt p;
    if (bound < 1) return BigInt(2);
    mpz_nextprime(p.get_mpz_t(), bound.get_mpz_t());
    return p;
  }
  bool contains(const BigInt& d) const override {
    return d >= 2 && mpz_probab_prime_p(d.get_mpz_t(), 40) > 0;
  }
  std::string name() const override { return "primes"; }
};

class ExplicitSet : public DifferenceSet {
 public:
  explicit ExplicitSet(std::vector<BigInt> m) : members_(std::move(m)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.front() < 1) throw DomainError("differences must be positive");
  }
  std::optional<BigInt> least_above(const BigInt& bound) const override {
    auto it = std::upper_bound(members_.begin(), members_.end(), bound);
    if (it == members_.end()) return std::nullopt;
    return *it;
  }
  std::string name() const override { return "explicit"; }

 private:
  std::vector<BigInt> members_;
};

class StreamSet : public DifferenceSet {
 public:
  StreamSet(std::string name, std::function<std::function<BigInt()>()> make, std::uint64_t limit)
      : name_(std::move(name)), make_(std::move(make)), limit_(limit) {}
  std::optional<BigInt> least_above(const BigInt& bound) const override {
    auto next = make_();
    for (std::uint64_t i = 0; i < limit_; ++i) {
      BigInt d = next();
      if (d > bound) return d;
    }
    return std::nullopt;
  }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  std::function<std::function<BigInt()>()> make_;
  std::uint64_t limit_;
};

}  // namespace

std::unique_ptr<DifferenceSet> powers_of(unsigned long base) { return std::make_unique<PowersOf>(base); }
std::unique_ptr<DifferenceSet> primes() { return std::make_unique<Primes>(); }
std::unique_ptr<DifferenceSet> explicit_set(std::vector<BigInt> members) {
  return std::make_unique<ExplicitSet>(std::move(members));
}
std::unique_ptr<DifferenceSet> stream_set(std::string name,
                                          std::function<std::function<BigInt()>()> make,
                                          std::uint64_t scan_limit) {
  return std::make_unique<StreamSet>(std::move(name), std::move(make), scan_limit);
}

DifferenceSequence greedy_difference_sequence(const DifferenceSet& set, std::size_t count) {
  DifferenceSequence out;
  BigInt running = 1;
  for (std::size_t i = 1; i <= count; ++i) {
    const BigInt bound = pow2(i - 1) * running;
    const auto d = set.least_above(bound);
    if (!d) {
      throw DomainError("difference set " + set.name() + " has no element above " + bound.get_str() +
                        " (term " + std::to_string(i) + ")");
    }
    running = lcm(running, *d);
    out.d.push_back(*d);
    out.lcm.push_back(running);
  }
  for (std::size_t j = 1; j < out.d.size(); ++j) {
    if (!(out.d[j] > pow2(j) * out.lcm[j - 1])) {
      throw VerificationError("growth condition fails at term " + std::to_string(j + 1));
    }
  }
  return out;
}

ResidueTree build_residue_tree(const DifferenceSequence& seq, std::size_t depth) {
  if (depth == 0) throw DomainError("residue tree depth must be >= 1");
  if (depth > kMaxResidueTreeDepth) {
    throw ResourceLimitError("residue tree depth " + std::to_string(depth) + " exceeds " +
                             std::to_string(kMaxResidueTreeDepth));
  }
  if (seq.d.size() < depth) throw DomainError("difference sequence shorter than the tree depth");
  ResidueTree tree;
  tree.seq = seq;
  std::vector<ResidueClass> parents{ResidueClass{}};
  for (std::size_t j = 1; j <= depth; ++j) {
    const BigInt& d = seq.d[j - 1];
    std::set<BigInt> used;
    std::vector<BigInt> residues(parents.size() * 2);
    std::vector<ResidueClass> classes(parents.size() * 2);
    for (std::size_t p = 0; p < parents.size(); ++p) {
      const ResidueProgression prog = extension_residues(parents[p], d);
      BigInt i = 0;
      for (std::size_t c = 0; c < 2; ++c) {
        while (i < prog.count && used.count(prog.at(i))) ++i;
        if (i >= prog.count) {
          throw VerificationError("no unused residue mod " + d.get_str() + " at depth " +
                                  std::to_string(j));
        }
        const BigInt rho = prog.at(i);
        used.insert(rho);
        const auto cls = merge(parents[p], {rho, d});
        if (!cls) throw VerificationError("extension residue " + rho.get_str() + " is not solvable");
        residues[2 * p + c] = rho;
        classes[2 * p + c] = *cls;
      }
    }
    std::vector<BigInt> sol;
    sol.reserve(classes.size());
    for (const ResidueClass& c : classes) sol.push_back(c.residue);
    tree.residue.push_back(std::move(residues));
    tree.solution.push_back(std::move(sol));
    parents = std::move(classes);
  }
  return tree;
}

std::size_t label_index(std::string_view label) {
  std::size_t idx = 0;
  for (char ch : label) {
    if (ch != '0' && ch != '1') throw DomainError("label must be binary");
    idx = idx * 2 + static_cast<std::size_t>(ch - '0');
  }
  return idx;
}

namespace {

struct Prepared {
  IncidenceResult source;
  NestedExtension ext;
  std::vector<std::size_t> window_lo;  // per rect, x-rank range [lo, hi)
  std::vector<std::size_t> window_hi;
};

Prepared prepare(std::span<const Point2> points, std::span<const Rect> rects) {
  Prepared out;
  out.source = incidence_hypergraph(points, rects);
  const auto& order = out.source.x_order;
  std::vector<Rational> ys;
  ys.reserve(order.size());
  for (Vertex p : order) ys.push_back(points[p].y);
  const auto closed = y_projections(rects);
  if (!is_nested(std::span<const ClosedInterval>(closed))) {
    throw DomainError("rectangle y-projections are not nested");
  }
  const auto half = to_half_open(closed, ys);
  out.ext = extend_to_perfect_nested(half, ys, true);
  for (const Rect& rc : rects) {
    auto lo = std::partition_point(order.begin(), order.end(),
                                   [&](Vertex p) { return points[p].x < rc.x_lo; });
    auto hi = std::partition_point(lo, order.end(), [&](Vertex p) { return points[p].x <= rc.x_hi; });
    out.window_lo.push_back(static_cast<std::size_t>(lo - order.begin()));
    out.window_hi.push_back(static_cast<std::size_t>(hi - order.begin()));
  }
  return out;
}

// One AP per nonempty rectangle: the class residue (mod difference) cut to
// the v-values of the rectangle's x-window.
void emit_aps(APTranslation& tr, const Prepared& prep,
              const std::function<std::pair<BigInt, BigInt>(std::size_t)>& class_of,
              const std::function<bool(const BigInt&)>& allowed) {
  APRealization& ap = tr.ap;
  ap.edge_count = prep.source.hypergraph.edge_count();
  for (std::size_t e = 0; e < ap.edge_count; ++e) {
    if (prep.source.hypergraph.edge_size(e) == 0) {
      ap.empty_edges.push_back(static_cast<EdgeId>(e));
      continue;
    }
    const auto [rho, d] = class_of(e);
    const BigInt& lo = ap.v[prep.window_lo[e]];
    const BigInt& hi = ap.v[prep.window_hi[e] - 1];
    FiniteAP a;
    a.difference = d;
    a.start = lo + mod_floor(rho - lo, d);
    const BigInt last = hi - mod_floor(hi - rho, d);
    if (a.start > last) throw VerificationError("progression for edge " + std::to_string(e) + " is empty");
    a.length = (last - a.start) / d + 1;
    if (!allowed(d)) throw VerificationError("difference " + d.get_str() + " is outside D");
    ap.aps.push_back(std::move(a));
    ap.edge_of_ap.push_back(static_cast<EdgeId>(e));
  }
  const OrderedHypergraph got = ap_realization_hypergraph(ap);
  for (std::size_t e = 0; e < ap.edge_count; ++e) {
    const auto want = prep.source.hypergraph.edge(e);
    const auto have = got.edge(e);
    if (!std::equal(want.begin(), want.end(), have.begin(), have.end())) {
      throw VerificationError("AP for edge " + std::to_string(e) + " captures a different set");
    }
  }
}

}  // namespace

APTranslation rects_to_pow2_aps(std::span<const Point2> points, std::span<const Rect> rects) {
  Prepared prep = prepare(points, rects);
  APTranslation tr;
  const std::size_t t1 = prep.ext.family.depth() - 1;
  const BigInt step = pow2(t1);
  for (std::size_t i = 0; i < prep.ext.point_labels.size(); ++i) {
    const std::string& s = prep.ext.point_labels[i];
    BigInt v = step * static_cast<unsigned long>(i + 1);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] == '1') v += pow2(j);
    }
    tr.ap.v.push_back(v);
  }
  emit_aps(
      tr, prep,
      [&](std::size_t e) {
        const std::string& q = prep.ext.interval_labels[e];
        BigInt rho = 0;
        for (std::size_t j = 0; j < q.size(); ++j) {
          if (q[j] == '1') rho += pow2(j);
        }
        return std::pair<BigInt, BigInt>{rho, pow2(q.size())};
      },
      [](const BigInt& d) { return mpz_popcount(d.get_mpz_t()) == 1; });
  tr.source = std::move(prep.source);
  tr.extension = std::move(prep.ext);
  return tr;
}

APTranslation rects_to_D_aps(std::span<const Point2> points, std::span<const Rect> rects,
                             const DifferenceSet& set) {
  Prepared prep = prepare(points, rects);
  APTranslation tr;
  const std::size_t t1 = prep.ext.family.depth() - 1;
  const DifferenceSequence seq = greedy_difference_sequence(set, t1);
  tr.tree = build_residue_tree(seq, t1);
  const BigInt& big_l = seq.lcm.back();
  for (std::size_t i = 0; i < prep.ext.point_labels.size(); ++i) {
    const std::size_t idx = label_index(prep.ext.point_labels[i]);
    tr.ap.v.push_back(tr.tree->leaf_solution(idx) + big_l * static_cast<unsigned long>(i + 1));
  }
  emit_aps(
      tr, prep,
      [&](std::size_t e) {
        const std::string& q = prep.ext.interval_labels[e];
        if (q.empty()) throw VerificationError("input interval labelled as the root");
        return std::pair<BigInt, BigInt>{tr.tree->residue[q.size() - 1][label_index(q)],
                                         seq.d[q.size() - 1]};
      },
      [&](const BigInt& d) { return set.contains(d); });
  tr.source = std::move(prep.source);
  tr.extension = std::move(prep.ext);
  return tr;
}

OrderedHypergraph ap_realization_hypergraph(const APRealization& r) {
  const APIncidence inc = ap_incidence_hypergraph(r.v, r.aps);
  std::vector<std::size_t> ap_of(r.edge_count, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < r.edge_of_ap.size(); ++i) {
    if (r.edge_of_ap[i] >= r.edge_count) throw DomainError("AP edge id out of range");
    ap_of[r.edge_of_ap[i]] = i;
  }
  OrderedHypergraph out(r.v.size());
  for (std::size_t e = 0; e < r.edge_count; ++e) {
    if (ap_of[e] == static_cast<std::size_t>(-1)) {
      out.add_edge(std::span<const Vertex>{});
    } else {
      out.add_edge(inc.hypergraph.edge(ap_of[e]));
    }
  }
  return out;
}

}  // namespace rectcolor
