#include "rectcolor/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "rectcolor/arithmetic.hpp"
#include "rectcolor/construction.hpp"
#include "rectcolor/errors.hpp"
#include "rectcolor/geometry.hpp"
#include "rectcolor/hypergraph.hpp"
#include "rectcolor/serialize.hpp"

namespace rectcolor {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failed checks; a criterion passes when none were recorded.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "FAILED: " : "; ") + f;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

// ---- oracles -------------------------------------------------------------

// H_k^c straight from the definition, vertices numbered in creation order.
struct OracleStaged {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> stages;
  std::vector<std::vector<std::uint32_t>> edges;  // each sorted
};

OracleStaged oracle_hkc(std::uint32_t k, std::uint32_t c) {
  OracleStaged out;
  if (c == 1) {
    std::vector<std::uint32_t> all(k);
    std::iota(all.begin(), all.end(), 0u);
    out.n = k;
    out.stages.push_back(all);
    out.edges.push_back(all);
    return out;
  }
  const OracleStaged sub = oracle_hkc(k, c - 1);
  const std::size_t m = sub.n;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> level;
  auto fresh = [&](std::uint32_t p) {
    parent.push_back(p);
    return static_cast<std::uint32_t>(parent.size() - 1);
  };
  std::size_t roots = 1;
  for (std::uint32_t i = 0; i < k; ++i) roots *= m;
  out.stages.emplace_back();
  for (std::size_t i = 0; i < roots; ++i) out.stages[0].push_back(fresh(UINT32_MAX));
  level.push_back(0);
  for (std::size_t s = 0; s < out.stages.size(); ++s) {
    if (level[s] + 1 >= k) continue;
    const std::vector<std::uint32_t> S = out.stages[s];
    const std::size_t blocks = S.size() / m;
    std::vector<std::uint32_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t b) {
      if (b == blocks) {
        std::vector<std::uint32_t> child;
        for (std::uint32_t p : pick) child.push_back(fresh(p));
        out.stages.push_back(child);
        level.push_back(level[s] + 1);
        return;
      }
      for (std::size_t i = 0; i < m; ++i) {
        pick.push_back(S[b * m + i]);
        rec(b + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  out.n = parent.size();
  for (std::size_t s = 0; s < out.stages.size(); ++s) {
    const auto& S = out.stages[s];
    if (level[s] == k - 1) {
      for (std::uint32_t v : S) {
        std::vector<std::uint32_t> path;
        for (std::uint32_t u = v; u != UINT32_MAX; u = parent[u]) path.push_back(u);
        std::sort(path.begin(), path.end());
        out.edges.push_back(path);
      }
    }
    for (std::size_t b = 0; b < S.size() / m; ++b) {
      for (const auto& e : sub.edges) {
        std::vector<std::uint32_t> mapped;
        for (std::uint32_t t : e) mapped.push_back(S[b * m + t]);
        std::sort(mapped.begin(), mapped.end());
        out.edges.push_back(mapped);
      }
    }
  }
  return out;
}

struct OracleCounts {
  std::uint64_t vertices = 0, edges = 0, path = 0, transversal = 0;
};

// Closed-form stage counting in 64-bit arithmetic.
OracleCounts oracle_hkc_counts(std::uint64_t k, std::uint64_t c) {
  if (c == 1) return {k, 1, 0, 0};
  const OracleCounts sub = oracle_hkc_counts(k, c - 1);
  const std::uint64_t m = sub.vertices;
  auto ipow = [](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
  };
  OracleCounts out;
  std::uint64_t stages = 1;
  for (std::uint64_t j = 0; j < k; ++j) {
    const std::uint64_t blocks = ipow(m, k - j - 1);
    out.vertices += stages * blocks * m;
    out.transversal += stages * blocks * sub.edges;
    if (j + 1 < k) stages *= ipow(m, blocks);
  }
  out.path = stages * m;
  out.edges = out.path + out.transversal;
  return out;
}

// Exhaustive 2-coloring scan with edges as bit masks; returns a proper
// coloring mask if one exists.
std::optional<std::uint64_t> scan_2_colorings(const OrderedHypergraph& h) {
  const std::size_t n = h.vertex_count();
  if (n > 40) throw DomainError("scan limited to 40 vertices");
  std::vector<std::uint64_t> masks;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    std::uint64_t m = 0;
    for (Vertex v : h.edge(e)) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t col = 0; col < total; ++col) {
    bool proper = true;
    for (std::uint64_t m : masks) {
      const std::uint64_t on = col & m;
      if (on == 0 || on == m) {
        proper = false;
        break;
      }
    }
    if (proper) return col;
  }
  return std::nullopt;
}

bool edge_is_monochromatic(const OrderedHypergraph& h, EdgeId e, std::span<const Color> colors) {
  const auto ed = h.edge(e);
  return std::all_of(ed.begin(), ed.end(), [&](Vertex v) { return colors[v] == colors[ed[0]]; });
}

// Incidence edges renumbered back to the input point indices.
OrderedHypergraph in_input_order(const IncidenceResult& inc) {
  OrderedHypergraph out(inc.hypergraph.vertex_count());
  std::vector<Vertex> buf;
  for (std::size_t e = 0; e < inc.hypergraph.edge_count(); ++e) {
    buf.clear();
    for (Vertex v : inc.hypergraph.edge(e)) buf.push_back(inc.x_order[v]);
    std::sort(buf.begin(), buf.end());
    out.add_edge(buf);
  }
  return out;
}

bool sequences_equal(const std::vector<BigInt>& a, std::initializer_list<unsigned long> b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(),
                                            [](const BigInt& x, unsigned long y) { return x == y; });
}

std::string seq_str(const std::vector<BigInt>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

// ---- criteria ------------------------------------------------------------

void criterion1(Checks& ck) {
  const StagedHypergraph s = build_hkc(2, 2);
  const OracleStaged oracle = oracle_hkc(2, 2);
  ck.expect(oracle.n == 12 && oracle.edges.size() == 14, "oracle disagrees with 12/14");
  ck.expect(s.vertex_count() == oracle.n, "vertex count " + std::to_string(s.vertex_count()));
  ck.expect(s.base.edge_count() == oracle.edges.size(), "edge count " + std::to_string(s.base.edge_count()));
  ck.expect(s.base.uniformity() == std::optional<std::size_t>(2), "not 2-uniform");

  // Stage-by-stage correspondence between oracle and builder numbering.
  std::vector<Vertex> to_builder(oracle.n, kNoVertex);
  bool shapes = oracle.stages.size() == s.stages.size();
  for (std::size_t st = 0; shapes && st < oracle.stages.size(); ++st) {
    const auto mine = s.stage_vertices(st);
    shapes = mine.size() == oracle.stages[st].size();
    for (std::size_t i = 0; shapes && i < mine.size(); ++i) to_builder[oracle.stages[st][i]] = mine[i];
  }
  ck.expect(shapes, "stage shapes differ from the oracle");
  if (shapes) {
    std::vector<std::vector<Vertex>> mapped;
    for (const auto& e : oracle.edges) {
      std::vector<Vertex> m;
      for (auto v : e) m.push_back(to_builder[v]);
      std::sort(m.begin(), m.end());
      mapped.push_back(m);
    }
    ck.expect(edge_multiset_equal(OrderedHypergraph(oracle.n, mapped), s.base),
              "edge multiset differs from the oracle");
  }
  ck.expect(!scan_2_colorings(s.base).has_value(), "exhaustive scan found a proper 2-coloring");
  ck.expect(!is_c_colorable(s.base, 2).has_value(), "search found a proper 2-coloring");
  const auto three = is_c_colorable(s.base, 3);
  ck.expect(three && is_proper_coloring(s.base, *three), "no verified proper 3-coloring");
  ck.note("12 vertices, 14 edges, 0 of 4096 2-colorings proper, 3-coloring exhibited");
}

void criterion2(Checks& ck, const AcceptanceOptions& opt) {
  const StagedHypergraph s = build_hkc(2, 2);
  std::vector<Color> colors(12);
  std::size_t confirmed = 0;
  for (std::uint32_t mask = 0; mask < 4096; ++mask) {
    for (std::size_t v = 0; v < 12; ++v) colors[v] = (mask >> v) & 1u;
    const EdgeId e = find_monochromatic_edge(s, Coloring{2, colors});
    const auto naive = naive_monochromatic_edge(s.base, Coloring{2, colors});
    if (naive && edge_is_monochromatic(s.base, e, colors)) ++confirmed;
  }
  ck.expect(confirmed == 4096, "finder confirmed on " + std::to_string(confirmed) + " of 4096");
  if (opt.skip_large) {
    ck.note("H_2^2: 4096/4096; H_3^2 skipped");
    return;
  }
  const auto t0 = Clock::now();
  const StagedHypergraph big = build_hkc(3, 2);
  const OracleCounts oc = oracle_hkc_counts(3, 2);
  ck.expect(big.vertex_count() == oc.vertices, "H_3^2 vertex count " + std::to_string(big.vertex_count()));
  ck.expect(big.base.edge_count() == oc.edges, "H_3^2 edge count " + std::to_string(big.base.edge_count()));
  ck.expect(big.path_edges.size() == oc.path && big.transversal_edges.size() == oc.transversal,
            "H_3^2 path/transversal split");
  std::mt19937_64 rng(opt.seed);
  std::vector<Color> big_colors(big.vertex_count());
  std::size_t ok = 0;
  for (int q = 0; q < 100; ++q) {
    for (auto& c : big_colors) c = static_cast<Color>(rng() & 1u);
    const EdgeId e = find_monochromatic_edge(big, Coloring{2, big_colors});
    if (edge_is_monochromatic(big.base, e, big_colors)) ++ok;
  }
  ck.expect(ok == 100, "H_3^2 finder confirmed on " + std::to_string(ok) + " of 100");
  const double secs = since(t0);
  ck.expect(secs < 120.0, "H_3^2 build + queries took " + std::to_string(secs) + " s");
  ck.note("H_2^2: 4096/4096; H_3^2: " + std::to_string(oc.vertices) + " vertices, " +
          std::to_string(oc.edges) + " edges, 100/100 in " + std::to_string(secs).substr(0, 5) + " s");
}

void check_small_realization(Checks& ck, const StagedHypergraph& s, const Realization& r,
                             const std::string& name, bool nested) {
  const IncidenceResult inc = incidence_hypergraph(r.points, r.rects);
  ck.expect(inc.empty_edges.empty(), name + ": empty rectangle");
  ck.expect(edge_multiset_equal(in_input_order(inc), s.base), name + ": incidence differs");
  for (std::size_t e = 0; e < s.base.edge_count(); ++e) {
    std::vector<Point2> pts;
    for (Vertex v : inc.hypergraph.edge(e)) pts.push_back(r.points[inc.x_order[v]]);
    if (pts.size() != s.k || !is_ascending(pts)) {
      ck.expect(false, name + ": rectangle " + std::to_string(e) + " not an ascending " +
                           std::to_string(s.k) + "-set");
      break;
    }
  }
  if (!nested) return;
  const auto proj = y_projections(r.rects);
  ck.expect(is_nested(std::span<const ClosedInterval>(proj)), name + ": projections not nested");
  std::set<Rational> tops;
  for (EdgeId e : s.path_edges) tops.insert(r.rects[e].y_hi);
  ck.expect(tops.size() == 1, name + ": path rectangles have " + std::to_string(tops.size()) + " tops");
}

void criterion3(Checks& ck, const AcceptanceOptions& opt) {
  const auto t0 = Clock::now();
  const StagedHypergraph s = build_hkc(2, 2);
  check_small_realization(ck, s, realize_hkc(s), "plain", false);
  check_small_realization(ck, s, realize_hkc_nested(s), "nested", true);
  const double small = since(t0);
  ck.expect(small < 1.0, "H_2^2 part took " + std::to_string(small) + " s");
  if (opt.skip_large) {
    ck.note("H_2^2 plain and nested verified; H_3^2 skipped");
    return;
  }
  const auto t1 = Clock::now();
  Realization big;
  {
    const StagedHypergraph h = build_hkc(3, 2);
    big = realize_hkc(h);
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<EdgeId> pick(0, static_cast<EdgeId>(big.rects.size() - 1));
  std::vector<EdgeId> sample(1000);
  for (auto& e : sample) e = pick(rng);
  const VerificationReport rep = verify_realization_sample(big, sample);
  ck.expect(rep.ok() && rep.rects_checked == 1000,
            "H_3^2 sample: " + std::to_string(rep.mismatch_count) + " mismatches");
  std::size_t ascending = 0;
  for (EdgeId e : sample) {
    std::vector<Point2> pts;
    for (Vertex v : big.hypergraph.edge(e)) pts.push_back(big.points[v]);
    ascending += pts.size() == 3 && is_ascending(pts);
  }
  ck.expect(ascending == 1000, "H_3^2 sample: " + std::to_string(ascending) + " ascending 3-sets");
  const double secs = since(t1);
  ck.expect(secs < 600.0, "H_3^2 realization + sample took " + std::to_string(secs) + " s");
  ck.note("H_2^2 plain and nested verified in " + std::to_string(small).substr(0, 5) +
          " s; H_3^2 realized and 1000/1000 sampled rectangles exact in " +
          std::to_string(secs).substr(0, 5) + " s");
}

void criterion4(Checks& ck) {
  std::string detail;
  for (std::uint32_t g : {5u, 7u, 9u}) {
    const auto t0 = Clock::now();
    const std::string tag = "g=" + std::to_string(g);
    const StagedHypergraph s = build_gcg(2, g, odd_cycle_auxiliary());
    const std::size_t cycle = g % 2 ? g : g + 1;
    ck.expect(s.vertex_count() == 3 * cycle, tag + ": " + std::to_string(s.vertex_count()) + " vertices");
    const CyclesReport girth = hypergraph_girth(s.base);
    ck.expect(girth.girth && *girth.girth >= g, tag + ": girth below g");
    ck.expect(!girth.witness.empty() && is_valid_cycle(s.base, girth.witness), tag + ": bad witness");
    ck.expect(!scan_2_colorings(s.base).has_value(), tag + ": proper 2-coloring exists");
    const Realization r = realize_gcg(s);
    ck.expect(verify_realization(r).ok(), tag + ": realization mismatch");
    const IncidenceResult inc = incidence_hypergraph(r.points, r.rects);
    const OrderedHypergraph induced = in_input_order(inc);
    ck.expect(edge_multiset_equal(induced, s.base), tag + ": induced graph differs");
    const CyclesReport induced_girth = hypergraph_girth(induced);
    ck.expect(induced_girth.girth && *induced_girth.girth >= g, tag + ": induced girth below g");
    const double secs = since(t0);
    ck.expect(secs < 5.0, tag + " took " + std::to_string(secs) + " s");
    detail += (detail.empty() ? "" : ", ") + tag + ": " + std::to_string(s.vertex_count()) + " vertices, girth " +
              std::to_string(girth.girth.value_or(0)) + ", " + std::to_string(secs).substr(0, 4) + " s";
  }
  ck.note(detail);
}

void criterion5(Checks& ck) {
  constexpr unsigned kBits = 12;
  constexpr unsigned long kN = 1ul << kBits;
  std::vector<Rational> a(kN);
  for (unsigned long n = 0; n < kN; ++n) a[n] = van_der_corput(BigInt(n));
  std::size_t checked = 0, bad = 0;
  for (unsigned t = 0; t <= kBits; ++t) {
    const unsigned long mod = 1ul << t;
    const Rational width(1, mod);
    for (unsigned long b = 0; b < mod; ++b) {
      const Rational hi = a[b] + width;
      for (unsigned long n = 0; n < kN; ++n) {
        const bool congruent = n % mod == b;
        const bool in_strip = a[b] <= a[n] && a[n] < hi;
        bad += congruent != in_strip;
        ++checked;
      }
    }
  }
  ck.expect(bad == 0, std::to_string(bad) + " disagreements");
  ck.note(std::to_string(checked) + " (n, t, b) triples agree");
}

void criterion6(Checks& ck, const AcceptanceOptions& opt) {
  {
    const std::vector<BigInt> v{1, 3, 7, 8, 10, 15};
    const FiniteAP a{3, 2, 3};
    const Rect r = ap_capture_rectangle(a, v);
    std::vector<BigInt> got;
    for (const BigInt& n : v) {
      if (r.contains({Rational(n), van_der_corput(n)})) got.push_back(n);
    }
    ck.expect(got == std::vector<BigInt>{3, 7}, "figure instance captured " + seq_str(got));
  }
  std::mt19937_64 rng(opt.seed);
  std::size_t agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::uint64_t> vs;
    const std::size_t size = 1 + rng() % 64;
    while (vs.size() < size) vs.insert(rng() % 4096);
    const unsigned t = static_cast<unsigned>(rng() % 9);
    const std::uint64_t d = std::uint64_t{1} << t;
    const std::uint64_t b = rng() % d;
    const std::uint64_t start = b + d * (rng() % ((4096 - b + d - 1) / d));
    const std::uint64_t length = 1 + rng() % ((4095 - start) / d + 1);
    std::vector<BigInt> v;
    for (auto x : vs) v.push_back(BigInt(static_cast<unsigned long>(x)));
    const FiniteAP a{BigInt(static_cast<unsigned long>(start)), BigInt(static_cast<unsigned long>(d)),
                     BigInt(static_cast<unsigned long>(length))};
    const Rect r = ap_capture_rectangle(a, v);
    std::vector<std::uint64_t> captured, expected;
    for (auto x : vs) {
      if (r.contains({Rational(static_cast<unsigned long>(x)), van_der_corput(BigInt(static_cast<unsigned long>(x)))})) {
        captured.push_back(x);
      }
      if (x >= start && x <= start + (length - 1) * d && (x - start) % d == 0) expected.push_back(x);
    }
    agree += captured == expected;
  }
  ck.expect(agree == 200, std::to_string(agree) + " of 200 random captures agree");
  ck.note("figure instance {3,7}; 200/200 random captures match the set oracle");
}

bool pairwise_solvable(const std::vector<std::pair<BigInt, BigInt>>& sys) {
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = i + 1; j < sys.size(); ++j) {
      BigInt g, diff = sys[i].first - sys[j].first, r;
      mpz_gcd(g.get_mpz_t(), sys[i].second.get_mpz_t(), sys[j].second.get_mpz_t());
      mpz_fdiv_r(r.get_mpz_t(), diff.get_mpz_t(), g.get_mpz_t());
      if (r != 0) return false;
    }
  }
  return true;
}

void check_residue_tree(Checks& ck, const ResidueTree& tree, const std::string& tag) {
  std::size_t scanned = 0;
  for (std::size_t j = 1; j <= tree.depth(); ++j) {
    const auto& res = tree.residue[j - 1];
    std::vector<BigInt> sorted = res;
    std::sort(sorted.begin(), sorted.end());
    ck.expect(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
              tag + ": repeated residue at depth " + std::to_string(j));
    const BigInt& big_l = tree.seq.lcm[j - 1];
    const bool scan = big_l <= 4096 && (big_l << static_cast<unsigned>(j)) <= 2'000'000;
    for (std::size_t idx = 0; idx < res.size(); ++idx) {
      std::vector<std::pair<BigInt, BigInt>> sys;
      for (std::size_t i = 1; i <= j; ++i) {
        const std::size_t prefix = idx >> (j - i);
        sys.emplace_back(tree.residue[i - 1][prefix], tree.seq.d[i - 1]);
      }
      ck.expect(pairwise_solvable(sys), tag + ": unsolvable system at depth " + std::to_string(j));
      const BigInt& f = tree.solution[j - 1][idx];
      bool solves = f >= 0 && f < big_l;
      for (const auto& [r, d] : sys) {
        BigInt rem;
        mpz_fdiv_r(rem.get_mpz_t(), BigInt(f - r).get_mpz_t(), d.get_mpz_t());
        solves = solves && rem == 0;
      }
      ck.expect(solves, tag + ": stored solution wrong at depth " + std::to_string(j));
      if (scan) {
        bool found = false;
        for (unsigned long x = 0; !found && x < big_l.get_ui(); ++x) {
          found = std::all_of(sys.begin(), sys.end(),
                              [&](const auto& c) { return (x % c.second.get_ui()) == c.first.get_ui(); });
        }
        ck.expect(found, tag + ": scan found no solution at depth " + std::to_string(j));
        ++scanned;
      }
    }
  }
  if (scanned == 0) ck.note(tag + ": lcm too large for the scan oracle beyond the pairwise test");
}

// Point i (x-order) lies in the projection of rectangle e iff the leaf
// label of i extends the label of e.
void check_prefix_membership(Checks& ck, const APTranslation& tr, std::span<const Point2> points,
                             std::span<const Rect> rects, const std::string& tag) {
  std::size_t bad = 0;
  for (std::size_t e = 0; e < rects.size(); ++e) {
    const std::string& q = tr.extension.interval_labels[e];
    for (std::size_t i = 0; i < tr.source.x_order.size(); ++i) {
      const Rational& y = points[tr.source.x_order[i]].y;
      const bool inside = rects[e].y_lo <= y && y <= rects[e].y_hi;
      const bool prefix = tr.extension.point_labels[i].compare(0, q.size(), q) == 0;
      bad += inside != prefix;
    }
  }
  ck.expect(bad == 0, tag + ": " + std::to_string(bad) + " prefix/membership disagreements");
  ck.expect(tr.extension.family.is_perfect(), tag + ": extension is not perfect");
}

void criterion7(Checks& ck) {
  const StagedHypergraph s = build_hkc(2, 2);
  const Realization r = realize_hkc_nested(s);
  struct Mode {
    std::string name;
    std::unique_ptr<DifferenceSet> set;  // null: power-of-two translation
    std::function<bool(const BigInt&)> in_d;
  };
  std::vector<Mode> modes;
  modes.push_back({"pow2", nullptr, [](const BigInt& d) { return d > 0 && mpz_popcount(d.get_mpz_t()) == 1; }});
  modes.push_back({"primes", primes(), [](const BigInt& d) { return mpz_probab_prime_p(d.get_mpz_t(), 50) > 0; }});
  modes.push_back({"pow3", powers_of(3), [](BigInt d) {
                     while (d > 1 && d % 3 == 0) d /= 3;
                     return d == 1;
                   }});
  std::string detail;
  for (const Mode& mode : modes) {
    const auto t0 = Clock::now();
    const APTranslation tr =
        mode.set ? rects_to_D_aps(r.points, r.rects, *mode.set) : rects_to_pow2_aps(r.points, r.rects);
    const std::string tag = mode.name;
    ck.expect(tr.ap.aps.size() == 14, tag + ": " + std::to_string(tr.ap.aps.size()) + " progressions");
    for (const FiniteAP& a : tr.ap.aps) ck.expect(mode.in_d(a.difference), tag + ": difference " + a.difference.get_str());
    ck.expect(std::is_sorted(tr.ap.v.begin(), tr.ap.v.end()) &&
                  std::adjacent_find(tr.ap.v.begin(), tr.ap.v.end()) == tr.ap.v.end(),
              tag + ": V not increasing");
    if (tr.tree) check_residue_tree(ck, *tr.tree, tag);
    check_prefix_membership(ck, tr, r.points, r.rects, tag);
    const APIncidence inc = ap_incidence_hypergraph(tr.ap.v, tr.ap.aps);
    std::vector<std::vector<Vertex>> edges;
    for (std::size_t i = 0; i < tr.ap.aps.size(); ++i) {
      std::vector<Vertex> mapped;
      for (Vertex v : inc.hypergraph.edge(i)) mapped.push_back(tr.source.x_order[v]);
      std::sort(mapped.begin(), mapped.end());
      edges.push_back(mapped);
    }
    ck.expect(edge_multiset_equal(OrderedHypergraph(s.vertex_count(), edges), s.base),
              tag + ": AP incidence differs from H_2^2");
    const double secs = since(t0);
    ck.expect(secs < 10.0, tag + " took " + std::to_string(secs) + " s");
    detail += (detail.empty() ? "" : ", ") + tag + " depth " + std::to_string(tr.extension.family.depth());
  }
  ck.note(detail + "; 14 progressions each, incidence equal to H_2^2");
}

// d_i by scanning integers upward and testing membership.
std::vector<std::uint64_t> oracle_greedy(const std::function<bool(std::uint64_t)>& member, std::size_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t running = 1;
  for (std::size_t i = 1; i <= count; ++i) {
    std::uint64_t d = (std::uint64_t{1} << (i - 1)) * running + 1;
    while (!member(d)) ++d;
    running = std::lcm(running, d);
    out.push_back(d);
  }
  return out;
}

void criterion8(Checks& ck) {
  auto is_pow2 = [](std::uint64_t d) { return d && !(d & (d - 1)); };
  auto is_prime = [](std::uint64_t d) {
    if (d < 2) return false;
    for (std::uint64_t q = 2; q * q <= d; ++q) {
      if (d % q == 0) return false;
    }
    return true;
  };
  auto is_pow3 = [](std::uint64_t d) {
    while (d > 1 && d % 3 == 0) d /= 3;
    return d == 1;
  };
  struct Case {
    std::string name;
    std::unique_ptr<DifferenceSet> set;
    std::function<bool(std::uint64_t)> member;
  };
  std::vector<Case> cases;
  cases.push_back({"powers of 2", powers_of(2), is_pow2});
  cases.push_back({"primes", primes(), is_prime});
  cases.push_back({"powers of 3", powers_of(3), is_pow3});
  std::string detail;
  for (const Case& c : cases) {
    const DifferenceSequence seq = greedy_difference_sequence(*c.set, 3);
    const auto oracle = oracle_greedy(c.member, 3);
    bool same = seq.d.size() == oracle.size();
    for (std::size_t i = 0; same && i < oracle.size(); ++i) same = seq.d[i] == static_cast<unsigned long>(oracle[i]);
    ck.expect(same, c.name + ": " + seq_str(seq.d) + " differs from the oracle");
    const DifferenceSequence ten = greedy_difference_sequence(*c.set, 10);
    BigInt running = 1;
    for (std::size_t i = 0; i < ten.d.size(); ++i) {
      if (i > 0) {
        BigInt bound = running;
        bound <<= static_cast<unsigned>(i);
        ck.expect(ten.d[i] > bound, c.name + ": growth condition fails at term " + std::to_string(i + 1));
      }
      mpz_lcm(running.get_mpz_t(), running.get_mpz_t(), ten.d[i].get_mpz_t());
    }
    detail += (detail.empty() ? "" : ", ") + c.name + " " + seq_str(seq.d);
  }
  ck.expect(sequences_equal(greedy_difference_sequence(*powers_of(2), 3).d, {2, 8, 64}), "powers of 2 != (2, 8, 64)");
  ck.expect(sequences_equal(greedy_difference_sequence(*primes(), 3).d, {2, 5, 41}), "primes != (2, 5, 41)");
  ck.note(detail + "; growth condition holds for 10 terms of each");
}

void criterion9(Checks& ck, const AcceptanceOptions& opt) {
  const StagedHypergraph s = build_hkc(2, 2);
  const Realization r = realize_hkc(s);
  const HasseDiagram hd = dominance_hasse(r.points);
  std::vector<Color> colors(12);
  std::size_t found = 0, path_found = 0;
  for (std::uint32_t mask = 0; mask < 4096; ++mask) {
    for (std::size_t v = 0; v < 12; ++v) colors[v] = (mask >> v) & 1u;
    bool mono = false;
    for (std::size_t e = 0; e < hd.graph.edge_count() && !mono; ++e) {
      const auto ed = hd.graph.edge(e);
      mono = colors[hd.x_order[ed[0]]] == colors[hd.x_order[ed[1]]];
    }
    found += mono;
    path_found += monochromatic_increasing_path(r.points, colors, 2).has_value();
  }
  ck.expect(found == 4096, std::to_string(found) + " of 4096 colorings have a monochromatic Hasse edge");
  ck.expect(path_found == 4096, "path search agreed on " + std::to_string(path_found) + " of 4096");

  std::mt19937_64 rng(opt.seed);
  std::size_t triangle_free = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + rng() % 38;
    std::vector<long> xs(n), ys(n);
    std::iota(xs.begin(), xs.end(), 0);
    std::iota(ys.begin(), ys.end(), 0);
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({Rational(xs[i]), Rational(ys[i])});
    const HasseDiagram h = dominance_hasse(pts);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t e = 0; e < h.graph.edge_count(); ++e) {
      const auto ed = h.graph.edge(e);
      adj[ed[0]][ed[1]] = adj[ed[1]][ed[0]] = true;
    }
    bool tri = false;
    for (std::size_t a = 0; a < n && !tri; ++a) {
      for (std::size_t b = a + 1; b < n && !tri; ++b) {
        if (!adj[a][b]) continue;
        for (std::size_t c = b + 1; c < n && !tri; ++c) tri = adj[a][c] && adj[b][c];
      }
    }
    triangle_free += !tri;
  }
  ck.expect(triangle_free == 500, std::to_string(triangle_free) + " of 500 Hasse diagrams triangle-free");
  ck.note("4096/4096 colorings with a monochromatic Hasse edge; 500/500 random diagrams triangle-free");
}

// Every artifact the acceptance pipelines produce, keyed by file name.
std::vector<std::pair<std::string, std::string>> pipeline_artifacts(std::uint64_t seed) {
  std::vector<std::pair<std::string, std::string>> out;
  const StagedHypergraph s = build_hkc(2, 2);
  out.emplace_back("h22.json", dump(to_json(s)));
  const Realization plain = realize_hkc(s);
  out.emplace_back("h22_real.json", dump(to_json(plain)));
  out.emplace_back("h22_real.svg", emit_svg(plain));
  const Realization nested = realize_hkc_nested(s);
  out.emplace_back("h22_nested.json", dump(to_json(nested)));
  out.emplace_back("h22_nested.svg", emit_svg(nested));
  out.emplace_back("h22_aps_pow2.json", dump(to_json(rects_to_pow2_aps(nested.points, nested.rects).ap)));
  out.emplace_back("h22_aps_primes.json", dump(to_json(rects_to_D_aps(nested.points, nested.rects, *primes()).ap)));
  out.emplace_back("h22_aps_pow3.json", dump(to_json(rects_to_D_aps(nested.points, nested.rects, *powers_of(3)).ap)));
  const StagedHypergraph g5 = build_gcg(2, 5, odd_cycle_auxiliary());
  out.emplace_back("g2_5.json", dump(to_json(g5)));
  const Realization g5r = realize_gcg(g5);
  out.emplace_back("g2_5_real.json", dump(to_json(g5r)));
  out.emplace_back("g2_5_real.svg", emit_svg(g5r));
  out.emplace_back("aux_random.json", dump(to_json(random_search_provider(2, 4, 2, 1000, seed))));
  std::mt19937_64 rng(seed);
  Json finds = Json::array();
  for (int q = 0; q < 16; ++q) {
    Coloring col{2, std::vector<Color>(12)};
    for (auto& c : col.colors) c = static_cast<Color>(rng() & 1u);
    finds.push_back(find_monochromatic_edge(s, col));
  }
  out.emplace_back("h22_finder.json", dump(finds));
  out.emplace_back("h22_hasse.json", dump(to_json(dominance_hasse(plain.points).graph)));
  return out;
}

void criterion10(Checks& ck, const AcceptanceOptions& opt) {
  const auto first = pipeline_artifacts(opt.seed);
  const auto second = pipeline_artifacts(opt.seed);
  ck.expect(first.size() == second.size(), "artifact lists differ");
  std::size_t same = 0;
  for (std::size_t i = 0; i < first.size() && i < second.size(); ++i) {
    if (first[i] == second[i]) {
      ++same;
    } else {
      ck.expect(false, first[i].first + " differs between runs");
    }
  }
  if (!opt.artifact_dir.empty()) {
    std::filesystem::create_directories(opt.artifact_dir);
    for (const auto& [name, bytes] : first) {
      std::ofstream(std::filesystem::path(opt.artifact_dir) / name, std::ios::binary) << bytes;
    }
  }
  ck.note(std::to_string(same) + "/" + std::to_string(first.size()) + " JSON/SVG artifacts byte-identical");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log) {
  struct Entry {
    int id;
    const char* title;
    double budget;
    std::function<void(Checks&)> body;
  };
  const std::vector<Entry> entries = {
      {1, "H_2^2 counts, no proper 2-coloring, proper 3-coloring", 1.0, [](Checks& c) { criterion1(c); }},
      {2, "constructive monochromatic-edge finder", 125.0, [&](Checks& c) { criterion2(c, opt); }},
      {3, "rectangle realization of H_2^2 (plain, nested) and H_3^2 sample", 605.0,
       [&](Checks& c) { criterion3(c, opt); }},
      {4, "G^2(g) girth pipeline for g = 5, 7, 9", 15.0, [](Checks& c) { criterion4(c); }},
      {5, "van der Corput strip equivalence, n < 2^12", 30.0, [](Checks& c) { criterion5(c); }},
      {6, "power-of-two progression capture", 10.0, [&](Checks& c) { criterion6(c, opt); }},
      {7, "nested rectangles to progressions (2^i, primes, 3^i)", 30.0, [](Checks& c) { criterion7(c); }},
      {8, "greedy difference sequences", 10.0, [](Checks& c) { criterion8(c); }},
      {9, "Hasse diagram corollary at k = 2", 30.0, [&](Checks& c) { criterion9(c, opt); }},
      {10, "byte-identical artifacts across runs", 120.0, [&](Checks& c) { criterion10(c, opt); }},
  };
  std::vector<CriterionResult> results;
  for (const Entry& entry : entries) {
    CriterionResult res;
    res.id = entry.id;
    res.title = entry.title;
    res.budget_seconds = entry.budget;
    Checks ck;
    const auto t0 = Clock::now();
    try {
      entry.body(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    res.seconds = since(t0);
    ck.expect(res.seconds <= entry.budget, "over the time budget");
    res.passed = ck.ok();
    res.detail = ck.summary();
    char head[64];
    std::snprintf(head, sizeof head, "[%s] criterion %2d (%.2f s) ", res.passed ? "PASS" : "FAIL", res.id,
                  res.seconds);
    log << head << res.title << " -- " << res.detail << std::endl;
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace rectcolor
