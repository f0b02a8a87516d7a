#include <doctest.h>

#include <random>
#include <set>

#include "rectcolor/construction.hpp"
#include "rectcolor/errors.hpp"
#include "rectcolor/geometry.hpp"

using namespace rectcolor;

namespace {

Point2 pt(long x, long y) { return {Rational(x), Rational(y)}; }
Rect box(long x0, long x1, long y0, long y1) { return {Rational(x0), Rational(x1), Rational(y0), Rational(y1)}; }

std::vector<Point2> random_permutation_points(std::mt19937_64& rng, std::size_t n) {
  std::vector<long> xs(n), ys(n);
  std::iota(xs.begin(), xs.end(), 0);
  std::iota(ys.begin(), ys.end(), 0);
  std::shuffle(xs.begin(), xs.end(), rng);
  std::shuffle(ys.begin(), ys.end(), rng);
  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(pt(xs[i], ys[i]));
  return out;
}

// Random nested family over small integers: split intervals recursively.
std::vector<Interval> random_nested(std::mt19937_64& rng, long lo, long hi, int depth) {
  std::vector<Interval> out{{Rational(lo), Rational(hi)}};
  if (depth == 0 || hi - lo < 2) return out;
  long cut = lo + 1 + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo - 1));
  if (rng() % 3) {
    auto left = random_nested(rng, lo, cut, depth - 1);
    out.insert(out.end(), left.begin(), left.end());
  }
  if (rng() % 3) {
    auto right = random_nested(rng, cut, hi, depth - 1);
    out.insert(out.end(), right.begin(), right.end());
  }
  return out;
}

void check_realizes(const StagedHypergraph& s, const Realization& r) {
  CHECK(r.points.size() == s.vertex_count());
  CHECK(r.rects.size() == s.base.edge_count());
  CHECK(verify_realization(r).ok());
  const IncidenceResult inc = incidence_hypergraph(r.points, r.rects);
  CHECK(inc.empty_edges.empty());
  // Realizations place vertex v at x-rank v.
  for (std::size_t i = 0; i < inc.x_order.size(); ++i) CHECK(inc.x_order[i] == i);
  CHECK(edge_multiset_equal(inc.hypergraph, s.base));
}

}  // namespace

TEST_CASE("incidence uses closed rectangles and x-order numbering") {
  const std::vector<Point2> points{pt(3, 0), pt(1, 1), pt(2, 5)};
  const std::vector<Rect> rects{box(1, 2, 1, 5), box(0, 10, 0, 0), box(5, 6, 0, 9)};
  const IncidenceResult inc = incidence_hypergraph(points, rects);
  CHECK(inc.x_order == std::vector<Vertex>{1, 2, 0});
  CHECK(std::vector<Vertex>(inc.hypergraph.edge(0).begin(), inc.hypergraph.edge(0).end()) ==
        std::vector<Vertex>{0, 1});
  CHECK(std::vector<Vertex>(inc.hypergraph.edge(1).begin(), inc.hypergraph.edge(1).end()) == std::vector<Vertex>{2});
  CHECK(inc.empty_edges == std::vector<EdgeId>{2});
}

TEST_CASE("incidence matches a direct scan on random inputs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::set<std::pair<long, long>> distinct;
    while (distinct.size() < 30) distinct.insert({static_cast<long>(rng() % 10), static_cast<long>(rng() % 10)});
    std::vector<Point2> points;
    for (auto [x, y] : distinct) points.push_back(pt(x, y));
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<Rect> rects;
    for (int e = 0; e < 20; ++e) {
      long x0 = rng() % 10, x1 = rng() % 10, y0 = rng() % 10, y1 = rng() % 10;
      rects.push_back(box(std::min(x0, x1), std::max(x0, x1), std::min(y0, y1), std::max(y0, y1)));
    }
    const IncidenceResult inc = incidence_hypergraph(points, rects);
    for (std::size_t e = 0; e < rects.size(); ++e) {
      std::multiset<Vertex> got, want;
      for (Vertex v : inc.hypergraph.edge(e)) got.insert(inc.x_order[v]);
      for (Vertex p = 0; p < points.size(); ++p) {
        if (rects[e].contains(points[p])) want.insert(p);
      }
      CHECK(got == want);
    }
  }
}

TEST_CASE("bounding rectangles capture at least their members") {
  std::mt19937_64 rng(9);
  const auto points = random_permutation_points(rng, 12);
  OrderedHypergraph h(12);
  for (int e = 0; e < 15; ++e) {
    std::set<Vertex> s;
    while (s.size() < 3) s.insert(static_cast<Vertex>(rng() % 12));
    h.add_edge(std::vector<Vertex>(s.begin(), s.end()));
  }
  const auto rects = bounding_rects(points, h);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    for (Vertex v : h.edge(e)) CHECK(rects[e].contains(points[v]));
  }
}

TEST_CASE("realizations of H_k^c and G^2(g) verify") {
  for (auto [k, c] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{1, 1}, {3, 1}, {1, 3}, {2, 2}}) {
    CAPTURE(k);
    CAPTURE(c);
    const StagedHypergraph s = build_hkc(k, c);
    check_realizes(s, realize_hkc(s));
    const Realization nested = realize_hkc_nested(s);
    check_realizes(s, nested);
    const auto proj = y_projections(nested.rects);
    CHECK(is_nested(std::span<const ClosedInterval>(proj)));
  }
  for (std::uint32_t g : {3u, 5u, 8u}) {
    const StagedHypergraph s = build_gcg(2, g, odd_cycle_auxiliary());
    check_realizes(s, realize_gcg(s));
  }
}

TEST_CASE("edges of H_2^2 are realized by ascending pairs") {
  const StagedHypergraph s = build_hkc(2, 2);
  const Realization r = realize_hkc_nested(s);
  for (std::size_t e = 0; e < s.base.edge_count(); ++e) {
    std::vector<Point2> pts;
    for (Vertex v : s.base.edge(e)) pts.push_back(r.points[v]);
    CHECK(is_ascending(pts));
  }
  std::set<Rational> tops;
  for (EdgeId e : s.path_edges) tops.insert(r.rects[e].y_hi);
  CHECK(tops.size() == 1);
}

TEST_CASE("verification reports tampered rectangles") {
  const StagedHypergraph s = build_hkc(2, 2);
  Realization r = realize_hkc(s);
  r.rects[3].x_hi += 1000;
  r.rects[5] = box(-100, -99, -100, -99);
  const VerificationReport rep = verify_realization(r);
  CHECK_FALSE(rep.ok());
  CHECK(rep.mismatch_count == 2);
  CHECK(rep.mismatches == std::vector<EdgeId>{3, 5});
  const std::vector<EdgeId> sample{0, 5};
  CHECK(verify_realization_sample(r, sample).mismatch_count == 1);
  const std::vector<EdgeId> clean{0, 1, 2};
  CHECK(verify_realization_sample(r, clean).ok());
}

TEST_CASE("verification falls back when coordinates tie") {
  Realization r;
  r.points = {pt(0, 0), pt(0, 1), pt(1, 1)};
  r.hypergraph = OrderedHypergraph(3, {{0, 1}, {1, 2}, {0, 1, 2}});
  r.rects = {box(0, 0, 0, 1), box(0, 1, 1, 1), box(0, 1, 0, 1)};
  CHECK(verify_realization(r).ok());
  r.rects[1] = box(0, 1, 0, 1);
  CHECK(verify_realization(r).mismatch_count == 1);
}

TEST_CASE("ascending and nested predicates") {
  CHECK(is_ascending(std::vector<Point2>{pt(2, 2), pt(0, 0), pt(1, 1)}));
  CHECK_FALSE(is_ascending(std::vector<Point2>{pt(0, 1), pt(1, 0)}));
  const std::vector<Interval> good{{0, 4}, {0, 2}, {2, 4}, {0, 4}};
  const std::vector<Interval> bad{{0, 3}, {2, 5}};
  CHECK(is_nested(std::span<const Interval>(good)));
  CHECK_FALSE(is_nested(std::span<const Interval>(bad)));
  // Closed intervals touching at an endpoint overlap.
  const std::vector<ClosedInterval> touch{{0, 2}, {2, 4}};
  CHECK_FALSE(is_nested(std::span<const ClosedInterval>(touch)));
}

TEST_CASE("half-open conversion keeps members") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> values;
    for (int i = 0; i < 10; ++i) values.push_back(Rational(static_cast<long>(rng() % 20)));
    std::vector<ClosedInterval> family;
    for (int e = 0; e < 6; ++e) {
      long a = rng() % 20, b = rng() % 20;
      family.push_back({Rational(std::min(a, b)), Rational(std::max(a, b))});
    }
    const auto half = to_half_open(family, values);
    for (std::size_t e = 0; e < family.size(); ++e) {
      for (const Rational& y : values) {
        CHECK((family[e].lo <= y && y <= family[e].hi) == half[e].contains(y));
      }
    }
  }
}

TEST_CASE("extension to a perfect nested family") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto family = random_nested(rng, 0, 16, 4);
    std::vector<Rational> ys;
    for (int i = 0; i < 8; ++i) ys.push_back(Rational(static_cast<long>(rng() % 40) - 10, 2));
    const NestedExtension ext = extend_to_perfect_nested(family, ys, trial % 2 == 0);
    REQUIRE(ext.family.is_perfect());
    const std::size_t t = ext.family.depth();
    for (std::size_t e = 0; e < family.size(); ++e) {
      CHECK(ext.family.interval_of(ext.interval_labels[e]) == family[e]);
    }
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const std::string& s = ext.point_labels[i];
      CHECK(s.size() == t - 1);
      CHECK(ext.family.interval_of(s).contains(ys[i]));
      CHECK(ext.family.leaf_label(ys[i]) == std::optional<std::string>(s));
      for (std::size_t e = 0; e < family.size(); ++e) {
        const std::string& q = ext.interval_labels[e];
        CHECK(family[e].contains(ys[i]) == (s.compare(0, q.size(), q) == 0));
      }
    }
    // Padding: s0...0 repeats the leaf, other extensions are empty.
    for (const auto& node : ext.family.nodes()) {
      if (!node.is_leaf() || node.label.size() + 1 >= t) continue;
      CHECK(ext.family.interval_of(node.label + "0") == node.interval);
      const Interval pad = ext.family.interval_of(node.label + "1");
      CHECK(pad.lo == pad.hi);
    }
  }
}

TEST_CASE("extension rejects crossing or empty intervals") {
  const std::vector<Rational> ys{Rational(1)};
  const std::vector<Interval> crossing{{0, 3}, {2, 5}};
  CHECK_THROWS_AS(extend_to_perfect_nested(crossing, ys), DomainError);
  const std::vector<Interval> empty{{2, 2}};
  CHECK_THROWS_AS(extend_to_perfect_nested(empty, ys), DomainError);
}

TEST_CASE("Hasse diagram matches covering pairs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    const auto points = random_permutation_points(rng, n);
    const HasseDiagram hd = dominance_hasse(points);
    std::set<std::pair<Vertex, Vertex>> got;
    for (std::size_t e = 0; e < hd.graph.edge_count(); ++e) {
      const auto ed = hd.graph.edge(e);
      Vertex a = hd.x_order[ed[0]], b = hd.x_order[ed[1]];
      got.insert({std::min(a, b), std::max(a, b)});
    }
    auto below = [&](std::size_t p, std::size_t q) {
      return points[p].x < points[q].x && points[p].y < points[q].y;
    };
    std::set<std::pair<Vertex, Vertex>> want;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (!below(p, q)) continue;
        bool covered = true;
        for (std::size_t r = 0; r < n && covered; ++r) covered = !(below(p, r) && below(r, q));
        if (covered) want.insert({static_cast<Vertex>(std::min(p, q)), static_cast<Vertex>(std::max(p, q))});
      }
    }
    CHECK(got == want);
  }
  CHECK_THROWS_AS(dominance_hasse(std::vector<Point2>{pt(0, 0), pt(0, 1)}), DomainError);
}

TEST_CASE("monochromatic increasing paths") {
  const std::vector<Point2> points{pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 3)};
  const std::vector<Color> colors{0, 1, 0, 1};
  CHECK_FALSE(monochromatic_increasing_path(points, colors, 2).has_value());
  const std::vector<Color> same{1, 1, 1, 0};
  const auto path = monochromatic_increasing_path(points, same, 3);
  REQUIRE(path.has_value());
  CHECK(*path == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(monochromatic_increasing_path(points, same, 4).has_value());
}

TEST_CASE("SVG output is deterministic and complete") {
  const StagedHypergraph s = build_hkc(2, 2);
  const Realization r = realize_hkc(s);
  const std::string a = emit_svg(r);
  CHECK(a == emit_svg(r));
  auto count = [](const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
  };
  CHECK(count(a, "<circle") == 12);
  CHECK(count(a, "data-edge=") == 14);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  SvgStyle exact;
  exact.rank_coordinates = false;
  CHECK(count(emit_svg(r, exact), "<circle") == 12);
}
