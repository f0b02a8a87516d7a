#include "rectcolor/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "rectcolor/errors.hpp"

namespace rectcolor {

namespace {

const Rational kHalf(1, 2);

// Point indices sorted by one coordinate, with neighbor lookups for
// midpoint expansion. Holds indices only; coordinates stay in `points`.
class CoordIndex {
 public:
  CoordIndex(std::span<const Point2> points, bool use_x) : points_(points), use_x_(use_x) {
    order_.resize(points.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    rank_.resize(points.size());
    for (std::size_t i = 0; i < order_.size(); ++i) rank_[order_[i]] = static_cast<std::uint32_t>(i);
  }

  const Rational& key(std::uint32_t p) const { return use_x_ ? points_[p].x : points_[p].y; }
  std::span<const std::uint32_t> order() const { return order_; }
  std::uint32_t rank(std::uint32_t p) const { return rank_[p]; }

  bool distinct() const {
    for (std::size_t i = 1; i < order_.size(); ++i) {
      if (key(order_[i - 1]) == key(order_[i])) return false;
    }
    return true;
  }

  // Number of points with coordinate < v (resp. <= v).
  std::size_t count_below(const Rational& v) const {
    return static_cast<std::size_t>(
        std::partition_point(order_.begin(), order_.end(),
                             [&](std::uint32_t p) { return key(p) < v; }) -
        order_.begin());
  }
  std::size_t count_at_most(const Rational& v) const {
    return static_cast<std::size_t>(
        std::partition_point(order_.begin(), order_.end(),
                             [&](std::uint32_t p) { return key(p) <= v; }) -
        order_.begin());
  }

  Rational expand_down(const Rational& v) const {
    const std::size_t i = count_below(v);
    return i == 0 ? Rational(v - kHalf) : midpoint(key(order_[i - 1]), v);
  }
  Rational expand_up(const Rational& v) const {
    const std::size_t i = count_at_most(v);
    return i == order_.size() ? Rational(v + kHalf) : midpoint(v, key(order_[i]));
  }

 private:
  std::span<const Point2> points_;
  bool use_x_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> rank_;
};

std::vector<Rect> expanded_boxes(std::span<const Point2> points, const OrderedHypergraph& h,
                                 const CoordIndex& xs, const CoordIndex& ys) {
  std::vector<Rect> out;
  out.reserve(h.edge_count());
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const auto members = h.edge(e);
    if (members.empty()) throw DomainError("edge " + std::to_string(e) + " has no members to box");
    const Point2* x_min = &points[members[0]];
    const Point2* x_max = x_min;
    const Point2* y_min = x_min;
    const Point2* y_max = x_min;
    for (Vertex v : members.subspan(1)) {
      const Point2& p = points[v];
      if (p.x < x_min->x) x_min = &p;
      if (p.x > x_max->x) x_max = &p;
      if (p.y < y_min->y) y_min = &p;
      if (p.y > y_max->y) y_max = &p;
    }
    out.push_back({xs.expand_down(x_min->x), xs.expand_up(x_max->x), ys.expand_down(y_min->y),
                   ys.expand_up(y_max->y)});
  }
  return out;
}

// Exact comparison of rectangle contents against the intended edges.
class Verifier {
 public:
  explicit Verifier(const Realization& r) : r_(r), xs_(r.points, true), ys_(r.points, false) {
    if (r.points.size() != r.hypergraph.vertex_count() ||
        r.rects.size() != r.hypergraph.edge_count()) {
      throw DomainError("realization has " + std::to_string(r.points.size()) + " points and " +
                        std::to_string(r.rects.size()) + " rectangles for a hypergraph with " +
                        std::to_string(r.hypergraph.vertex_count()) + " vertices and " +
                        std::to_string(r.hypergraph.edge_count()) + " edges");
    }
  }

  VerificationReport full() const {
    if (!xs_.distinct() || !ys_.distinct()) return by_scan_all();
    const std::size_t n = r_.points.size();
    const std::size_t m = r_.rects.size();
    std::vector<Win> win(m);
    for (std::size_t e = 0; e < m; ++e) win[e] = window(r_.rects[e]);

    // count(e) = F(xb) - F(xa), F(X) = points with x-rank < X inside [ya, yb).
    std::vector<std::size_t> offsets(n + 2, 0);
    for (const Win& w : win) {
      ++offsets[w.xa + 1];
      ++offsets[w.xb + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::pair<std::uint32_t, bool>> queries(offsets[n + 1]);
    {
      std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
      for (std::size_t e = 0; e < m; ++e) {
        queries[fill[win[e].xa]++] = {static_cast<std::uint32_t>(e), false};
        queries[fill[win[e].xb]++] = {static_cast<std::uint32_t>(e), true};
      }
    }
    std::vector<std::int64_t> count(m, 0);
    std::vector<std::uint32_t> fenwick(n + 1, 0);
    auto prefix = [&](std::size_t i) {
      std::int64_t s = 0;
      for (; i > 0; i -= i & (~i + 1)) s += fenwick[i];
      return s;
    };
    const auto by_x = xs_.order();
    for (std::size_t X = 0; X <= n; ++X) {
      for (std::size_t q = offsets[X]; q < offsets[X + 1]; ++q) {
        const auto [e, plus] = queries[q];
        const std::int64_t inside = prefix(win[e].yb) - prefix(win[e].ya);
        count[e] += plus ? inside : -inside;
      }
      if (X < n) {
        for (std::size_t i = ys_.rank(by_x[X]) + 1; i <= n; i += i & (~i + 1)) ++fenwick[i];
      }
    }

    VerificationReport rep;
    for (std::size_t e = 0; e < m; ++e) {
      bool ok = count[e] == static_cast<std::int64_t>(r_.hypergraph.edge_size(e));
      for (Vertex v : r_.hypergraph.edge(e)) {
        const auto xr = xs_.rank(v);
        const auto yr = ys_.rank(v);
        ok = ok && win[e].xa <= xr && xr < win[e].xb && win[e].ya <= yr && yr < win[e].yb;
      }
      note(rep, e, ok);
    }
    return rep;
  }

  VerificationReport sample(std::span<const EdgeId> rects) const {
    VerificationReport rep;
    std::vector<Vertex> found;
    for (EdgeId e : rects) {
      if (e >= r_.rects.size()) throw DomainError("rectangle id " + std::to_string(e) + " out of range");
      collect(r_.rects[e], found);
      const auto want = r_.hypergraph.edge(e);
      note(rep, e, std::equal(found.begin(), found.end(), want.begin(), want.end()));
    }
    return rep;
  }

 private:
  static void note(VerificationReport& rep, std::size_t e, bool ok) {
    ++rep.rects_checked;
    if (ok) return;
    ++rep.mismatch_count;
    if (rep.mismatches.size() < 16) rep.mismatches.push_back(static_cast<EdgeId>(e));
  }

  struct Win {
    std::uint32_t xa, xb, ya, yb;
  };
  Win window(const Rect& rc) const {
    return {static_cast<std::uint32_t>(xs_.count_below(rc.x_lo)),
            static_cast<std::uint32_t>(std::max(xs_.count_at_most(rc.x_hi), xs_.count_below(rc.x_lo))),
            static_cast<std::uint32_t>(ys_.count_below(rc.y_lo)),
            static_cast<std::uint32_t>(std::max(ys_.count_at_most(rc.y_hi), ys_.count_below(rc.y_lo)))};
  }

  // Point indices inside rc, ascending.
  void collect(const Rect& rc, std::vector<Vertex>& out) const {
    out.clear();
    const Win w = window(rc);
    const auto by_x = xs_.order();
    for (std::size_t i = w.xa; i < w.xb; ++i) {
      const Point2& p = r_.points[by_x[i]];
      if (rc.y_lo <= p.y && p.y <= rc.y_hi) out.push_back(by_x[i]);
    }
    std::sort(out.begin(), out.end());
  }

  VerificationReport by_scan_all() const {
    VerificationReport rep;
    std::vector<Vertex> found;
    for (std::size_t e = 0; e < r_.rects.size(); ++e) {
      collect(r_.rects[e], found);
      const auto want = r_.hypergraph.edge(e);
      note(rep, e, std::equal(found.begin(), found.end(), want.begin(), want.end()));
    }
    return rep;
  }

  const Realization& r_;
  CoordIndex xs_;
  CoordIndex ys_;
};

void require_verified(const Realization& r, const char* what) {
  const VerificationReport rep = Verifier(r).full();
  if (!rep.ok()) {
    throw VerificationError(std::string(what) + ": " + std::to_string(rep.mismatch_count) +
                            " rectangles do not match their edges (first: " +
                            std::to_string(rep.mismatches.front()) + ")");
  }
}

Realization realize_base(const StagedHypergraph& s) {
  Realization r;
  const std::size_t n = s.vertex_count();
  for (std::size_t i = 0; i < n; ++i) {
    r.points.push_back({Rational(static_cast<long>(i)), Rational(static_cast<long>(i))});
  }
  r.hypergraph = s.base;
  r.rects = bounding_rects(r.points, r.hypergraph);
  return r;
}

// Precomputed order data of a template realization, reused for every block.
struct TemplateMaps {
  std::vector<std::size_t> point_y_rank;
  std::size_t y_values = 0;
  // Nested variant only.
  std::vector<std::array<std::size_t, 2>> rect_y_rank;
  struct XSlot {
    std::int64_t left = -1;   // template point at or left of the value
    std::int64_t right = -1;  // template point at or right of the value
    std::size_t pos = 0;      // 1-based position among non-point values in the gap
    std::size_t count = 0;
  };
  std::vector<std::array<XSlot, 2>> rect_x;

  TemplateMaps(const Realization& tpl, bool nested) {
    std::vector<Rational> ys;
    for (const Point2& p : tpl.points) ys.push_back(p.y);
    if (nested) {
      for (const Rect& rc : tpl.rects) {
        ys.push_back(rc.y_lo);
        ys.push_back(rc.y_hi);
      }
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    y_values = ys.size();
    auto y_rank = [&](const Rational& v) {
      return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin());
    };
    for (const Point2& p : tpl.points) point_y_rank.push_back(y_rank(p.y));
    if (!nested) return;

    for (const Rect& rc : tpl.rects) rect_y_rank.push_back({y_rank(rc.y_lo), y_rank(rc.y_hi)});

    const std::size_t m = tpl.points.size();
    // Template x-order equals index order.
    auto left_of = [&](const Rational& v) {
      std::int64_t lo = -1;
      for (std::size_t t = 0; t < m && tpl.points[t].x <= v; ++t) lo = static_cast<std::int64_t>(t);
      return lo;
    };
    std::vector<Rational> extra;
    for (const Rect& rc : tpl.rects) {
      for (const Rational* v : {&rc.x_lo, &rc.x_hi}) {
        const auto l = left_of(*v);
        if (l < 0 || tpl.points[l].x != *v) extra.push_back(*v);
      }
    }
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    auto slot_of = [&](const Rational& v) {
      XSlot s;
      s.left = left_of(v);
      if (s.left >= 0 && tpl.points[s.left].x == v) {
        s.right = s.left;
        return s;
      }
      s.right = s.left + 1 < static_cast<std::int64_t>(m) ? s.left + 1 : -1;
      for (const Rational& u : extra) {
        if (left_of(u) != s.left) continue;
        ++s.count;
        if (u <= v) ++s.pos;
      }
      return s;
    };
    for (const Rect& rc : tpl.rects) rect_x.push_back({slot_of(rc.x_lo), slot_of(rc.x_hi)});
  }

  static Rational map_x(const XSlot& s, std::span<const Point2> pts,
                        std::span<const Vertex> block) {
    if (s.left >= 0 && s.left == s.right) return pts[block[s.left]].x;
    const Rational lo = s.left >= 0 ? pts[block[s.left]].x : Rational(pts[block.front()].x - 1);
    const Rational hi = s.right >= 0 ? pts[block[s.right]].x : Rational(pts[block.back()].x + 1);
    return lo + (hi - lo) * static_cast<long>(s.pos) / static_cast<long>(s.count + 1);
  }
};

Realization realize_staged(const StagedHypergraph& s, bool nested, const char* what) {
  if (s.c == 1) {
    Realization r = realize_base(s);
    require_verified(r, what);
    return r;
  }
  const Realization tpl = realize_staged(*s.copy_template, nested, what);
  const TemplateMaps maps(tpl, nested);

  const std::size_t n = s.vertex_count();
  const std::size_t stage_count = s.stages.size();
  Realization r;
  r.points.resize(n);
  std::vector<Rational> line(stage_count);
  std::set<Rational> lines;
  std::set<Vertex> placed;

  // Phase 1: stage lines, children placed below and left of their parents.
  {
    const auto roots = s.stage_vertices(0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      r.points[roots[i]] = {Rational(static_cast<long>(i)), Rational(0)};
      placed.insert(roots[i]);
    }
    line[0] = 0;
    lines.insert(line[0]);
  }
  std::vector<Rational> left_x;
  for (std::size_t st = 0; st < stage_count; ++st) {
    const Stage& S = s.stages[st];
    if (S.child_count == 0) continue;
    const long r_children = S.child_count;
    const Rational& L = line[st];
    auto below = lines.lower_bound(L);
    const Rational h = below == lines.begin() ? Rational(1) : Rational(L - *std::prev(below));
    const auto members = s.stage_vertices(st);
    left_x.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto it = placed.lower_bound(members[i]);
      left_x[i] = it == placed.begin() ? Rational(r.points[members[i]].x - 1)
                                       : r.points[*std::prev(it)].x;
    }
    for (long i = 1; i <= r_children; ++i) {
      const std::uint32_t t = S.first_child + static_cast<std::uint32_t>(i - 1);
      line[t] = L - h * i / (r_children + 1);
      lines.insert(line[t]);
      for (Vertex u : s.stage_vertices(t)) {
        const Vertex v = s.parent[u];
        const std::size_t pos =
            static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
        const Rational& w = left_x[pos];
        r.points[u] = {w + (r.points[v].x - w) * i / (r_children + 1), line[t]};
        placed.insert(u);
      }
    }
  }
  placed.clear();
  for (std::size_t v = 1; v < n; ++v) {
    if (!(r.points[v - 1].x < r.points[v].x)) {
      throw VerificationError(std::string(what) + ": phase 1 x-order differs from vertex order at " +
                              std::to_string(v));
    }
  }

  // Phase 2: each block becomes a thin copy of the template in its own
  // sub-band just above the stage line.
  std::vector<Rational> band(stage_count);   // height of the band above each line
  std::vector<Rational> gap_below(stage_count);
  std::vector<std::uint32_t> stage_of(n);
  for (std::size_t st = 0; st < stage_count; ++st) {
    const Rational& L = line[st];
    auto it = lines.upper_bound(L);
    band[st] = (it == lines.end() ? Rational(1) : Rational(*it - L)) / 4;
    auto lo = lines.lower_bound(L);
    gap_below[st] = lo == lines.begin() ? Rational(1) : Rational(L - *std::prev(lo));
    const auto members = s.stage_vertices(st);
    for (Vertex v : members) stage_of[v] = static_cast<std::uint32_t>(st);
    const std::size_t blocks = s.block_count(st);
    if (blocks == 0) {
      const long cnt = static_cast<long>(members.size());
      for (long i = 0; i < cnt; ++i) r.points[members[i]].y = L + band[st] * (i + 1) / (cnt + 1);
      continue;
    }
    const Rational width = band[st] / static_cast<long>(blocks);
    const long slots = static_cast<long>(maps.y_values) + 1;
    for (std::size_t b = 0; b < blocks; ++b) {
      const Rational lo_b = L + width * static_cast<long>(b);
      const auto blk = s.block(st, b);
      for (std::size_t t = 0; t < blk.size(); ++t) {
        r.points[blk[t]].y = lo_b + width * static_cast<long>(maps.point_y_rank[t] + 1) / slots;
      }
    }
  }

  r.hypergraph = s.base;
  if (!nested) {
    r.rects = bounding_rects(r.points, r.hypergraph);
  } else {
    const CoordIndex xs(r.points, true);
    r.rects.resize(s.base.edge_count());
    for (std::size_t v = 0; v < n; ++v) {
      const EdgeId e = s.path_edge_of[v];
      if (e == kNoEdge) continue;
      const std::uint32_t st = stage_of[v];
      r.rects[e] = {xs.expand_down(r.points[v].x), xs.expand_up(r.points[s.root[v]].x),
                    line[st] - gap_below[st] / 2, kHalf};
    }
    const long slots = static_cast<long>(maps.y_values) + 1;
    for (std::size_t i = 0; i < s.transversal_edges.size(); ++i) {
      const TransversalTag& tag = s.transversal_tags[i];
      const Rational width = band[tag.stage] / static_cast<long>(s.block_count(tag.stage));
      const Rational lo_b = line[tag.stage] + width * static_cast<long>(tag.block);
      const auto blk = s.block(tag.stage, tag.block);
      const auto& ry = maps.rect_y_rank[tag.copy_edge];
      const auto& rx = maps.rect_x[tag.copy_edge];
      r.rects[s.transversal_edges[i]] = {
          TemplateMaps::map_x(rx[0], r.points, blk), TemplateMaps::map_x(rx[1], r.points, blk),
          lo_b + width * static_cast<long>(ry[0] + 1) / slots,
          lo_b + width * static_cast<long>(ry[1] + 1) / slots};
    }
  }
  require_verified(r, what);
  return r;
}

}  // namespace

std::vector<Rect> bounding_rects(std::span<const Point2> points, const OrderedHypergraph& h) {
  if (points.size() != h.vertex_count()) {
    throw DomainError("point count " + std::to_string(points.size()) + " differs from vertex count " +
                      std::to_string(h.vertex_count()));
  }
  const CoordIndex xs(points, true);
  const CoordIndex ys(points, false);
  return expanded_boxes(points, h, xs, ys);
}

IncidenceResult incidence_hypergraph(std::span<const Point2> points, std::span<const Rect> rects) {
  IncidenceResult out;
  out.x_order.resize(points.size());
  std::iota(out.x_order.begin(), out.x_order.end(), 0);
  std::sort(out.x_order.begin(), out.x_order.end(), [&](Vertex a, Vertex b) {
    return points[a].x != points[b].x ? points[a].x < points[b].x : points[a].y < points[b].y;
  });
  for (std::size_t i = 1; i < out.x_order.size(); ++i) {
    if (points[out.x_order[i - 1]] == points[out.x_order[i]]) {
      throw DomainError("duplicate point at index " + std::to_string(out.x_order[i]));
    }
  }
  out.hypergraph = OrderedHypergraph(points.size());
  std::vector<Vertex> buf;
  for (std::size_t e = 0; e < rects.size(); ++e) {
    const Rect& rc = rects[e];
    auto first = std::partition_point(out.x_order.begin(), out.x_order.end(),
                                      [&](Vertex p) { return points[p].x < rc.x_lo; });
    buf.clear();
    for (auto it = first; it != out.x_order.end() && points[*it].x <= rc.x_hi; ++it) {
      if (rc.contains(points[*it])) buf.push_back(static_cast<Vertex>(it - out.x_order.begin()));
    }
    if (buf.empty()) out.empty_edges.push_back(static_cast<EdgeId>(e));
    out.hypergraph.add_edge(buf);
  }
  return out;
}

Realization realize_hkc(const StagedHypergraph& s) {
  if (s.kind != StagedKind::hkc) throw DomainError("realize_hkc expects an H_k^c instance");
  return realize_staged(s, false, "H_k^c realization");
}

Realization realize_hkc_nested(const StagedHypergraph& s) {
  if (s.kind != StagedKind::hkc) throw DomainError("realize_hkc_nested expects an H_k^c instance");
  return realize_staged(s, true, "nested H_k^c realization");
}

Realization realize_gcg(const StagedHypergraph& s) {
  if (s.kind != StagedKind::gcg) throw DomainError("realize_gcg expects a G^c(g) instance");
  return realize_staged(s, false, "G^c(g) realization");
}

VerificationReport verify_realization(const Realization& r) { return Verifier(r).full(); }

VerificationReport verify_realization_sample(const Realization& r, std::span<const EdgeId> rects) {
  return Verifier(r).sample(rects);
}

std::vector<ClosedInterval> y_projections(std::span<const Rect> rects) {
  std::vector<ClosedInterval> out;
  out.reserve(rects.size());
  for (const Rect& rc : rects) out.push_back({rc.y_lo, rc.y_hi});
  return out;
}

bool is_ascending(std::span<const Point2> points) {
  std::vector<const Point2*> p;
  for (const Point2& q : points) p.push_back(&q);
  std::sort(p.begin(), p.end(), [](const Point2* a, const Point2* b) { return a->x < b->x; });
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (!(p[i - 1]->x < p[i]->x) || !(p[i - 1]->y < p[i]->y)) return false;
  }
  return true;
}

namespace {

// Sorted by lo ascending, hi descending; a stack holds the current chain.
template <class I, class Disjoint>
bool laminar(std::vector<const I*> items, Disjoint disjoint) {
  std::sort(items.begin(), items.end(), [](const I* a, const I* b) {
    return a->lo != b->lo ? a->lo < b->lo : a->hi > b->hi;
  });
  std::vector<const I*> stack;
  for (const I* it : items) {
    while (!stack.empty() && disjoint(*stack.back(), *it)) stack.pop_back();
    if (!stack.empty() && it->hi > stack.back()->hi) return false;
    stack.push_back(it);
  }
  return true;
}

}  // namespace

bool is_nested(std::span<const Interval> family) {
  std::vector<const Interval*> items;
  for (const Interval& i : family) {
    if (i.lo < i.hi) items.push_back(&i);
  }
  return laminar(std::move(items), [](const Interval& a, const Interval& b) { return a.hi <= b.lo; });
}

bool is_nested(std::span<const ClosedInterval> family) {
  std::vector<const ClosedInterval*> items;
  for (const ClosedInterval& i : family) {
    if (i.lo > i.hi) return false;
    items.push_back(&i);
  }
  return laminar(std::move(items),
                 [](const ClosedInterval& a, const ClosedInterval& b) { return a.hi < b.lo; });
}

std::vector<Interval> to_half_open(std::span<const ClosedInterval> family,
                                   std::span<const Rational> values) {
  // Lower ends join the value set so that disjoint closed intervals stay disjoint.
  std::vector<Rational> vals(values.begin(), values.end());
  for (const ClosedInterval& i : family) vals.push_back(i.lo);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<Interval> out;
  out.reserve(family.size());
  for (const ClosedInterval& i : family) {
    if (i.lo > i.hi) throw DomainError("interval with lo > hi");
    auto next = std::upper_bound(vals.begin(), vals.end(), i.hi);
    out.push_back({i.lo, next == vals.end() ? Rational(i.hi + 1) : midpoint(i.hi, *next)});
  }
  return out;
}

Interval PerfectNestedFamily::interval_of(std::string_view label) const {
  if (label.size() + 1 > depth_) {
    throw DomainError("label of length " + std::to_string(label.size()) + " exceeds depth " +
                      std::to_string(depth_));
  }
  std::uint32_t node = 0;
  std::size_t i = 0;
  for (; i < label.size() && !nodes_[node].is_leaf(); ++i) {
    if (label[i] != '0' && label[i] != '1') throw DomainError("label must be binary");
    node = label[i] == '0' ? nodes_[node].left : nodes_[node].right;
  }
  const Interval& iv = nodes_[node].interval;
  const bool zeros = label.substr(i).find_first_not_of('0') == std::string_view::npos;
  return zeros ? iv : Interval{iv.hi, iv.hi};
}

std::optional<std::string> PerfectNestedFamily::leaf_label(const Rational& y) const {
  if (!root().interval.contains(y)) return std::nullopt;
  std::string out;
  std::uint32_t node = 0;
  while (!nodes_[node].is_leaf()) {
    const Node& nd = nodes_[node];
    if (nodes_[nd.left].interval.contains(y)) {
      out.push_back('0');
      node = nd.left;
    } else {
      out.push_back('1');
      node = nd.right;
    }
  }
  out.resize(depth_ - 1, '0');
  return out;
}

bool PerfectNestedFamily::is_perfect() const {
  std::vector<Interval> all;
  for (const Node& nd : nodes_) {
    if (nd.label.size() + 1 > depth_) return false;
    all.push_back(nd.interval);
    if (nd.is_leaf()) {
      if (nd.right != kNone) return false;
      continue;
    }
    const Interval& a = nodes_[nd.left].interval;
    const Interval& b = nodes_[nd.right].interval;
    if (a.lo != nd.interval.lo || a.hi != b.lo || b.hi != nd.interval.hi) return false;
    if (nodes_[nd.left].label != nd.label + "0" || nodes_[nd.right].label != nd.label + "1") return false;
  }
  return is_nested(all);
}

struct PerfectNestedBuilder {
  struct Tmp {
    Interval iv;
    std::vector<std::uint32_t> children;
  };

  static NestedExtension build(std::span<const Interval> family, std::span<const Rational> points_y,
                               bool reserve_root) {
    for (const Interval& i : family) {
      if (!(i.lo < i.hi)) throw DomainError("empty interval in family");
    }
    std::vector<std::uint32_t> order(family.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return family[a].lo != family[b].lo ? family[a].lo < family[b].lo : family[a].hi > family[b].hi;
    });

    std::vector<Tmp> nodes;
    std::vector<std::uint32_t> node_of(family.size());
    std::vector<std::uint32_t> roots;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t idx : order) {
      const Interval& iv = family[idx];
      if (!nodes.empty() && nodes.back().iv == iv) {
        node_of[idx] = static_cast<std::uint32_t>(nodes.size() - 1);
        continue;
      }
      while (!stack.empty() && nodes[stack.back()].iv.hi <= iv.lo) stack.pop_back();
      if (!stack.empty() && iv.hi > nodes[stack.back()].iv.hi) {
        throw DomainError("interval family is not nested");
      }
      const auto id = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back({iv, {}});
      if (stack.empty()) {
        roots.push_back(id);
      } else {
        nodes[stack.back()].children.push_back(id);
      }
      stack.push_back(id);
      node_of[idx] = id;
    }

    auto covered = [&](const Rational& y) {
      for (std::uint32_t rt : roots) {
        if (nodes[rt].iv.contains(y)) return true;
      }
      return false;
    };
    bool need_root = reserve_root || roots.size() != 1;
    for (const Rational& y : points_y) need_root = need_root || !covered(y);

    std::uint32_t root;
    if (!need_root) {
      root = roots.front();
    } else {
      Interval span_all{0, 1};
      bool first = true;
      auto widen = [&](const Rational& lo, const Rational& hi) {
        if (first || lo < span_all.lo) span_all.lo = lo;
        if (first || hi > span_all.hi) span_all.hi = hi;
        first = false;
      };
      for (std::uint32_t rt : roots) widen(nodes[rt].iv.lo, nodes[rt].iv.hi);
      for (const Rational& y : points_y) widen(y, y);
      span_all.lo -= 1;
      span_all.hi += 1;
      root = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back({span_all, roots});
    }

    // Gap children, then left-first binarization.
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      if (nodes[id].children.empty()) continue;
      std::vector<std::uint32_t> filled;
      Rational cur = nodes[id].iv.lo;
      const std::vector<std::uint32_t> kids = nodes[id].children;
      for (std::uint32_t ch : kids) {
        if (cur < nodes[ch].iv.lo) {
          filled.push_back(static_cast<std::uint32_t>(nodes.size()));
          nodes.push_back({{cur, nodes[ch].iv.lo}, {}});
        }
        filled.push_back(ch);
        cur = nodes[ch].iv.hi;
      }
      if (cur < nodes[id].iv.hi) {
        filled.push_back(static_cast<std::uint32_t>(nodes.size()));
        nodes.push_back({{cur, nodes[id].iv.hi}, {}});
      }
      while (filled.size() > 2) {
        const auto merged = static_cast<std::uint32_t>(nodes.size());
        nodes.push_back({{nodes[filled[0]].iv.lo, nodes[filled[1]].iv.hi}, {filled[0], filled[1]}});
        filled.erase(filled.begin());
        filled[0] = merged;
      }
      nodes[id].children = filled;
    }

    NestedExtension out;
    PerfectNestedFamily& fam = out.family;
    std::vector<std::uint32_t> final_id(nodes.size(), PerfectNestedFamily::kNone);
    std::size_t max_len = 0;
    std::vector<std::pair<std::uint32_t, std::string>> todo{{root, ""}};
    while (!todo.empty()) {
      auto [id, label] = std::move(todo.back());
      todo.pop_back();
      final_id[id] = static_cast<std::uint32_t>(fam.nodes_.size());
      max_len = std::max(max_len, label.size());
      fam.nodes_.push_back({nodes[id].iv, label});
      if (nodes[id].children.size() == 2) {
        todo.push_back({nodes[id].children[1], label + "1"});
        todo.push_back({nodes[id].children[0], label + "0"});
      }
    }
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      if (final_id[id] == PerfectNestedFamily::kNone || nodes[id].children.size() != 2) continue;
      fam.nodes_[final_id[id]].left = final_id[nodes[id].children[0]];
      fam.nodes_[final_id[id]].right = final_id[nodes[id].children[1]];
    }
    fam.depth_ = max_len + 1;

    for (std::size_t i = 0; i < family.size(); ++i) {
      out.interval_labels.push_back(fam.nodes_[final_id[node_of[i]]].label);
    }
    for (const Rational& y : points_y) out.point_labels.push_back(*fam.leaf_label(y));
    return out;
  }
};

NestedExtension extend_to_perfect_nested(std::span<const Interval> family,
                                         std::span<const Rational> points_y, bool reserve_root) {
  return PerfectNestedBuilder::build(family, points_y, reserve_root);
}

HasseDiagram dominance_hasse(std::span<const Point2> points) {
  HasseDiagram out;
  out.x_order.resize(points.size());
  std::iota(out.x_order.begin(), out.x_order.end(), 0);
  std::sort(out.x_order.begin(), out.x_order.end(),
            [&](Vertex a, Vertex b) { return points[a].x < points[b].x; });
  std::vector<const Rational*> ys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ys.push_back(&points[out.x_order[i]].y);
    if (i > 0 && points[out.x_order[i - 1]].x == points[out.x_order[i]].x) {
      throw DomainError("dominance order needs distinct x-coordinates");
    }
  }
  {
    std::vector<const Rational*> sorted = ys;
    std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return *a < *b; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (*sorted[i - 1] == *sorted[i]) throw DomainError("dominance order needs distinct y-coordinates");
    }
  }
  out.graph = OrderedHypergraph(points.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    // j covers i iff y_j is below every dominating point seen so far.
    const Rational* best = nullptr;
    for (std::size_t j = i + 1; j < ys.size(); ++j) {
      if (*ys[j] > *ys[i] && (best == nullptr || *ys[j] < *best)) {
        out.graph.add_edge({static_cast<Vertex>(i), static_cast<Vertex>(j)});
        best = ys[j];
      }
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> monochromatic_increasing_path(
    std::span<const Point2> points, std::span<const Color> colors, std::size_t k) {
  if (colors.size() != points.size()) {
    throw DomainError("coloring has " + std::to_string(colors.size()) + " entries for " +
                      std::to_string(points.size()) + " points");
  }
  if (k == 0) throw DomainError("path length k must be >= 1");
  const HasseDiagram hd = dominance_hasse(points);
  const std::size_t n = points.size();
  std::vector<std::size_t> len(n, 1);
  std::vector<Vertex> pred(n, kNoVertex);
  // Edges come sorted by lower endpoint, so lengths are final when read.
  std::vector<std::vector<Vertex>> into(n);
  for (std::size_t e = 0; e < hd.graph.edge_count(); ++e) {
    const auto ed = hd.graph.edge(e);
    into[ed[1]].push_back(ed[0]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (Vertex i : into[j]) {
      if (colors[hd.x_order[i]] != colors[hd.x_order[j]]) continue;
      if (len[i] + 1 > len[j]) {
        len[j] = len[i] + 1;
        pred[j] = i;
      }
    }
    if (len[j] >= k) {
      std::vector<std::size_t> chain;
      for (Vertex v = static_cast<Vertex>(j); chain.size() < k; v = pred[v]) {
        chain.push_back(hd.x_order[v]);
      }
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
  }
  return std::nullopt;
}

}  // namespace rectcolor
