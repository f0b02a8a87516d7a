#include "rectcolor/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "rectcolor/errors.hpp"

namespace rectcolor {

OrderedHypergraph::OrderedHypergraph(std::size_t n, const std::vector<std::vector<Vertex>>& edges)
    : n_(n) {
  std::size_t total = 0;
  for (const auto& e : edges) total += e.size();
  reserve(edges.size(), total);
  for (const auto& e : edges) add_edge(std::span<const Vertex>(e));
}

EdgeId OrderedHypergraph::add_edge(std::span<const Vertex> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= n_) {
      throw DomainError("edge vertex " + std::to_string(members[i]) + " out of range for n=" +
                        std::to_string(n_));
    }
    if (i > 0 && members[i - 1] >= members[i]) {
      throw DomainError("edge vertices must be strictly increasing");
    }
  }
  if (edge_count() >= std::numeric_limits<EdgeId>::max() - 1) {
    throw ResourceLimitError("edge count exceeds 32-bit edge ids");
  }
  members_.insert(members_.end(), members.begin(), members.end());
  offsets_.push_back(members_.size());
  return static_cast<EdgeId>(edge_count() - 1);
}

void OrderedHypergraph::reserve(std::size_t edges, std::size_t incidences) {
  offsets_.reserve(edges + 1);
  members_.reserve(incidences);
}

std::optional<std::size_t> OrderedHypergraph::uniformity() const {
  if (edge_count() == 0) return std::nullopt;
  const std::size_t k = edge_size(0);
  for (std::size_t e = 1; e < edge_count(); ++e) {
    if (edge_size(e) != k) return std::nullopt;
  }
  return k;
}

OrderedHypergraph OrderedHypergraph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> local(n_, kNoVertex);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= n_ || (i > 0 && vertices[i - 1] >= vertices[i])) {
      throw DomainError("induced(): vertex list must be strictly increasing and in range");
    }
    local[vertices[i]] = static_cast<Vertex>(i);
  }
  OrderedHypergraph out(vertices.size());
  std::vector<Vertex> buf;
  for (std::size_t e = 0; e < edge_count(); ++e) {
    buf.clear();
    bool inside = true;
    for (Vertex v : edge(e)) {
      if (local[v] == kNoVertex) {
        inside = false;
        break;
      }
      buf.push_back(local[v]);
    }
    if (inside && !buf.empty()) out.add_edge(buf);
  }
  return out;
}

std::vector<std::vector<Vertex>> OrderedHypergraph::edge_lists() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(edge_count());
  for (std::size_t e = 0; e < edge_count(); ++e) {
    auto s = edge(e);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

void Coloring::validate() const {
  if (palette == 0) throw DomainError("coloring palette must be positive");
  for (Color c : colors) {
    if (c >= palette) {
      throw DomainError("color id " + std::to_string(c) + " >= palette size " +
                        std::to_string(palette));
    }
  }
}

std::size_t Coloring::distinct_colors() const {
  std::vector<Color> sorted = colors;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

namespace {

void check_coloring(const OrderedHypergraph& h, const Coloring& col) {
  if (col.colors.size() != h.vertex_count()) {
    throw DomainError("coloring has " + std::to_string(col.colors.size()) +
                      " entries but hypergraph has " + std::to_string(h.vertex_count()) +
                      " vertices");
  }
  col.validate();
}

bool monochromatic(std::span<const Vertex> e, std::span<const Color> colors) {
  if (e.size() <= 1) return true;
  const Color first = colors[e[0]];
  for (Vertex v : e.subspan(1)) {
    if (colors[v] != first) return false;
  }
  return true;
}

}  // namespace

bool is_proper_coloring(const OrderedHypergraph& h, const Coloring& col) {
  return !naive_monochromatic_edge(h, col).has_value();
}

std::optional<EdgeId> naive_monochromatic_edge(const OrderedHypergraph& h, const Coloring& col) {
  check_coloring(h, col);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (monochromatic(h.edge(e), col.colors)) return static_cast<EdgeId>(e);
  }
  return std::nullopt;
}

std::optional<Coloring> is_c_colorable(const OrderedHypergraph& h, std::uint32_t c,
                                       const SearchLimits& limits) {
  if (c == 0) throw DomainError("palette size must be positive");
  const std::size_t n = h.vertex_count();
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (h.edge_size(e) <= 1) return std::nullopt;
  }
  if (n == 0) return Coloring{c, {}};

  // Edges are checked once their largest vertex is colored.
  std::vector<std::vector<EdgeId>> closing(n);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    closing[h.edge(e).back()].push_back(static_cast<EdgeId>(e));
  }

  std::vector<Color> colors(n, 0);
  std::vector<std::uint32_t> max_used(n + 1, 0);  // max_used[i]: 1 + max color among [0, i)
  std::uint64_t nodes = 0;

  auto consistent = [&](std::size_t v) {
    for (EdgeId e : closing[v]) {
      if (monochromatic(h.edge(e), colors)) return false;
    }
    return true;
  };

  // Iterative DFS: colors[v] is the candidate being tried at depth v.
  std::size_t v = 0;
  colors[0] = 0;
  for (;;) {
    const std::uint32_t limit = std::min<std::uint32_t>(c, max_used[v] + 1);
    if (colors[v] < limit) {
      if (++nodes > limits.node_budget) {
        throw ResourceLimitError("coloring search exceeded node budget of " +
                                 std::to_string(limits.node_budget));
      }
      if (consistent(v)) {
        max_used[v + 1] = std::max(max_used[v], colors[v] + 1);
        if (v + 1 == n) return Coloring{c, colors};
        ++v;
        colors[v] = 0;
        continue;
      }
      ++colors[v];
      continue;
    }
    if (v == 0) return std::nullopt;
    --v;
    ++colors[v];
  }
}

std::uint32_t chromatic_number(const OrderedHypergraph& h, const SearchLimits& limits) {
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (h.edge_size(e) == 0) throw DomainError("hypergraph has an empty edge; no proper coloring");
    if (h.edge_size(e) == 1) {
      throw DomainError("hypergraph has a one-vertex edge; no proper coloring");
    }
  }
  const auto n = static_cast<std::uint32_t>(std::max<std::size_t>(h.vertex_count(), 1));
  for (std::uint32_t c = 1; c <= n; ++c) {
    if (is_c_colorable(h, c, limits)) return c;
  }
  return n;  // unreachable: n colors always suffice without small edges
}

namespace {

// Incidence graph: nodes [0, n) are vertices, [n, n + m) are edges.
struct IncidenceGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> adj;

  explicit IncidenceGraph(const OrderedHypergraph& h) : n(h.vertex_count()) {
    adj.resize(h.vertex_count() + h.edge_count());
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      const auto node = static_cast<std::uint32_t>(n + e);
      for (Vertex v : h.edge(e)) {
        adj[v].push_back(node);
        adj[node].push_back(v);
      }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
  }

  std::vector<std::uint32_t> distances_from(std::uint32_t s) const {
    constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(adj.size(), kInf);
    std::deque<std::uint32_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto w : adj[u]) {
        if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }
};

// Length (in incidence-graph steps) of the shortest cycle through the BFS
// tree rooted at s; the minimum over all s is the girth of the graph.
std::size_t shortest_cycle_from(const IncidenceGraph& g, std::uint32_t s) {
  constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(g.adj.size(), kInf);
  std::vector<std::uint32_t> parent(g.adj.size(), kInf);
  std::deque<std::uint32_t> queue{s};
  dist[s] = 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (2 * static_cast<std::size_t>(dist[u]) + 1 >= best) break;
    bool skipped_parent = false;
    for (auto w : g.adj[u]) {
      if (dist[w] == kInf) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        queue.push_back(w);
      } else if (w == parent[u] && !skipped_parent) {
        skipped_parent = true;  // the tree edge itself; a parallel copy would be a cycle
      } else {
        best = std::min<std::size_t>(best, static_cast<std::size_t>(dist[u]) + dist[w] + 1);
      }
    }
  }
  return best;
}

class WitnessSearch {
 public:
  WitnessSearch(const IncidenceGraph& g, std::size_t steps) : g_(g), steps_(steps) {}

  // Lexicographically first closed walk of `steps` distinct nodes starting
  // at vertex `start` (the walk alternates vertex, edge, vertex, ...).
  bool run(std::uint32_t start) {
    start_ = start;
    dist_ = g_.distances_from(start);
    used_.assign(g_.adj.size(), false);
    path_.assign(1, start);
    used_[start] = true;
    return extend();
  }

  const std::vector<std::uint32_t>& path() const { return path_; }

 private:
  bool extend() {
    const auto u = path_.back();
    const std::size_t remaining = steps_ - path_.size();  // nodes still to add
    for (auto w : g_.adj[u]) {
      if (remaining == 0) {
        if (w == start_) return true;
        continue;
      }
      if (used_[w] || w < start_) continue;  // start is the smallest vertex on the cycle
      if (dist_[w] > remaining) continue;    // cannot close in time
      used_[w] = true;
      path_.push_back(w);
      if (extend()) return true;
      path_.pop_back();
      used_[w] = false;
    }
    return false;
  }

  const IncidenceGraph& g_;
  std::size_t steps_;
  std::uint32_t start_ = 0;
  std::vector<std::uint32_t> dist_;
  std::vector<bool> used_;
  std::vector<std::uint32_t> path_;
};

}  // namespace

CyclesReport hypergraph_girth(const OrderedHypergraph& h) {
  const IncidenceGraph g(h);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t s = 0; s < g.adj.size(); ++s) {
    best = std::min(best, shortest_cycle_from(g, s));
  }
  CyclesReport report;
  if (best == std::numeric_limits<std::size_t>::max()) return report;
  // Incidence graphs are bipartite, so every cycle has even length.
  report.girth = best / 2;

  // The lexicographically smallest sequence starts at the smallest vertex
  // lying on some minimum cycle.
  WitnessSearch search(g, best);
  for (std::uint32_t v = 0; v < h.vertex_count(); ++v) {
    if (!search.run(v)) continue;
    const auto& p = search.path();
    for (std::size_t i = 0; i < p.size(); i += 2) {
      report.witness.push_back({p[i], static_cast<EdgeId>(p[i + 1] - g.n)});
    }
    break;
  }
  if (report.witness.empty()) throw VerificationError("girth witness reconstruction failed");
  return report;
}

bool is_valid_cycle(const OrderedHypergraph& h, std::span<const CycleStep> witness) {
  const std::size_t g = witness.size();
  if (g < 2) return false;
  std::vector<Vertex> vs;
  std::vector<EdgeId> es;
  for (const auto& step : witness) {
    if (step.vertex >= h.vertex_count() || step.edge >= h.edge_count()) return false;
    vs.push_back(step.vertex);
    es.push_back(step.edge);
  }
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;
  if (std::adjacent_find(es.begin(), es.end()) != es.end()) return false;
  auto in = [&](Vertex v, EdgeId e) {
    auto members = h.edge(e);
    return std::binary_search(members.begin(), members.end(), v);
  };
  for (std::size_t i = 0; i < g; ++i) {
    const auto& cur = witness[i];
    const auto& next = witness[(i + 1) % g];
    if (!in(cur.vertex, cur.edge) || !in(next.vertex, cur.edge)) return false;
  }
  return true;
}

bool edge_multiset_equal(const OrderedHypergraph& a, const OrderedHypergraph& b) {
  if (a.vertex_count() != b.vertex_count()) {
    throw DomainError("edge_multiset_equal: vertex counts differ (" +
                      std::to_string(a.vertex_count()) + " vs " +
                      std::to_string(b.vertex_count()) + ")");
  }
  if (a.edge_count() != b.edge_count()) return false;
  auto sorted_ids = [](const OrderedHypergraph& h) {
    std::vector<std::size_t> ids(h.edge_count());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    std::sort(ids.begin(), ids.end(), [&](std::size_t x, std::size_t y) {
      auto ex = h.edge(x);
      auto ey = h.edge(y);
      return std::lexicographical_compare(ex.begin(), ex.end(), ey.begin(), ey.end());
    });
    return ids;
  };
  const auto ia = sorted_ids(a);
  const auto ib = sorted_ids(b);
  for (std::size_t i = 0; i < ia.size(); ++i) {
    auto ea = a.edge(ia[i]);
    auto eb = b.edge(ib[i]);
    if (!std::equal(ea.begin(), ea.end(), eb.begin(), eb.end())) return false;
  }
  return true;
}

}  // namespace rectcolor
