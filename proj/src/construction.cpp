#include "rectcolor/construction.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "rectcolor/errors.hpp"

namespace rectcolor {

namespace {

void check_vertex_budget(const BigInt& predicted, const BuildLimits& limits, const char* what) {
  if (predicted > BigInt(std::to_string(limits.max_vertices))) {
    throw ResourceLimitError(std::string(what) + " would have " + predicted.get_str() +
                             " vertices, above the limit of " +
                             std::to_string(limits.max_vertices));
  }
}

BigInt big_pow(const BigInt& base, const BigInt& exponent) {
  if (!exponent.fits_ulong_p() || exponent > 4'000'000) {
    throw ResourceLimitError("count " + base.get_str() + "^" + exponent.get_str() +
                             " is too large to represent");
  }
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  return out;
}

}  // namespace

OrderedHypergraph build_kary_tree_hypergraph(std::uint32_t k, std::uint32_t depth,
                                             const BuildLimits& limits) {
  if (k == 0 || depth == 0) throw DomainError("k-ary tree needs k >= 1 and depth >= 1");
  BigInt total = 0;
  BigInt layer = 1;
  for (std::uint32_t d = 0; d < depth; ++d) {
    total += layer;
    layer *= k;
  }
  check_vertex_budget(total, limits, "k-ary tree hypergraph");
  const std::size_t n = total.get_ui();

  // In BFS order the children of vertex v are k*v+1 .. k*v+k.
  std::vector<Vertex> level_start{0};
  std::size_t width = 1;
  for (std::uint32_t d = 1; d < depth; ++d) {
    level_start.push_back(static_cast<Vertex>(level_start.back() + width));
    width *= k;
  }
  const std::size_t first_leaf = level_start.back();

  OrderedHypergraph h(n);
  std::vector<Vertex> buf;
  for (std::size_t leaf = first_leaf; leaf < n; ++leaf) {
    buf.clear();
    for (std::size_t v = leaf;; v = (v - 1) / k) {
      buf.push_back(static_cast<Vertex>(v));
      if (v == 0) break;
    }
    std::reverse(buf.begin(), buf.end());
    h.add_edge(buf);
  }
  for (std::size_t v = 0; v < first_leaf; ++v) {
    buf.clear();
    for (std::uint32_t i = 1; i <= k; ++i) buf.push_back(static_cast<Vertex>(k * v + i));
    h.add_edge(buf);
  }
  return h;
}

FmSubsets::FmSubsets(std::span<const Vertex> ordered, std::size_t m) : items_(ordered), m_(m) {
  if (m == 0 || ordered.empty() || ordered.size() % m != 0) {
    throw DomainError("f_m: list length " + std::to_string(ordered.size()) +
                      " is not a positive multiple of m=" + std::to_string(m));
  }
  choice_.assign(ordered.size() / m, 0);
}

bool FmSubsets::next(std::vector<Vertex>& out) {
  if (done_) return false;
  if (started_) {
    std::size_t i = choice_.size();
    while (i > 0) {
      --i;
      if (++choice_[i] < m_) break;
      choice_[i] = 0;
      if (i == 0) {
        done_ = true;
        return false;
      }
    }
  }
  started_ = true;
  out.resize(choice_.size());
  for (std::size_t b = 0; b < choice_.size(); ++b) out[b] = items_[b * m_ + choice_[b]];
  return true;
}

std::optional<std::uint64_t> FmSubsets::count() const {
  std::uint64_t total = 1;
  for (std::size_t b = 0; b < choice_.size(); ++b) {
    if (total > UINT64_MAX / m_) return std::nullopt;
    total *= m_;
  }
  return total;
}

std::uint32_t StagedHypergraph::leaf_level() const {
  if (c <= 1) return 0;
  return kind == StagedKind::hkc ? k - 1 : 1;
}

std::vector<Vertex> StagedHypergraph::path(Vertex v) const {
  std::vector<Vertex> out;
  for (Vertex u = v; u != kNoVertex; u = parent[u]) out.push_back(u);
  return out;
}

HkcCounts predict_hkc_counts(std::uint32_t k, std::uint32_t c) {
  if (k == 0 || c == 0) throw DomainError("H_k^c needs k >= 1 and c >= 1");
  HkcCounts out;
  if (c == 1) {
    out.vertices = k;
    out.edges = 1;
    out.path_edges = 0;
    out.transversal_edges = 0;
    out.stages_per_level = {1};
    return out;
  }
  const HkcCounts prev = predict_hkc_counts(k, c - 1);
  const BigInt& m = prev.vertices;
  BigInt stages = 1;
  out.vertices = 0;
  out.transversal_edges = 0;
  for (std::uint32_t j = 0; j < k; ++j) {
    out.stages_per_level.push_back(stages);
    const BigInt blocks = big_pow(m, k - j - 1);
    out.vertices += stages * blocks * m;
    out.transversal_edges += stages * blocks * prev.edges;
    if (j + 1 < k) stages *= big_pow(m, blocks);
  }
  out.path_edges = out.stages_per_level.back() * m;
  out.edges = out.path_edges + out.transversal_edges;
  return out;
}

namespace {

// Forest in creation order: stage s owns creation ids [first[s], first[s] + size[s]).
struct ForestDraft {
  std::vector<Vertex> parent;
  std::vector<Stage> stages;
  std::vector<std::size_t> first;
  std::vector<std::size_t> size;

  std::uint32_t add_stage(std::uint32_t level, std::size_t count, std::uint32_t block_size,
                          std::uint32_t parent_stage) {
    Stage st;
    st.level = level;
    st.block_size = block_size;
    st.parent_stage = parent_stage;
    stages.push_back(st);
    first.push_back(parent.size());
    size.push_back(count);
    parent.resize(parent.size() + count, kNoVertex);
    return static_cast<std::uint32_t>(stages.size() - 1);
  }
};

// Relabels the draft to post-order and emits path and transversal edges.
void finalize(StagedHypergraph& out, ForestDraft&& draft, bool with_paths) {
  const std::size_t n = draft.parent.size();

  std::vector<std::size_t> child_offsets(n + 1, 0);
  for (Vertex p : draft.parent) {
    if (p != kNoVertex) ++child_offsets[p + 1];
  }
  std::partial_sum(child_offsets.begin(), child_offsets.end(), child_offsets.begin());
  std::vector<Vertex> children(child_offsets.back());
  {
    std::vector<std::size_t> fill(child_offsets.begin(), child_offsets.end() - 1);
    for (std::size_t v = 0; v < n; ++v) {
      const Vertex p = draft.parent[v];
      if (p != kNoVertex) children[fill[p]++] = static_cast<Vertex>(v);
    }
  }

  std::vector<Vertex> post(n, kNoVertex);
  {
    Vertex next = 0;
    std::vector<std::pair<Vertex, std::size_t>> stack;
    for (std::size_t r = 0; r < n; ++r) {
      if (draft.parent[r] != kNoVertex) continue;
      stack.emplace_back(static_cast<Vertex>(r), child_offsets[r]);
      while (!stack.empty()) {
        auto& [v, cursor] = stack.back();
        if (cursor < child_offsets[v + 1]) {
          const Vertex ch = children[cursor++];
          stack.emplace_back(ch, child_offsets[ch]);
        } else {
          post[v] = next++;
          stack.pop_back();
        }
      }
    }
  }

  out.parent.assign(n, kNoVertex);
  for (std::size_t v = 0; v < n; ++v) {
    if (draft.parent[v] != kNoVertex) out.parent[post[v]] = post[draft.parent[v]];
  }
  out.root.assign(n, kNoVertex);
  // Parents carry larger post-order indices, so a descending sweep sees them first.
  for (std::size_t i = n; i-- > 0;) {
    out.root[i] = out.parent[i] == kNoVertex ? static_cast<Vertex>(i) : out.root[out.parent[i]];
  }

  std::vector<std::uint32_t> level(n, 0);
  out.stages = std::move(draft.stages);
  out.stage_offsets.assign(1, 0);
  out.stage_members.clear();
  out.stage_members.reserve(n);
  for (std::size_t s = 0; s < out.stages.size(); ++s) {
    for (std::size_t i = 0; i < draft.size[s]; ++i) {
      const Vertex v = post[draft.first[s] + i];
      out.stage_members.push_back(v);
      level[v] = out.stages[s].level;
    }
    out.stage_offsets.push_back(out.stage_members.size());
  }

  const StagedHypergraph* tpl = out.copy_template.get();
  std::size_t path_count = 0;
  std::size_t transversal_count = 0;
  const std::uint32_t leaf = out.leaf_level();
  if (with_paths) {
    for (std::size_t v = 0; v < n; ++v) path_count += level[v] == leaf;
  }
  for (std::size_t s = 0; s < out.stages.size(); ++s) {
    if (out.stages[s].block_size != 0) {
      transversal_count += out.block_count(s) * tpl->base.edge_count();
    }
  }
  out.base = OrderedHypergraph(n);
  out.base.reserve(path_count + transversal_count,
                   path_count * (leaf + 1) + transversal_count * (tpl ? tpl->k : 0));

  out.path_edge_of.assign(n, kNoEdge);
  out.path_edges.clear();
  if (with_paths) {
    std::vector<Vertex> buf;
    for (std::size_t v = 0; v < n; ++v) {
      if (level[v] != leaf) continue;
      buf = out.path(static_cast<Vertex>(v));
      const EdgeId e = out.base.add_edge(buf);
      out.path_edges.push_back(e);
      out.path_edge_of[v] = e;
    }
  }

  out.transversal_edges.clear();
  out.transversal_tags.clear();
  std::vector<Vertex> buf;
  for (std::size_t s = 0; s < out.stages.size(); ++s) {
    out.stages[s].first_tag = out.transversal_edges.size();
    if (out.stages[s].block_size == 0) continue;
    for (std::size_t b = 0; b < out.block_count(s); ++b) {
      const auto members = out.block(s, b);
      for (std::size_t e = 0; e < tpl->base.edge_count(); ++e) {
        buf.clear();
        for (Vertex t : tpl->base.edge(e)) buf.push_back(members[t]);
        out.transversal_edges.push_back(out.base.add_edge(buf));
        out.transversal_tags.push_back({static_cast<std::uint32_t>(s),
                                        static_cast<std::uint32_t>(b),
                                        static_cast<std::uint32_t>(e)});
      }
    }
  }
}

StagedHypergraph make_base(StagedKind kind, std::uint32_t k) {
  StagedHypergraph out;
  out.kind = kind;
  out.k = k;
  out.c = 1;
  ForestDraft draft;
  draft.add_stage(0, k, 0, kNoStage);
  finalize(out, std::move(draft), false);
  std::vector<Vertex> all(k);
  std::iota(all.begin(), all.end(), 0);
  out.base.add_edge(all);
  return out;
}

StagedHypergraph build_hkc_unchecked(std::uint32_t k, std::uint32_t c) {
  if (c == 1) return make_base(StagedKind::hkc, k);

  auto tpl = std::make_shared<const StagedHypergraph>(build_hkc_unchecked(k, c - 1));
  const std::size_t m = tpl->vertex_count();

  StagedHypergraph out;
  out.kind = StagedKind::hkc;
  out.k = k;
  out.c = c;
  out.m = m;
  out.copy_template = tpl;

  ForestDraft draft;
  std::size_t roots = 1;
  for (std::uint32_t j = 0; j < k; ++j) roots *= m;
  draft.add_stage(0, roots, static_cast<std::uint32_t>(m), kNoStage);

  // Breadth-first: stage ids grow level by level, children of a stage in
  // lexicographic order of their spawning subset.
  std::vector<std::size_t> choice;
  for (std::size_t s = 0; s < draft.stages.size(); ++s) {
    const std::uint32_t lvl = draft.stages[s].level;
    if (lvl + 1 >= k) continue;
    const std::size_t blocks = draft.size[s] / m;
    choice.assign(blocks, 0);
    draft.stages[s].first_child = static_cast<std::uint32_t>(draft.stages.size());
    std::uint32_t spawned = 0;
    for (;;) {
      const std::uint32_t t = draft.add_stage(lvl + 1, blocks, static_cast<std::uint32_t>(m),
                                              static_cast<std::uint32_t>(s));
      for (std::size_t b = 0; b < blocks; ++b) {
        draft.parent[draft.first[t] + b] =
            static_cast<Vertex>(draft.first[s] + b * m + choice[b]);
      }
      ++spawned;
      std::size_t i = blocks;
      while (i > 0 && ++choice[i - 1] == m) choice[--i] = 0;
      if (i == 0) break;
    }
    draft.stages[s].child_count = spawned;
  }
  finalize(out, std::move(draft), true);
  return out;
}

}  // namespace

StagedHypergraph build_hkc(std::uint32_t k, std::uint32_t c, const BuildLimits& limits) {
  if (k == 0 || c == 0) throw DomainError("H_k^c needs k >= 1 and c >= 1");
  const HkcCounts counts = predict_hkc_counts(k, c);
  check_vertex_budget(counts.vertices, limits,
                      ("H_" + std::to_string(k) + "^" + std::to_string(c)).c_str());
  if (counts.edges >= BigInt(std::to_string(kNoEdge))) {
    throw ResourceLimitError("edge count " + counts.edges.get_str() + " exceeds 32-bit edge ids");
  }
  return build_hkc_unchecked(k, c);
}

void StagedHypergraph::validate() const {
  auto fail = [](const std::string& msg) { throw VerificationError("staged hypergraph: " + msg); };
  const std::size_t n = vertex_count();
  if (parent.size() != n || root.size() != n || path_edge_of.size() != n) fail("array sizes");
  if (stage_offsets.size() != stages.size() + 1 || stage_members.size() != n) fail("stage table");

  std::vector<std::uint32_t> stage_of(n, kNoStage);
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const auto members = stage_vertices(s);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Vertex v = members[i];
      if (v >= n || stage_of[v] != kNoStage) fail("stages do not partition the vertices");
      if (i > 0 && members[i - 1] >= v) fail("stage members not ascending");
      stage_of[v] = static_cast<std::uint32_t>(s);
    }
    const Stage& st = stages[s];
    if (st.block_size != 0 && members.size() % st.block_size != 0) fail("ragged blocks");
    // One vertex per tree.
    std::vector<Vertex> roots;
    for (Vertex v : members) roots.push_back(root[v]);
    std::sort(roots.begin(), roots.end());
    if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) {
      fail("stage " + std::to_string(s) + " holds two vertices of one tree");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    const Stage& st = stages[stage_of[v]];
    if (parent[v] == kNoVertex) {
      if (st.level != 0 || root[v] != v) fail("root outside level 0");
    } else {
      if (parent[v] <= v) fail("parent precedes child in vertex order");
      if (stage_of[parent[v]] != st.parent_stage) fail("parent not in parent stage");
      if (root[v] != root[parent[v]]) fail("root mismatch");
    }
  }

  if (c > 1 && kind == StagedKind::hkc) {
    std::size_t expected = 1;
    for (std::uint32_t i = 0; i < k; ++i) expected *= m;
    for (std::size_t s = 0; s < stages.size(); ++s) {
      std::size_t want = 1;
      for (std::uint32_t i = stages[s].level; i < k; ++i) want *= m;
      if (stage_vertices(s).size() != want) fail("stage size differs from m^(k-j)");
      if (stages[s].block_size != m) fail("block size differs from m");
    }
    (void)expected;
  }
  if (kind == StagedKind::hkc) {
    for (std::size_t e = 0; e < base.edge_count(); ++e) {
      if (base.edge_size(e) != k) fail("edge " + std::to_string(e) + " is not k-uniform");
    }
  }

  const std::uint32_t leaf = leaf_level();
  std::size_t leaves = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const bool is_leaf = c > 1 && stages[stage_of[v]].level == leaf;
    if (!is_leaf) {
      if (path_edge_of[v] != kNoEdge) fail("non-leaf owns a path edge");
      continue;
    }
    ++leaves;
    const auto p = path(static_cast<Vertex>(v));
    if (p.size() != leaf + 1) fail("path length");
    const auto e = base.edge(path_edge_of[v]);
    if (!std::equal(p.begin(), p.end(), e.begin(), e.end())) fail("path edge mismatch");
  }
  if (leaves != path_edges.size()) fail("path edge count");

  if (transversal_tags.size() != transversal_edges.size()) fail("tag table");
  // The finder addresses tags as first_tag + block * |E(template)| + copy_edge.
  std::size_t expected_tag = 0;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    if (stages[s].first_tag != expected_tag) fail("tag offsets");
    if (stages[s].block_size == 0) continue;
    if (!copy_template) fail("blocks without a template");
    const std::size_t per_block = copy_template->base.edge_count();
    for (std::size_t b = 0; b < block_count(s); ++b) {
      for (std::size_t e = 0; e < per_block; ++e, ++expected_tag) {
        if (expected_tag >= transversal_tags.size() ||
            !(transversal_tags[expected_tag] ==
              TransversalTag{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(b),
                             static_cast<std::uint32_t>(e)})) {
          fail("transversal tags out of layout");
        }
      }
    }
  }
  if (expected_tag != transversal_tags.size()) fail("extra transversal tags");
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const Stage& st = stages[s];
    for (std::uint32_t i = 0; i < st.child_count; ++i) {
      if (st.first_child + i >= stages.size() || stages[st.first_child + i].parent_stage != s) {
        fail("child stage range");
      }
    }
  }
  for (std::size_t i = 0; i < transversal_edges.size(); ++i) {
    const TransversalTag& tag = transversal_tags[i];
    const auto members = block(tag.stage, tag.block);
    const auto tpl_edge = copy_template->base.edge(tag.copy_edge);
    const auto e = base.edge(transversal_edges[i]);
    if (e.size() != tpl_edge.size()) fail("transversal edge size");
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] != members[tpl_edge[j]]) fail("transversal edge is not the template copy");
    }
  }

  if (kind == StagedKind::gcg && c > 1) {
    for (std::size_t e = 0; e < base.edge_count(); ++e) {
      const auto ed = base.edge(e);
      const auto s0 = stage_of[ed[0]];
      const auto s1 = stage_of[ed[1]];
      if (s0 == 0 && s1 == 0) fail("edge inside the level-0 stage");
      if (s0 != 0 && s1 != 0 && s0 != s1) fail("edge between level-1 stages");
    }
  }
}

namespace {

EdgeId find_in(const StagedHypergraph& s, std::span<const Color> colors, Color tracked) {
  if (s.c == 1) return 0;
  const StagedHypergraph& tpl = *s.copy_template;

  auto descend_into_copy = [&](std::uint32_t stage, std::size_t b, std::span<const Vertex> blk) {
    std::vector<Color> local(blk.size());
    for (std::size_t t = 0; t < blk.size(); ++t) {
      const Color col = colors[blk[t]];
      local[t] = col > tracked ? col - 1 : col;
    }
    const EdgeId inner = find_in(tpl, local, 0);
    return s.transversal_edges[s.stages[stage].first_tag + b * tpl.base.edge_count() + inner];
  };

  if (s.kind == StagedKind::gcg) {
    // Some auxiliary edge is monochromatic on the level-0 stage; its child
    // stage either repeats that color along a parent-child edge or misses it.
    const auto roots = s.stage_vertices(0);
    const auto& aux = s.auxiliary->base;
    for (std::uint32_t e = 0; e < aux.edge_count(); ++e) {
      const auto members = aux.edge(e);
      const Color col = colors[roots[members[0]]];
      bool mono = true;
      for (Vertex v : members) mono = mono && colors[roots[v]] == col;
      if (!mono) continue;
      const std::uint32_t stage = 1 + e;
      const auto blk = s.stage_vertices(stage);
      for (Vertex v : blk) {
        if (colors[v] == col) return s.path_edge_of[v];
      }
      std::vector<Color> local(blk.size());
      for (std::size_t t = 0; t < blk.size(); ++t) {
        local[t] = colors[blk[t]] > col ? colors[blk[t]] - 1 : colors[blk[t]];
      }
      const EdgeId inner = find_in(tpl, local, 0);
      return s.transversal_edges[s.stages[stage].first_tag + inner];
    }
    return 0;  // more colors than the auxiliary hypergraph defeats
  }

  std::uint32_t stage = 0;
  std::vector<std::size_t> choice;
  for (;;) {
    const Stage& st = s.stages[stage];
    const std::size_t blocks = s.block_count(stage);
    choice.assign(blocks, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
      const auto blk = s.block(stage, b);
      std::size_t pos = 0;
      while (pos < blk.size() && colors[blk[pos]] != tracked) ++pos;
      if (pos == blk.size()) return descend_into_copy(stage, b, blk);
      choice[b] = pos;
    }
    if (st.level == s.leaf_level()) return s.path_edge_of[s.block(stage, 0)[choice[0]]];
    std::size_t rank = 0;
    for (std::size_t b = 0; b < blocks; ++b) rank = rank * s.m + choice[b];
    stage = st.first_child + static_cast<std::uint32_t>(rank);
  }
}

}  // namespace

EdgeId find_monochromatic_edge(const StagedHypergraph& s, const Coloring& col, Color tracked) {
  if (col.colors.size() != s.vertex_count()) {
    throw DomainError("coloring has " + std::to_string(col.colors.size()) +
                      " entries but hypergraph has " + std::to_string(s.vertex_count()) +
                      " vertices");
  }
  col.validate();
  const EdgeId e = find_in(s, col.colors, tracked);
  const auto members = s.base.edge(e);
  for (Vertex v : members) {
    if (col.colors[v] != col.colors[members[0]]) {
      throw DomainError("palette exceeds guarantee: the coloring uses " +
                        std::to_string(col.distinct_colors()) +
                        " colors and the walk ended on a non-monochromatic edge");
    }
  }
  return e;
}

AuxiliaryHypergraph odd_cycle_provider(std::size_t g) {
  std::size_t len = std::max<std::size_t>(g, 3);
  if (len % 2 == 0) ++len;
  OrderedHypergraph h(len);
  for (std::size_t i = 0; i + 1 < len; ++i) {
    h.add_edge({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  h.add_edge({0, static_cast<Vertex>(len - 1)});
  return certify_auxiliary(std::move(h), g, 3);
}

AuxiliaryHypergraph certify_auxiliary(OrderedHypergraph h, std::size_t g,
                                      std::uint32_t chromatic_lower_bound,
                                      const SearchLimits& search) {
  if (chromatic_lower_bound < 2) throw DomainError("chromatic lower bound must be >= 2");
  const CyclesReport girth = hypergraph_girth(h);
  if (girth.girth && *girth.girth < g) {
    throw DomainError("auxiliary hypergraph has girth " + std::to_string(*girth.girth) +
                      " < " + std::to_string(g));
  }
  AuxiliaryHypergraph out;
  out.claimed_girth = g;
  out.claimed_chromatic_lower_bound = chromatic_lower_bound;
  try {
    if (is_c_colorable(h, chromatic_lower_bound - 1, search)) {
      throw DomainError("auxiliary hypergraph is " + std::to_string(chromatic_lower_bound - 1) +
                        "-colorable");
    }
    out.certificate = Certificate::verified_exhaustively;
  } catch (const ResourceLimitError&) {
    out.certificate = Certificate::user_asserted;
  }
  out.base = std::move(h);
  return out;
}

AuxiliaryHypergraph random_search_provider(std::size_t uniformity, std::size_t g,
                                           std::uint32_t c, std::uint64_t budget,
                                           std::uint64_t seed, const SearchLimits& search) {
  if (uniformity < 2 || g < 2 || c < 1) {
    throw DomainError("random search needs uniformity >= 2, g >= 2, c >= 1");
  }
  std::mt19937_64 rng(seed);
  const std::size_t n_min = std::max<std::size_t>({uniformity + 1, g, 3});
  const std::size_t n_span = 2 * uniformity + 5;
  std::vector<Vertex> pool;
  std::vector<Vertex> edge;
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    const std::size_t n = n_min + trial % n_span;
    std::vector<std::vector<Vertex>> edges;
    const std::size_t candidates = uniformity == 2 ? n * (n - 1) / 2 : 4 * n;
    std::vector<std::vector<Vertex>> order;
    if (uniformity == 2) {
      for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) order.push_back({a, b});
      }
      std::shuffle(order.begin(), order.end(), rng);
    } else {
      pool.resize(n);
      std::iota(pool.begin(), pool.end(), 0);
      for (std::size_t i = 0; i < candidates; ++i) {
        std::shuffle(pool.begin(), pool.end(), rng);
        edge.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(uniformity));
        std::sort(edge.begin(), edge.end());
        order.push_back(edge);
      }
    }
    for (auto& cand : order) {
      edges.push_back(cand);
      const CyclesReport r = hypergraph_girth(OrderedHypergraph(n, edges));
      if (r.girth && *r.girth < g) edges.pop_back();
    }
    OrderedHypergraph h(n, edges);
    try {
      if (is_c_colorable(h, c, search)) continue;
    } catch (const ResourceLimitError&) {
      continue;
    }
    AuxiliaryHypergraph out;
    out.base = std::move(h);
    out.claimed_girth = g;
    out.claimed_chromatic_lower_bound = c + 1;
    out.certificate = Certificate::verified_exhaustively;
    return out;
  }
  throw ResourceLimitError("random search found no " + std::to_string(uniformity) +
                           "-uniform hypergraph of girth >= " + std::to_string(g) +
                           " that is not " + std::to_string(c) + "-colorable within " +
                           std::to_string(budget) + " trials");
}

AuxiliaryProvider odd_cycle_auxiliary() {
  return [](std::size_t uniformity, std::size_t g, std::uint32_t chromatic_lower_bound) {
    if (uniformity != 2 || chromatic_lower_bound > 3) {
      throw DomainError("odd-cycle provider supplies uniformity 2 and chromatic number 3; asked "
                        "for uniformity " + std::to_string(uniformity) + " and chromatic >= " +
                        std::to_string(chromatic_lower_bound));
    }
    return odd_cycle_provider(g);
  };
}

AuxiliaryProvider random_search_auxiliary(std::uint64_t budget, std::uint64_t seed,
                                          const SearchLimits& search) {
  return [=](std::size_t uniformity, std::size_t g, std::uint32_t chromatic_lower_bound) {
    return random_search_provider(uniformity, g, chromatic_lower_bound - 1, budget, seed, search);
  };
}

AuxiliaryProvider fixed_auxiliary(AuxiliaryHypergraph h) {
  return [h = std::move(h)](std::size_t uniformity, std::size_t g,
                            std::uint32_t chromatic_lower_bound) {
    const auto u = h.base.uniformity();
    if (!u || *u != uniformity || h.claimed_girth < g ||
        h.claimed_chromatic_lower_bound < chromatic_lower_bound) {
      throw DomainError("supplied auxiliary hypergraph does not meet uniformity " +
                        std::to_string(uniformity) + ", girth " + std::to_string(g) +
                        ", chromatic >= " + std::to_string(chromatic_lower_bound));
    }
    return h;
  };
}

StagedHypergraph build_gcg(std::uint32_t c, std::uint32_t g, const AuxiliaryProvider& provider,
                           const BuildLimits& limits) {
  if (c == 0 || g < 2) throw DomainError("G^c(g) needs c >= 1 and g >= 2");
  if (c == 1) {
    StagedHypergraph out = make_base(StagedKind::gcg, 2);
    out.g = g;
    return out;
  }
  auto tpl = std::make_shared<const StagedHypergraph>(build_gcg(c - 1, g, provider, limits));
  const std::size_t u = tpl->vertex_count();
  auto aux = std::make_shared<const AuxiliaryHypergraph>(provider(u, g, c + 1));
  const OrderedHypergraph& h = aux->base;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    if (h.edge_size(e) != u) {
      throw DomainError("auxiliary hypergraph is not " + std::to_string(u) + "-uniform");
    }
  }
  check_vertex_budget(BigInt(std::to_string(h.vertex_count())) +
                          BigInt(std::to_string(h.edge_count())) * BigInt(std::to_string(u)),
                      limits, "G^c(g)");

  StagedHypergraph out;
  out.kind = StagedKind::gcg;
  out.k = 2;
  out.c = c;
  out.g = g;
  out.m = u;
  out.copy_template = tpl;
  out.auxiliary = aux;

  ForestDraft draft;
  draft.add_stage(0, h.vertex_count(), 0, kNoStage);
  draft.stages[0].first_child = 1;
  draft.stages[0].child_count = static_cast<std::uint32_t>(h.edge_count());
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const auto t = draft.add_stage(1, u, static_cast<std::uint32_t>(u), 0);
    const auto members = h.edge(e);
    for (std::size_t i = 0; i < u; ++i) draft.parent[draft.first[t] + i] = members[i];
  }
  finalize(out, std::move(draft), true);
  return out;
}

}  // namespace rectcolor
