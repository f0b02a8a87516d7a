#include "rectcolor/serialize.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "rectcolor/errors.hpp"

namespace rectcolor {

namespace {

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("field \"") + key + "\": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

BigInt bigint_field(const Json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
  throw DomainError("expected an integer or a decimal string");
}

Json int_or_string(const BigInt& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

const char* kind_name(StagedKind k) { return k == StagedKind::hkc ? "hkc" : "gcg"; }

}  // namespace

Json to_json(const OrderedHypergraph& h) {
  Json edges = Json::array();
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const auto ed = h.edge(e);
    edges.push_back(std::vector<Vertex>(ed.begin(), ed.end()));
  }
  return {{"n", h.vertex_count()}, {"edges", std::move(edges)}};
}

OrderedHypergraph hypergraph_from_json(const Json& j) {
  const auto n = get<std::size_t>(j, "n");
  const auto edges = get<std::vector<std::vector<Vertex>>>(j, "edges");
  return OrderedHypergraph(n, edges);
}

Json to_json(const Coloring& c) { return {{"c", c.palette}, {"colors", c.colors}}; }

Coloring coloring_from_json(const Json& j) {
  Coloring c;
  c.palette = get<std::uint32_t>(j, "c");
  c.colors = get<std::vector<Color>>(j, "colors");
  c.validate();
  return c;
}

Json to_json(const CyclesReport& r) {
  Json out;
  if (r.girth) {
    out["girth"] = *r.girth;
  } else {
    out["girth"] = "infinite";
  }
  Json w = Json::array();
  for (const CycleStep& s : r.witness) w.push_back({{"vertex", s.vertex}, {"edge", s.edge}});
  out["witness"] = std::move(w);
  return out;
}

Json to_json(const AuxiliaryHypergraph& a) {
  Json out = to_json(a.base);
  out["claimed_girth"] = a.claimed_girth;
  out["claimed_chromatic_lower_bound"] = a.claimed_chromatic_lower_bound;
  out["certificate"] =
      a.certificate == Certificate::verified_exhaustively ? "verified_exhaustively" : "user_asserted";
  return out;
}

AuxiliaryHypergraph auxiliary_from_json(const Json& j) {
  AuxiliaryHypergraph a;
  a.base = hypergraph_from_json(j);
  a.claimed_girth = get<std::size_t>(j, "claimed_girth");
  a.claimed_chromatic_lower_bound = get<std::uint32_t>(j, "claimed_chromatic_lower_bound");
  const auto cert = j.contains("certificate") ? get<std::string>(j, "certificate") : "user_asserted";
  if (cert == "verified_exhaustively") {
    a.certificate = Certificate::verified_exhaustively;
  } else if (cert == "user_asserted") {
    a.certificate = Certificate::user_asserted;
  } else {
    throw DomainError("unknown certificate \"" + cert + "\"");
  }
  return a;
}

Json to_json(const StagedHypergraph& s) {
  Json out = to_json(s.base);
  out["kind"] = kind_name(s.kind);
  out["k"] = s.k;
  out["c"] = s.c;
  if (s.kind == StagedKind::gcg) out["g"] = s.g;
  out["m"] = s.m;
  Json parents = Json::array();
  for (Vertex p : s.parent) {
    if (p == kNoVertex) {
      parents.push_back(nullptr);
    } else {
      parents.push_back(p);
    }
  }
  out["parents"] = std::move(parents);
  Json stages = Json::array();
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    const auto v = s.stage_vertices(i);
    Json st = {{"level", s.stages[i].level},
               {"block_size", s.stages[i].block_size},
               {"vertices", std::vector<Vertex>(v.begin(), v.end())}};
    st["parent_stage"] = s.stages[i].parent_stage == kNoStage ? Json(nullptr) : Json(s.stages[i].parent_stage);
    stages.push_back(std::move(st));
  }
  out["stages"] = std::move(stages);
  out["path_edges"] = s.path_edges;
  Json tr = Json::array();
  for (std::size_t i = 0; i < s.transversal_edges.size(); ++i) {
    const TransversalTag& t = s.transversal_tags[i];
    tr.push_back({{"edge", s.transversal_edges[i]},
                  {"stage", t.stage},
                  {"block", t.block},
                  {"copy_edge", t.copy_edge}});
  }
  out["transversal_edges"] = std::move(tr);
  out["template"] = s.copy_template ? to_json(*s.copy_template) : Json(nullptr);
  if (s.auxiliary) out["auxiliary"] = to_json(*s.auxiliary);
  return out;
}

StagedHypergraph staged_from_json(const Json& j) {
  StagedHypergraph s;
  const auto kind = get<std::string>(j, "kind");
  if (kind == "hkc") {
    s.kind = StagedKind::hkc;
  } else if (kind == "gcg") {
    s.kind = StagedKind::gcg;
  } else {
    throw DomainError("unknown staged kind \"" + kind + "\"");
  }
  s.k = get<std::uint32_t>(j, "k");
  s.c = get<std::uint32_t>(j, "c");
  if (s.kind == StagedKind::gcg) s.g = get<std::uint32_t>(j, "g");
  s.m = get<std::size_t>(j, "m");
  s.base = hypergraph_from_json(j);
  const std::size_t n = s.base.vertex_count();

  const Json& parents = field(j, "parents");
  if (!parents.is_array() || parents.size() != n) throw DomainError("\"parents\" must list every vertex");
  s.parent.assign(n, kNoVertex);
  for (std::size_t v = 0; v < n; ++v) {
    if (parents[v].is_null()) continue;
    const auto p = parents[v].get<std::int64_t>();
    if (p < 0 || static_cast<std::size_t>(p) >= n) throw DomainError("parent out of range");
    s.parent[v] = static_cast<Vertex>(p);
  }
  s.root.assign(n, kNoVertex);
  for (std::size_t v = 0; v < n; ++v) {
    Vertex r = static_cast<Vertex>(v);
    for (std::size_t steps = 0; s.parent[r] != kNoVertex; ++steps) {
      if (steps > n) throw DomainError("parent pointers contain a cycle");
      r = s.parent[r];
    }
    s.root[v] = r;
  }

  const Json& stages = field(j, "stages");
  if (!stages.is_array() || stages.empty()) throw DomainError("\"stages\" must be a nonempty array");
  s.stage_offsets.assign(1, 0);
  for (const Json& st : stages) {
    Stage rec;
    rec.level = get<std::uint32_t>(st, "level");
    rec.block_size = st.contains("block_size") ? get<std::uint32_t>(st, "block_size") : 0;
    const Json& ps = field(st, "parent_stage");
    rec.parent_stage = ps.is_null() ? kNoStage : ps.get<std::uint32_t>();
    for (Vertex v : get<std::vector<Vertex>>(st, "vertices")) s.stage_members.push_back(v);
    s.stage_offsets.push_back(s.stage_members.size());
    s.stages.push_back(rec);
  }
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    const auto ps = s.stages[i].parent_stage;
    if (ps == kNoStage) continue;
    if (ps >= s.stages.size()) throw DomainError("parent_stage out of range");
    Stage& p = s.stages[ps];
    if (p.child_count == 0) p.first_child = static_cast<std::uint32_t>(i);
    if (p.first_child + p.child_count != i) throw DomainError("child stages must be contiguous");
    ++p.child_count;
  }

  s.path_edges = get<std::vector<EdgeId>>(j, "path_edges");
  s.path_edge_of.assign(n, kNoEdge);
  for (EdgeId e : s.path_edges) {
    if (e >= s.base.edge_count() || s.base.edge_size(e) == 0) throw DomainError("bad path edge id");
    s.path_edge_of[s.base.edge(e)[0]] = e;
  }
  for (const Json& t : field(j, "transversal_edges")) {
    s.transversal_edges.push_back(get<EdgeId>(t, "edge"));
    s.transversal_tags.push_back(
        {get<std::uint32_t>(t, "stage"), get<std::uint32_t>(t, "block"), get<std::uint32_t>(t, "copy_edge")});
    if (s.transversal_edges.back() >= s.base.edge_count()) throw DomainError("bad transversal edge id");
  }
  std::size_t tag = 0;
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    while (tag < s.transversal_tags.size() && s.transversal_tags[tag].stage < i) ++tag;
    s.stages[i].first_tag = tag;
  }
  const Json& tpl = field(j, "template");
  if (!tpl.is_null()) s.copy_template = std::make_shared<const StagedHypergraph>(staged_from_json(tpl));
  if (j.contains("auxiliary")) {
    s.auxiliary = std::make_shared<const AuxiliaryHypergraph>(auxiliary_from_json(j.at("auxiliary")));
  }
  if (s.c > 1 && !s.copy_template) throw DomainError("c > 1 requires a template");
  if (s.kind == StagedKind::gcg && s.c > 1 &&
      (!s.auxiliary || s.auxiliary->base.edge_count() + 1 != s.stages.size())) {
    throw DomainError("G^c(g) needs its auxiliary hypergraph with one edge per level-1 stage");
  }
  try {
    s.validate();
  } catch (const VerificationError& e) {
    throw DomainError(e.what());
  }
  return s;
}

Json to_json(const Realization& r) {
  Json points = Json::array();
  for (const Point2& p : r.points) points.push_back({to_string(p.x), to_string(p.y)});
  Json rects = Json::array();
  Json edge_of = Json::array();
  for (std::size_t e = 0; e < r.rects.size(); ++e) {
    const Rect& rc = r.rects[e];
    rects.push_back({to_string(rc.x_lo), to_string(rc.x_hi), to_string(rc.y_lo), to_string(rc.y_hi)});
    edge_of.push_back(e);
  }
  return {{"points", std::move(points)},
          {"rects", std::move(rects)},
          {"edge_of_rect", std::move(edge_of)},
          {"hypergraph", to_json(r.hypergraph)}};
}

Realization realization_from_json(const Json& j) {
  Realization r;
  for (const Json& p : field(j, "points")) {
    if (!p.is_array() || p.size() != 2) throw DomainError("a point is a pair of rationals");
    r.points.push_back({parse_rational(p[0].get<std::string>()), parse_rational(p[1].get<std::string>())});
  }
  std::vector<Rect> rects;
  for (const Json& q : field(j, "rects")) {
    if (!q.is_array() || q.size() != 4) throw DomainError("a rectangle is four rationals");
    Rect rc{parse_rational(q[0].get<std::string>()), parse_rational(q[1].get<std::string>()),
            parse_rational(q[2].get<std::string>()), parse_rational(q[3].get<std::string>())};
    if (rc.x_lo > rc.x_hi || rc.y_lo > rc.y_hi) throw DomainError("rectangle with inverted bounds");
    rects.push_back(std::move(rc));
  }
  std::vector<std::size_t> edge_of(rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i) edge_of[i] = i;
  if (j.contains("edge_of_rect")) edge_of = get<std::vector<std::size_t>>(j, "edge_of_rect");
  if (edge_of.size() != rects.size()) throw DomainError("edge_of_rect length differs from rects");
  if (j.contains("hypergraph")) {
    r.hypergraph = hypergraph_from_json(j.at("hypergraph"));
  } else {
    r.hypergraph = incidence_hypergraph(r.points, rects).hypergraph;
    // incidence_hypergraph numbers vertices by x-order; keep that only if it
    // coincides with the point order.
    for (std::size_t i = 1; i < r.points.size(); ++i) {
      if (!(r.points[i - 1].x < r.points[i].x)) {
        throw DomainError("realization without \"hypergraph\" must list points by increasing x");
      }
    }
  }
  r.rects.resize(r.hypergraph.edge_count());
  std::vector<bool> seen(r.rects.size(), false);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    if (edge_of[i] >= r.rects.size() || seen[edge_of[i]]) {
      throw DomainError("edge_of_rect must be a permutation of the edge ids");
    }
    seen[edge_of[i]] = true;
    r.rects[edge_of[i]] = std::move(rects[i]);
  }
  if (rects.size() != r.rects.size()) throw DomainError("one rectangle per edge is required");
  if (r.points.size() != r.hypergraph.vertex_count()) throw DomainError("one point per vertex is required");
  return r;
}

Json to_json(const FiniteAP& a) {
  return {{"start", a.start.get_str()}, {"difference", a.difference.get_str()}, {"length", int_or_string(a.length)}};
}

FiniteAP ap_from_json(const Json& j) {
  FiniteAP a;
  a.start = bigint_field(field(j, "start"));
  a.difference = bigint_field(field(j, "difference"));
  a.length = bigint_field(field(j, "length"));
  if (a.difference < 1 || a.length < 1) throw DomainError("progression needs difference >= 1 and length >= 1");
  return a;
}

Json to_json(const APRealization& r) {
  Json v = Json::array();
  for (const BigInt& x : r.v) v.push_back(x.get_str());
  Json aps = Json::array();
  for (std::size_t i = 0; i < r.aps.size(); ++i) {
    Json a = to_json(r.aps[i]);
    a["edge"] = r.edge_of_ap[i];
    aps.push_back(std::move(a));
  }
  return {{"offset", r.offset.get_str()},
          {"V", std::move(v)},
          {"aps", std::move(aps)},
          {"empty_edges", r.empty_edges},
          {"edge_count", r.edge_count}};
}

APRealization ap_realization_from_json(const Json& j) {
  APRealization r;
  r.offset = j.contains("offset") ? bigint_field(j.at("offset")) : BigInt(0);
  for (const Json& x : field(j, "V")) r.v.push_back(bigint_field(x));
  for (const Json& a : field(j, "aps")) {
    r.aps.push_back(ap_from_json(a));
    r.edge_of_ap.push_back(get<EdgeId>(a, "edge"));
  }
  if (j.contains("empty_edges")) r.empty_edges = get<std::vector<EdgeId>>(j, "empty_edges");
  r.edge_count = j.contains("edge_count") ? get<std::size_t>(j, "edge_count")
                                          : r.aps.size() + r.empty_edges.size();
  return r;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace rectcolor
