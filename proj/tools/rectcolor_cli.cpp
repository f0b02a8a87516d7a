// Command-line entry point: construct, realize, translate, verify, emit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rectcolor/acceptance.hpp"
#include "rectcolor/arithmetic.hpp"
#include "rectcolor/construction.hpp"
#include "rectcolor/errors.hpp"
#include "rectcolor/geometry.hpp"
#include "rectcolor/hypergraph.hpp"
#include "rectcolor/serialize.hpp"

using namespace rectcolor;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::uint64_t max_vertices = 10'000'000;
  std::uint64_t node_budget = 1'000'000'000;

  BuildLimits build() const { return {max_vertices, search()}; }
  SearchLimits search() const { return {node_budget}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return parse_json(read_file(path)); }

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << bytes;
}

std::vector<BigInt> parse_set(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_bigint(item));
  }
  return out;
}

Json edge_json(const OrderedHypergraph& h, EdgeId e) {
  Json j;
  j["edge"] = e;
  j["vertices"] = Json::array();
  for (Vertex v : h.edge(e)) j["vertices"].push_back(v);
  return j;
}

// The difference set named on the command line.
std::unique_ptr<DifferenceSet> difference_set(const std::string& name, const std::string& file) {
  if (name == "primes") return primes();
  if (name == "pow2") return powers_of(2);
  if (name == "pow3") return powers_of(3);
  if (name == "file") {
    if (file.empty()) throw DomainError("--difference-set file needs --difference-file");
    std::vector<BigInt> members;
    std::stringstream ss(read_file(file));
    std::string tok;
    while (ss >> tok) members.push_back(parse_bigint(tok));
    return explicit_set(std::move(members));
  }
  throw DomainError("unknown difference set " + name);
}

void report_verification(const VerificationReport& rep) {
  if (rep.ok()) return;
  std::string ids;
  for (EdgeId e : rep.mismatches) ids += (ids.empty() ? "" : ",") + std::to_string(e);
  throw VerificationError(std::to_string(rep.mismatch_count) + " rectangles disagree (first: " + ids + ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rectangle-colorable hypergraph constructions and their realizations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized providers");
  app.add_option("--max-vertices", g.max_vertices, "Refuse to build anything larger")->check(CLI::PositiveNumber);
  app.add_option("--node-budget", g.node_budget, "Search node budget")->check(CLI::PositiveNumber);
  std::function<void()> action;

  // construct
  auto* construct = app.add_subcommand("construct", "Build a hypergraph");
  construct->require_subcommand(1);
  std::string out;
  std::uint32_t k = 2, c = 2, girth = 5, depth = 2;
  std::string provider = "odd-cycle", auxiliary_path;
  std::uint64_t provider_budget = 10'000;
  {
    auto* hkc = construct->add_subcommand("hkc", "Staged hypergraph H_k^c");
    hkc->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    hkc->add_option("--c", c)->required()->check(CLI::PositiveNumber);
    hkc->add_option("--out", out);
    hkc->callback([&] { action = [&] { emit(out, dump(to_json(build_hkc(k, c, g.build())))); }; });

    auto* gcg = construct->add_subcommand("gcg", "Large-girth hypergraph G^c(g)");
    gcg->add_option("--c", c)->required()->check(CLI::PositiveNumber);
    gcg->add_option("--g", girth)->required()->check(CLI::PositiveNumber);
    gcg->add_option("--provider", provider)->check(CLI::IsMember({"odd-cycle", "random", "file"}));
    gcg->add_option("--provider-budget", provider_budget);
    gcg->add_option("--auxiliary", auxiliary_path, "Hypergraph JSON for --provider file");
    gcg->add_option("--out", out);
    gcg->callback([&] {
      action = [&] {
        AuxiliaryProvider p = odd_cycle_auxiliary();
        if (provider == "random") {
          p = random_search_auxiliary(provider_budget, g.seed, g.search());
        } else if (provider == "file") {
          if (auxiliary_path.empty()) throw DomainError("--provider file needs --auxiliary");
          const Json j = read_json(auxiliary_path);
          p = fixed_auxiliary(j.contains("claimed_girth") ? auxiliary_from_json(j)
                                                          : certify_auxiliary(hypergraph_from_json(j), girth, c + 1,
                                                                              g.search()));
        }
        const StagedHypergraph s = build_gcg(c, girth, p, g.build());
        const CyclesReport rep = hypergraph_girth(s.base);
        if (rep.girth && *rep.girth < girth) throw VerificationError("girth below the target");
        emit(out, dump(to_json(s)));
      };
    });

    auto* tree = construct->add_subcommand("tree", "k-ary tree hypergraph");
    tree->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    tree->add_option("--depth", depth)->required()->check(CLI::PositiveNumber);
    tree->add_option("--out", out);
    tree->callback([&] { action = [&] { emit(out, dump(to_json(build_kary_tree_hypergraph(k, depth, g.build())))); }; });
  }

  // realize
  std::string input, svg_out, coloring_path, hypergraph_path;
  bool nested = false;
  {
    auto* cmd = app.add_subcommand("realize", "Points and rectangles for a staged hypergraph");
    cmd->add_option("--input", input)->required();
    cmd->add_flag("--nested", nested, "Nested y-projections (H_k^c only)");
    cmd->add_option("--out", out);
    cmd->add_option("--svg", svg_out);
    cmd->callback([&] {
      action = [&] {
        const StagedHypergraph s = staged_from_json(read_json(input));
        Realization r;
        if (s.kind == StagedKind::gcg) {
          if (nested) throw DomainError("--nested applies to H_k^c only");
          r = realize_gcg(s);
        } else {
          r = nested ? realize_hkc_nested(s) : realize_hkc(s);
        }
        report_verification(verify_realization(r));
        emit(out, dump(to_json(r)));
        if (!svg_out.empty()) emit(svg_out, emit_svg(r));
      };
    });
  }

  // verify
  for (const char* name : {"verify", "verify-realization"}) {
    auto* cmd = app.add_subcommand(name, "Check a realization against a hypergraph");
    cmd->add_option("--realization,--input", input)->required();
    cmd->add_option("--hypergraph", hypergraph_path, "Defaults to the one stored in the realization");
    cmd->callback([&] {
      action = [&] {
        Realization r = realization_from_json(read_json(input));
        if (!hypergraph_path.empty()) {
          const Json j = read_json(hypergraph_path);
          r.hypergraph = j.contains("stages") ? staged_from_json(j).base : hypergraph_from_json(j);
        }
        if (r.hypergraph.edge_count() != r.rects.size() || r.hypergraph.vertex_count() != r.points.size()) {
          throw VerificationError("sizes differ from the hypergraph");
        }
        const VerificationReport rep = verify_realization(r);
        report_verification(rep);
        emit("", dump(Json{{"ok", true}, {"rects_checked", rep.rects_checked}}));
      };
    });
  }

  // chromatic / girth
  std::uint32_t max_colors = 8;
  {
    auto* cmd = app.add_subcommand("chromatic", "Exact chromatic number by search");
    cmd->add_option("--input", input)->required();
    cmd->add_option("--max-colors", max_colors)->check(CLI::PositiveNumber);
    cmd->callback([&] {
      action = [&] {
        const Json j = read_json(input);
        const OrderedHypergraph h = j.contains("stages") ? staged_from_json(j).base : hypergraph_from_json(j);
        const std::uint32_t chi = chromatic_number(h, g.search());
        if (chi > max_colors) throw ResourceLimitError("chromatic number exceeds --max-colors");
        const auto col = is_c_colorable(h, chi, g.search());
        emit("", dump(Json{{"chromatic_number", chi}, {"coloring", to_json(*col)}}));
      };
    });

    auto* gcmd = app.add_subcommand("girth", "Girth with a witness cycle");
    gcmd->add_option("--input", input)->required();
    gcmd->callback([&] {
      action = [&] {
        const Json j = read_json(input);
        const OrderedHypergraph h = j.contains("stages") ? staged_from_json(j).base : hypergraph_from_json(j);
        emit("", dump(to_json(hypergraph_girth(h))));
      };
    });
  }

  // find-mono
  {
    auto* cmd = app.add_subcommand("find-mono", "Monochromatic edge of a staged hypergraph");
    cmd->add_option("--input", input)->required();
    cmd->add_option("--coloring", coloring_path)->required();
    cmd->callback([&] {
      action = [&] {
        const StagedHypergraph s = staged_from_json(read_json(input));
        const Coloring col = coloring_from_json(read_json(coloring_path));
        if (col.colors.size() != s.vertex_count()) throw DomainError("coloring length differs from n");
        const EdgeId e = find_monochromatic_edge(s, col);
        const auto ed = s.base.edge(e);
        for (Vertex v : ed) {
          if (col.colors[v] != col.colors[ed[0]]) throw VerificationError("finder returned a non-monochromatic edge");
        }
        emit("", dump(edge_json(s.base, e)));
      };
    });
  }

  // hasse / mono-path
  std::size_t path_len = 2;
  {
    auto* cmd = app.add_subcommand("hasse", "Hasse diagram of the dominance order on the points");
    cmd->add_option("--input", input)->required();
    cmd->add_option("--out", out);
    cmd->callback([&] {
      action = [&] {
        const Realization r = realization_from_json(read_json(input));
        const HasseDiagram hd = dominance_hasse(r.points);
        Json j = to_json(hd.graph);
        j["x_order"] = hd.x_order;
        emit(out, dump(j));
      };
    });

    auto* mp = app.add_subcommand("mono-path", "Monochromatic increasing Hasse path");
    mp->add_option("--input", input)->required();
    mp->add_option("--coloring", coloring_path)->required();
    mp->add_option("--k", path_len)->check(CLI::PositiveNumber);
    mp->callback([&] {
      action = [&] {
        const Realization r = realization_from_json(read_json(input));
        const Coloring col = coloring_from_json(read_json(coloring_path));
        if (col.colors.size() != r.points.size()) throw DomainError("coloring length differs from the point count");
        const auto path = monochromatic_increasing_path(r.points, col.colors, path_len);
        emit("", dump(Json{{"path", path ? Json(*path) : Json(nullptr)}}));
      };
    });
  }

  // vdc / embed / ap-capture
  std::string n_text, set_text, start_text, diff_text, length_text = "1";
  {
    auto* cmd = app.add_subcommand("vdc", "van der Corput value a_n");
    cmd->add_option("--n", n_text)->required();
    cmd->callback([&] {
      action = [&] {
        const BigInt n = parse_bigint(n_text);
        if (n < 0) throw DomainError("n must be nonnegative");
        emit("", to_string(van_der_corput(n)) + "\n");
      };
    });

    auto* em = app.add_subcommand("embed", "Points (n, a_n) of an integer set");
    em->add_option("--set", set_text, "Comma-separated integers")->required();
    em->callback([&] {
      action = [&] {
        const auto values = parse_set(set_text);
        const IntegerEmbedding e = embed_integers(values);
        Json pts = Json::array();
        Json vals = Json::array();
        for (std::size_t i = 0; i < e.values.size(); ++i) {
          vals.push_back(e.values[i].get_str());
          pts.push_back({to_string(e.points[i].x), to_string(e.points[i].y)});
        }
        emit("", dump(Json{{"offset", e.offset.get_str()}, {"values", vals}, {"points", pts}}));
      };
    });

    auto* cap = app.add_subcommand("ap-capture", "Rectangle capturing a power-of-two progression");
    cap->add_option("--start", start_text)->required();
    cap->add_option("--difference", diff_text)->required();
    cap->add_option("--length", length_text);
    cap->add_option("--set", set_text, "Comma-separated integers")->required();
    cap->callback([&] {
      action = [&] {
        const FiniteAP a{parse_bigint(start_text), parse_bigint(diff_text), parse_bigint(length_text)};
        const auto v = parse_set(set_text);
        const Rect rc = ap_capture_rectangle(a, v);
        Json captured = Json::array();
        std::vector<BigInt> inside;
        for (const BigInt& n : v) {
          if (rc.contains({Rational(n), van_der_corput(n)})) inside.push_back(n);
        }
        if (inside != ap_intersection(a, v)) throw VerificationError("rectangle capture differs from the members of A in V");
        for (const BigInt& n : inside) captured.push_back(n.get_str());
        emit("", dump(Json{{"rect", {to_string(rc.x_lo), to_string(rc.x_hi), to_string(rc.y_lo), to_string(rc.y_hi)}},
                           {"captured", captured}}));
      };
    });
  }

  // to-aps
  std::string mode = "pow2", dset = "primes", dfile;
  {
    auto* cmd = app.add_subcommand("to-aps", "Arithmetic progressions for a nested realization");
    cmd->add_option("--input", input)->required();
    cmd->add_option("--mode", mode)->check(CLI::IsMember({"pow2", "general"}));
    cmd->add_option("--difference-set", dset)->check(CLI::IsMember({"primes", "pow2", "pow3", "file"}));
    cmd->add_option("--difference-file", dfile, "Whitespace-separated members for --difference-set file");
    cmd->add_option("--out", out);
    cmd->callback([&] {
      action = [&] {
        const Realization r = realization_from_json(read_json(input));
        const APTranslation tr = mode == "pow2" ? rects_to_pow2_aps(r.points, r.rects)
                                                : rects_to_D_aps(r.points, r.rects, *difference_set(dset, dfile));
        emit(out, dump(to_json(tr.ap)));
      };
    });
  }

  // svg
  bool exact = false;
  {
    auto* cmd = app.add_subcommand("svg", "SVG drawing of a realization");
    cmd->add_option("--input", input)->required();
    cmd->add_option("--out", out);
    cmd->add_flag("--exact", exact, "Use the actual coordinates instead of ranks");
    cmd->callback([&] {
      action = [&] {
        SvgStyle style;
        style.rank_coordinates = !exact;
        emit(out, emit_svg(realization_from_json(read_json(input)), style));
      };
    });
  }

  // selftest
  bool skip_large = false;
  std::string artifacts;
  {
    auto* cmd = app.add_subcommand("selftest", "Run the acceptance suite");
    cmd->add_flag("--skip-large", skip_large, "Skip the H_3^2 parts");
    cmd->add_option("--artifacts", artifacts, "Directory for the generated artifacts");
    cmd->callback([&] {
      action = [&] {
        const auto results = run_acceptance({g.seed, skip_large, artifacts}, std::cout);
        const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
        if (failed) throw VerificationError(std::to_string(failed) + " acceptance criteria failed");
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  auto fail = [](const char* kind, const std::string& msg, int code) {
    std::cerr << dump(Json{{"error", kind}, {"message", msg}});
    return code;
  };
  try {
    action();
  } catch (const ResourceLimitError& e) {
    return fail("resource_limit", e.what(), 2);
  } catch (const DomainError& e) {
    return fail("domain", e.what(), 1);
  } catch (const VerificationError& e) {
    return fail("verification", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 3);
  }
  return 0;
}
