#pragma once

#include <string>

#include <json.hpp>

#include "rectcolor/arithmetic.hpp"
#include "rectcolor/construction.hpp"
#include "rectcolor/geometry.hpp"
#include "rectcolor/hypergraph.hpp"

namespace rectcolor {

using Json = nlohmann::json;

// All readers throw DomainError on malformed or inconsistent input.
Json to_json(const OrderedHypergraph& h);
OrderedHypergraph hypergraph_from_json(const Json& j);

Json to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

Json to_json(const CyclesReport& r);

// Hypergraph fields plus the forest, stages, tags and the recursive template.
Json to_json(const StagedHypergraph& s);
StagedHypergraph staged_from_json(const Json& j);

Json to_json(const AuxiliaryHypergraph& a);
AuxiliaryHypergraph auxiliary_from_json(const Json& j);

Json to_json(const Realization& r);
Realization realization_from_json(const Json& j);

Json to_json(const FiniteAP& a);
FiniteAP ap_from_json(const Json& j);
Json to_json(const APRealization& r);
APRealization ap_realization_from_json(const Json& j);

// Compact, one trailing newline; identical values give identical bytes.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

}  // namespace rectcolor
