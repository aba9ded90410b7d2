#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ck/asr.hpp"
#include "ck/entourage.hpp"
#include "ck/errors.hpp"
#include "ck/maps.hpp"
#include "ck/point.hpp"
#include "ck/rat.hpp"
#include "ck/setexpr.hpp"
#include "ck/space.hpp"
#include "ck/verdict.hpp"

namespace ck::ser {

using Json = nlohmann::ordered_json;

// All parse errors carry a pointer to the offending field.
[[noreturn]] void fail(const std::string& where, const std::string& what);

// Rejects keys outside the published schema for this object.
void check_keys(const Json& j, const std::string& where,
                std::initializer_list<const char*> allowed);
const Json& need(const Json& j, const std::string& where, const char* key);

Rat parse_rat(const Json& j, const std::string& where);
ExtRat parse_ext(const Json& j, const std::string& where);
long long parse_int(const Json& j, const std::string& where);
Point parse_point(const Json& j, const std::string& where);

// Space descriptors: lattice, word-metric, finite, disjoint-union.
spaces::SpacePtr parse_space(const Json& j, const std::string& where);

// Set descriptors: explicit, interval-union, cofinite, box-union.
// dim < 0 accepts any arity.
SetExpr parse_set(const Json& j, int dim, const std::string& where);

// Model descriptors: metric, ray, discrete, finite-infinite-n, group-left, subspace.
asr::ModelPtr parse_model(const Json& j, const ProbeBudget& probe, const std::string& where);

// Map descriptors: identity, scale, square, floor-div, coordinate-project,
// constant, axis-embed, diagonal, compose, table.
maps::MapDescriptor parse_map(const Json& j, spaces::SpacePtr domain, spaces::SpacePtr codomain,
                              const std::string& where);

// Entourage descriptors: explicit-pairs, displacement, graph-of-map.
// graph-of-map samples the map's graph on the given domain window.
coarse::Entourage parse_entourage(const Json& j, const spaces::SpacePtr& space,
                                  const Rat& graph_window, const std::string& where);

// Probe overrides; absent fields keep the base budget.
ProbeBudget parse_probe(const Json& j, ProbeBudget base, const std::string& where);

// Emission. Rationals render as "p/q" strings ("inf"/"-inf" for the ends).
Json rat_json(const Rat& q);
Json ext_json(const ExtRat& v);
Json point_json(const Point& p);
Json points_json(const PointSet& ps);
Json pair_json(const std::pair<Point, Point>& pr);
Json pairs_json(const std::vector<std::pair<Point, Point>>& prs);
Json probe_json(const ProbeBudget& probe);
Json witness_json(const Witness& w);
Json scale_verdict_json(const ScaleVerdict& v);
Json set_json(const SetExpr& s);
Json entourage_json(const coarse::Entourage& e);

}  // namespace ck::ser
