#include "ck/serialize.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ck::ser {

void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::InputError, where + ": " + what);
}

void check_keys(const Json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) fail(where + "." + it.key(), "unknown key");
    }
}

const Json& need(const Json& j, const std::string& where, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing key '") + key + "'");
    return j.at(key);
}

Rat parse_rat(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rat::parse(j.get<std::string>());
        } catch (const std::exception&) {
            fail(where, "not a rational: \"" + j.get<std::string>() + "\"");
        }
    }
    fail(where, "expected a rational (integer or \"p/q\" string)");
}

ExtRat parse_ext(const Json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "-inf") return ExtRat::parse(s);
    }
    return ExtRat(parse_rat(j, where));
}

long long parse_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

Point parse_point(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of integers");
    Point p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        p.push_back(static_cast<Coord>(parse_int(j[i], where + "[" + std::to_string(i) + "]")));
    }
    return p;
}

static std::vector<Point> parse_point_list(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of points");
    std::vector<Point> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_point(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

spaces::SpacePtr parse_space(const Json& j, const std::string& where) {
    const std::string kind = need(j, where, "kind").get<std::string>();
    if (kind == "lattice") {
        check_keys(j, where, {"kind", "dim", "metric"});
        const int dim = static_cast<int>(parse_int(need(j, where, "dim"), where + ".dim"));
        spaces::Norm norm = spaces::Norm::L1;
        if (j.contains("metric")) {
            const std::string m = j.at("metric").get<std::string>();
            if (m == "l1")
                norm = spaces::Norm::L1;
            else if (m == "linf")
                norm = spaces::Norm::Linf;
            else
                fail(where + ".metric", "expected \"l1\" or \"linf\"");
        }
        return spaces::lattice(dim, norm);
    }
    if (kind == "word-metric") {
        check_keys(j, where, {"kind", "rank", "dim", "generators"});
        if (j.contains("rank")) {
            if (j.contains("dim") || j.contains("generators"))
                fail(where, "rank excludes dim/generators");
            return spaces::free_group(static_cast<int>(parse_int(j.at("rank"), where + ".rank")));
        }
        const int dim = static_cast<int>(parse_int(need(j, where, "dim"), where + ".dim"));
        auto gens = parse_point_list(need(j, where, "generators"), where + ".generators");
        return spaces::word_lattice(dim, std::move(gens));
    }
    if (kind == "finite") {
        check_keys(j, where, {"kind", "vertices", "edges", "basepoint"});
        const int n = static_cast<int>(parse_int(need(j, where, "vertices"), where + ".vertices"));
        std::vector<spaces::Edge> edges;
        const Json& ej = need(j, where, "edges");
        if (!ej.is_array()) fail(where + ".edges", "expected an array");
        for (std::size_t i = 0; i < ej.size(); ++i) {
            const std::string ew = where + ".edges[" + std::to_string(i) + "]";
            check_keys(ej[i], ew, {"a", "b", "weight"});
            spaces::Edge e;
            e.a = static_cast<int>(parse_int(need(ej[i], ew, "a"), ew + ".a"));
            e.b = static_cast<int>(parse_int(need(ej[i], ew, "b"), ew + ".b"));
            e.weight =
                ej[i].contains("weight") ? parse_rat(ej[i].at("weight"), ew + ".weight") : Rat(1);
            edges.push_back(std::move(e));
        }
        int basepoint = 0;
        if (j.contains("basepoint"))
            basepoint = static_cast<int>(parse_int(j.at("basepoint"), where + ".basepoint"));
        return spaces::finite_space(n, std::move(edges), basepoint);
    }
    if (kind == "disjoint-union") {
        check_keys(j, where, {"kind", "first", "second"});
        return spaces::disjoint_union(parse_space(need(j, where, "first"), where + ".first"),
                                      parse_space(need(j, where, "second"), where + ".second"));
    }
    fail(where + ".kind", "unknown space kind \"" + kind + "\"");
}

SetExpr parse_set(const Json& j, int dim, const std::string& where) {
    const std::string kind = need(j, where, "kind").get<std::string>();
    SetExpr out = SetExpr::explicit_set({});
    if (kind == "explicit") {
        check_keys(j, where, {"kind", "points"});
        const Json& pj = need(j, where, "points");
        if (!pj.is_array()) fail(where + ".points", "expected an array");
        out = SetExpr::explicit_set(parse_point_list(pj, where + ".points"));
    } else if (kind == "interval-union") {
        check_keys(j, where, {"kind", "parts"});
        const Json& pj = need(j, where, "parts");
        if (!pj.is_array()) fail(where + ".parts", "expected an array of [lo, hi] pairs");
        std::vector<std::pair<ExtRat, ExtRat>> parts;
        for (std::size_t i = 0; i < pj.size(); ++i) {
            const std::string pw = where + ".parts[" + std::to_string(i) + "]";
            if (!pj[i].is_array() || pj[i].size() != 2) fail(pw, "expected [lo, hi]");
            parts.emplace_back(parse_ext(pj[i][0], pw + "[0]"), parse_ext(pj[i][1], pw + "[1]"));
        }
        out = SetExpr::interval_union(std::move(parts));
    } else if (kind == "cofinite") {
        check_keys(j, where, {"kind", "excluded"});
        const Json& xj = need(j, where, "excluded");
        if (!xj.is_array()) fail(where + ".excluded", "expected an array of integers");
        std::vector<Coord> excl;
        for (std::size_t i = 0; i < xj.size(); ++i) {
            excl.push_back(
                static_cast<Coord>(parse_int(xj[i], where + ".excluded[" + std::to_string(i) + "]")));
        }
        out = SetExpr::cofinite(std::move(excl));
    } else if (kind == "box-union") {
        check_keys(j, where, {"kind", "dim", "boxes"});
        const int d = static_cast<int>(parse_int(need(j, where, "dim"), where + ".dim"));
        const Json& bj = need(j, where, "boxes");
        if (!bj.is_array()) fail(where + ".boxes", "expected an array of boxes");
        std::vector<SetExpr::Box> boxes;
        for (std::size_t i = 0; i < bj.size(); ++i) {
            const std::string bw = where + ".boxes[" + std::to_string(i) + "]";
            if (!bj[i].is_array() || static_cast<int>(bj[i].size()) != d)
                fail(bw, "expected one [lo, hi] range per axis");
            SetExpr::Box box;
            for (std::size_t a = 0; a < bj[i].size(); ++a) {
                const std::string aw = bw + "[" + std::to_string(a) + "]";
                if (!bj[i][a].is_array() || bj[i][a].size() != 2) fail(aw, "expected [lo, hi]");
                box.push_back(SetExpr::AxisRange{parse_ext(bj[i][a][0], aw + "[0]"),
                                                 parse_ext(bj[i][a][1], aw + "[1]")});
            }
            boxes.push_back(std::move(box));
        }
        out = SetExpr::box_union(d, std::move(boxes));
    } else {
        fail(where + ".kind", "unknown set kind \"" + kind + "\"");
    }
    if (dim >= 0 && out.dim() >= 0 && out.dim() != dim)
        fail(where, "set arity " + std::to_string(out.dim()) + " does not match the space (dim " +
                        std::to_string(dim) + ")");
    return out;
}

asr::ModelPtr parse_model(const Json& j, const ProbeBudget& probe, const std::string& where) {
    const std::string kind = need(j, where, "kind").get<std::string>();
    if (kind == "metric") {
        check_keys(j, where, {"kind", "space"});
        return asr::metric_windowed(parse_space(need(j, where, "space"), where + ".space"), probe);
    }
    if (kind == "ray") {
        check_keys(j, where, {"kind"});
        return asr::ray_on_r();
    }
    if (kind == "discrete") {
        check_keys(j, where, {"kind"});
        return asr::discrete_on_n();
    }
    if (kind == "finite-infinite-n") {
        check_keys(j, where, {"kind"});
        return asr::finite_infinite_on_n();
    }
    if (kind == "group-left") {
        check_keys(j, where, {"kind", "space"});
        return asr::group_left(parse_space(need(j, where, "space"), where + ".space"), probe);
    }
    if (kind == "subspace") {
        check_keys(j, where, {"kind", "parent", "carrier"});
        auto parent = parse_model(need(j, where, "parent"), probe, where + ".parent");
        return asr::subspace(parent, parse_set(need(j, where, "carrier"), -1, where + ".carrier"));
    }
    fail(where + ".kind", "unknown model kind \"" + kind + "\"");
}

maps::MapDescriptor parse_map(const Json& j, spaces::SpacePtr domain, spaces::SpacePtr codomain,
                              const std::string& where) {
    const std::string kind = need(j, where, "kind").get<std::string>();
    if (kind == "identity") {
        check_keys(j, where, {"kind"});
        return maps::identity_map(domain);
    }
    if (kind == "scale") {
        check_keys(j, where, {"kind", "k"});
        return maps::scale_map(domain, codomain,
                               static_cast<Coord>(parse_int(need(j, where, "k"), where + ".k")));
    }
    if (kind == "square") {
        check_keys(j, where, {"kind"});
        return maps::square_map(domain, codomain);
    }
    if (kind == "floor-div") {
        check_keys(j, where, {"kind", "k"});
        return maps::floor_div_map(domain, codomain,
                                   static_cast<Coord>(parse_int(need(j, where, "k"), where + ".k")));
    }
    if (kind == "coordinate-project") {
        check_keys(j, where, {"kind", "axis"});
        return maps::project_map(domain, codomain,
                                 static_cast<int>(parse_int(need(j, where, "axis"), where + ".axis")));
    }
    if (kind == "constant") {
        check_keys(j, where, {"kind", "value"});
        return maps::constant_map(domain, codomain,
                                  parse_point(need(j, where, "value"), where + ".value"));
    }
    if (kind == "axis-embed") {
        check_keys(j, where, {"kind", "axis"});
        return maps::axis_embed_map(
            domain, codomain, static_cast<int>(parse_int(need(j, where, "axis"), where + ".axis")));
    }
    if (kind == "diagonal") {
        check_keys(j, where, {"kind"});
        return maps::diagonal_map(domain, codomain);
    }
    if (kind == "compose") {
        // Stages listed innermost first; intermediate stages live on the codomain.
        check_keys(j, where, {"kind", "maps"});
        const Json& mj = need(j, where, "maps");
        if (!mj.is_array() || mj.empty()) fail(where + ".maps", "expected a nonempty array");
        maps::MapDescriptor acc = parse_map(mj[0], domain, codomain, where + ".maps[0]");
        for (std::size_t i = 1; i < mj.size(); ++i) {
            maps::MapDescriptor next = parse_map(mj[i], codomain, codomain,
                                                 where + ".maps[" + std::to_string(i) + "]");
            acc = maps::compose_maps(next, acc);
        }
        return acc;
    }
    if (kind == "table") {
        check_keys(j, where, {"kind", "entries"});
        const Json& ej = need(j, where, "entries");
        if (!ej.is_array()) fail(where + ".entries", "expected an array of [from, to] pairs");
        std::map<Point, Point> table;
        for (std::size_t i = 0; i < ej.size(); ++i) {
            const std::string ew = where + ".entries[" + std::to_string(i) + "]";
            if (!ej[i].is_array() || ej[i].size() != 2) fail(ew, "expected [from, to]");
            table[parse_point(ej[i][0], ew + "[0]")] = parse_point(ej[i][1], ew + "[1]");
        }
        return maps::table_map(domain, codomain, std::move(table));
    }
    fail(where + ".kind", "unknown map kind \"" + kind + "\"");
}

coarse::Entourage parse_entourage(const Json& j, const spaces::SpacePtr& space,
                                  const Rat& graph_window, const std::string& where) {
    const std::string kind = need(j, where, "kind").get<std::string>();
    std::string label;
    if (j.is_object() && j.contains("label")) label = j.at("label").get<std::string>();
    if (kind == "explicit-pairs") {
        check_keys(j, where, {"kind", "pairs", "label"});
        const Json& pj = need(j, where, "pairs");
        if (!pj.is_array()) fail(where + ".pairs", "expected an array of [x, y] pairs");
        std::vector<std::pair<Point, Point>> pairs;
        for (std::size_t i = 0; i < pj.size(); ++i) {
            const std::string pw = where + ".pairs[" + std::to_string(i) + "]";
            if (!pj[i].is_array() || pj[i].size() != 2) fail(pw, "expected [x, y]");
            pairs.emplace_back(parse_point(pj[i][0], pw + "[0]"), parse_point(pj[i][1], pw + "[1]"));
        }
        return coarse::Entourage::explicit_pairs(std::move(pairs),
                                                 label.empty() ? "pairs" : label);
    }
    if (kind == "displacement") {
        check_keys(j, where, {"kind", "bound", "label"});
        Rat bound = parse_rat(need(j, where, "bound"), where + ".bound");
        return coarse::Entourage::displacement(bound, label.empty() ? "displacement" : label);
    }
    if (kind == "graph-of-map") {
        check_keys(j, where, {"kind", "map", "window"});
        if (!space) fail(where, "graph-of-map needs a space");
        Rat window = graph_window;
        if (j.contains("window")) window = parse_rat(j.at("window"), where + ".window");
        auto f = parse_map(need(j, where, "map"), space, space, where + ".map");
        return maps::graph_of(f, window);
    }
    fail(where + ".kind", "unknown entourage kind \"" + kind + "\"");
}

ProbeBudget parse_probe(const Json& j, ProbeBudget base, const std::string& where) {
    check_keys(j, where, {"radii", "scales", "stability"});
    if (j.contains("radii")) {
        const Json& rj = j.at("radii");
        if (!rj.is_array() || rj.empty()) fail(where + ".radii", "expected a nonempty array");
        base.radii.clear();
        for (std::size_t i = 0; i < rj.size(); ++i)
            base.radii.push_back(parse_rat(rj[i], where + ".radii[" + std::to_string(i) + "]"));
    }
    if (j.contains("scales")) {
        const Json& sj = j.at("scales");
        if (!sj.is_array() || sj.empty()) fail(where + ".scales", "expected a nonempty array");
        base.scales.clear();
        for (std::size_t i = 0; i < sj.size(); ++i)
            base.scales.push_back(parse_rat(sj[i], where + ".scales[" + std::to_string(i) + "]"));
    }
    if (j.contains("stability"))
        base.stability = static_cast<int>(parse_int(j.at("stability"), where + ".stability"));
    try {
        base.validate();
    } catch (const Error& e) {
        fail(where, e.what());
    }
    return base;
}

Json rat_json(const Rat& q) { return Json(q.str()); }

Json ext_json(const ExtRat& v) { return Json(v.str()); }

Json point_json(const Point& p) {
    Json a = Json::array();
    for (Coord c : p) a.push_back(c);
    return a;
}

Json points_json(const PointSet& ps) {
    Json a = Json::array();
    for (const Point& p : ps) a.push_back(point_json(p));
    return a;
}

Json pair_json(const std::pair<Point, Point>& pr) {
    Json a = Json::array();
    a.push_back(point_json(pr.first));
    a.push_back(point_json(pr.second));
    return a;
}

Json pairs_json(const std::vector<std::pair<Point, Point>>& prs) {
    Json a = Json::array();
    for (const auto& pr : prs) a.push_back(pair_json(pr));
    return a;
}

Json probe_json(const ProbeBudget& probe) {
    Json out;
    Json radii = Json::array();
    for (const Rat& r : probe.radii) radii.push_back(rat_json(r));
    Json scales = Json::array();
    for (const Rat& s : probe.scales) scales.push_back(rat_json(s));
    out["radii"] = radii;
    out["scales"] = scales;
    out["stability"] = probe.stability;
    return out;
}

Json witness_json(const Witness& w) {
    Json out;
    if (w.point) out["point"] = point_json(*w.point);
    out["distance"] = ext_json(w.distance);
    if (!w.note.empty()) out["note"] = w.note;
    return out;
}

Json scale_verdict_json(const ScaleVerdict& v) {
    Json out;
    switch (v.outcome) {
        case ScaleVerdict::Outcome::AlikeWithin:
            out["outcome"] = "alike-within";
            out["scale"] = rat_json(v.scale);
            break;
        case ScaleVerdict::Outcome::RefutedUpTo:
            out["outcome"] = "refuted";
            out["refuted-up-to"] = rat_json(v.refuted_up_to);
            if (v.witness) out["witness"] = witness_json(*v.witness);
            break;
        case ScaleVerdict::Outcome::Inconclusive:
            out["outcome"] = "inconclusive";
            out["probed-radius"] = rat_json(v.probed_radius);
            out["probed-scale"] = rat_json(v.probed_scale);
            break;
    }
    out["exact"] = v.exact;
    return out;
}

Json set_json(const SetExpr& s) {
    Json out;
    switch (s.kind()) {
        case SetExpr::Kind::Explicit:
            out["kind"] = "explicit";
            out["points"] = points_json(s.points());
            break;
        case SetExpr::Kind::IntervalUnion: {
            out["kind"] = "interval-union";
            Json parts = Json::array();
            for (const auto& [lo, hi] : s.parts()) {
                Json p = Json::array();
                p.push_back(ext_json(lo));
                p.push_back(ext_json(hi));
                parts.push_back(p);
            }
            out["parts"] = parts;
            break;
        }
        case SetExpr::Kind::Cofinite: {
            out["kind"] = "cofinite";
            Json ex = Json::array();
            for (Coord c : s.excluded()) ex.push_back(c);
            out["excluded"] = ex;
            break;
        }
        case SetExpr::Kind::BoxUnion: {
            out["kind"] = "box-union";
            out["dim"] = s.dim();
            Json boxes = Json::array();
            for (const auto& box : s.boxes()) {
                Json b = Json::array();
                for (const auto& ax : box) {
                    Json r = Json::array();
                    r.push_back(ext_json(ax.lo));
                    r.push_back(ext_json(ax.hi));
                    b.push_back(r);
                }
                boxes.push_back(b);
            }
            out["boxes"] = boxes;
            break;
        }
    }
    return out;
}

Json entourage_json(const coarse::Entourage& e) {
    Json out;
    if (e.kind() == coarse::Entourage::Kind::Displacement) {
        out["kind"] = "displacement";
        out["bound"] = rat_json(e.bound());
    } else {
        out["kind"] = "explicit-pairs";
        out["pairs"] = pairs_json(e.pairs());
    }
    out["label"] = e.label();
    return out;
}

}  // namespace ck::ser
