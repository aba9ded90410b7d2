// Scenario runner: loads a JSON scenario, dispatches to the library, and
// emits a machine-readable report on stdout plus a one-line summary on
// stderr. Exit codes: 0 definite verdict, 1 violation or refutation,
// 2 inconclusive or budget, 3 input error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ck/asdim.hpp"
#include "ck/asr.hpp"
#include "ck/axioms.hpp"
#include "ck/entourage.hpp"
#include "ck/errors.hpp"
#include "ck/geometry.hpp"
#include "ck/maps.hpp"
#include "ck/separation.hpp"
#include "ck/serialize.hpp"
#include "ck/setexpr.hpp"
#include "ck/space.hpp"
#include "ck/verdict.hpp"

namespace {

using ck::ExtRat;
using ck::Point;
using ck::PointSet;
using ck::ProbeBudget;
using ck::Rat;
using ck::ScaleVerdict;
using ck::SetExpr;
using ck::ser::Json;

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string scenario_path;
    std::string radii_csv;
    std::string scales_csv;
    int stability = 0;           // 0: keep scenario/default
    int depth = 0;               // 0: keep scenario/default
    long long budget = 0;        // 0: keep scenario/default
    bool emit_cover = false;
    std::uint64_t seed = 12345;  // drives the randomized relation generators
};

struct Outcome {
    Json report;
    int exit_code = 0;
    std::string summary;
};

std::vector<Rat> parse_csv_rats(const std::string& csv, const std::string& where) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(Rat::parse(item));
        } catch (const std::exception&) {
            ck::ser::fail(where, "not a rational: \"" + item + "\"");
        }
    }
    if (out.empty()) ck::ser::fail(where, "expected a comma-separated list of rationals");
    return out;
}

int set_dim_for(const ck::asr::Model& model) {
    if (auto sp = model.space_ptr()) return sp->dim();
    return -1;  // symbolic models validate membership themselves
}

// Flags beat the scenario block, which beats the defaults.
ProbeBudget effective_probe(const Json& root, const Options& opt) {
    ProbeBudget probe;
    if (root.contains("probe")) probe = ck::ser::parse_probe(root.at("probe"), probe, "probe");
    if (!opt.radii_csv.empty()) probe.radii = parse_csv_rats(opt.radii_csv, "--probe-radii");
    if (!opt.scales_csv.empty()) probe.scales = parse_csv_rats(opt.scales_csv, "--probe-scales");
    if (opt.stability > 0) probe.stability = opt.stability;
    try {
        probe.validate();
    } catch (const ck::Error& e) {
        ck::ser::fail("probe", e.what());
    }
    return probe;
}

int verdict_exit(const ScaleVerdict& v) {
    switch (v.outcome) {
        case ScaleVerdict::Outcome::AlikeWithin:
            return 0;
        case ScaleVerdict::Outcome::RefutedUpTo:
            return 1;
        default:
            return 2;
    }
}

std::string verdict_summary(const ScaleVerdict& v) {
    switch (v.outcome) {
        case ScaleVerdict::Outcome::AlikeWithin:
            return "alike within " + v.scale.str();
        case ScaleVerdict::Outcome::RefutedUpTo: {
            std::string s = "refuted up to " + v.refuted_up_to.str();
            if (v.witness && v.witness->point)
                s += " (witness " + ck::point_str(*v.witness->point) + ", gap " +
                     v.witness->distance.str() + ")";
            return s;
        }
        default:
            return "inconclusive at radius " + v.probed_radius.str();
    }
}

Json table_json(const std::vector<std::vector<ExtRat>>& table) {
    Json rows = Json::array();
    for (const auto& row : table) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(ck::ser::ext_json(v));
        rows.push_back(r);
    }
    return rows;
}

Json modulus_profile_json(const std::vector<ck::maps::ModulusEntry>& profile) {
    Json rows = Json::array();
    for (const auto& e : profile) {
        Json row = Json::array();
        row.push_back(ck::ser::rat_json(e.r));
        row.push_back(ck::ser::ext_json(e.s));
        rows.push_back(row);
    }
    return rows;
}

Json coarse_report_json(const ck::maps::CoarseReport& rep) {
    Json out;
    switch (rep.outcome) {
        case ck::maps::CoarseReport::Outcome::Coarse:
            out["outcome"] = "coarse";
            break;
        case ck::maps::CoarseReport::Outcome::NotCoarse:
            out["outcome"] = "not-coarse";
            break;
        default:
            out["outcome"] = "inconclusive";
            break;
    }
    switch (rep.reason) {
        case ck::maps::CoarseReport::Reason::ModulusGrowth:
            out["reason"] = "modulus-growth";
            break;
        case ck::maps::CoarseReport::Reason::Improper:
            out["reason"] = "improper";
            break;
        default:
            break;
    }
    out["profile"] = modulus_profile_json(rep.profile);
    out["table"] = table_json(rep.table);
    if (rep.witness_pair) {
        Json w;
        w["pair"] = ck::ser::pair_json(*rep.witness_pair);
        w["scale"] = ck::ser::rat_json(rep.witness_scale);
        w["gap"] = ck::ser::ext_json(rep.witness_gap);
        out["witness"] = w;
    }
    Json prop;
    switch (rep.properness.outcome) {
        case ck::maps::ProperReport::Outcome::Proper:
            prop["outcome"] = "proper";
            break;
        case ck::maps::ProperReport::Outcome::NotProper:
            prop["outcome"] = "not-proper";
            break;
        default:
            prop["outcome"] = "inconclusive";
            break;
    }
    if (rep.properness.witness) prop["witness"] = ck::ser::point_json(*rep.properness.witness);
    prop["pull"] = table_json(rep.properness.pull);
    out["properness"] = prop;
    return out;
}

Json disjoint_report_json(const ck::separation::DisjointReport& rep, const ProbeBudget& probe) {
    Json out;
    switch (rep.outcome) {
        case ck::separation::DisjointReport::Outcome::Divergent:
            out["outcome"] = "divergent";
            break;
        case ck::separation::DisjointReport::Outcome::Bounded:
            out["outcome"] = "bounded";
            break;
        default:
            out["outcome"] = "inconclusive";
            break;
    }
    Json profile = Json::array();
    for (std::size_t k = 0; k < rep.headline.size() && k < probe.scales.size(); ++k) {
        Json row = Json::array();
        row.push_back(ck::ser::rat_json(probe.scales[k]));
        row.push_back(ck::ser::ext_json(rep.headline[k]));
        profile.push_back(row);
    }
    out["profile"] = profile;
    out["table"] = table_json(rep.table);
    if (rep.outcome == ck::separation::DisjointReport::Outcome::Bounded) {
        out["bound"] = ck::ser::rat_json(rep.bound);
        out["witnesses"] = ck::ser::pairs_json(rep.witnesses);
    }
    if (!rep.note.empty()) out["note"] = rep.note;
    return out;
}

const char* disjoint_word(const ck::separation::DisjointReport& rep) {
    switch (rep.outcome) {
        case ck::separation::DisjointReport::Outcome::Divergent:
            return "divergent";
        case ck::separation::DisjointReport::Outcome::Bounded:
            return "bounded";
        default:
            return "inconclusive";
    }
}

int disjoint_exit(const ck::separation::DisjointReport& rep) {
    switch (rep.outcome) {
        case ck::separation::DisjointReport::Outcome::Divergent:
            return 0;
        case ck::separation::DisjointReport::Outcome::Bounded:
            return 1;
        default:
            return 2;
    }
}

// ---- command handlers ----

Outcome run_alike(const Json& root, const ProbeBudget& probe) {
    ck::ser::check_keys(root, "scenario", {"command", "model", "a", "b", "probe"});
    auto model = ck::ser::parse_model(ck::ser::need(root, "scenario", "model"), probe, "model");
    const int dim = set_dim_for(*model);
    SetExpr A = ck::ser::parse_set(ck::ser::need(root, "scenario", "a"), dim, "a");
    SetExpr B = ck::ser::parse_set(ck::ser::need(root, "scenario", "b"), dim, "b");
    ScaleVerdict v = model->alike(A, B);
    Outcome out;
    out.report["verdict"] = ck::ser::scale_verdict_json(v);
    out.report["model"] = model->describe();
    out.exit_code = verdict_exit(v);
    out.summary = std::string("alike: ") + verdict_summary(v);
    return out;
}

Outcome run_bounded(const Json& root, const ProbeBudget& probe) {
    ck::ser::check_keys(root, "scenario", {"command", "model", "a", "probe"});
    auto model = ck::ser::parse_model(ck::ser::need(root, "scenario", "model"), probe, "model");
    SetExpr A = ck::ser::parse_set(ck::ser::need(root, "scenario", "a"), set_dim_for(*model), "a");
    ScaleVerdict v = model->bounded(A);
    Outcome out;
    out.report["verdict"] = ck::ser::scale_verdict_json(v);
    out.report["model"] = model->describe();
    out.exit_code = verdict_exit(v);
    out.summary = std::string("bounded: ") + verdict_summary(v);
    return out;
}

Outcome run_coarse_check(const Json& root, const ProbeBudget& probe) {
    ck::ser::check_keys(root, "scenario", {"command", "domain", "codomain", "map", "probe"});
    auto dom = ck::ser::parse_space(ck::ser::need(root, "scenario", "domain"), "domain");
    auto cod = ck::ser::parse_space(ck::ser::need(root, "scenario", "codomain"), "codomain");
    auto f = ck::ser::parse_map(ck::ser::need(root, "scenario", "map"), dom, cod, "map");
    auto rep = ck::maps::coarse_check(f, probe);
    Outcome out;
    out.report["map"] = f.name;
    out.report["verdict"] = coarse_report_json(rep);
    out.exit_code = rep.outcome == ck::maps::CoarseReport::Outcome::Coarse      ? 0
                    : rep.outcome == ck::maps::CoarseReport::Outcome::NotCoarse ? 1
                                                                                : 2;
    out.summary = "coarse-check: " + std::string(out.report["verdict"]["outcome"]);
    return out;
}

Outcome run_close_check(const Json& root, const ProbeBudget& probe) {
    ck::ser::check_keys(root, "scenario", {"command", "domain", "codomain", "f", "g", "probe"});
    auto dom = ck::ser::parse_space(ck::ser::need(root, "scenario", "domain"), "domain");
    auto cod = ck::ser::parse_space(ck::ser::need(root, "scenario", "codomain"), "codomain");
    auto f = ck::ser::parse_map(ck::ser::need(root, "scenario", "f"), dom, cod, "f");
    auto g = ck::ser::parse_map(ck::ser::need(root, "scenario", "g"), dom, cod, "g");
    ScaleVerdict v = ck::maps::close_check(f, g, probe);
    Outcome out;
    out.report["f"] = f.name;
    out.report["g"] = g.name;
    out.report["verdict"] = ck::ser::scale_verdict_json(v);
    out.exit_code = verdict_exit(v);
    out.summary = std::string("close-check: ") + verdict_summary(v);
    return out;
}

Outcome run_equivalence(const Json& root, const ProbeBudget& probe) {
    ck::ser::check_keys(root, "scenario", {"command", "x", "y", "f", "g", "probe"});
    auto X = ck::ser::parse_space(ck::ser::need(root, "scenario", "x"), "x");
    auto Y = ck::ser::parse_space(ck::ser::need(root, "scenario", "y"), "y");
    auto f = ck::ser::parse_map(ck::ser::need(root, "scenario", "f"), X, Y, "f");
    auto g = ck::ser::parse_map(ck::ser::need(root, "scenario", "g"), Y, X, "g");
    auto rep = ck::maps::equivalence_check(f, g, probe);
    Outcome out;
    out.report["f"] = coarse_report_json(rep.f_report);
    out.report["g"] = coarse_report_json(rep.g_report);
    out.report["back-close"] = ck::ser::scale_verdict_json(rep.back_close);
    out.report["forth-close"] = ck::ser::scale_verdict_json(rep.forth_close);
    out.report["equivalence"] = rep.ok();
    if (rep.ok()) out.report["closeness-bound"] = ck::ser::rat_json(rep.closeness_bound());
    const bool refuted =
        rep.f_report.outcome == ck::maps::CoarseReport::Outcome::NotCoarse ||
        rep.g_report.outcome == ck::maps::CoarseReport::Outcome::NotCoarse ||
        rep.back_close.refuted() || rep.forth_close.refuted();
    out.exit_code = rep.ok() ? 0 : refuted ? 1 : 2;
    out.summary = rep.ok() ? "equivalence: certified within bound " +
                                 rep.closeness_bound().str()
                  : refuted ? "equivalence: refuted"
                            : "equivalence: inconclusive";
    return out;
}

Outcome run_disjoint(const Json& root, const ProbeBudget& probe) {
    ck::ser::check_keys(root, "scenario", {"command", "space", "a", "b", "probe"});
    auto space = ck::ser::parse_space(ck::ser::need(root, "scenario", "space"), "space");
    SetExpr A = ck::ser::parse_set(ck::ser::need(root, "scenario", "a"), space->dim(), "a");
    SetExpr B = ck::ser::parse_set(ck::ser::need(root, "scenario", "b"), space->dim(), "b");
    auto rep = ck::separation::disjoint_check(*space, A, B, probe);
    Outcome out;
    out.report["verdict"] = disjoint_report_json(rep, probe);
    out.exit_code = disjoint_exit(rep);
    out.summary = std::string("disjoint: ") + disjoint_word(rep);
    if (rep.outcome == ck::separation::DisjointReport::Outcome::Bounded)
        out.summary += " (gap " + rep.bound.str() + ")";
    return out;
}

Json strips_json(const std::map<long long, PointSet>& strips) {
    Json out = Json::array();
    for (const auto& [band, pts] : strips) {
        Json row;
        row["band"] = band;
        row["count"] = pts.size();
        out.push_back(row);
    }
    return out;
}

Outcome run_normality(const Json& root, const ProbeBudget& probe) {
    ck::ser::check_keys(root, "scenario", {"command", "space", "a", "b", "window", "probe"});
    auto space = ck::ser::parse_space(ck::ser::need(root, "scenario", "space"), "space");
    SetExpr A = ck::ser::parse_set(ck::ser::need(root, "scenario", "a"), space->dim(), "a");
    SetExpr B = ck::ser::parse_set(ck::ser::need(root, "scenario", "b"), space->dim(), "b");
    Rat R = ck::ser::parse_rat(ck::ser::need(root, "scenario", "window"), "window");
    auto rep = ck::separation::normality_partition(*space, A, B, R, probe);
    Outcome out;
    Json v;
    v["covers"] = rep.covers;
    v["a-inside-its-half"] = rep.a_in_x2;
    v["b-inside-its-half"] = rep.b_in_x1;
    v["x1-size"] = rep.x1.size();
    v["x2-size"] = rep.x2.size();
    v["x1-strips"] = strips_json(rep.x1_strips);
    v["x2-strips"] = strips_json(rep.x2_strips);
    v["a-vs-x1"] = disjoint_report_json(rep.a_vs_x1, probe);
    v["b-vs-x2"] = disjoint_report_json(rep.b_vs_x2, probe);
    out.report["verdict"] = v;
    const bool ok = rep.covers && rep.a_in_x2 && rep.b_in_x1;
    out.exit_code = ok ? 0 : 1;
    out.summary = ok ? "normality: partition covers the window"
                     : "normality: partition failed";
    return out;
}

ck::axioms::SetRelation parse_relation(const Json& j, bool proximity, std::uint64_t seed,
                                       const std::string& where) {
    const std::string kind = ck::ser::need(j, where, "kind").get<std::string>();
    if (kind == "discrete") {
        ck::ser::check_keys(j, where, {"kind"});
        if (proximity) ck::ser::fail(where + ".kind", "not a nearness oracle");
        return ck::axioms::relation_discrete();
    }
    if (kind == "cardinality-equal") {
        ck::ser::check_keys(j, where, {"kind"});
        if (proximity) ck::ser::fail(where + ".kind", "not a nearness oracle");
        return ck::axioms::relation_cardinality_equal();
    }
    if (kind == "large-or-equal") {
        ck::ser::check_keys(j, where, {"kind", "min"});
        if (proximity) ck::ser::fail(where + ".kind", "not a nearness oracle");
        return ck::axioms::relation_large_or_equal(
            static_cast<std::size_t>(ck::ser::parse_int(ck::ser::need(j, where, "min"), where + ".min")));
    }
    if (kind == "intersects") {
        ck::ser::check_keys(j, where, {"kind"});
        return proximity ? ck::axioms::delta_intersects()
                         : ck::axioms::relation_intersects_or_both_empty();
    }
    if (kind == "always") {
        ck::ser::check_keys(j, where, {"kind"});
        return proximity ? ck::axioms::delta_always() : ck::axioms::relation_always();
    }
    if (kind == "sum-card-geq") {
        ck::ser::check_keys(j, where, {"kind", "threshold"});
        if (!proximity) ck::ser::fail(where + ".kind", "nearness oracle used as a resemblance");
        return ck::axioms::delta_sum_card_geq(static_cast<std::size_t>(
            ck::ser::parse_int(ck::ser::need(j, where, "threshold"), where + ".threshold")));
    }
    if (kind == "random") {
        ck::ser::check_keys(j, where, {"kind", "seed"});
        std::uint64_t s = seed;
        if (j.contains("seed"))
            s = static_cast<std::uint64_t>(ck::ser::parse_int(j.at("seed"), where + ".seed"));
        return ck::axioms::random_relation(s, !proximity);
    }
    ck::ser::fail(where + ".kind", "unknown relation kind \"" + kind + "\"");
}

ck::axioms::AxiomLimits parse_limits(const Json& j, const std::string& where) {
    ck::ser::check_keys(j, where, {"max-equivalence", "max-decomposition", "max-violations", "max-work"});
    ck::axioms::AxiomLimits lim;
    if (j.contains("max-equivalence"))
        lim.max_equivalence = static_cast<int>(ck::ser::parse_int(j.at("max-equivalence"), where));
    if (j.contains("max-decomposition"))
        lim.max_decomposition = static_cast<int>(ck::ser::parse_int(j.at("max-decomposition"), where));
    if (j.contains("max-violations"))
        lim.max_violations = static_cast<int>(ck::ser::parse_int(j.at("max-violations"), where));
    if (j.contains("max-work")) lim.max_work = ck::ser::parse_int(j.at("max-work"), where);
    return lim;
}

Json axiom_report_json(const ck::axioms::AxiomReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["status"] = c.status == ck::axioms::CheckStatus::Passed     ? "passed"
                       : c.status == ck::axioms::CheckStatus::Violated ? "violated"
                                                                       : "capped";
        cj["tuples-checked"] = c.tuples_checked;
        if (!c.violations.empty()) {
            Json vs = Json::array();
            for (const auto& v : c.violations) {
                Json vj;
                vj["axiom"] = v.axiom;
                Json sets = Json::array();
                for (const auto& ns : v.sets) {
                    Json sj;
                    sj["label"] = ns.label;
                    sj["points"] = ck::ser::points_json(ns.set);
                    sets.push_back(sj);
                }
                vj["sets"] = sets;
                if (!v.note.empty()) vj["note"] = v.note;
                vs.push_back(vj);
            }
            cj["violations"] = vs;
        }
        if (!c.note.empty()) cj["note"] = c.note;
        checks.push_back(cj);
    }
    Json out;
    out["checks"] = checks;
    out["all-passed"] = rep.all_passed();
    return out;
}

Outcome run_axioms(const Json& root, bool proximity, std::uint64_t seed) {
    ck::ser::check_keys(root, "scenario", {"command", "universe", "relation", "limits", "probe"});
    PointSet universe;
    const Json& uj = ck::ser::need(root, "scenario", "universe");
    if (!uj.is_array()) ck::ser::fail("universe", "expected an array of points");
    for (std::size_t i = 0; i < uj.size(); ++i)
        universe.push_back(ck::ser::parse_point(uj[i], "universe[" + std::to_string(i) + "]"));
    auto rel = parse_relation(ck::ser::need(root, "scenario", "relation"), proximity, seed, "relation");
    ck::axioms::AxiomLimits lim;
    if (root.contains("limits")) lim = parse_limits(root.at("limits"), "limits");
    auto rep = proximity ? ck::axioms::check_proximity_axioms(universe, rel, lim)
                         : ck::axioms::check_asr_axioms(universe, rel, lim);
    Outcome out;
    out.report["verdict"] = axiom_report_json(rep);
    out.exit_code = rep.any_violation() ? 1 : rep.all_passed() ? 0 : 2;
    const char* name = proximity ? "axioms-proximity" : "axioms-asr";
    out.summary = std::string(name) + (rep.any_violation() ? ": violation found"
                                       : rep.all_passed()  ? ": all axioms hold"
                                                           : ": capped without a violation");
    if (rep.any_violation()) {
        for (const auto& c : rep.checks) {
            if (c.status == ck::axioms::CheckStatus::Violated) {
                out.summary += " (" + c.name + ")";
                break;
            }
        }
    }
    return out;
}

Outcome run_entourage(const Json& root, const ProbeBudget& probe, const Options& opt) {
    ck::ser::check_keys(root, "scenario",
                        {"command", "op", "space", "model", "e", "outer", "inner", "first",
                         "second", "a", "b", "family", "structure", "window", "cap", "mode",
                         "depth", "probe"});
    const std::string op = ck::ser::need(root, "scenario", "op").get<std::string>();
    ck::spaces::SpacePtr space;
    if (root.contains("space")) space = ck::ser::parse_space(root.at("space"), "space");
    Rat window = probe.max_radius();
    if (root.contains("window")) window = ck::ser::parse_rat(root.at("window"), "window");
    auto parse_ent = [&](const char* key) {
        return ck::ser::parse_entourage(ck::ser::need(root, "scenario", key), space, window, key);
    };
    Outcome out;
    if (op == "compose") {
        auto e = ck::coarse::Entourage::compose(parse_ent("outer"), parse_ent("inner"));
        out.report["verdict"] = ck::ser::entourage_json(e);
        out.summary = "entourage compose: " + e.describe();
        return out;
    }
    if (op == "inverse") {
        auto e = parse_ent("e").inverse();
        out.report["verdict"] = ck::ser::entourage_json(e);
        out.summary = "entourage inverse: " + e.describe();
        return out;
    }
    if (op == "union") {
        auto e = ck::coarse::Entourage::unite(parse_ent("first"), parse_ent("second"));
        out.report["verdict"] = ck::ser::entourage_json(e);
        out.summary = "entourage union: " + e.describe();
        return out;
    }
    if (op == "image") {
        auto e = parse_ent("e");
        SetExpr A = ck::ser::parse_set(ck::ser::need(root, "scenario", "a"), -1, "a");
        PointSet img = e.image(A.enumerate_finite());
        out.report["verdict"] = ck::ser::points_json(img);
        out.summary = "entourage image: " + std::to_string(img.size()) + " points";
        return out;
    }
    if (op == "in-maximal") {
        auto model = ck::ser::parse_model(ck::ser::need(root, "scenario", "model"), probe, "model");
        auto e = parse_ent("e");
        int cap = 12;
        if (root.contains("cap"))
            cap = static_cast<int>(ck::ser::parse_int(root.at("cap"), "cap"));
        ck::coarse::MembershipMode mode = ck::coarse::MembershipMode::Auto;
        if (root.contains("mode")) {
            const std::string m = root.at("mode").get<std::string>();
            if (m == "exhaustive")
                mode = ck::coarse::MembershipMode::Exhaustive;
            else if (m != "auto")
                ck::ser::fail("mode", "expected \"auto\" or \"exhaustive\"");
        }
        auto v = ck::coarse::in_maximal(*model, e, cap, mode);
        Json vj;
        vj["outcome"] = v.outcome == ck::coarse::MembershipOutcome::Member      ? "member"
                        : v.outcome == ck::coarse::MembershipOutcome::NonMember ? "non-member"
                                                                                : "inconclusive";
        if (v.outcome == ck::coarse::MembershipOutcome::Member)
            vj["bound"] = ck::ser::rat_json(v.bound);
        if (!v.refuting_pairs.empty()) {
            vj["refuting-pairs"] = ck::ser::pairs_json(v.refuting_pairs);
            vj["projection-verdict"] = ck::ser::scale_verdict_json(v.projection_verdict);
        }
        if (!v.note.empty()) vj["note"] = v.note;
        out.report["verdict"] = vj;
        out.exit_code = v.outcome == ck::coarse::MembershipOutcome::Member      ? 0
                        : v.outcome == ck::coarse::MembershipOutcome::NonMember ? 1
                                                                                : 2;
        out.summary = "entourage in-maximal: " + std::string(vj["outcome"]);
        return out;
    }
    if (op == "alike-via") {
        if (!space) ck::ser::fail("space", "alike-via needs a space");
        const Json& fj = ck::ser::need(root, "scenario", "family");
        if (!fj.is_array() || fj.empty()) ck::ser::fail("family", "expected a nonempty array");
        std::vector<ck::coarse::Entourage> family;
        for (std::size_t i = 0; i < fj.size(); ++i)
            family.push_back(ck::ser::parse_entourage(fj[i], space, window,
                                                      "family[" + std::to_string(i) + "]"));
        SetExpr A = ck::ser::parse_set(ck::ser::need(root, "scenario", "a"), space->dim(), "a");
        SetExpr B = ck::ser::parse_set(ck::ser::need(root, "scenario", "b"), space->dim(), "b");
        int depth = opt.depth > 0 ? opt.depth : 3;
        if (opt.depth == 0 && root.contains("depth"))
            depth = static_cast<int>(ck::ser::parse_int(root.at("depth"), "depth"));
        auto v = ck::coarse::alike_via(*space, family, A, B, window, depth);
        out.report["verdict"] = ck::ser::scale_verdict_json(v.verdict);
        if (!v.via.empty()) out.report["via"] = v.via;
        out.report["tried"] = v.tried;
        out.exit_code = verdict_exit(v.verdict);
        out.summary = std::string("entourage alike-via: ") + verdict_summary(v.verdict);
        return out;
    }
    if (op == "alike-via-structure") {
        const std::string sk = ck::ser::need(root, "scenario", "structure").get<std::string>();
        auto kind = ck::coarse::StructureKind::FinitePreimages;
        if (sk == "finite-preimages")
            kind = ck::coarse::StructureKind::FinitePreimages;
        else if (sk == "bounded-degree")
            kind = ck::coarse::StructureKind::BoundedDegree;
        else
            ck::ser::fail("structure", "expected \"finite-preimages\" or \"bounded-degree\"");
        SetExpr A = ck::ser::parse_set(ck::ser::need(root, "scenario", "a"), -1, "a");
        SetExpr B = ck::ser::parse_set(ck::ser::need(root, "scenario", "b"), -1, "b");
        auto v = ck::coarse::alike_via_structure(kind, A, B, window);
        out.report["verdict"] = ck::ser::scale_verdict_json(v.verdict);
        out.report["note"] = v.note;
        out.report["window-verified"] = v.window_verified;
        out.report["sample-pairs"] = ck::ser::pairs_json(v.sample_pairs);
        out.exit_code = verdict_exit(v.verdict);
        out.summary = std::string("entourage alike-via-structure: ") + verdict_summary(v.verdict);
        return out;
    }
    ck::ser::fail("op", "unknown entourage op \"" + op + "\"");
}

Outcome run_asdim_upper(const Json& root, const ProbeBudget& probe, const Options& opt) {
    ck::ser::check_keys(root, "scenario",
                        {"command", "space", "scales", "l-factor", "window", "probe"});
    auto space = ck::ser::parse_space(ck::ser::need(root, "scenario", "space"), "space");
    const Json& sj = ck::ser::need(root, "scenario", "scales");
    if (!sj.is_array() || sj.empty()) ck::ser::fail("scales", "expected a nonempty array");
    std::vector<Rat> scales;
    for (std::size_t i = 0; i < sj.size(); ++i)
        scales.push_back(ck::ser::parse_rat(sj[i], "scales[" + std::to_string(i) + "]"));
    long long l_factor = 8;
    if (root.contains("l-factor")) l_factor = ck::ser::parse_int(root.at("l-factor"), "l-factor");
    Rat window = ck::ser::parse_rat(ck::ser::need(root, "scenario", "window"), "window");
    auto cert = ck::asdim::asdim_upper(*space, scales, l_factor, window, probe);
    Outcome out;
    Json v;
    v["claimed-dim"] = cert.claimed_dim;
    v["window"] = ck::ser::rat_json(cert.window);
    Json entries = Json::array();
    for (const auto& e : cert.entries) {
        Json ej;
        ej["r"] = ck::ser::rat_json(e.r);
        ej["block"] = e.L;
        ej["multiplicity"] = e.multiplicity;
        ej["covers"] = e.covers;
        ej["refines"] = e.refines_ok;
        ej["uniformly-bounded"] = e.ub_ok;
        ej["diameter-bound"] = ck::ser::rat_json(e.ub_bound);
        entries.push_back(ej);
    }
    v["entries"] = entries;
    v["assumptions"] = cert.assumptions;
    v["certified"] = cert.ok();
    if (opt.emit_cover) {
        Json covers = Json::array();
        for (const auto& c : cert.covers) {
            Json cj;
            cj["window"] = ck::ser::rat_json(c.window);
            Json members = Json::array();
            for (const auto& m : c.members) members.push_back(ck::ser::set_json(m));
            cj["members"] = members;
            covers.push_back(cj);
        }
        v["covers"] = covers;
    }
    out.report["verdict"] = v;
    out.exit_code = cert.ok() ? 0 : 1;
    out.summary = cert.ok() ? "asdim-upper: certified dimension at most " +
                                  std::to_string(cert.claimed_dim)
                            : "asdim-upper: certificate failed";
    return out;
}

Outcome run_asdim_lower(const Json& root, const Options& opt) {
    ck::ser::check_keys(root, "scenario",
                        {"command", "space", "region", "m", "r", "n", "budget", "probe"});
    auto space = ck::ser::parse_space(ck::ser::need(root, "scenario", "space"), "space");
    SetExpr region = ck::ser::parse_set(ck::ser::need(root, "scenario", "region"), space->dim(), "region");
    Rat m = ck::ser::parse_rat(ck::ser::need(root, "scenario", "m"), "m");
    Rat r = ck::ser::parse_rat(ck::ser::need(root, "scenario", "r"), "r");
    int n = static_cast<int>(ck::ser::parse_int(ck::ser::need(root, "scenario", "n"), "n"));
    long long budget = 200000;
    if (root.contains("budget")) budget = ck::ser::parse_int(root.at("budget"), "budget");
    if (opt.budget > 0) budget = opt.budget;
    auto rep = ck::asdim::lower_bound_search(*space, region, m, r, n, budget);
    Outcome out;
    Json v;
    v["outcome"] = rep.outcome == ck::asdim::LowerBoundReport::Outcome::Feasible     ? "feasible"
                   : rep.outcome == ck::asdim::LowerBoundReport::Outcome::Infeasible ? "infeasible"
                                                                                     : "budget";
    v["nodes"] = rep.nodes;
    v["core-size"] = rep.core.size();
    v["validated"] = rep.validated;
    if (!rep.note.empty()) v["note"] = rep.note;
    if (opt.emit_cover && !rep.cover.empty()) {
        Json members = Json::array();
        for (const auto& mset : rep.cover) members.push_back(ck::ser::points_json(mset));
        v["cover"] = members;
    }
    out.report["verdict"] = v;
    out.exit_code = rep.outcome == ck::asdim::LowerBoundReport::Outcome::Feasible     ? 0
                    : rep.outcome == ck::asdim::LowerBoundReport::Outcome::Infeasible ? 1
                                                                                      : 2;
    out.summary = "asdim-lower: " + std::string(v["outcome"]);
    if (rep.outcome == ck::asdim::LowerBoundReport::Outcome::Infeasible)
        out.summary += " (no qualifying cover exists)";
    return out;
}

Outcome run_higson(const Json& root) {
    ck::ser::check_keys(root, "scenario", {"command", "space", "f", "e", "radii", "probe"});
    auto space = ck::ser::parse_space(ck::ser::need(root, "scenario", "space"), "space");
    const Json& fj = ck::ser::need(root, "scenario", "f");
    const std::string fk = ck::ser::need(fj, "f", "kind").get<std::string>();
    ck::maps::PairFunction f;
    if (fk == "constant") {
        ck::ser::check_keys(fj, "f", {"kind", "re", "im"});
        Rat re = fj.contains("re") ? ck::ser::parse_rat(fj.at("re"), "f.re") : Rat(0);
        Rat im = fj.contains("im") ? ck::ser::parse_rat(fj.at("im"), "f.im") : Rat(0);
        f = ck::maps::pf_constant(re, im);
    } else if (fk == "parity") {
        ck::ser::check_keys(fj, "f", {"kind"});
        f = ck::maps::pf_parity();
    } else if (fk == "reciprocal") {
        ck::ser::check_keys(fj, "f", {"kind"});
        f = ck::maps::pf_reciprocal();
    } else {
        ck::ser::fail("f.kind", "unknown function kind \"" + fk + "\"");
    }
    const Json& rj = ck::ser::need(root, "scenario", "radii");
    if (!rj.is_array() || rj.empty()) ck::ser::fail("radii", "expected a nonempty array");
    std::vector<Rat> radii;
    for (std::size_t i = 0; i < rj.size(); ++i)
        radii.push_back(ck::ser::parse_rat(rj[i], "radii[" + std::to_string(i) + "]"));
    Rat graph_window = radii.back();
    for (const Rat& r : radii)
        if (graph_window <= r) graph_window = r;
    auto e = ck::ser::parse_entourage(ck::ser::need(root, "scenario", "e"), space, graph_window, "e");
    auto profile = ck::maps::higson_variation(*space, f, e, radii);
    Outcome out;
    Json entries = Json::array();
    for (const auto& entry : profile) {
        Json row = Json::array();
        row.push_back(ck::ser::rat_json(entry.radius));
        row.push_back(ck::ser::ext_json(entry.variation));
        entries.push_back(row);
    }
    out.report["verdict"] = Json{{"profile", entries}};
    out.exit_code = 0;
    out.summary = "higson-profile: " + std::to_string(profile.size()) + " radii probed";
    return out;
}

Outcome dispatch(const std::string& command, const Json& root, const ProbeBudget& probe,
                 const Options& opt) {
    if (command == "alike") return run_alike(root, probe);
    if (command == "bounded") return run_bounded(root, probe);
    if (command == "coarse-check") return run_coarse_check(root, probe);
    if (command == "close-check") return run_close_check(root, probe);
    if (command == "equivalence") return run_equivalence(root, probe);
    if (command == "disjoint") return run_disjoint(root, probe);
    if (command == "normality") return run_normality(root, probe);
    if (command == "axioms-asr") return run_axioms(root, false, opt.seed);
    if (command == "axioms-proximity") return run_axioms(root, true, opt.seed);
    if (command == "entourage") return run_entourage(root, probe, opt);
    if (command == "asdim-upper") return run_asdim_upper(root, probe, opt);
    if (command == "asdim-lower") return run_asdim_lower(root, opt);
    if (command == "higson-profile") return run_higson(root);
    ck::ser::fail("command", "unknown command \"" + command + "\"");
}

const char* error_kind_name(ck::ErrorKind k) {
    switch (k) {
        case ck::ErrorKind::UnsupportedModel:
            return "unsupported-model";
        case ck::ErrorKind::CapExceeded:
            return "cap-exceeded";
        case ck::ErrorKind::PreconditionFailed:
            return "precondition-failed";
        case ck::ErrorKind::InvalidParams:
            return "invalid-params";
        case ck::ErrorKind::BoundedDisplacement:
            return "bounded-displacement";
        default:
            return "input-error";
    }
}

int error_exit(ck::ErrorKind k) {
    switch (k) {
        case ck::ErrorKind::CapExceeded:
        case ck::ErrorKind::BoundedDisplacement:
            return 2;
        default:
            return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coarse-geometry scenario runner"};
    Options opt;
    app.add_option("scenario", opt.scenario_path, "scenario file (JSON)")->required();
    app.add_option("--probe-radii", opt.radii_csv, "window radii, comma-separated rationals");
    app.add_option("--probe-scales", opt.scales_csv, "probe scales, comma-separated rationals");
    app.add_option("--stability", opt.stability, "stable tail length required to certify");
    app.add_option("--depth", opt.depth, "entourage composition depth");
    app.add_option("--budget", opt.budget, "search node budget");
    app.add_flag("--emit-cover", opt.emit_cover, "inline covers into the report");
    app.add_option("--seed", opt.seed, "seed for the randomized relation generators");
    CLI11_PARSE(app, argc, argv);

    std::string command = "unknown";
    const auto started = std::chrono::steady_clock::now();
    auto finish = [&](Json report, int code, const std::string& summary) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        Json prov;
        prov["version"] = kVersion;
        prov["seed"] = opt.seed;
        prov["timing-ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        report["provenance"] = prov;
        std::cout << report.dump(2) << "\n";
        std::cerr << summary << "\n";
        return code;
    };

    try {
        std::ifstream in(opt.scenario_path);
        if (!in) ck::ser::fail("scenario", "cannot open \"" + opt.scenario_path + "\"");
        Json root;
        try {
            root = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            ck::ser::fail("scenario", std::string("not valid JSON: ") + e.what());
        }
        command = ck::ser::need(root, "scenario", "command").get<std::string>();
        ProbeBudget probe = effective_probe(root, opt);
        Outcome out = dispatch(command, root, probe, opt);
        Json report;
        report["command"] = command;
        for (auto it = out.report.begin(); it != out.report.end(); ++it)
            report[it.key()] = it.value();
        report["probe"] = ck::ser::probe_json(probe);
        return finish(std::move(report), out.exit_code, out.summary);
    } catch (const ck::Error& e) {
        Json report;
        report["command"] = command;
        Json err;
        err["kind"] = error_kind_name(e.kind());
        err["message"] = e.what();
        if (e.witness()) err["witness"] = ck::ser::point_json(*e.witness());
        report["error"] = err;
        return finish(std::move(report), error_exit(e.kind()),
                      std::string("error (") + error_kind_name(e.kind()) + "): " + e.what());
    } catch (const std::exception& e) {
        Json report;
        report["command"] = command;
        Json err;
        err["kind"] = "input-error";
        err["message"] = e.what();
        report["error"] = err;
        return finish(std::move(report), 3, std::string("error: ") + e.what());
    }
}
