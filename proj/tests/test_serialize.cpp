#include "doctest.h"

#include "ck/serialize.hpp"

#include <functional>
#include <string>

using namespace ck;
using ser::Json;

namespace {

bool fails_mentioning(const std::function<void()>& f, const std::string& needle) {
    try {
        f();
    } catch (const Error& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("rationals parse from integers and fraction strings") {
    CHECK(ser::parse_rat(Json(3), "q") == Rat(3));
    CHECK(ser::parse_rat(Json("3/2"), "q") == Rat(3, 2));
    CHECK(ser::parse_rat(Json("-7/4"), "q") == Rat(-7, 4));
    CHECK(fails_mentioning([] { ser::parse_rat(Json("three"), "cfg.q"); }, "cfg.q"));
    CHECK(fails_mentioning([] { ser::parse_rat(Json(1.5), "cfg.q"); }, "cfg.q"));
    CHECK(ser::parse_ext(Json("inf"), "e").is_pos_inf());
    CHECK(ser::parse_ext(Json("-inf"), "e").is_neg_inf());
    CHECK(ser::parse_ext(Json(4), "e") == ExtRat(Rat(4)));
    // emission uses the canonical string form regardless of denominator
    CHECK(ser::rat_json(Rat(3, 2)) == Json("3/2"));
    CHECK(ser::rat_json(Rat(5)) == Json("5"));
    CHECK(ser::ext_json(ExtRat::pos_inf()) == Json("inf"));
}

TEST_CASE("unknown keys are rejected with a field pointer") {
    Json lattice = {{"kind", "lattice"}, {"dim", 1}, {"metric", "l1"}, {"bogus", 1}};
    CHECK(fails_mentioning([&] { ser::parse_space(lattice, "scenario.space"); },
                           "scenario.space.bogus"));
    Json set = {{"kind", "explicit"}, {"points", Json::array({Json::array({1})})}, {"oops", 2}};
    CHECK(fails_mentioning([&] { ser::parse_set(set, 1, "scenario.a"); }, "scenario.a.oops"));
    Json missing = {{"kind", "lattice"}, {"metric", "l1"}};
    CHECK(fails_mentioning([&] { ser::parse_space(missing, "scenario.space"); },
                           "scenario.space"));
    Json badnorm = {{"kind", "lattice"}, {"dim", 1}, {"metric", "l7"}};
    CHECK(fails_mentioning([&] { ser::parse_space(badnorm, "s"); }, "s.metric"));
}

TEST_CASE("space descriptors cover every published kind") {
    Json lat = {{"kind", "lattice"}, {"dim", 2}, {"metric", "linf"}};
    auto sp = ser::parse_space(lat, "s");
    CHECK(sp->dim() == 2);
    CHECK(sp->dist(Point{0, 0}, Point{3, -4}) == ExtRat(Rat(4)));

    Json word = {{"kind", "word-metric"}, {"dim", 1},
                 {"generators", Json::array({Json::array({2})})}};
    auto wsp = ser::parse_space(word, "s");
    CHECK(wsp->dist(Point{0}, Point{4}) == ExtRat(Rat(2)));

    Json rank = {{"kind", "word-metric"}, {"rank", 2}};
    auto fg = ser::parse_space(rank, "s");
    CHECK(fg->dist(Point{1, 2}, Point{1}) == ExtRat(Rat(1)));
    Json mixed = {{"kind", "word-metric"}, {"rank", 2}, {"dim", 1}};
    CHECK(fails_mentioning([&] { ser::parse_space(mixed, "s"); }, "rank excludes"));

    Json fin = {{"kind", "finite"}, {"vertices", 3}, {"basepoint", 0},
                {"edges", Json::array({Json{{"a", 0}, {"b", 1}},
                                       Json{{"a", 1}, {"b", 2}, {"weight", "3/2"}}})}};
    auto fsp = ser::parse_space(fin, "s");
    CHECK(fsp->dist(Point{0}, Point{2}) == ExtRat(Rat(5, 2)));

    Json uni = {{"kind", "disjoint-union"}, {"first", lat}, {"second", lat}};
    auto usp = ser::parse_space(uni, "s");
    CHECK(usp->dim() == 3);
    CHECK(usp->dist(Point{0, 1, 1}, Point{1, 1, 1}).is_pos_inf());
}

TEST_CASE("set descriptors respect the space arity") {
    Json iv = {{"kind", "interval-union"},
               {"parts", Json::array({Json::array({0, "inf"})})}};
    SetExpr ray = ser::parse_set(iv, -1, "a");
    CHECK(ray.contains(Point{100}));
    // interval unions only make sense on the line models, never on a lattice
    CHECK(fails_mentioning([&] { ser::parse_set(iv, 1, "a"); }, "line sets"));

    Json ex = {{"kind", "explicit"},
               {"points", Json::array({Json::array({1, 2}), Json::array({3, 4})})}};
    SetExpr pts = ser::parse_set(ex, 2, "a");
    CHECK(pts.points().size() == 2);
    CHECK(fails_mentioning([&] { ser::parse_set(ex, 3, "a"); }, "does not match"));

    Json cof = {{"kind", "cofinite"}, {"excluded", Json::array({1, 3})}};
    SetExpr c = ser::parse_set(cof, 1, "a");
    CHECK(c.nth_on_n(1) == 2);

    Json box = {{"kind", "box-union"}, {"dim", 2},
                {"boxes", Json::array({Json::array(
                              {Json::array({0, 5}), Json::array({"-inf", "inf"})})})}};
    SetExpr b = ser::parse_set(box, 2, "a");
    CHECK(b.contains(Point{3, 1000}));
    CHECK(!b.contains(Point{6, 0}));

    // round-trip through emission keeps the shape
    Json back = ser::set_json(b);
    CHECK(back["kind"] == "box-union");
    SetExpr again = ser::parse_set(back, 2, "a");
    CHECK(again.contains(Point{3, 1000}));
    CHECK(ser::set_json(ray)["kind"] == "interval-union");
    CHECK(ser::set_json(c)["kind"] == "cofinite");
    CHECK(ser::set_json(pts)["points"].size() == 2);
}

TEST_CASE("model descriptors wire spaces, probes and carriers") {
    ProbeBudget probe;
    Json metric = {{"kind", "metric"},
                   {"space", Json{{"kind", "lattice"}, {"dim", 1}, {"metric", "l1"}}}};
    auto m = ser::parse_model(metric, probe, "m");
    CHECK(m->kind() == asr::Model::Kind::MetricWindowed);
    CHECK(m->space_ptr() != nullptr);

    CHECK(ser::parse_model(Json{{"kind", "ray"}}, probe, "m")->exact());
    CHECK(ser::parse_model(Json{{"kind", "discrete"}}, probe, "m")->exact());
    CHECK(ser::parse_model(Json{{"kind", "finite-infinite-n"}}, probe, "m")->exact());

    Json group = {{"kind", "group-left"},
                  {"space", Json{{"kind", "word-metric"}, {"rank", 2}}}};
    CHECK(ser::parse_model(group, probe, "m")->kind() == asr::Model::Kind::GroupLeft);

    Json sub = {{"kind", "subspace"},
                {"parent", Json{{"kind", "ray"}}},
                {"carrier", Json{{"kind", "interval-union"},
                                 {"parts", Json::array({Json::array({0, "inf"})})}}}};
    auto s = ser::parse_model(sub, probe, "m");
    CHECK(s->kind() == asr::Model::Kind::Subspace);
    CHECK(s->alike(ser::parse_set(Json{{"kind", "interval-union"},
                                       {"parts", Json::array({Json::array({1, 5})})}},
                                  -1, "x"),
                   ser::parse_set(Json{{"kind", "interval-union"},
                                       {"parts", Json::array({Json::array({2, "inf"})})}},
                                  -1, "y"))
              .alike());
    CHECK(fails_mentioning([&] { ser::parse_model(Json{{"kind", "wavelet"}}, probe, "m"); },
                           "m.kind"));
}

TEST_CASE("map descriptors compose innermost first") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    Json comp = {{"kind", "compose"},
                 {"maps", Json::array({Json{{"kind", "scale"}, {"k", 2}},
                                       Json{{"kind", "floor-div"}, {"k", 2}}})}};
    auto f = ser::parse_map(comp, z, z, "f");
    // scale runs first, then floor-div: the round trip is the identity
    CHECK(f.apply(Point{7}) == Point{7});
    CHECK(f.apply(Point{-3}) == Point{-3});

    Json flipped = {{"kind", "compose"},
                    {"maps", Json::array({Json{{"kind", "floor-div"}, {"k", 2}},
                                          Json{{"kind", "scale"}, {"k", 2}}})}};
    auto g = ser::parse_map(flipped, z, z, "g");
    // floor-div first loses the low bit
    CHECK(g.apply(Point{7}) == Point{6});

    auto z2 = spaces::lattice(2, spaces::Norm::L1);
    Json proj = {{"kind", "coordinate-project"}, {"axis", 1}};
    CHECK(ser::parse_map(proj, z2, z, "p").apply(Point{3, 9}) == Point{9});
    Json emb = {{"kind", "axis-embed"}, {"axis", 1}};
    CHECK(ser::parse_map(emb, z, z2, "e").apply(Point{5}) == Point{0, 5});
    Json diag = {{"kind", "diagonal"}};
    CHECK(ser::parse_map(diag, z, z2, "d").apply(Point{4}) == Point{4, 4});
    Json cst = {{"kind", "constant"}, {"value", Json::array({8})}};
    CHECK(ser::parse_map(cst, z, z, "c").apply(Point{-2}) == Point{8});
    Json table = {{"kind", "table"},
                  {"entries", Json::array({Json::array(
                                  {Json::array({1}), Json::array({9})})})}};
    CHECK(ser::parse_map(table, z, z, "t").apply(Point{1}) == Point{9});
    CHECK(fails_mentioning([&] { ser::parse_map(Json{{"kind", "warp"}}, z, z, "f"); },
                           "f.kind"));
}

TEST_CASE("entourage descriptors and probe overrides") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    Json disp = {{"kind", "displacement"}, {"bound", 3}, {"label", "E"}};
    auto e = ser::parse_entourage(disp, z, Rat(10), "e");
    CHECK(e.kind() == coarse::Entourage::Kind::Displacement);
    CHECK(e.bound() == Rat(3));
    CHECK(e.describe() == "E: displacement<=3");

    Json pairs = {{"kind", "explicit-pairs"},
                  {"pairs", Json::array({Json::array(
                                {Json::array({0}), Json::array({1})})})}};
    auto p = ser::parse_entourage(pairs, z, Rat(10), "e");
    CHECK(p.pairs().size() == 1);

    Json graph = {{"kind", "graph-of-map"},
                  {"map", Json{{"kind", "scale"}, {"k", 2}}},
                  {"window", 3}};
    auto g = ser::parse_entourage(graph, z, Rat(10), "e");
    CHECK(g.member(*z, Point{2}, Point{4}));
    CHECK(ser::entourage_json(e)["kind"] == "displacement");
    CHECK(ser::entourage_json(g)["kind"] == "explicit-pairs");

    ProbeBudget base;
    Json over = {{"radii", Json::array({5, 10, 20})}, {"stability", 2}};
    ProbeBudget probe = ser::parse_probe(over, base, "probe");
    CHECK(probe.radii == std::vector<Rat>{Rat(5), Rat(10), Rat(20)});
    CHECK(probe.scales == base.scales);  // untouched fields keep their defaults
    CHECK(probe.stability == 2);
    CHECK(fails_mentioning(
        [&] { ser::parse_probe(Json{{"radii", Json::array({10, 5})}}, base, "probe"); },
        "probe"));
}

TEST_CASE("verdicts and witnesses emit the published fields") {
    ScaleVerdict v = ScaleVerdict::alike_within(Rat(2));
    Json aj = ser::scale_verdict_json(v);
    CHECK(aj["outcome"] == "alike-within");
    CHECK(aj["scale"] == "2");
    CHECK(aj["exact"] == false);

    Witness w;
    w.point = Point{132};
    w.distance = ExtRat(Rat(11));
    w.note = "gap";
    ScaleVerdict r = ScaleVerdict::refuted_at(Rat(10), std::move(w));
    Json rj = ser::scale_verdict_json(r);
    CHECK(rj["outcome"] == "refuted");
    CHECK(rj["refuted-up-to"] == "10");
    CHECK(rj["witness"]["point"] == Json::array({132}));
    CHECK(rj["witness"]["distance"] == "11");
    CHECK(rj["witness"]["note"] == "gap");

    Json ij = ser::scale_verdict_json(ScaleVerdict::inconclusive(Rat(200), Rat(16)));
    CHECK(ij["outcome"] == "inconclusive");
    CHECK(ij["probed-radius"] == "200");
    CHECK(ij["probed-scale"] == "16");
}
