#include "doctest.h"

#include <algorithm>
#include <iterator>

#include "ck/asr.hpp"
#include "ck/geometry.hpp"

using namespace ck;

namespace {

ExtRat fin(long long v) { return ExtRat(Rat(v)); }

SetExpr ray_ge(long long lo) {
    return SetExpr::interval_union({{ExtRat(Rat(lo)), ExtRat::pos_inf()}});
}
SetExpr ray_le(long long hi) {
    return SetExpr::interval_union({{ExtRat::neg_inf(), ExtRat(Rat(hi))}});
}
SetExpr evens_box() {
    // evens have no box form; use the word picture via explicit windows instead
    std::vector<Point> pts;
    for (long long n = -200; n <= 200; n += 2) pts.push_back({n});
    return SetExpr::explicit_set(std::move(pts));
}
SetExpr odds_box() {
    std::vector<Point> pts;
    for (long long n = -199; n <= 199; n += 2) pts.push_back({n});
    return SetExpr::explicit_set(std::move(pts));
}

}  // namespace

TEST_CASE("metric model certifies parity classes") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    auto m = asr::metric_windowed(z, ProbeBudget{});
    ScaleVerdict v = m->alike(evens_box(), odds_box());
    REQUIRE(v.alike());
    // adjacent parities differ by 1; certified scale is the stabilized gap plus one
    CHECK(v.scale == Rat(2));
    CHECK(!m->exact());
}

TEST_CASE("metric model refutes thinning sets with a checkable witness") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    ProbeBudget probe;
    probe.scales = {Rat(1), Rat(2), Rat(4), Rat(8), Rat(10)};
    auto m = asr::metric_windowed(z, probe);
    SetExpr naturals = SetExpr::box_union(1, {{SetExpr::AxisRange{fin(0), ExtRat::pos_inf()}}});
    std::vector<Point> sq;
    for (long long k = 0; k * k <= 250; ++k) sq.push_back({k * k});
    SetExpr squares = SetExpr::explicit_set(std::move(sq));
    ScaleVerdict v = m->alike(naturals, squares);
    REQUIRE(v.refuted());
    REQUIRE(v.witness.has_value());
    REQUIRE(v.witness->point.has_value());
    // first point past 121 that exceeds scale 10 from both 121 and 144
    CHECK(*v.witness->point == Point{132});
    CHECK(v.witness->distance == ExtRat(Rat(11)));
    // the witness must actually sit farther from the squares than every probed scale
    ExtRat gap = geom::dist_to_set(*z, *v.witness->point, squares);
    CHECK(gap == v.witness->distance);
    CHECK(gap > ExtRat(probe.max_scale()));
    // a taller ladder outgrows every in-window gap and certifies instead;
    // both answers live under the probe caveat, neither one is exact
    CHECK(!m->exact());
    auto wide = asr::metric_windowed(z, ProbeBudget{});
    ScaleVerdict w = wide->alike(naturals, squares);
    CHECK(w.alike());
    CHECK(w.scale == Rat(16));
    CHECK(!w.exact);
}

TEST_CASE("metric alike handles empty sides exactly") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    auto m = asr::metric_windowed(z, ProbeBudget{});
    SetExpr none = SetExpr::explicit_set({});
    SetExpr some = SetExpr::explicit_set({{0}});
    CHECK(m->alike(none, none).alike());
    CHECK(m->alike(none, some).refuted());
    CHECK(m->alike(some, none).refuted());
    CHECK(m->bounded(none).alike());
    CHECK(m->bounded(some).alike());
    SetExpr ray = SetExpr::box_union(1, {{SetExpr::AxisRange{fin(0), ExtRat::pos_inf()}}});
    CHECK(m->bounded(ray).refuted());
}

TEST_CASE("line model classifies by infimum") {
    auto m = asr::ray_on_r();
    CHECK(m->exact());
    // same class: both bounded below
    ScaleVerdict v = m->alike(ray_ge(0), ray_ge(100));
    CHECK(v.alike());
    CHECK(v.exact);
    // whole line vs ray: different classes
    CHECK(m->alike(SetExpr::interval_union({{ExtRat::neg_inf(), ExtRat::pos_inf()}}), ray_ge(0))
              .refuted());
    CHECK(m->alike(ray_le(0), ray_ge(0)).refuted());
    CHECK(m->alike(ray_le(5), ray_le(-500)).alike());
    // any two sets with finite infima are alike, segments and upward rays included
    SetExpr seg = SetExpr::interval_union({{fin(0), fin(5)}});
    CHECK(m->alike(seg, SetExpr::interval_union({{fin(100), fin(101)}})).alike());
    CHECK(m->alike(seg, ray_ge(0)).alike());
    CHECK(m->bounded(seg).alike());
    // boundedness is decided by the infimum alone: only downward escape refutes
    CHECK(m->bounded(ray_ge(0)).alike());
    CHECK(m->bounded(ray_le(0)).refuted());
    SetExpr none = SetExpr::interval_union({});
    CHECK(m->alike(none, none).alike());
    CHECK(m->alike(none, seg).refuted());
    CHECK(m->bounded(none).alike());
}

TEST_CASE("discrete model relates sets with finite symmetric difference") {
    auto m = asr::discrete_on_n();
    SetExpr a = SetExpr::explicit_set({{0}, {7}});
    SetExpr b = SetExpr::cofinite({});
    CHECK(m->exact());
    // finite vs infinite differ by an infinite set
    CHECK(m->alike(a, b).refuted());
    CHECK(m->alike(b, b).alike());
    CHECK(m->alike(b, SetExpr::cofinite({3, 5})).alike());
    CHECK(m->alike(a, SetExpr::explicit_set({{1000}})).alike());
    CHECK(m->alike(SetExpr::explicit_set({}), b).refuted());
    // bounded means a finite difference from the empty set
    CHECK(m->bounded(a).alike());
    CHECK(m->bounded(b).refuted());
}

TEST_CASE("size-class model splits finite from infinite") {
    auto m = asr::finite_infinite_on_n();
    SetExpr fin_set = SetExpr::explicit_set({{0}, {4}, {9}});
    SetExpr cof = SetExpr::cofinite({1});
    CHECK(m->alike(fin_set, SetExpr::explicit_set({{100}})).alike());
    CHECK(m->alike(cof, SetExpr::cofinite({0, 2, 4})).alike());
    ScaleVerdict v = m->alike(fin_set, cof);
    REQUIRE(v.refuted());
    CHECK(v.exact);
    CHECK(m->alike(SetExpr::explicit_set({}), SetExpr::explicit_set({})).alike());
    // empty vs finite nonempty: distinct classes
    CHECK(m->alike(SetExpr::explicit_set({}), fin_set).refuted());
    CHECK(m->bounded(fin_set).alike());
    CHECK(m->bounded(cof).refuted());
}

TEST_CASE("group model answers through the word metric") {
    auto evens = spaces::word_lattice(1, {Point{2}});
    auto m = asr::group_left(evens, ProbeBudget{});
    std::vector<Point> a, b;
    for (long long n = -100; n <= 100; n += 2) a.push_back({n});
    for (long long n = -100; n <= 100; n += 4) b.push_back({n});
    // multiples of 4 sit within one word step of the evens
    CHECK(m->alike(SetExpr::explicit_set(a), SetExpr::explicit_set(b)).alike());
}

TEST_CASE("subspace model delegates after a containment check") {
    auto m = asr::subspace(asr::ray_on_r(), ray_ge(0));
    CHECK(m->alike(ray_ge(5), ray_ge(80)).alike());
    // sets escaping the carrier are rejected
    CHECK_THROWS(m->alike(ray_le(0), ray_ge(0)));
}

TEST_CASE("decomposition splits along the covering pair") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    SetExpr A = SetExpr::box_union(1, {{SetExpr::AxisRange{fin(-50), fin(50)}}});
    SetExpr B1 = SetExpr::box_union(1, {{SetExpr::AxisRange{fin(-60), fin(0)}}});
    SetExpr B2 = SetExpr::box_union(1, {{SetExpr::AxisRange{fin(0), fin(60)}}});
    auto res = asr::decompose(*z, A, B1, B2, Rat(2), Rat(50));
    CHECK(!res.a1.empty());
    CHECK(!res.a2.empty());
    // union property: the parts rebuild A on the window
    PointSet all;
    std::merge(res.a1.begin(), res.a1.end(), res.a2.begin(), res.a2.end(),
               std::back_inserter(all));
    all.erase(std::unique(all.begin(), all.end()), all.end());
    CHECK(all == A.window_points(*z, Rat(50)));
    // every a1 point is strictly within 2 of B1
    for (const Point& p : res.a1) CHECK(geom::dist_to_set(*z, p, B1) < ExtRat(Rat(2)));
    for (const Point& p : res.a2) CHECK(geom::dist_to_set(*z, p, B2) < ExtRat(Rat(2)));
}

TEST_CASE("connected certifies finite families of singleton pairs") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    auto m = asr::metric_windowed(z, ProbeBudget{});
    ScaleVerdict v = asr::connected(*m, {{Point{0}, Point{3}}, {Point{10}, Point{10}}});
    REQUIRE(v.alike());
    CHECK(v.scale >= Rat(3));
}

TEST_CASE("line partner matching preserves the infimum class") {
    SetExpr A = ray_ge(0);
    SetExpr B = ray_ge(100);
    SetExpr A1 = SetExpr::interval_union({{fin(3), ExtRat::pos_inf()}});
    SetExpr B1 = asr::ray_subset_partner(A, B, A1);
    CHECK(!B1.empty());
    auto m = asr::ray_on_r();
    CHECK(m->alike(A1, B1).alike());
    // partner stays inside B
    CHECK(B1.line_inf() >= B.line_inf());
}
