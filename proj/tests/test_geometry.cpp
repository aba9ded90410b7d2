#include "doctest.h"

#include <random>

#include "ck/geometry.hpp"

using namespace ck;

namespace {

ExtRat fin(long long v) { return ExtRat(Rat(v)); }

// quadratic-scan reference for the one-sided and symmetric distances
ExtRat naive_hausdorff(const spaces::Space& s, const PointSet& A, const PointSet& B) {
    if (A.empty() && B.empty()) return ExtRat(Rat(0));
    if (A.empty() || B.empty()) return ExtRat::pos_inf();
    ExtRat worst(Rat(0));
    for (const Point& a : A) {
        ExtRat best = ExtRat::pos_inf();
        for (const Point& b : B) best = min(best, s.dist(a, b));
        worst = max(worst, best);
    }
    for (const Point& b : B) {
        ExtRat best = ExtRat::pos_inf();
        for (const Point& a : A) best = min(best, s.dist(a, b));
        worst = max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("hausdorff conventions on the ends") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    CHECK(geom::hausdorff(*z, {}, {}) == ExtRat(Rat(0)));
    CHECK(geom::hausdorff(*z, {}, {{3}}).is_pos_inf());
    CHECK(geom::hausdorff(*z, {{3}}, {}).is_pos_inf());
    CHECK(geom::hausdorff(*z, {{0}}, {{0}, {10}}) == fin(10));
    CHECK(geom::hausdorff(*z, {{0}, {1}}, {{1}, {2}}) == fin(1));
}

TEST_CASE("hausdorff agrees with the quadratic scan on random plane pairs") {
    auto z2 = spaces::lattice(2, spaces::Norm::L1);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coord(-40, 40);
    std::uniform_int_distribution<int> size(0, 24);
    for (int trial = 0; trial < 60; ++trial) {
        PointSet A, B;
        int na = size(rng), nb = size(rng);
        for (int i = 0; i < na; ++i) A.push_back({coord(rng), coord(rng)});
        for (int i = 0; i < nb; ++i) B.push_back({coord(rng), coord(rng)});
        CHECK(geom::hausdorff(*z2, A, B) == naive_hausdorff(*z2, A, B));
    }
}

TEST_CASE("open neighborhoods exclude the boundary") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    SetExpr a = SetExpr::explicit_set({{0}});
    // d < 2 keeps -1..1 only
    CHECK(geom::ball(*z, a, Rat(2), Rat(10)) == PointSet{{-1}, {0}, {1}});
    // window clip wins over the radius
    CHECK(geom::ball(*z, a, Rat(100), Rat(1)) == PointSet{{-1}, {0}, {1}});
    CHECK(geom::ball(*z, SetExpr::explicit_set({}), Rat(2), Rat(10)).empty());
}

TEST_CASE("closed balls include the boundary") {
    auto z = spaces::lattice(1, spaces::Norm::L1);
    CHECK(geom::closed_ball(*z, Point{5}, Rat(2), Rat(10)) == PointSet{{3}, {4}, {5}, {6}, {7}});
    // clipped by the window
    CHECK(geom::closed_ball(*z, Point{9}, Rat(3), Rat(10)) == PointSet{{6}, {7}, {8}, {9}, {10}});
}

TEST_CASE("distance to a symbolic set is exact") {
    auto z2 = spaces::lattice(2, spaces::Norm::L1);
    SetExpr axis = SetExpr::box_union(
        2, {{SetExpr::AxisRange{fin(0), ExtRat::pos_inf()}, SetExpr::AxisRange{fin(0), fin(0)}}});
    CHECK(geom::dist_to_set(*z2, Point{3, 4}, axis) == fin(4));
    CHECK(geom::dist_to_set(*z2, Point{-2, 1}, axis) == fin(3));  // clamp to (0,0)
    CHECK(geom::dist_to_set(*z2, Point{5, 0}, axis) == fin(0));
    CHECK(geom::dist_to_set(*z2, Point{0, 0}, SetExpr::explicit_set({})).is_pos_inf());
    auto z = spaces::lattice(1, spaces::Norm::L1);
    CHECK(geom::dist_to_set(*z, Point{6}, SetExpr::cofinite({5, 6, 7})) == fin(2));
}

TEST_CASE("diameter is exact and flags unbounded sets") {
    auto z2 = spaces::lattice(2, spaces::Norm::L1);
    CHECK(geom::diameter(*z2, SetExpr::explicit_set({{0, 0}, {3, 4}})) == fin(7));
    CHECK(geom::diameter(*z2, SetExpr::explicit_set({{1, 1}})) == fin(0));
    CHECK(geom::diameter(*z2, SetExpr::explicit_set({})) == fin(0));
    SetExpr slab = SetExpr::box_union(
        2, {{SetExpr::AxisRange{fin(0), ExtRat::pos_inf()}, SetExpr::AxisRange{fin(0), fin(1)}}});
    CHECK(geom::diameter(*z2, slab).is_pos_inf());
    auto z = spaces::lattice(1, spaces::Norm::L1);
    CHECK(geom::diameter(*z, SetExpr::box_union(1, {{SetExpr::AxisRange{fin(2), fin(9)}}})) ==
          fin(7));
    CHECK_THROWS(geom::diameter(*z, SetExpr::interval_union({{fin(0), fin(1)}})));
}
