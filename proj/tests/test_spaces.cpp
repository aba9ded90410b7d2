#include "doctest.h"

#include "ck/space.hpp"

using namespace ck;
using spaces::Norm;

TEST_CASE("lattice metrics") {
    auto l1 = spaces::lattice(2, Norm::L1);
    auto linf = spaces::lattice(2, Norm::Linf);
    Point a{0, 0}, b{3, -4};
    CHECK(l1->dist(a, b) == ExtRat(Rat(7)));
    CHECK(linf->dist(a, b) == ExtRat(Rat(4)));
    CHECK(l1->dist(b, b) == ExtRat(Rat(0)));
    CHECK(l1->dim() == 2);
    CHECK(l1->basepoint() == Point{0, 0});
    CHECK(!l1->may_have_infinite_distance());
}

TEST_CASE("lattice windows are lex sorted and complete") {
    auto z2 = spaces::lattice(2, Norm::L1);
    PointSet w1 = z2->enumerate(Rat(1));
    PointSet expect{{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}};
    CHECK(w1 == expect);
    // |B(0,r)| in the l1 plane: 2r^2 + 2r + 1
    CHECK(z2->enumerate(Rat(2)).size() == 13);
    CHECK(z2->enumerate(Rat(5)).size() == 61);
    PointSet w5 = z2->enumerate(Rat(5));
    CHECK(std::is_sorted(w5.begin(), w5.end()));
}

TEST_CASE("free group words") {
    auto f2 = spaces::free_group(2);
    CHECK(f2->dim() == -1);
    CHECK(f2->basepoint() == Point{});
    CHECK(f2->dist(Point{}, Point{1}) == ExtRat(Rat(1)));
    // d(u, v) is the reduced length of u^-1 v
    CHECK(f2->dist(Point{1}, Point{2}) == ExtRat(Rat(2)));
    CHECK(f2->dist(Point{1, 2}, Point{1}) == ExtRat(Rat(1)));
    CHECK_THROWS_AS(f2->dist(Point{1, -1}, Point{}), Error);  // words must be reduced
    // ball sizes in F_2: 1, 5, 17 (4*3^(n-1) new words per shell)
    CHECK(f2->enumerate(Rat(0)).size() == 1);
    CHECK(f2->enumerate(Rat(1)).size() == 5);
    CHECK(f2->enumerate(Rat(2)).size() == 17);
}

TEST_CASE("word lattice over even steps") {
    auto evens = spaces::word_lattice(1, {Point{2}});
    CHECK(evens->dist(Point{0}, Point{4}) == ExtRat(Rat(2)));
    CHECK(evens->dist(Point{0}, Point{1}).is_pos_inf());
    CHECK(evens->may_have_infinite_distance());
    PointSet w = evens->enumerate(Rat(2));
    CHECK(w == PointSet{{-4}, {-2}, {0}, {2}, {4}});
}

TEST_CASE("finite space shortest paths") {
    // path 0 -1- 1 -1- 2, isolated 3
    auto g = spaces::finite_space(
        4, {{0, 1, Rat(1)}, {1, 2, Rat(1)}}, 0);
    CHECK(g->dist(Point{0}, Point{2}) == ExtRat(Rat(2)));
    CHECK(g->dist(Point{2}, Point{0}) == ExtRat(Rat(2)));
    CHECK(g->dist(Point{0}, Point{3}).is_pos_inf());
    CHECK(g->may_have_infinite_distance());
    CHECK(g->enumerate(Rat(1)) == PointSet{{0}, {1}});
}

TEST_CASE("disjoint union separates components") {
    auto u = spaces::disjoint_union(spaces::lattice(1, Norm::L1), spaces::lattice(1, Norm::L1));
    CHECK(u->dist(Point{0, 3}, Point{0, 5}) == ExtRat(Rat(2)));
    CHECK(u->dist(Point{0, 3}, Point{1, 3}).is_pos_inf());
    CHECK(u->may_have_infinite_distance());
    // both components window around their own base
    PointSet w = u->enumerate(Rat(1));
    CHECK(w == PointSet{{0, -1}, {0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}});
}

TEST_CASE("subset space inherits the parent metric") {
    auto z = spaces::lattice(1, Norm::L1);
    auto evens = spaces::subset_space(
        z, [](const Point& p) { return p[0] % 2 == 0; }, Point{0}, "even integers");
    CHECK(evens->dist(Point{0}, Point{4}) == ExtRat(Rat(4)));
    CHECK(evens->enumerate(Rat(3)) == PointSet{{-2}, {0}, {2}});
    CHECK_THROWS(spaces::subset_space(
        z, [](const Point& p) { return p[0] % 2 == 0; }, Point{1}, "bad base"));
}

TEST_CASE("degenerate parameters are rejected") {
    CHECK_THROWS(spaces::lattice(0, Norm::L1));
    CHECK_THROWS(spaces::free_group(0));
    CHECK_THROWS(spaces::word_lattice(1, {}));
    CHECK_THROWS(spaces::finite_space(2, {}, 5));
}
