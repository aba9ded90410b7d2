#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ck/asr.hpp"
#include "ck/setexpr.hpp"
#include "ck/space.hpp"
#include "ck/verdict.hpp"

namespace ck::separation {

// Divergence of two sets: after discarding everything within each probed scale
// of the basepoint, does the surviving cross distance outgrow the scale, or
// does it stabilize at a finite bound? Intersecting sets report bound 0.
struct DisjointReport {
    enum class Outcome { Divergent, Bounded, Inconclusive };
    Outcome outcome = Outcome::Inconclusive;
    std::vector<std::vector<ExtRat>> table;  // rows: window radius; cols: scale
    std::vector<ExtRat> headline;            // widest-window row
    std::vector<bool> window_stable;         // per scale: tail windows agree
    Rat bound;                               // Bounded: the stabilized gap
    std::vector<std::pair<Point, Point>> witnesses;  // Bounded: minimizing pair per tail scale
    std::string note;
};
DisjointReport disjoint_check(const spaces::Space& space, const SetExpr& A, const SetExpr& B,
                              const ProbeBudget& probe);

// Splits the R-window into a side leaning toward A and a side leaning toward
// B by comparing floored exact distances (ties toward the A side). Each side
// comes striped by its distance to the opposite set, and each generator is
// checked for divergence from the opposite side.
struct NormalityReport {
    struct Entry {
        Point x;
        ExtRat dist_a;
        ExtRat dist_b;
        int side = 2;  // 1 leans toward B, 2 leans toward A
    };
    std::vector<Entry> assignment;
    PointSet x1, x2;
    std::map<long long, PointSet> x1_strips;  // keyed by floored distance to B
    std::map<long long, PointSet> x2_strips;  // keyed by floored distance to A
    PointSet x1_far, x2_far;                  // infinite distance to the striping set
    bool covers = false;                      // every window point took exactly one side
    bool a_in_x2 = false;                     // A's window points all landed on the A side
    bool b_in_x1 = false;
    DisjointReport a_vs_x1;
    DisjointReport b_vs_x2;
};
NormalityReport normality_partition(const spaces::Space& space, const SetExpr& A, const SetExpr& B,
                                    const Rat& R, const ProbeBudget& probe);

// Exact nearness oracle on the symbolic models: line sets are near when their
// closures meet or both run to -inf; natural sets are near when they meet, and
// under the finite/infinite model also when both are infinite.
bool delta_proximity(const asr::Model& model, const SetExpr& A, const SetExpr& B);

}  // namespace ck::separation
