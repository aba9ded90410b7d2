#pragma once

#include "ck/point.hpp"
#include "ck/rat.hpp"
#include "ck/setexpr.hpp"
#include "ck/space.hpp"

namespace ck::geom {

// open metric neighborhood of A, clipped to the R-window:
// { p : d(base,p) <= R, d(p, A within the (R+r)-window) < r }
PointSet ball(const spaces::Space& space, const SetExpr& A, const Rat& r, const Rat& R);

// closed ball around a single center, clipped to the R-window
PointSet closed_ball(const spaces::Space& space, const Point& center, const Rat& r, const Rat& R);

// Hausdorff distance of two finite point lists; d(empty, empty) = 0, d(empty, nonempty) = inf
ExtRat hausdorff(const spaces::Space& space, const PointSet& A, const PointSet& B);

// min distance from a point to a finite point list; inf when the list is empty
ExtRat dist_to_points(const spaces::Space& space, const Point& p, const PointSet& B);

// exact distance from a window point to a symbolic set (inf when the set is empty):
// explicit sets scan, boxes clamp per axis, cofinite sets scan outward
ExtRat dist_to_set(const spaces::Space& space, const Point& p, const SetExpr& A);

// exact diameter; inf when the extent is unbounded, errors on interval unions
ExtRat diameter(const spaces::Space& space, const SetExpr& A);

}  // namespace ck::geom
