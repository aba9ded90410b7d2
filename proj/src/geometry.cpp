#include "ck/geometry.hpp"

#include <algorithm>

namespace ck::geom {

PointSet ball(const spaces::Space& space, const SetExpr& A, const Rat& r, const Rat& R) {
    PointSet out;
    if (!r.is_negative() && !r.is_zero()) {
        // sources one ring wider than the window, so edge points see all neighbors
        const PointSet sources = A.window_points(space, R + r);
        if (!sources.empty()) {
            ExtRat rad{r};
            for (const Point& p : space.enumerate(R))
                if (dist_to_points(space, p, sources) < rad) out.push_back(p);
        }
    }
    return out;
}

PointSet closed_ball(const spaces::Space& space, const Point& center, const Rat& r, const Rat& R) {
    PointSet out;
    if (r.is_negative()) return out;
    ExtRat rad{r};
    for (const Point& p : space.enumerate(R))
        if (space.dist(center, p) <= rad) out.push_back(p);
    return out;
}

ExtRat dist_to_points(const spaces::Space& space, const Point& p, const PointSet& B) {
    ExtRat best = ExtRat::pos_inf();
    for (const Point& b : B) {
        ExtRat d = space.dist(p, b);
        if (d < best) {
            best = d;
            if (best.finite() && best.value().is_zero()) break;
        }
    }
    return best;
}

ExtRat hausdorff(const spaces::Space& space, const PointSet& A, const PointSet& B) {
    if (A.empty() && B.empty()) return ExtRat{Rat(0)};
    if (A.empty() || B.empty()) return ExtRat::pos_inf();
    ExtRat worst{Rat(0)};
    for (const Point& a : A) worst = max(worst, dist_to_points(space, a, B));
    for (const Point& b : B) worst = max(worst, dist_to_points(space, b, A));
    return worst;
}

ExtRat dist_to_set(const spaces::Space& space, const Point& p, const SetExpr& A) {
    if (A.empty()) return ExtRat::pos_inf();
    switch (A.kind()) {
        case SetExpr::Kind::Explicit:
            return dist_to_points(space, p, A.points());
        case SetExpr::Kind::BoxUnion: {
            if (space.kind() != spaces::Space::Kind::Lattice)
                throw Error(ErrorKind::UnsupportedModel, "box distance needs a lattice metric");
            if (static_cast<int>(p.size()) != A.dim())
                throw Error(ErrorKind::InvalidParams, "point arity does not match the box dimension");
            ExtRat best = ExtRat::pos_inf();
            for (const SetExpr::Box& b : A.boxes()) {
                Point q(p.size());
                for (std::size_t i = 0; i < p.size(); ++i) {
                    Coord x = p[i];
                    if (b[i].lo.finite() && x < b[i].lo.value().ceil()) x = b[i].lo.value().ceil();
                    if (b[i].hi.finite() && x > b[i].hi.value().floor()) x = b[i].hi.value().floor();
                    q[i] = x;
                }
                best = min(best, space.dist(p, q));
            }
            return best;
        }
        case SetExpr::Kind::Cofinite: {
            if (space.kind() != spaces::Space::Kind::Lattice || space.dim() != 1)
                throw Error(ErrorKind::UnsupportedModel, "cofinite distance needs the one-dimensional lattice");
            if (A.contains(p)) return ExtRat{Rat(0)};
            // finite exclusions: a member exists within |p| + |excluded| + 1 steps
            for (Coord d = 1;; ++d) {
                Point lo{p[0] - d}, hi{p[0] + d};
                if (A.contains(hi)) return space.dist(p, hi);
                if (A.contains(lo)) return space.dist(p, lo);
            }
        }
        case SetExpr::Kind::IntervalUnion:
            throw Error(ErrorKind::UnsupportedModel, "interval unions carry no lattice distance");
    }
    return ExtRat::pos_inf();
}

ExtRat diameter(const spaces::Space& space, const SetExpr& A) {
    if (A.kind() == SetExpr::Kind::IntervalUnion)
        throw Error(ErrorKind::UnsupportedModel, "interval unions carry no lattice diameter");
    if (A.empty()) return ExtRat{Rat(0)};
    if (A.unbounded_extent()) return ExtRat::pos_inf();
    if (A.kind() == SetExpr::Kind::BoxUnion && space.kind() == spaces::Space::Kind::Lattice) {
        // the farthest pair sits at per-axis extreme corners, for both lattice norms
        ExtRat best{Rat(0)};
        const auto& boxes = A.boxes();
        for (const SetExpr::Box& P : boxes)
            for (const SetExpr::Box& Q : boxes) {
                Point x(P.size()), y(P.size());
                for (std::size_t i = 0; i < P.size(); ++i) {
                    Coord plo = P[i].lo.value().ceil(), phi = P[i].hi.value().floor();
                    Coord qlo = Q[i].lo.value().ceil(), qhi = Q[i].hi.value().floor();
                    Coord gap_a = qhi >= plo ? qhi - plo : plo - qhi;
                    Coord gap_b = phi >= qlo ? phi - qlo : qlo - phi;
                    if (gap_a >= gap_b) { x[i] = plo; y[i] = qhi; } else { x[i] = phi; y[i] = qlo; }
                }
                best = max(best, space.dist(x, y));
            }
        return best;
    }
    const PointSet pts = A.enumerate_finite();
    ExtRat best{Rat(0)};
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = max(best, space.dist(pts[i], pts[j]));
    return best;
}

}  // namespace ck::geom
