#include "ck/separation.hpp"

#include <algorithm>

#include "ck/geometry.hpp"

namespace ck::separation {

namespace {

struct SurvivorView {
    PointSet points;
    std::vector<ExtRat> norms;
};

SurvivorView window_view(const spaces::Space& space, const SetExpr& S, const Rat& W) {
    SurvivorView v;
    v.points = S.window_points(space, W);
    v.norms.reserve(v.points.size());
    for (const Point& p : v.points) v.norms.push_back(spaces::norm_from_base(space, p));
    return v;
}

// min cross distance among points with norm strictly beyond the scale
ExtRat surviving_gap(const spaces::Space& space, const SurvivorView& a, const SurvivorView& b,
                     const Rat& r) {
    ExtRat best = ExtRat::pos_inf();
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if (!(a.norms[i] > ExtRat(r))) continue;
        for (std::size_t j = 0; j < b.points.size(); ++j) {
            if (!(b.norms[j] > ExtRat(r))) continue;
            best = min(best, space.dist(a.points[i], b.points[j]));
        }
    }
    return best;
}

ExtRat floor_ext(const ExtRat& d) {
    return d.finite() ? ExtRat(Rat(d.value().floor())) : d;
}

}  // namespace

DisjointReport disjoint_check(const spaces::Space& space, const SetExpr& A, const SetExpr& B,
                              const ProbeBudget& probe) {
    probe.validate();
    DisjointReport rep;
    const std::vector<Rat>& radii = probe.radii;
    const std::vector<Rat>& scales = probe.scales;

    std::vector<SurvivorView> av, bv;
    for (const Rat& W : radii) {
        av.push_back(window_view(space, A, W));
        bv.push_back(window_view(space, B, W));
    }
    for (std::size_t w = 0; w < radii.size(); ++w) {
        std::vector<ExtRat> row;
        row.reserve(scales.size());
        for (const Rat& r : scales) row.push_back(surviving_gap(space, av[w], bv[w], r));
        rep.table.push_back(std::move(row));
    }
    rep.headline = rep.table.back();

    const int s = probe.stability;
    for (std::size_t k = 0; k < scales.size(); ++k) {
        bool stable = static_cast<int>(radii.size()) >= s;
        for (int i = 1; stable && i < s; ++i)
            stable = rep.table[rep.table.size() - 1 - i][k] == rep.headline[k];
        rep.window_stable.push_back(stable);
    }

    if (static_cast<int>(scales.size()) < s) {
        rep.note = "fewer scales than the stability window";
        return rep;
    }
    const std::size_t tail0 = scales.size() - static_cast<std::size_t>(s);
    bool tail_windows_stable = true;
    for (std::size_t k = tail0; k < scales.size(); ++k)
        tail_windows_stable = tail_windows_stable && rep.window_stable[k];
    if (!tail_windows_stable) {
        rep.note = "survivor gaps still moving with the window";
        return rep;
    }

    bool tail_equal_finite = rep.headline.back().finite();
    for (std::size_t k = tail0; tail_equal_finite && k < scales.size(); ++k)
        tail_equal_finite = rep.headline[k] == rep.headline.back();
    if (tail_equal_finite) {
        rep.outcome = DisjointReport::Outcome::Bounded;
        rep.bound = rep.headline.back().value();
        for (std::size_t k = tail0; k < scales.size(); ++k) {
            const SurvivorView& a = av.back();
            const SurvivorView& b = bv.back();
            bool found = false;
            for (std::size_t i = 0; i < a.points.size() && !found; ++i) {
                if (!(a.norms[i] > ExtRat(scales[k]))) continue;
                for (std::size_t j = 0; j < b.points.size(); ++j) {
                    if (!(b.norms[j] > ExtRat(scales[k]))) continue;
                    if (space.dist(a.points[i], b.points[j]) == rep.headline[k]) {
                        rep.witnesses.emplace_back(a.points[i], b.points[j]);
                        found = true;
                        break;
                    }
                }
            }
        }
        return rep;
    }

    bool outgrows = true;
    for (std::size_t k = tail0; outgrows && k < scales.size(); ++k)
        outgrows = rep.headline[k] >= ExtRat(scales[k]);
    bool growing = rep.headline.back().is_pos_inf();
    if (!growing) {
        growing = true;
        for (std::size_t k = tail0; growing && k + 1 < scales.size(); ++k)
            growing = rep.headline[k] < rep.headline[k + 1];
    }
    if (outgrows && growing) {
        rep.outcome = DisjointReport::Outcome::Divergent;
        return rep;
    }
    rep.note = "gap neither stabilized nor outgrew the scales";
    return rep;
}

NormalityReport normality_partition(const spaces::Space& space, const SetExpr& A, const SetExpr& B,
                                    const Rat& R, const ProbeBudget& probe) {
    probe.validate();
    if (!(R > Rat(0))) throw Error(ErrorKind::InvalidParams, "partition window must be positive");

    NormalityReport rep;
    const PointSet window = space.enumerate(R);
    for (const Point& x : window) {
        NormalityReport::Entry e;
        e.x = x;
        e.dist_a = geom::dist_to_set(space, x, A);
        e.dist_b = geom::dist_to_set(space, x, B);
        const ExtRat fa = floor_ext(e.dist_a), fb = floor_ext(e.dist_b);
        e.side = fb < fa ? 1 : 2;
        if (e.side == 1) {
            rep.x1.push_back(x);
            if (e.dist_b.finite())
                rep.x1_strips[e.dist_b.value().floor()].push_back(x);
            else
                rep.x1_far.push_back(x);
        } else {
            rep.x2.push_back(x);
            if (e.dist_a.finite())
                rep.x2_strips[e.dist_a.value().floor()].push_back(x);
            else
                rep.x2_far.push_back(x);
        }
        rep.assignment.push_back(std::move(e));
    }
    rep.covers = rep.x1.size() + rep.x2.size() == window.size();

    rep.a_in_x2 = true;
    for (const Point& a : A.window_points(space, R))
        rep.a_in_x2 = rep.a_in_x2 && contains(rep.x2, a);
    rep.b_in_x1 = true;
    for (const Point& b : B.window_points(space, R))
        rep.b_in_x1 = rep.b_in_x1 && contains(rep.x1, b);

    ProbeBudget clipped = probe;
    clipped.radii.clear();
    for (const Rat& r : probe.radii)
        if (!(r > R)) clipped.radii.push_back(r);
    if (clipped.radii.empty()) clipped.radii.push_back(R);

    rep.a_vs_x1 = disjoint_check(space, A, SetExpr::explicit_set(rep.x1), clipped);
    rep.b_vs_x2 = disjoint_check(space, B, SetExpr::explicit_set(rep.x2), clipped);
    return rep;
}

bool delta_proximity(const asr::Model& model, const SetExpr& A, const SetExpr& B) {
    using K = asr::Model::Kind;
    auto require_natural = [](const SetExpr& S) {
        if (!S.is_natural_set())
            throw Error(ErrorKind::PreconditionFailed, "nearness on this model needs natural sets");
    };
    switch (model.kind()) {
        case K::RayOnR: {
            if (A.empty() || B.empty()) return false;
            if (A.closed_intersects(B)) return true;
            return A.line_inf().is_neg_inf() && B.line_inf().is_neg_inf();
        }
        case K::FiniteInfiniteOnN: {
            require_natural(A);
            require_natural(B);
            if (A.empty() || B.empty()) return false;
            if (A.infinite_on_n() && B.infinite_on_n()) return true;
            return A.closed_intersects(B);
        }
        case K::Discrete: {
            require_natural(A);
            require_natural(B);
            if (A.empty() || B.empty()) return false;
            return A.closed_intersects(B);
        }
        default:
            throw Error(ErrorKind::UnsupportedModel,
                        "nearness oracle is defined on the exact line and naturals models");
    }
}

}  // namespace ck::separation
