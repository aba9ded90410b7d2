#include "ck/asr.hpp"

#include <algorithm>
#include <sstream>

#include "ck/geometry.hpp"

namespace ck::asr {

namespace {

enum class LineClass { Empty, UnboundedBelow, BoundedBelow };

LineClass line_class(const SetExpr& s) {
    if (s.empty()) return LineClass::Empty;
    return s.line_inf().is_neg_inf() ? LineClass::UnboundedBelow : LineClass::BoundedBelow;
}

const char* line_class_name(LineClass c) {
    switch (c) {
        case LineClass::Empty: return "empty";
        case LineClass::UnboundedBelow: return "unbounded below";
        case LineClass::BoundedBelow: return "bounded below";
    }
    return "?";
}

ScaleVerdict exact_alike(const Rat& probed_radius, const Rat& probed_scale) {
    ScaleVerdict v = ScaleVerdict::alike_within(Rat(0), true);
    v.probed_radius = probed_radius;
    v.probed_scale = probed_scale;
    return v;
}

void require_natural(const SetExpr& s, const char* side) {
    if (!s.is_natural_set())
        throw Error(ErrorKind::UnsupportedModel,
                    std::string(side) + " must be a finite or cofinite subset of the naturals");
}

// smallest member of the cofinite set missing from the finite explicit set
Coord first_escape(const SetExpr& cof, const SetExpr& fin) {
    for (std::size_t i = 0;; ++i) {
        Coord c = cof.nth_on_n(i);
        if (!fin.contains(Point{c})) return c;
    }
}

class MetricModel final : public Model {
public:
    MetricModel(spaces::SpacePtr space, ProbeBudget probe)
        : space_(std::move(space)), probe_(std::move(probe)) {
        probe_.validate();
    }
    Kind kind() const override { return Kind::MetricWindowed; }
    bool exact() const override { return false; }
    ScaleVerdict alike(const SetExpr& A, const SetExpr& B) const override {
        return metric_alike(*space_, probe_, A, B);
    }
    ScaleVerdict bounded(const SetExpr& A) const override {
        // the empty set sits inside every ball; no probing needed
        if (A.empty()) return exact_alike(Rat(0), Rat(0));
        return alike(A, SetExpr::explicit_set({space_->basepoint()}));
    }
    std::string describe() const override { return "windowed metric relation on " + space_->describe(); }
    const spaces::Space* space_ptr() const override { return space_.get(); }
    const ProbeBudget* probe_ptr() const override { return &probe_; }

private:
    spaces::SpacePtr space_;
    ProbeBudget probe_;
};

class RayModel final : public Model {
public:
    Kind kind() const override { return Kind::RayOnR; }
    bool exact() const override { return true; }
    ScaleVerdict alike(const SetExpr& A, const SetExpr& B) const override {
        LineClass ca = line_class(A), cb = line_class(B);
        if (ca == cb) return exact_alike(Rat(0), Rat(0));
        Witness w;
        w.distance = ExtRat::pos_inf();
        std::ostringstream os;
        os << "infimum classes differ: " << line_class_name(ca) << " vs " << line_class_name(cb);
        w.note = os.str();
        return ScaleVerdict::refuted_at(Rat(0), std::move(w), true);
    }
    ScaleVerdict bounded(const SetExpr& A) const override {
        if (line_class(A) != LineClass::UnboundedBelow) return exact_alike(Rat(0), Rat(0));
        Witness w;
        w.distance = ExtRat::pos_inf();
        w.note = "infimum is unbounded below; the set escapes every bounded region";
        return ScaleVerdict::refuted_at(Rat(0), std::move(w), true);
    }
    std::string describe() const override { return "half-line infimum classes on the real line"; }
};

class DiscreteModel final : public Model {
public:
    Kind kind() const override { return Kind::Discrete; }
    bool exact() const override { return true; }
    ScaleVerdict alike(const SetExpr& A, const SetExpr& B) const override {
        require_natural(A, "left side");
        require_natural(B, "right side");
        bool ia = A.infinite_on_n(), ib = B.infinite_on_n();
        if (ia == ib) return exact_alike(Rat(0), Rat(0));  // symmetric difference is finite
        const SetExpr& cof = ia ? A : B;
        const SetExpr& fin = ia ? B : A;
        Witness w;
        w.point = Point{first_escape(cof, fin)};
        w.distance = ExtRat::pos_inf();
        w.note = "symmetric difference is infinite; cofinitely many points like this one lie on one side only";
        return ScaleVerdict::refuted_at(Rat(0), std::move(w), true);
    }
    ScaleVerdict bounded(const SetExpr& A) const override {
        require_natural(A, "the set");
        if (!A.infinite_on_n()) return exact_alike(Rat(0), Rat(0));
        Witness w;
        w.point = Point{A.nth_on_n(0)};
        w.distance = ExtRat::pos_inf();
        w.note = "infinite sets differ from every singleton by an infinite set";
        return ScaleVerdict::refuted_at(Rat(0), std::move(w), true);
    }
    std::string describe() const override { return "finite symmetric difference on the naturals"; }
};

class FiniteInfiniteModel final : public Model {
public:
    Kind kind() const override { return Kind::FiniteInfiniteOnN; }
    bool exact() const override { return true; }
    ScaleVerdict alike(const SetExpr& A, const SetExpr& B) const override {
        require_natural(A, "left side");
        require_natural(B, "right side");
        int ca = cls(A), cb = cls(B);
        if (ca == cb) return exact_alike(Rat(0), Rat(0));
        Witness w;
        w.distance = ExtRat::pos_inf();
        if (ca == 2 || cb == 2) {
            const SetExpr& inf_side = ca == 2 ? A : B;
            const SetExpr& other = ca == 2 ? B : A;
            Coord bound = other.empty() ? -1 : other.points().back()[0];
            std::size_t i = 0;
            while (inf_side.nth_on_n(i) <= bound) ++i;
            w.point = Point{inf_side.nth_on_n(i)};
            w.note = "one side reaches beyond every bound of the other";
        } else {
            const SetExpr& ne = ca == 1 ? A : B;
            w.point = Point{ne.nth_on_n(0)};
            w.note = "one side is empty, the other is not";
        }
        return ScaleVerdict::refuted_at(Rat(0), std::move(w), true);
    }
    ScaleVerdict bounded(const SetExpr& A) const override {
        require_natural(A, "the set");
        if (cls(A) != 2) return exact_alike(Rat(0), Rat(0));
        Witness w;
        w.point = Point{A.nth_on_n(0)};
        w.distance = ExtRat::pos_inf();
        w.note = "infinite sets are not alike any finite set";
        return ScaleVerdict::refuted_at(Rat(0), std::move(w), true);
    }
    std::string describe() const override { return "empty / finite / infinite classes on the naturals"; }

private:
    static int cls(const SetExpr& s) {
        if (s.empty()) return 0;
        return s.infinite_on_n() ? 2 : 1;
    }
};

class GroupModel final : public Model {
public:
    GroupModel(spaces::SpacePtr space, ProbeBudget probe)
        : space_(std::move(space)), probe_(std::move(probe)) {
        probe_.validate();
        auto k = space_->kind();
        if (k != spaces::Space::Kind::FreeGroup && k != spaces::Space::Kind::WordLattice)
            throw Error(ErrorKind::InvalidParams, "group relation needs a word-metric space");
    }
    Kind kind() const override { return Kind::GroupLeft; }
    bool exact() const override { return false; }
    ScaleVerdict alike(const SetExpr& A, const SetExpr& B) const override {
        // finite translation sets are exactly word-metric balls, so the
        // windowed metric engine decides the translation relation
        return metric_alike(*space_, probe_, A, B);
    }
    ScaleVerdict bounded(const SetExpr& A) const override {
        // the empty set sits inside every ball; no probing needed
        if (A.empty()) return exact_alike(Rat(0), Rat(0));
        return alike(A, SetExpr::explicit_set({space_->basepoint()}));
    }
    std::string describe() const override { return "left-translation relation on " + space_->describe(); }
    const spaces::Space* space_ptr() const override { return space_.get(); }
    const ProbeBudget* probe_ptr() const override { return &probe_; }

private:
    spaces::SpacePtr space_;
    ProbeBudget probe_;
};

class SubspaceModel final : public Model {
public:
    SubspaceModel(ModelPtr parent, SetExpr y) : parent_(std::move(parent)), y_(std::move(y)) {
        if (!parent_) throw Error(ErrorKind::InvalidParams, "subspace needs a parent model");
        if (y_.empty()) throw Error(ErrorKind::InvalidParams, "subspace carrier must be nonempty");
    }
    Kind kind() const override { return Kind::Subspace; }
    bool exact() const override { return parent_->exact(); }
    ScaleVerdict alike(const SetExpr& A, const SetExpr& B) const override {
        require_within(A, "left side");
        require_within(B, "right side");
        return parent_->alike(A, B);  // the relation restricted to a carrier agrees with the ambient one
    }
    ScaleVerdict bounded(const SetExpr& A) const override {
        require_within(A, "the set");
        return parent_->bounded(A);
    }
    std::string describe() const override {
        return "restriction to " + y_.str() + " of " + parent_->describe();
    }
    const spaces::Space* space_ptr() const override { return parent_->space_ptr(); }
    const ProbeBudget* probe_ptr() const override { return parent_->probe_ptr(); }

private:
    void require_within(const SetExpr& S, const char* side) const {
        auto sub = SetExpr::subset_of(S, y_);
        if (sub.has_value()) {
            if (!*sub)
                throw Error(ErrorKind::UnsupportedModel,
                            std::string(side) + " lies outside the subspace carrier");
            return;
        }
        const spaces::Space* sp = parent_->space_ptr();
        const ProbeBudget* pb = parent_->probe_ptr();
        if (!sp || !pb)
            throw Error(ErrorKind::UnsupportedModel, "subspace containment undecided for this set form");
        Rat w = pb->max_radius() + pb->max_scale();
        for (const Point& p : S.window_points(*sp, w))
            if (!y_.contains(p))
                throw Error(ErrorKind::UnsupportedModel,
                            std::string(side) + " lies outside the subspace carrier", p);
    }

    ModelPtr parent_;
    SetExpr y_;
};

}  // namespace

ModelPtr metric_windowed(spaces::SpacePtr space, ProbeBudget probe) {
    return std::make_shared<MetricModel>(std::move(space), std::move(probe));
}
ModelPtr ray_on_r() { return std::make_shared<RayModel>(); }
ModelPtr discrete_on_n() { return std::make_shared<DiscreteModel>(); }
ModelPtr finite_infinite_on_n() { return std::make_shared<FiniteInfiniteModel>(); }
ModelPtr group_left(spaces::SpacePtr word_space, ProbeBudget probe) {
    return std::make_shared<GroupModel>(std::move(word_space), std::move(probe));
}
ModelPtr subspace(ModelPtr parent, SetExpr Y) {
    return std::make_shared<SubspaceModel>(std::move(parent), std::move(Y));
}

ScaleVerdict metric_alike(const spaces::Space& space, const ProbeBudget& probe,
                          const SetExpr& A, const SetExpr& B) {
    probe.validate();
    const Rat& rmax = probe.max_radius();
    const Rat& stop = probe.max_scale();

    const bool ea = A.empty(), eb = B.empty();
    if (ea && eb) {
        ScaleVerdict v = ScaleVerdict::alike_within(Rat(0), true);
        v.probed_radius = rmax;
        v.probed_scale = stop;
        return v;
    }
    if (ea != eb) {
        Witness w;
        w.distance = ExtRat::pos_inf();
        w.note = ea ? "left side empty, right side nonempty" : "right side empty, left side nonempty";
        PointSet pts = (ea ? B : A).window_points(space, rmax);
        if (!pts.empty()) w.point = pts.front();
        else w.note += "; the nonempty side has no member inside the probed window";
        ScaleVerdict v = ScaleVerdict::refuted_at(rmax, std::move(w), true);
        v.probed_radius = rmax;
        v.probed_scale = stop;
        return v;
    }

    const PointSet awin = A.window_points(space, rmax);
    const PointSet bwin = B.window_points(space, rmax);
    const PointSet aext = A.window_points(space, rmax + stop);
    const PointSet bext = B.window_points(space, rmax + stop);

    std::vector<ExtRat> anorm, bnorm, adist, bdist;
    anorm.reserve(awin.size());
    adist.reserve(awin.size());
    for (const Point& a : awin) {
        anorm.push_back(spaces::norm_from_base(space, a));
        adist.push_back(geom::dist_to_points(space, a, bext));
    }
    bnorm.reserve(bwin.size());
    bdist.reserve(bwin.size());
    for (const Point& b : bwin) {
        bnorm.push_back(spaces::norm_from_base(space, b));
        bdist.push_back(geom::dist_to_points(space, b, aext));
    }

    // least probed scale passing the shrunk-window certification, both sides
    for (const Rat& r : probe.scales) {
        ExtRat thr{rmax - r}, rad{r};
        bool ok = true;
        for (std::size_t i = 0; i < awin.size() && ok; ++i)
            if (anorm[i] <= thr && !(adist[i] < rad)) ok = false;
        for (std::size_t i = 0; i < bwin.size() && ok; ++i)
            if (bnorm[i] <= thr && !(bdist[i] < rad)) ok = false;
        if (ok) {
            ScaleVerdict v = ScaleVerdict::alike_within(r);
            v.probed_radius = rmax;
            v.probed_scale = stop;
            return v;
        }
    }

    // a single point beating every probed scale refutes all of them at once
    ExtRat thr{rmax - stop}, rad{stop};
    for (std::size_t i = 0; i < awin.size(); ++i)
        if (anorm[i] <= thr && rad < adist[i]) {
            Witness w{awin[i], adist[i], "left-side point with no partner within any probed scale"};
            ScaleVerdict v = ScaleVerdict::refuted_at(rmax, std::move(w));
            v.probed_radius = rmax;
            v.probed_scale = stop;
            return v;
        }
    for (std::size_t i = 0; i < bwin.size(); ++i)
        if (bnorm[i] <= thr && rad < bdist[i]) {
            Witness w{bwin[i], bdist[i], "right-side point with no partner within any probed scale"};
            ScaleVerdict v = ScaleVerdict::refuted_at(rmax, std::move(w));
            v.probed_radius = rmax;
            v.probed_scale = stop;
            return v;
        }

    return ScaleVerdict::inconclusive(rmax, stop);
}

DecomposeResult decompose(const spaces::Space& space, const SetExpr& A,
                          const SetExpr& B1, const SetExpr& B2, const Rat& r, const Rat& R) {
    if (r.is_negative() || r.is_zero())
        throw Error(ErrorKind::InvalidParams, "decomposition scale must be positive");
    const PointSet awin = A.window_points(space, R);
    const PointSet b1ext = B1.window_points(space, R + r);
    const PointSet b2ext = B2.window_points(space, R + r);
    ExtRat rad{r};

    DecomposeResult res;
    for (const Point& a : awin) {
        bool in1 = geom::dist_to_points(space, a, b1ext) < rad;
        bool in2 = geom::dist_to_points(space, a, b2ext) < rad;
        if (!in1 && !in2)
            throw Error(ErrorKind::PreconditionFailed,
                        "a window point of the set lies outside the neighborhood of both parts", a);
        if (in1) res.a1.push_back(a);
        if (in2) res.a2.push_back(a);
    }

    // within the shrunk window each part must sit back inside its piece's neighborhood
    ExtRat shrunk{R - r};
    auto covered = [&](const PointSet& bwin, const PointSet& piece, std::optional<Point>& witness) {
        for (const Point& b : bwin) {
            if (!(spaces::norm_from_base(space, b) <= shrunk)) continue;
            if (!(geom::dist_to_points(space, b, piece) < rad)) {
                if (!witness) witness = b;
                return false;
            }
        }
        return true;
    };
    res.b1_covered = covered(B1.window_points(space, R), res.a1, res.b_side_witness);
    res.b2_covered = covered(B2.window_points(space, R), res.a2, res.b_side_witness);
    return res;
}

ScaleVerdict connected(const Model& model, const std::vector<std::pair<Point, Point>>& pairs) {
    Rat worst(0);
    bool all_exact = true;
    bool any_inconclusive = false;
    ScaleVerdict last_inconclusive;
    for (const auto& [x, y] : pairs) {
        ScaleVerdict v = model.alike(SetExpr::explicit_set({x}), SetExpr::explicit_set({y}));
        if (v.refuted()) return v;
        if (v.inconclusive()) {
            any_inconclusive = true;
            last_inconclusive = v;
            continue;
        }
        if (worst < v.scale) worst = v.scale;
        all_exact = all_exact && v.exact;
    }
    if (any_inconclusive) return last_inconclusive;
    return ScaleVerdict::alike_within(worst, all_exact);
}

SetExpr ray_subset_partner(const SetExpr& A, const SetExpr& B, const SetExpr& A1) {
    if (A1.empty())
        throw Error(ErrorKind::PreconditionFailed, "the chosen subset must be nonempty");
    auto sub = SetExpr::subset_of(A1, A);
    if (!sub.has_value() || !*sub)
        throw Error(ErrorKind::PreconditionFailed, "the chosen subset must lie inside the first set");
    LineClass ca = line_class(A), cb = line_class(B);
    if (ca != cb)
        throw Error(ErrorKind::PreconditionFailed, "the two ambient sets are not alike on the line model");

    if (line_class(A1) == LineClass::UnboundedBelow)
        return B;  // then B is unbounded below as well, same class
    if (cb == LineClass::BoundedBelow)
        return B;  // finite infimum on both sides

    // B is unbounded below while the subset is not: any single member of B
    // forms a bounded-below partner
    Rat c(0);
    switch (B.kind()) {
        case SetExpr::Kind::IntervalUnion:
            c = B.pick_rat();
            break;
        case SetExpr::Kind::BoxUnion: {
            const auto& b0 = B.boxes().front()[0];
            if (b0.lo.finite()) c = b0.lo.value();
            else if (b0.hi.finite()) c = b0.hi.value();
            else c = Rat(0);
            break;
        }
        default:
            // explicit and cofinite sets always have a finite infimum, handled above
            throw Error(ErrorKind::UnsupportedModel, "unbounded-below set of unexpected form");
    }
    return SetExpr::interval_union({{ExtRat{c}, ExtRat{c}}});
}

}  // namespace ck::asr
