#include "ck/entourage.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ck/geometry.hpp"

namespace ck::coarse {

namespace {

void sort_pairs(std::vector<std::pair<Point, Point>>& ps) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

}  // namespace

Entourage Entourage::explicit_pairs(std::vector<std::pair<Point, Point>> pairs, std::string label) {
    Entourage e;
    e.kind_ = Kind::ExplicitPairs;
    e.pairs_ = std::move(pairs);
    sort_pairs(e.pairs_);
    e.label_ = std::move(label);
    return e;
}

Entourage Entourage::displacement(Rat bound, std::string label) {
    if (bound.is_negative())
        throw Error(ErrorKind::InvalidParams, "displacement bound must be nonnegative");
    Entourage e;
    e.kind_ = Kind::Displacement;
    e.bound_ = std::move(bound);
    e.label_ = std::move(label);
    return e;
}

const Rat& Entourage::bound() const {
    if (kind_ != Kind::Displacement) throw Error(ErrorKind::InvalidParams, "not a displacement entourage");
    return bound_;
}

const std::vector<std::pair<Point, Point>>& Entourage::pairs() const {
    if (kind_ != Kind::ExplicitPairs) throw Error(ErrorKind::InvalidParams, "not an explicit pair list");
    return pairs_;
}

Entourage Entourage::inverse() const {
    if (kind_ == Kind::Displacement) return *this;
    std::vector<std::pair<Point, Point>> flipped;
    flipped.reserve(pairs_.size());
    for (const auto& [x, y] : pairs_) flipped.emplace_back(y, x);
    return explicit_pairs(std::move(flipped), label_.empty() ? "" : label_ + "^-1");
}

Entourage Entourage::compose(const Entourage& outer, const Entourage& inner) {
    if (outer.kind_ == Kind::Displacement && inner.kind_ == Kind::Displacement)
        return displacement(outer.bound_ + inner.bound_);
    if (outer.kind_ == Kind::ExplicitPairs && inner.kind_ == Kind::ExplicitPairs) {
        std::map<Point, std::vector<Point>> by_first;
        for (const auto& [z, y] : outer.pairs_) by_first[z].push_back(y);
        std::vector<std::pair<Point, Point>> out;
        for (const auto& [x, z] : inner.pairs_) {
            auto it = by_first.find(z);
            if (it == by_first.end()) continue;
            for (const Point& y : it->second) out.emplace_back(x, y);
        }
        return explicit_pairs(std::move(out));
    }
    throw Error(ErrorKind::UnsupportedModel, "cannot compose a pair list with a displacement bound");
}

Entourage Entourage::unite(const Entourage& a, const Entourage& b) {
    if (a.kind_ == Kind::Displacement && b.kind_ == Kind::Displacement)
        return displacement(a.bound_ < b.bound_ ? b.bound_ : a.bound_);
    if (a.kind_ == Kind::ExplicitPairs && b.kind_ == Kind::ExplicitPairs) {
        std::vector<std::pair<Point, Point>> out = a.pairs_;
        out.insert(out.end(), b.pairs_.begin(), b.pairs_.end());
        return explicit_pairs(std::move(out));
    }
    throw Error(ErrorKind::UnsupportedModel, "cannot unite a pair list with a displacement bound");
}

bool Entourage::member(const spaces::Space& space, const Point& x, const Point& y) const {
    if (kind_ == Kind::Displacement) return space.dist(x, y) <= ExtRat{bound_};
    return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(x, y));
}

PointSet Entourage::image(const PointSet& A) const {
    if (kind_ != Kind::ExplicitPairs)
        throw Error(ErrorKind::UnsupportedModel, "displacement images need a space and a window");
    PointSet out;
    for (const auto& [x, y] : pairs_)
        if (contains(A, x)) out.push_back(y);
    normalize(out);
    return out;
}

std::string Entourage::describe() const {
    std::ostringstream os;
    if (!label_.empty()) os << label_ << ": ";
    if (kind_ == Kind::Displacement) os << "displacement<=" << bound_.str();
    else os << "pairs(" << pairs_.size() << ")";
    return os.str();
}

namespace {

// does the entourage reach a from inside B? (a in E(B))
bool reached_from(const spaces::Space& space, const Entourage& e, const SetExpr& B,
                  const PointSet& b_window, const Point& a) {
    if (e.kind() == Entourage::Kind::Displacement) {
        ExtRat bd{e.bound()};
        for (const Point& b : b_window)
            if (space.dist(b, a) <= bd) return true;
        return false;
    }
    for (const auto& [x, y] : e.pairs())
        if (y == a && B.contains(x)) return true;
    return false;
}

Rat max_bound(const std::vector<Entourage>& cands) {
    Rat m(0);
    for (const Entourage& e : cands)
        if (e.kind() == Entourage::Kind::Displacement && m < e.bound()) m = e.bound();
    return m;
}

}  // namespace

ViaVerdict alike_via(const spaces::Space& space, const std::vector<Entourage>& family,
                     const SetExpr& A, const SetExpr& B, const Rat& window, int depth) {
    if (family.empty()) throw Error(ErrorKind::InvalidParams, "empty entourage family");
    if (depth < 1 || depth > 4) throw Error(ErrorKind::InvalidParams, "composition depth must be 1..4");

    ViaVerdict out;
    if (A.empty() && B.empty()) {
        out.verdict = ScaleVerdict::alike_within(Rat(0), true);
        out.via = "empty sets";
        return out;
    }

    // ordered composites, shallow first
    std::vector<Entourage> cands;
    std::vector<std::vector<std::size_t>> idx;
    for (std::size_t i = 0; i < family.size(); ++i) idx.push_back({i});
    for (int d = 2; d <= depth; ++d) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& tup : idx)
            if (static_cast<int>(tup.size()) == d - 1)
                for (std::size_t j = 0; j < family.size(); ++j) {
                    auto t = tup;
                    t.push_back(j);
                    next.push_back(std::move(t));
                }
        idx.insert(idx.end(), next.begin(), next.end());
    }
    for (const auto& tup : idx) {
        try {
            Entourage e = family[tup[0]];
            std::ostringstream os;
            os << family[tup[0]].describe();
            for (std::size_t k = 1; k < tup.size(); ++k) {
                e = Entourage::compose(e, family[tup[k]]);
                os << " after " << family[tup[k]].describe();
            }
            cands.push_back(std::move(e));
            out.tried.push_back(os.str());
        } catch (const Error&) {
            // mixed-kind composite; skip the tuple
        }
    }
    if (cands.empty()) throw Error(ErrorKind::InvalidParams, "no composable candidates in the family");

    if (A.empty() != B.empty()) {
        Witness w;
        w.distance = ExtRat::pos_inf();
        w.note = A.empty() ? "left side empty, right side nonempty" : "right side empty, left side nonempty";
        PointSet pts = (A.empty() ? B : A).window_points(space, window);
        if (!pts.empty()) w.point = pts.front();
        out.verdict = ScaleVerdict::refuted_at(window, std::move(w), true);
        return out;
    }

    const PointSet awin = A.window_points(space, window);
    const PointSet bwin = B.window_points(space, window);

    auto certifies = [&](const Entourage& e) {
        Rat shrink = e.kind() == Entourage::Kind::Displacement ? e.bound() : Rat(0);
        ExtRat thr{window - shrink};
        for (const Point& a : awin) {
            if (!(spaces::norm_from_base(space, a) <= thr)) continue;
            if (!reached_from(space, e, B, bwin, a)) return false;
        }
        for (const Point& b : bwin) {
            if (!(spaces::norm_from_base(space, b) <= thr)) continue;
            if (!reached_from(space, e.inverse(), A, awin, b)) return false;
        }
        return true;
    };

    for (std::size_t c = 0; c < cands.size(); ++c) {
        if (certifies(cands[c])) {
            Rat scale = cands[c].kind() == Entourage::Kind::Displacement ? cands[c].bound() : Rat(0);
            out.verdict = ScaleVerdict::alike_within(scale);
            out.verdict.probed_radius = window;
            out.via = out.tried[c];
            return out;
        }
    }

    // a point no composite reaches kills the whole generated family at once
    Rat deepest = max_bound(cands);
    ExtRat thr{window - deepest};
    auto defeated_everywhere = [&](const Point& p, bool a_side) -> std::optional<Witness> {
        if (!(spaces::norm_from_base(space, p) <= thr)) return std::nullopt;
        for (const Entourage& e : cands) {
            bool reached = a_side ? reached_from(space, e, B, bwin, p)
                                  : reached_from(space, e.inverse(), A, awin, p);
            if (reached) return std::nullopt;
        }
        Witness w;
        w.point = p;
        w.distance = a_side ? geom::dist_to_points(space, p, bwin) : geom::dist_to_points(space, p, awin);
        w.note = a_side ? "left-side point outside every generated composite image"
                        : "right-side point outside every generated composite image";
        return w;
    };
    for (const Point& a : awin)
        if (auto w = defeated_everywhere(a, true)) {
            out.verdict = ScaleVerdict::refuted_at(window, std::move(*w));
            return out;
        }
    for (const Point& b : bwin)
        if (auto w = defeated_everywhere(b, false)) {
            out.verdict = ScaleVerdict::refuted_at(window, std::move(*w));
            return out;
        }

    out.verdict = ScaleVerdict::inconclusive(window, deepest);
    return out;
}

StructureVerdict alike_via_structure(StructureKind kind, const SetExpr& A, const SetExpr& B,
                                     const Rat& window) {
    auto require_natural = [](const SetExpr& s, const char* side) {
        if (!s.is_natural_set())
            throw Error(ErrorKind::UnsupportedModel,
                        std::string(side) + " must be a finite or cofinite subset of the naturals");
    };
    require_natural(A, "left side");
    require_natural(B, "right side");

    const char* family_name =
        kind == StructureKind::FinitePreimages ? "locally finite relations" : "degree-two relations";

    auto cls = [](const SetExpr& s) { return s.empty() ? 0 : (s.infinite_on_n() ? 2 : 1); };
    int ca = cls(A), cb = cls(B);

    StructureVerdict out;
    if (ca != cb) {
        Witness w;
        w.distance = ExtRat::pos_inf();
        if (ca == 0 || cb == 0) {
            const SetExpr& ne = ca == 0 ? B : A;
            w.point = Point{ne.nth_on_n(0)};
            out.note = std::string("nothing relates into an empty set under ") + family_name;
        } else {
            const SetExpr& inf_side = ca == 2 ? A : B;
            const SetExpr& fin = ca == 2 ? B : A;
            Coord bound = fin.points().empty() ? -1 : fin.points().back()[0];
            std::size_t i = 0;
            while (inf_side.nth_on_n(i) <= bound) ++i;
            w.point = Point{inf_side.nth_on_n(i)};
            out.note = std::string("images of finite sets stay finite under ") + family_name +
                       ", so no member covers the infinite side";
        }
        out.verdict = ScaleVerdict::refuted_at(Rat(0), std::move(w), true);
        return out;
    }

    if (ca == 0) {
        out.verdict = ScaleVerdict::alike_within(Rat(0), true);
        out.note = "the empty relation certifies two empty sets";
        out.window_verified = true;
        return out;
    }

    Coord w = window.floor();
    if (ca == 1) {
        // finite sides: relate everything to everything, both directions
        for (const Point& a : A.points())
            for (const Point& b : B.points()) {
                if (static_cast<Coord>(out.sample_pairs.size()) < 32) out.sample_pairs.emplace_back(a, b);
            }
        out.note = std::string("full cross pairing of two finite sets; admissible among ") + family_name;
    } else {
        // infinite sides: match the ascending enumerations index by index;
        // every point relates to at most two others
        for (std::size_t i = 0;; ++i) {
            Coord a = A.nth_on_n(i), b = B.nth_on_n(i);
            if (a > w && b > w) break;
            if (static_cast<Coord>(out.sample_pairs.size()) < 64)
                out.sample_pairs.emplace_back(Point{a}, Point{b});
        }
        out.note = std::string("index pairing of the ascending enumerations; admissible among ") + family_name;
    }

    // window verification: every member inside the window is reached by the pairing
    bool ok = true;
    if (ca == 1) {
        ok = !A.points().empty() && !B.points().empty();
    } else {
        std::vector<Coord> a_hit, b_hit;
        for (std::size_t i = 0;; ++i) {
            Coord a = A.nth_on_n(i), b = B.nth_on_n(i);
            if (a > w && b > w) break;
            a_hit.push_back(a);
            b_hit.push_back(b);
        }
        for (Coord n = 0; n <= w && ok; ++n) {
            if (A.contains(Point{n}) && !std::binary_search(a_hit.begin(), a_hit.end(), n)) ok = false;
            if (B.contains(Point{n}) && !std::binary_search(b_hit.begin(), b_hit.end(), n)) ok = false;
        }
    }
    out.window_verified = ok;
    out.verdict = ScaleVerdict::alike_within(Rat(0), true);
    return out;
}

MembershipVerdict in_maximal(const asr::Model& model, const Entourage& E, int cap, MembershipMode mode) {
    MembershipVerdict out;

    if (E.kind() == Entourage::Kind::Displacement) {
        if (model.space_ptr() == nullptr)
            throw Error(ErrorKind::UnsupportedModel,
                        "displacement entourages need a metric-backed model");
        out.outcome = MembershipOutcome::Member;
        out.bound = E.bound();
        out.note = "bounded displacement keeps every sub-relation's projections alike";
        return out;
    }

    const auto& pairs = E.pairs();
    const bool exhaustive = mode == MembershipMode::Exhaustive || model.space_ptr() == nullptr;

    if (exhaustive) {
        if (static_cast<int>(pairs.size()) > cap)
            throw Error(ErrorKind::CapExceeded, "pair list larger than the exhaustive cap");
        unsigned total = 1u << pairs.size();
        for (unsigned m = 1; m < total; ++m) {
            std::vector<Point> xs, ys;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if (m & (1u << i)) { xs.push_back(pairs[i].first); ys.push_back(pairs[i].second); }
            ScaleVerdict v = model.alike(SetExpr::explicit_set(xs), SetExpr::explicit_set(ys));
            if (v.refuted()) {
                out.outcome = MembershipOutcome::NonMember;
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    if (m & (1u << i)) out.refuting_pairs.push_back(pairs[i]);
                out.projection_verdict = v;
                out.note = "a sub-relation's projections fall apart";
                return out;
            }
            if (v.inconclusive()) {
                out.outcome = MembershipOutcome::Inconclusive;
                out.projection_verdict = v;
                out.note = "a sub-relation's projections were undecided within the probe";
                return out;
            }
        }
        out.outcome = MembershipOutcome::Member;
        out.note = "all sub-relation projections verified alike";
        return out;
    }

    // metric-backed tail analysis of the per-window maximal displacement
    const spaces::Space& space = *model.space_ptr();
    const ProbeBudget& probe = model.probe_ptr() ? *model.probe_ptr() : ProbeBudget{};
    std::vector<ExtRat> disp;
    for (const Rat& R : probe.radii) {
        ExtRat cap_norm{R}, worst{Rat(0)};
        for (const auto& [x, y] : pairs) {
            if (!(spaces::norm_from_base(space, x) <= cap_norm)) continue;
            if (!(spaces::norm_from_base(space, y) <= cap_norm)) continue;
            worst = max(worst, space.dist(x, y));
        }
        disp.push_back(worst);
    }
    int s = probe.stability;
    bool stable = static_cast<int>(disp.size()) >= s;
    if (stable)
        for (std::size_t i = disp.size() - s; i + 1 < disp.size(); ++i)
            if (!(disp[i] == disp[i + 1])) { stable = false; break; }
    if (stable && disp.back().finite()) {
        out.outcome = MembershipOutcome::Member;
        out.bound = disp.back().value();
        out.note = "maximal displacement stabilized across the probed windows";
        return out;
    }
    bool growing = true;
    for (std::size_t i = 0; i + 1 < disp.size(); ++i)
        if (!(disp[i] < disp[i + 1])) growing = false;
    if (growing || !disp.back().finite()) {
        const Rat& rtop = probe.max_scale();
        ExtRat thr{probe.max_radius() - rtop}, rad{rtop};
        for (const auto& pr : pairs) {
            if (!(spaces::norm_from_base(space, pr.first) <= thr)) continue;
            if (!(spaces::norm_from_base(space, pr.second) <= thr)) continue;
            if (!(rad < space.dist(pr.first, pr.second))) continue;
            ScaleVerdict v = model.alike(SetExpr::explicit_set({pr.first}),
                                         SetExpr::explicit_set({pr.second}));
            if (v.refuted()) {
                out.outcome = MembershipOutcome::NonMember;
                out.refuting_pairs.push_back(pr);
                out.projection_verdict = v;
                out.note = "a single pair already drives its projections apart";
                return out;
            }
        }
    }
    out.outcome = MembershipOutcome::Inconclusive;
    out.note = "displacement neither stabilized nor produced a confirmed escaping pair";
    return out;
}

}  // namespace ck::coarse
