#include "ck/setexpr.hpp"

#include <algorithm>
#include <sstream>

namespace ck {

namespace {

// dim-1 variants as sorted closed parts; Cofinite has no finite part list
std::vector<std::pair<ExtRat, ExtRat>> to_parts(const SetExpr& s) {
    std::vector<std::pair<ExtRat, ExtRat>> out;
    switch (s.kind()) {
        case SetExpr::Kind::IntervalUnion:
            return s.parts();
        case SetExpr::Kind::Explicit:
            for (const Point& p : s.points()) {
                if (p.size() != 1) throw Error(ErrorKind::InvalidParams, "line query requires arity-1 points");
                ExtRat v{Rat(p[0])};
                out.emplace_back(v, v);
            }
            return out;
        case SetExpr::Kind::BoxUnion:
            if (s.dim() != 1) throw Error(ErrorKind::InvalidParams, "line query requires a one-dimensional set");
            for (const SetExpr::Box& b : s.boxes()) out.emplace_back(b[0].lo, b[0].hi);
            std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            return out;
        case SetExpr::Kind::Cofinite:
            throw Error(ErrorKind::UnsupportedModel, "cofinite sets have no finite interval form");
    }
    return out;
}

bool cofinite_meets_range(const std::vector<Coord>& excluded, const ExtRat& lo, const ExtRat& hi) {
    // does {n in N : n not excluded} meet the closed range [lo, hi]?
    if (hi.is_neg_inf() || (hi.finite() && hi.value().is_negative())) return false;
    Coord a = 0;
    if (lo.finite() && !lo.value().is_negative()) a = lo.value().ceil();
    if (hi.is_pos_inf()) return true;  // cofinitely many naturals remain
    Coord b = hi.value().floor();
    if (a > b) return false;
    if (b - a + 1 > static_cast<Coord>(excluded.size())) return true;
    for (Coord n = a; n <= b; ++n)
        if (!std::binary_search(excluded.begin(), excluded.end(), n)) return true;
    return false;
}

}  // namespace

SetExpr SetExpr::explicit_set(std::vector<Point> points) {
    SetExpr s;
    s.kind_ = Kind::Explicit;
    s.points_ = std::move(points);
    normalize(s.points_);
    if (s.points_.empty()) {
        s.dim_ = 0;
    } else {
        s.dim_ = static_cast<int>(s.points_.front().size());
        for (const Point& p : s.points_)
            if (static_cast<int>(p.size()) != s.dim_) { s.dim_ = -1; break; }
    }
    return s;
}

SetExpr SetExpr::interval_union(std::vector<std::pair<ExtRat, ExtRat>> parts) {
    SetExpr s;
    s.kind_ = Kind::IntervalUnion;
    s.dim_ = 1;
    std::vector<std::pair<ExtRat, ExtRat>> kept;
    for (auto& pr : parts) {
        if (pr.first.is_pos_inf() || pr.second.is_neg_inf()) continue;  // empty part
        if (pr.second < pr.first) continue;                             // empty part
        kept.push_back(pr);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
        if (x.first < y.first) return true;
        if (y.first < x.first) return false;
        return x.second < y.second;
    });
    for (auto& pr : kept) {
        if (!s.parts_.empty() && pr.first <= s.parts_.back().second) {
            s.parts_.back().second = max(s.parts_.back().second, pr.second);
        } else {
            s.parts_.push_back(pr);
        }
    }
    return s;
}

SetExpr SetExpr::cofinite(std::vector<Coord> excluded) {
    SetExpr s;
    s.kind_ = Kind::Cofinite;
    s.dim_ = 1;
    std::sort(excluded.begin(), excluded.end());
    excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
    for (Coord c : excluded)
        if (c < 0) throw Error(ErrorKind::InvalidParams, "cofinite sets live in the naturals; excluded values must be nonnegative");
    s.excluded_ = std::move(excluded);
    return s;
}

SetExpr SetExpr::box_union(int dim, std::vector<Box> boxes) {
    if (dim < 1 || dim > 8) throw Error(ErrorKind::InvalidParams, "box dimension must be between 1 and 8");
    SetExpr s;
    s.kind_ = Kind::BoxUnion;
    s.dim_ = dim;
    for (Box& b : boxes) {
        if (static_cast<int>(b.size()) != dim)
            throw Error(ErrorKind::InvalidParams, "box arity does not match the declared dimension");
        bool empty = false;
        for (AxisRange& ar : b) {
            if (ar.lo.is_pos_inf() || ar.hi.is_neg_inf()) { empty = true; break; }
            if (ar.lo.finite() && !ar.lo.value().is_integer())
                throw Error(ErrorKind::InvalidParams, "box bounds must be integers");
            if (ar.hi.finite() && !ar.hi.value().is_integer())
                throw Error(ErrorKind::InvalidParams, "box bounds must be integers");
            if (ar.hi < ar.lo) { empty = true; break; }
        }
        if (!empty) s.boxes_.push_back(std::move(b));
    }
    auto key = [](const Box& b) {
        std::vector<std::pair<std::string, std::string>> k;
        for (const AxisRange& ar : b) k.emplace_back(ar.lo.str(), ar.hi.str());
        return k;
    };
    std::sort(s.boxes_.begin(), s.boxes_.end(),
              [&](const Box& x, const Box& y) { return key(x) < key(y); });
    return s;
}

int SetExpr::dim() const {
    if (kind_ == Kind::IntervalUnion)
        throw Error(ErrorKind::UnsupportedModel, "interval unions are line sets, not lattice sets");
    return dim_;
}

bool SetExpr::empty() const {
    switch (kind_) {
        case Kind::Explicit: return points_.empty();
        case Kind::IntervalUnion: return parts_.empty();
        case Kind::Cofinite: return false;
        case Kind::BoxUnion: return boxes_.empty();
    }
    return true;
}

bool SetExpr::contains(const Point& p) const {
    switch (kind_) {
        case Kind::Explicit:
            return ck::contains(points_, p);
        case Kind::IntervalUnion:
            if (p.size() != 1) throw Error(ErrorKind::InvalidParams, "interval membership requires an arity-1 point");
            return contains_rat(Rat(p[0]));
        case Kind::Cofinite:
            if (p.size() != 1) throw Error(ErrorKind::InvalidParams, "natural-set membership requires an arity-1 point");
            if (p[0] < 0) return false;
            return !std::binary_search(excluded_.begin(), excluded_.end(), p[0]);
        case Kind::BoxUnion: {
            if (static_cast<int>(p.size()) != dim_)
                throw Error(ErrorKind::InvalidParams, "point arity does not match the box dimension");
            for (const Box& b : boxes_) {
                bool in = true;
                for (int i = 0; i < dim_; ++i) {
                    ExtRat x{Rat(p[i])};
                    if (x < b[i].lo || b[i].hi < x) { in = false; break; }
                }
                if (in) return true;
            }
            return false;
        }
    }
    return false;
}

bool SetExpr::contains_rat(const Rat& x) const {
    if (kind_ != Kind::IntervalUnion)
        throw Error(ErrorKind::InvalidParams, "rational membership applies to interval unions");
    ExtRat v{x};
    for (const auto& pr : parts_) {
        if (v < pr.first) return false;  // parts sorted
        if (v <= pr.second) return true;
    }
    return false;
}

PointSet SetExpr::window_points(const spaces::Space& space, const Rat& radius) const {
    if (kind_ == Kind::IntervalUnion)
        throw Error(ErrorKind::UnsupportedModel, "interval unions do not enumerate over lattice windows");
    ExtRat cap{radius};
    PointSet out;
    if (kind_ == Kind::Explicit) {
        const Point base = space.basepoint();
        for (const Point& p : points_)
            if (space.dist(base, p) <= cap) out.push_back(p);
        normalize(out);
        return out;
    }
    for (const Point& p : space.enumerate(radius))
        if (contains(p)) out.push_back(p);
    return out;  // enumerate is sorted; filtering preserves order
}

PointSet SetExpr::enumerate_finite() const {
    if (kind_ == Kind::Explicit) return points_;
    if (kind_ != Kind::BoxUnion)
        throw Error(ErrorKind::PreconditionFailed, "full enumeration requires a finite set form");
    PointSet out;
    long long total = 0;
    for (const Box& b : boxes_) {
        long long cells = 1;
        for (const AxisRange& ar : b) {
            if (!ar.lo.finite() || !ar.hi.finite())
                throw Error(ErrorKind::PreconditionFailed, "cannot enumerate a box with infinite extent");
            cells *= ar.hi.value().floor() - ar.lo.value().ceil() + 1;
            if (cells > 2000000) throw Error(ErrorKind::CapExceeded, "box enumeration exceeds the point cap");
        }
        total += cells;
        if (total > 2000000) throw Error(ErrorKind::CapExceeded, "box enumeration exceeds the point cap");
        Point cur(dim_);
        // odometer over the integer cells of this box
        std::vector<Coord> lo(dim_), hi(dim_);
        for (int i = 0; i < dim_; ++i) { lo[i] = b[i].lo.value().ceil(); hi[i] = b[i].hi.value().floor(); }
        for (int i = 0; i < dim_; ++i) cur[i] = lo[i];
        while (true) {
            out.push_back(cur);
            int axis = dim_ - 1;
            while (axis >= 0 && cur[axis] == hi[axis]) { cur[axis] = lo[axis]; --axis; }
            if (axis < 0) break;
            ++cur[axis];
        }
    }
    normalize(out);
    return out;
}

ExtRat SetExpr::line_inf() const {
    switch (kind_) {
        case Kind::IntervalUnion:
            return parts_.empty() ? ExtRat::pos_inf() : parts_.front().first;
        case Kind::Explicit: {
            if (points_.empty()) return ExtRat::pos_inf();
            ExtRat best = ExtRat::pos_inf();
            for (const auto& pr : to_parts(*this)) best = min(best, pr.first);
            return best;
        }
        case Kind::BoxUnion: {
            ExtRat best = ExtRat::pos_inf();
            for (const auto& pr : to_parts(*this)) best = min(best, pr.first);
            return best;
        }
        case Kind::Cofinite:
            return ExtRat{Rat(nth_on_n(0))};
    }
    return ExtRat::pos_inf();
}

ExtRat SetExpr::line_sup() const {
    if (kind_ == Kind::Cofinite) return ExtRat::pos_inf();
    ExtRat best = ExtRat::neg_inf();
    for (const auto& pr : to_parts(*this)) best = max(best, pr.second);
    return best;
}

Rat SetExpr::pick_rat() const {
    if (kind_ != Kind::IntervalUnion || parts_.empty())
        throw Error(ErrorKind::PreconditionFailed, "representative point requires a nonempty interval union");
    const auto& pr = parts_.front();
    if (pr.first.finite()) return pr.first.value();
    if (pr.second.finite()) return pr.second.value();
    return Rat(0);  // the whole line; any point serves
}

bool SetExpr::closed_intersects(const SetExpr& other) const {
    if (kind_ == Kind::Cofinite || other.kind() == Kind::Cofinite) {
        const SetExpr& cof = kind_ == Kind::Cofinite ? *this : other;
        const SetExpr& oth = kind_ == Kind::Cofinite ? other : *this;
        if (oth.kind() == Kind::Cofinite) return true;  // two cofinite natural sets always meet
        for (const auto& pr : to_parts(oth))
            if (cofinite_meets_range(cof.excluded(), pr.first, pr.second)) return true;
        return false;
    }
    auto a = to_parts(*this);
    auto b = to_parts(other);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (!(a[i].second < b[j].first) && !(b[j].second < a[i].first)) return true;
        if (a[i].second < b[j].second) ++i; else ++j;
    }
    return false;
}

bool SetExpr::unbounded_extent() const {
    switch (kind_) {
        case Kind::Explicit: return false;
        case Kind::Cofinite: return true;
        case Kind::IntervalUnion:
            if (parts_.empty()) return false;
            return parts_.front().first.is_neg_inf() || parts_.back().second.is_pos_inf();
        case Kind::BoxUnion:
            for (const Box& b : boxes_)
                for (const AxisRange& ar : b)
                    if (!ar.lo.finite() || !ar.hi.finite()) return true;
            return false;
    }
    return false;
}

bool SetExpr::is_natural_set() const {
    if (kind_ == Kind::Cofinite) return true;
    if (kind_ != Kind::Explicit) return false;
    for (const Point& p : points_)
        if (p.size() != 1 || p[0] < 0) return false;
    return true;
}

bool SetExpr::infinite_on_n() const {
    if (kind_ == Kind::Cofinite) return true;
    if (kind_ == Kind::Explicit && is_natural_set()) return false;
    throw Error(ErrorKind::UnsupportedModel, "infinite/finite classification applies to natural sets");
}

Coord SetExpr::nth_on_n(std::size_t i) const {
    if (kind_ == Kind::Explicit) {
        if (!is_natural_set() || i >= points_.size())
            throw Error(ErrorKind::PreconditionFailed, "index beyond the end of a finite natural set");
        return points_[i][0];
    }
    if (kind_ != Kind::Cofinite)
        throw Error(ErrorKind::UnsupportedModel, "indexed enumeration applies to natural sets");
    Coord n = static_cast<Coord>(i);
    for (Coord e : excluded_) {
        if (e <= n) ++n; else break;
    }
    return n;
}

std::optional<SetExpr> SetExpr::intersect(const SetExpr& a, const SetExpr& b) {
    if (a.kind() == Kind::Explicit || b.kind() == Kind::Explicit) {
        const SetExpr& ex = a.kind() == Kind::Explicit ? a : b;
        const SetExpr& ot = a.kind() == Kind::Explicit ? b : a;
        std::vector<Point> kept;
        for (const Point& p : ex.points()) {
            bool in;
            try {
                in = ot.contains(p);
            } catch (const Error&) {
                return std::nullopt;  // arity mismatch between the two variants
            }
            if (in) kept.push_back(p);
        }
        return explicit_set(std::move(kept));
    }
    if (a.kind() == Kind::Cofinite && b.kind() == Kind::Cofinite) {
        std::vector<Coord> ex = a.excluded();
        ex.insert(ex.end(), b.excluded().begin(), b.excluded().end());
        return cofinite(std::move(ex));
    }
    if (a.kind() == Kind::IntervalUnion && b.kind() == Kind::IntervalUnion) {
        std::vector<std::pair<ExtRat, ExtRat>> out;
        for (const auto& pa : a.parts())
            for (const auto& pb : b.parts()) {
                ExtRat lo = max(pa.first, pb.first);
                ExtRat hi = min(pa.second, pb.second);
                if (!(hi < lo)) out.emplace_back(lo, hi);
            }
        return interval_union(std::move(out));
    }
    if (a.kind() == Kind::BoxUnion && b.kind() == Kind::BoxUnion && a.dim_ == b.dim_) {
        std::vector<Box> out;
        for (const Box& ba : a.boxes())
            for (const Box& bb : b.boxes()) {
                Box cut(a.dim_);
                for (int i = 0; i < a.dim_; ++i) {
                    cut[i].lo = max(ba[i].lo, bb[i].lo);
                    cut[i].hi = min(ba[i].hi, bb[i].hi);
                }
                out.push_back(std::move(cut));
            }
        return box_union(a.dim_, std::move(out));
    }
    return std::nullopt;
}

std::optional<bool> SetExpr::subset_of(const SetExpr& a, const SetExpr& b) {
    if (a.kind() == Kind::Explicit) {
        for (const Point& p : a.points()) {
            bool in;
            try {
                in = b.contains(p);
            } catch (const Error&) {
                return std::nullopt;
            }
            if (!in) return false;
        }
        return true;
    }
    if (a.kind() == Kind::Cofinite) {
        if (b.kind() == Kind::Cofinite) {
            for (Coord e : b.excluded())
                if (!std::binary_search(a.excluded().begin(), a.excluded().end(), e)) return false;
            return true;
        }
        if (b.kind() == Kind::Explicit) return false;  // infinite set inside a finite one
        return std::nullopt;
    }
    if (a.kind() == Kind::IntervalUnion && b.kind() == Kind::IntervalUnion) {
        // merged parts are separated by real gaps, so each part must sit inside one part of b
        for (const auto& pa : a.parts()) {
            bool covered = false;
            for (const auto& pb : b.parts())
                if (!(pa.first < pb.first) && !(pb.second < pa.second)) { covered = true; break; }
            if (!covered) return false;
        }
        return true;
    }
    if (a.kind() == Kind::BoxUnion && b.kind() == Kind::BoxUnion && a.dim_ == b.dim_) {
        bool all_single = true;
        for (const Box& ba : a.boxes()) {
            bool covered = false;
            for (const Box& bb : b.boxes()) {
                bool in = true;
                for (int i = 0; i < a.dim_; ++i)
                    if (ba[i].lo < bb[i].lo || bb[i].hi < ba[i].hi) { in = false; break; }
                if (in) { covered = true; break; }
            }
            if (!covered) { all_single = false; break; }
        }
        if (all_single) return true;
        if (!a.unbounded_extent()) {
            for (const Point& p : a.enumerate_finite())
                if (!b.contains(p)) return false;
            return true;
        }
        return std::nullopt;  // union-of-boxes coverage is not decided symbolically
    }
    return std::nullopt;
}

const std::vector<Point>& SetExpr::points() const {
    if (kind_ != Kind::Explicit) throw Error(ErrorKind::InvalidParams, "not an explicit set");
    return points_;
}

const std::vector<Coord>& SetExpr::excluded() const {
    if (kind_ != Kind::Cofinite) throw Error(ErrorKind::InvalidParams, "not a cofinite set");
    return excluded_;
}

const std::vector<SetExpr::Box>& SetExpr::boxes() const {
    if (kind_ != Kind::BoxUnion) throw Error(ErrorKind::InvalidParams, "not a box union");
    return boxes_;
}

const std::vector<std::pair<ExtRat, ExtRat>>& SetExpr::parts() const {
    if (kind_ != Kind::IntervalUnion) throw Error(ErrorKind::InvalidParams, "not an interval union");
    return parts_;
}

std::string SetExpr::str() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Explicit:
            os << "explicit{";
            for (std::size_t i = 0; i < points_.size() && i < 8; ++i)
                os << (i ? "," : "") << point_str(points_[i]);
            if (points_.size() > 8) os << ",...";
            os << "}";
            break;
        case Kind::IntervalUnion:
            os << "intervals{";
            for (std::size_t i = 0; i < parts_.size(); ++i)
                os << (i ? "," : "") << "[" << parts_[i].first.str() << "," << parts_[i].second.str() << "]";
            os << "}";
            break;
        case Kind::Cofinite:
            os << "naturals-minus{";
            for (std::size_t i = 0; i < excluded_.size(); ++i) os << (i ? "," : "") << excluded_[i];
            os << "}";
            break;
        case Kind::BoxUnion:
            os << "boxes{";
            for (std::size_t i = 0; i < boxes_.size(); ++i) {
                os << (i ? "," : "") << "[";
                for (int d = 0; d < dim_; ++d)
                    os << (d ? "x" : "") << "[" << boxes_[i][d].lo.str() << "," << boxes_[i][d].hi.str() << "]";
                os << "]";
            }
            os << "}";
            break;
    }
    return os.str();
}

}  // namespace ck
