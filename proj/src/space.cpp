#include "ck/space.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>

namespace ck::spaces {

namespace {

Coord radius_floor(const Rat& r) {
    if (r < Rat(0)) return -1;  // empty window
    return r.floor();
}

// ---------------------------------------------------------------- lattice --

class LatticeSpace final : public Space {
public:
    LatticeSpace(int dim, Norm norm) : dim_(dim), norm_(norm) {
        if (dim < 1 || dim > 8) throw Error(ErrorKind::InvalidParams, "lattice dim must be in 1..8");
    }

    Kind kind() const override { return Kind::Lattice; }
    int dim() const override { return dim_; }
    Point basepoint() const override { return Point(dim_, 0); }

    PointSet enumerate(const Rat& radius) const override {
        Coord k = radius_floor(radius);
        PointSet out;
        if (k < 0) return out;
        Point p(dim_, 0);
        emit(out, p, 0, k);
        return out;  // built in lex order
    }

    ExtRat dist(const Point& a, const Point& b) const override {
        check(a);
        check(b);
        Coord acc = 0;
        for (int i = 0; i < dim_; ++i) {
            Coord d = std::llabs(a[i] - b[i]);
            acc = norm_ == Norm::L1 ? acc + d : std::max(acc, d);
        }
        return ExtRat(Rat(acc));
    }

    std::string describe() const override {
        return "Z^" + std::to_string(dim_) + (norm_ == Norm::L1 ? " (l1)" : " (linf)");
    }

    Norm norm() const { return norm_; }

private:
    int dim_;
    Norm norm_;

    void check(const Point& p) const {
        if (static_cast<int>(p.size()) != dim_)
            throw Error(ErrorKind::UnsupportedModel, "point arity does not match lattice dim");
    }

    void emit(PointSet& out, Point& p, int axis, Coord budget) const {
        if (axis == dim_) {
            out.push_back(p);
            return;
        }
        Coord span = budget;  // both norms allow at most `budget` on this axis
        for (Coord c = -span; c <= span; ++c) {
            p[axis] = c;
            Coord rest = norm_ == Norm::L1 ? budget - std::llabs(c) : budget;
            emit(out, p, axis + 1, rest);
        }
        p[axis] = 0;
    }
};

// ------------------------------------------------------------- free group --

class FreeGroupSpace final : public Space {
public:
    explicit FreeGroupSpace(int rank) : rank_(rank) {
        if (rank < 1 || rank > 8) throw Error(ErrorKind::InvalidParams, "free group rank must be in 1..8");
    }

    Kind kind() const override { return Kind::FreeGroup; }
    int dim() const override { return -1; }
    Point basepoint() const override { return Point{}; }

    PointSet enumerate(const Rat& radius) const override {
        Coord k = radius_floor(radius);
        PointSet out;
        if (k < 0) return out;
        out.push_back({});
        std::size_t level_begin = 0;
        for (Coord len = 1; len <= k; ++len) {
            std::size_t level_end = out.size();
            for (std::size_t i = level_begin; i < level_end; ++i) {
                for (Coord g = 1; g <= rank_; ++g) {
                    for (Coord s : {g, -g}) {
                        const Point& w = out[i];
                        if (!w.empty() && w.back() == -s) continue;
                        Point next = w;
                        next.push_back(s);
                        out.push_back(std::move(next));
                    }
                }
            }
            level_begin = level_end;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    ExtRat dist(const Point& a, const Point& b) const override {
        check(a);
        check(b);
        std::size_t c = 0;
        while (c < a.size() && c < b.size() && a[c] == b[c]) ++c;
        return ExtRat(Rat(static_cast<Coord>(a.size() - c) + static_cast<Coord>(b.size() - c)));
    }

    std::string describe() const override { return "free group F_" + std::to_string(rank_); }

private:
    int rank_;

    void check(const Point& w) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] == 0 || std::llabs(w[i]) > rank_)
                throw Error(ErrorKind::UnsupportedModel, "word uses an unknown generator");
            if (i + 1 < w.size() && w[i] == -w[i + 1])
                throw Error(ErrorKind::UnsupportedModel, "word is not reduced");
        }
    }
};

// ---------------------------------------------------------- word lattice --

// Integer column elimination used for span membership. Columns of `basis` are
// combined in place into a column echelon form; pivot rows are recorded.
struct SpanForm {
    std::vector<std::vector<Coord>> cols;  // echelon columns, length = dim
    std::vector<int> pivot_row;            // per column

    static SpanForm build(int dim, const std::vector<Point>& gens) {
        SpanForm f;
        std::vector<std::vector<Coord>> work;
        for (const auto& g : gens) work.emplace_back(g.begin(), g.end());
        int row = 0;
        while (row < dim && !work.empty()) {
            // gcd-combine all columns with a nonzero entry in this row into one
            std::size_t dst = work.size();
            for (std::size_t i = 0; i < work.size(); ++i) {
                if (work[i][row] == 0) continue;
                if (dst == work.size()) {
                    dst = i;
                    continue;
                }
                // euclidean steps between columns dst and i on this row
                while (work[i][row] != 0) {
                    Coord q = work[dst][row] / work[i][row];
                    for (int r = 0; r < dim; ++r) work[dst][r] -= q * work[i][r];
                    std::swap(work[dst], work[i]);
                }
            }
            if (dst != work.size()) {
                if (work[dst][row] < 0)
                    for (int r = 0; r < dim; ++r) work[dst][r] = -work[dst][r];
                f.cols.push_back(work[dst]);
                f.pivot_row.push_back(row);
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(dst));
            }
            ++row;
        }
        return f;
    }

    bool member(const Point& v) const {
        std::vector<Coord> rem(v.begin(), v.end());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            int r = pivot_row[c];
            // rows above this pivot are already cleared
            if (rem[r] % cols[c][r] != 0) return false;
            Coord q = rem[r] / cols[c][r];
            for (std::size_t k = 0; k < rem.size(); ++k) rem[k] -= q * cols[c][k];
        }
        return std::all_of(rem.begin(), rem.end(), [](Coord x) { return x == 0; });
    }
};

class WordLatticeSpace final : public Space {
public:
    WordLatticeSpace(int dim, std::vector<Point> gens) : dim_(dim) {
        if (dim < 1 || dim > 8) throw Error(ErrorKind::InvalidParams, "word lattice dim must be in 1..8");
        for (auto& g : gens) {
            if (static_cast<int>(g.size()) != dim)
                throw Error(ErrorKind::InvalidParams, "generator arity does not match dim");
            if (std::all_of(g.begin(), g.end(), [](Coord c) { return c == 0; })) continue;
            gens_.push_back(g);
            Point neg(g.size());
            std::transform(g.begin(), g.end(), neg.begin(), [](Coord c) { return -c; });
            gens_.push_back(std::move(neg));
        }
        normalize(gens_);
        if (gens_.empty()) throw Error(ErrorKind::InvalidParams, "word lattice needs a nonzero generator");
        span_ = SpanForm::build(dim, gens_);
        lengths_[Point(dim_, 0)] = 0;
        frontier_.push_back(Point(dim_, 0));
    }

    Kind kind() const override { return Kind::WordLattice; }
    int dim() const override { return dim_; }
    Point basepoint() const override { return Point(dim_, 0); }

    PointSet enumerate(const Rat& radius) const override {
        Coord k = radius_floor(radius);
        PointSet out;
        if (k < 0) return out;
        std::lock_guard<std::mutex> lock(mu_);
        grow_to(k);
        for (const auto& [p, len] : lengths_)
            if (len <= k) out.push_back(p);
        return out;  // map iteration is already lex order
    }

    ExtRat dist(const Point& a, const Point& b) const override {
        if (static_cast<int>(a.size()) != dim_ || static_cast<int>(b.size()) != dim_)
            throw Error(ErrorKind::UnsupportedModel, "point arity does not match dim");
        Point v(dim_);
        for (int i = 0; i < dim_; ++i) v[i] = b[i] - a[i];
        if (!span_.member(v)) return ExtRat::pos_inf();
        std::lock_guard<std::mutex> lock(mu_);
        while (true) {
            auto it = lengths_.find(v);
            if (it != lengths_.end()) return ExtRat(Rat(it->second));
            if (!grow_one_layer())
                throw Error(ErrorKind::InvalidParams, "word length search exhausted");
        }
    }

    bool may_have_infinite_distance() const override {
        // exact: infinite distances appear exactly when the span has cosets
        return span_.cols.size() != static_cast<std::size_t>(dim_) || full_span_unit_check();
    }

    std::string describe() const override {
        return "Z^" + std::to_string(dim_) + " word metric (" + std::to_string(gens_.size() / 2) +
               " generator pairs)";
    }

private:
    int dim_;
    std::vector<Point> gens_;
    SpanForm span_;
    mutable std::mutex mu_;
    mutable std::map<Point, Coord> lengths_;
    mutable std::vector<Point> frontier_;
    mutable Coord layers_done_ = 0;

    bool full_span_unit_check() const {
        for (int i = 0; i < dim_; ++i) {
            Point e(dim_, 0);
            e[i] = 1;
            if (!span_.member(e)) return true;  // some unit vector missing: cosets exist
        }
        return false;
    }

    // requires mu_ held
    bool grow_one_layer() const {
        std::vector<Point> next;
        for (const auto& p : frontier_) {
            for (const auto& g : gens_) {
                Point q(dim_);
                for (int i = 0; i < dim_; ++i) q[i] = p[i] + g[i];
                auto [it, fresh] = lengths_.emplace(q, layers_done_ + 1);
                (void)it;
                if (fresh) next.push_back(std::move(q));
            }
        }
        ++layers_done_;
        frontier_ = std::move(next);
        return !frontier_.empty();
    }

    void grow_to(Coord k) const {
        while (layers_done_ < k && grow_one_layer()) {
        }
    }
};

// ------------------------------------------------------------------ finite --

class FiniteSpace final : public Space {
public:
    FiniteSpace(int n, const std::vector<Edge>& edges, int base) : n_(n), base_(base) {
        if (n < 1 || n > 2000) throw Error(ErrorKind::InvalidParams, "finite space size must be in 1..2000");
        if (base < 0 || base >= n) throw Error(ErrorKind::InvalidParams, "basepoint vertex out of range");
        d_.assign(static_cast<std::size_t>(n) * n, ExtRat::pos_inf());
        for (int i = 0; i < n; ++i) at(i, i) = ExtRat(Rat(0));
        for (const auto& e : edges) {
            if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
                throw Error(ErrorKind::InvalidParams, "edge endpoint out of range");
            if (e.weight < Rat(0)) throw Error(ErrorKind::InvalidParams, "edge weight must be nonnegative");
            ExtRat w{e.weight};
            if (w < at(e.a, e.b)) at(e.a, e.b) = at(e.b, e.a) = w;
        }
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                if (!at(i, k).finite()) continue;
                for (int j = 0; j < n; ++j) {
                    if (!at(k, j).finite()) continue;
                    ExtRat via = at(i, k) + at(k, j);
                    if (via < at(i, j)) at(i, j) = via;
                }
            }
    }

    Kind kind() const override { return Kind::Finite; }
    int dim() const override { return 1; }
    Point basepoint() const override { return Point{base_}; }

    PointSet enumerate(const Rat& radius) const override {
        PointSet out;
        ExtRat r{radius};
        for (int v = 0; v < n_; ++v)
            if (at(base_, v) <= r) out.push_back(Point{v});
        return out;
    }

    ExtRat dist(const Point& a, const Point& b) const override {
        return at(index(a), index(b));
    }

    bool may_have_infinite_distance() const override {
        for (int v = 0; v < n_; ++v)
            if (!at(base_, v).finite()) return true;
        return false;
    }

    std::string describe() const override { return "finite space on " + std::to_string(n_) + " vertices"; }

    int size() const { return n_; }

private:
    int n_;
    int base_;
    std::vector<ExtRat> d_;

    ExtRat& at(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    const ExtRat& at(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

    int index(const Point& p) const {
        if (p.size() != 1 || p[0] < 0 || p[0] >= n_)
            throw Error(ErrorKind::UnsupportedModel, "vertex id out of range");
        return static_cast<int>(p[0]);
    }
};

// ---------------------------------------------------------- disjoint union --

class DisjointUnionSpace final : public Space {
public:
    DisjointUnionSpace(SpacePtr a, SpacePtr b) : a_(std::move(a)), b_(std::move(b)) {
        if (!a_ || !b_) throw Error(ErrorKind::InvalidParams, "disjoint union needs two components");
    }

    Kind kind() const override { return Kind::DisjointUnion; }
    int dim() const override {
        int da = a_->dim(), db = b_->dim();
        return (da == db && da > 0) ? da + 1 : -1;
    }
    Point basepoint() const override { return tag(0, a_->basepoint()); }

    PointSet enumerate(const Rat& radius) const override {
        PointSet out;
        for (const auto& p : a_->enumerate(radius)) out.push_back(tag(0, p));
        for (const auto& p : b_->enumerate(radius)) out.push_back(tag(1, p));
        return out;  // tag-0 block precedes tag-1 block; each block stays sorted
    }

    ExtRat dist(const Point& a, const Point& b) const override {
        auto [ta, pa] = split(a);
        auto [tb, pb] = split(b);
        if (ta != tb) return ExtRat::pos_inf();
        return ta == 0 ? a_->dist(pa, pb) : b_->dist(pa, pb);
    }

    bool may_have_infinite_distance() const override { return true; }

    std::string describe() const override {
        return "disjoint union [" + a_->describe() + " | " + b_->describe() + "]";
    }

private:
    SpacePtr a_, b_;

    static Point tag(Coord t, const Point& p) {
        Point out;
        out.reserve(p.size() + 1);
        out.push_back(t);
        out.insert(out.end(), p.begin(), p.end());
        return out;
    }

    static std::pair<Coord, Point> split(const Point& p) {
        if (p.empty() || (p[0] != 0 && p[0] != 1))
            throw Error(ErrorKind::UnsupportedModel, "disjoint union point needs a 0/1 component tag");
        return {p[0], Point(p.begin() + 1, p.end())};
    }
};

// ------------------------------------------------------------------ subset --

class SubsetSpace final : public Space {
public:
    SubsetSpace(SpacePtr parent, std::function<bool(const Point&)> member, Point base, std::string desc)
        : parent_(std::move(parent)), member_(std::move(member)), base_(std::move(base)), desc_(std::move(desc)) {
        if (!member_(base_))
            throw Error(ErrorKind::InvalidParams, "subset space basepoint is not a member");
    }

    Kind kind() const override { return Kind::Subset; }
    int dim() const override { return parent_->dim(); }
    Point basepoint() const override { return base_; }

    PointSet enumerate(const Rat& radius) const override {
        // the parent window is centered on the parent basepoint, ours on base_
        Rat reach = radius;
        ExtRat shift = parent_->dist(parent_->basepoint(), base_);
        if (shift.finite()) reach = reach + shift.value();
        PointSet out;
        ExtRat r{radius};
        for (const auto& p : parent_->enumerate(reach)) {
            if (!member_(p)) continue;
            if (parent_->dist(base_, p) <= r) out.push_back(p);
        }
        return out;
    }

    ExtRat dist(const Point& a, const Point& b) const override { return parent_->dist(a, b); }

    bool may_have_infinite_distance() const override { return parent_->may_have_infinite_distance(); }

    std::string describe() const override { return desc_; }

private:
    SpacePtr parent_;
    std::function<bool(const Point&)> member_;
    Point base_;
    std::string desc_;
};

}  // namespace

SpacePtr lattice(int dim, Norm norm) { return std::make_shared<LatticeSpace>(dim, norm); }

SpacePtr free_group(int rank) { return std::make_shared<FreeGroupSpace>(rank); }

SpacePtr word_lattice(int dim, std::vector<Point> generators) {
    return std::make_shared<WordLatticeSpace>(dim, std::move(generators));
}

SpacePtr finite_space(int vertex_count, std::vector<Edge> edges, int basepoint) {
    return std::make_shared<FiniteSpace>(vertex_count, edges, basepoint);
}

SpacePtr disjoint_union(SpacePtr first, SpacePtr second) {
    return std::make_shared<DisjointUnionSpace>(std::move(first), std::move(second));
}

SpacePtr subset_space(SpacePtr parent, std::function<bool(const Point&)> member, Point basepoint,
                      std::string description) {
    return std::make_shared<SubsetSpace>(std::move(parent), std::move(member), std::move(basepoint),
                                         std::move(description));
}

}  // namespace ck::spaces
