#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ck/errors.hpp"
#include "ck/point.hpp"
#include "ck/rat.hpp"
#include "ck/space.hpp"

namespace ck {

// A symbolic subset with exact membership. Four variants:
//   Explicit      finite point list (any arity)
//   IntervalUnion closed rational intervals on the line, infinite ends allowed
//   Cofinite      the naturals {0,1,2,...} minus a finite excluded list
//   BoxUnion      axis-aligned integer boxes in Z^d, infinite bounds allowed
class SetExpr {
public:
    enum class Kind { Explicit, IntervalUnion, Cofinite, BoxUnion };

    struct AxisRange {
        ExtRat lo;  // -inf allowed
        ExtRat hi;  // +inf allowed
    };
    using Box = std::vector<AxisRange>;  // one range per axis

    static SetExpr explicit_set(std::vector<Point> points);
    static SetExpr interval_union(std::vector<std::pair<ExtRat, ExtRat>> parts);
    static SetExpr cofinite(std::vector<Coord> excluded);
    static SetExpr box_union(int dim, std::vector<Box> boxes);

    Kind kind() const { return kind_; }
    // point arity; 1 for Cofinite, throws for IntervalUnion (not a lattice set)
    int dim() const;
    bool empty() const;

    bool contains(const Point& p) const;
    bool contains_rat(const Rat& x) const;  // IntervalUnion only

    // exact intersection with the R-window of a space, as a sorted point list
    PointSet window_points(const spaces::Space& space, const Rat& radius) const;

    // full enumeration; requires Explicit or all-finite BoxUnion
    PointSet enumerate_finite() const;

    // line queries (IntervalUnion)
    ExtRat line_inf() const;
    ExtRat line_sup() const;
    Rat pick_rat() const;  // a representative point; requires nonempty IntervalUnion
    bool closed_intersects(const SetExpr& other) const;

    // true if some axis extent is infinite (Cofinite counts as unbounded)
    bool unbounded_extent() const;

    // queries for sets over the naturals (Explicit with single nonneg coords, or Cofinite)
    bool is_natural_set() const;
    bool infinite_on_n() const;
    Coord nth_on_n(std::size_t i) const;  // i-th element in ascending order

    // exact symbolic intersection where the variant pair supports it
    static std::optional<SetExpr> intersect(const SetExpr& a, const SetExpr& b);
    // exact subset decision where supported; nullopt = unknown symbolically
    static std::optional<bool> subset_of(const SetExpr& a, const SetExpr& b);

    const std::vector<Point>& points() const;        // Explicit
    const std::vector<Coord>& excluded() const;      // Cofinite
    const std::vector<Box>& boxes() const;           // BoxUnion
    const std::vector<std::pair<ExtRat, ExtRat>>& parts() const;  // IntervalUnion

    std::string str() const;

private:
    SetExpr() = default;
    Kind kind_ = Kind::Explicit;
    int dim_ = 0;  // Explicit/BoxUnion arity; 1 otherwise
    std::vector<Point> points_;
    std::vector<std::pair<ExtRat, ExtRat>> parts_;
    std::vector<Coord> excluded_;
    std::vector<Box> boxes_;
};

}  // namespace ck
