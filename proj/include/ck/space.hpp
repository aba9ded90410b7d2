#pragma once

// Window-truncated proper metric spaces. A space only ever has to answer two
// questions exactly: the distance between two named points, and the (finite)
// set of points within a given radius of its basepoint. Every verdict in the
// library is phrased against those windows.
//
// Distances may be +inf; that models coarse disjoint unions. Such spaces set
// may_have_infinite_distance() and enumerate per-component windows (each point
// within R of its own component's basepoint), since a single basepoint can
// never see across an infinite gap.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ck/errors.hpp"
#include "ck/point.hpp"
#include "ck/rat.hpp"

namespace ck::spaces {

enum class Norm { L1, Linf };

class Space {
public:
    enum class Kind { Lattice, FreeGroup, WordLattice, Finite, DisjointUnion, Subset };

    virtual ~Space() = default;

    virtual Kind kind() const = 0;

    // Point-id arity, or -1 when points have variable length (group words,
    // unions of unlike components).
    virtual int dim() const = 0;

    virtual Point basepoint() const = 0;

    // All points p with dist(basepoint, p) <= R, lexicographically sorted.
    // Infinite-distance spaces window each component around its own base.
    virtual PointSet enumerate(const Rat& radius) const = 0;

    virtual ExtRat dist(const Point& a, const Point& b) const = 0;

    virtual bool may_have_infinite_distance() const { return false; }

    virtual std::string describe() const = 0;
};

using SpacePtr = std::shared_ptr<const Space>;

// Z^d with the l1 or linf metric, basepoint at the origin.
SpacePtr lattice(int dim, Norm norm);

// Free group of the given rank with the word metric; points are reduced words
// over signed generator indices (1..rank, negatives for inverses).
SpacePtr free_group(int rank);

// Z^d with the word metric of an arbitrary finite generating list (negatives
// are adjoined automatically). Vectors outside the integer span of the
// generators sit at distance +inf, so non-generating lists model coarse
// unions of cosets.
SpacePtr word_lattice(int dim, std::vector<Point> generators);

// Finite space from symmetric edge weights via shortest paths. Disconnected
// vertex pairs sit at distance +inf.
struct Edge {
    int a = 0;
    int b = 0;
    Rat weight;
};
SpacePtr finite_space(int vertex_count, std::vector<Edge> edges, int basepoint = 0);

// Coarse disjoint union: component tag 0 or 1 is prepended to the point id and
// cross-component distances are +inf.
SpacePtr disjoint_union(SpacePtr first, SpacePtr second);

// Metric subspace of `parent` carved out by a membership predicate. The
// basepoint must satisfy the predicate.
SpacePtr subset_space(SpacePtr parent, std::function<bool(const Point&)> member, Point basepoint,
                      std::string description);

// Distance from the basepoint, as used by every window rule.
inline ExtRat norm_from_base(const Space& s, const Point& p) { return s.dist(s.basepoint(), p); }

}  // namespace ck::spaces
