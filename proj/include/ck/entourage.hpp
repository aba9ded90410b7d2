#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ck/asr.hpp"
#include "ck/setexpr.hpp"
#include "ck/space.hpp"
#include "ck/verdict.hpp"

namespace ck::coarse {

// A symmetric-agnostic pair relation: either a finite explicit pair list or
// the set of all pairs within a closed displacement bound (interpreted in
// whatever space the operation at hand supplies).
class Entourage {
public:
    enum class Kind { ExplicitPairs, Displacement };

    static Entourage explicit_pairs(std::vector<std::pair<Point, Point>> pairs, std::string label = "");
    static Entourage displacement(Rat bound, std::string label = "");

    Kind kind() const { return kind_; }
    const Rat& bound() const;
    const std::vector<std::pair<Point, Point>>& pairs() const;
    const std::string& label() const { return label_; }

    Entourage inverse() const;
    // relational composition: (x,y) is in the result when some z has
    // (x,z) in inner and (z,y) in outer; displacement bounds add
    static Entourage compose(const Entourage& outer, const Entourage& inner);
    static Entourage unite(const Entourage& a, const Entourage& b);

    bool member(const spaces::Space& space, const Point& x, const Point& y) const;
    PointSet image(const PointSet& A) const;  // ExplicitPairs only

    std::string describe() const;

private:
    Kind kind_ = Kind::ExplicitPairs;
    std::vector<std::pair<Point, Point>> pairs_;
    Rat bound_;
    std::string label_;
};

// Mutual containment of two sets under composites of the family, generated up
// to the given depth. A passing composite certifies, a point escaping every
// composite refutes within the window.
struct ViaVerdict {
    ScaleVerdict verdict;
    std::string via;                 // certifying composite, when alike
    std::vector<std::string> tried;  // candidate descriptions, generation order
};
ViaVerdict alike_via(const spaces::Space& space, const std::vector<Entourage>& family,
                     const SetExpr& A, const SetExpr& B, const Rat& window, int depth = 3);

// Intensional families over the naturals: all locally finite relations, or
// all relations of bounded degree. Alikeness under either family is decided
// by size class; certifying pairings are constructed and spot-checked.
enum class StructureKind { FinitePreimages, BoundedDegree };
struct StructureVerdict {
    ScaleVerdict verdict;
    std::string note;  // construction used, or the obstruction
    bool window_verified = false;
    std::vector<std::pair<Point, Point>> sample_pairs;
};
StructureVerdict alike_via_structure(StructureKind kind, const SetExpr& A, const SetExpr& B,
                                     const Rat& window);

// Does the entourage belong to the widest family compatible with the model,
// i.e. do all sub-relations keep their projections alike?
enum class MembershipOutcome { Member, NonMember, Inconclusive };
enum class MembershipMode { Auto, Exhaustive };
struct MembershipVerdict {
    MembershipOutcome outcome = MembershipOutcome::Inconclusive;
    Rat bound;  // Member on a metric model: stabilized displacement bound
    std::vector<std::pair<Point, Point>> refuting_pairs;
    ScaleVerdict projection_verdict;  // the model's answer on the refuting projections
    std::string note;
};
MembershipVerdict in_maximal(const asr::Model& model, const Entourage& E, int cap = 12,
                             MembershipMode mode = MembershipMode::Auto);

}  // namespace ck::coarse
