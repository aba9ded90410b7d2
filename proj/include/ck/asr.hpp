#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ck/setexpr.hpp"
#include "ck/space.hpp"
#include "ck/verdict.hpp"

namespace ck::asr {

// Decides whether two subsets stay within a bounded mutual distance.
// Metric-backed variants answer relative to a probe budget and may be
// inconclusive; the symbolic variants always answer exactly.
class Model {
public:
    virtual ~Model() = default;
    enum class Kind { MetricWindowed, RayOnR, Discrete, FiniteInfiniteOnN, GroupLeft, Subspace };

    virtual Kind kind() const = 0;
    virtual bool exact() const = 0;
    virtual ScaleVerdict alike(const SetExpr& A, const SetExpr& B) const = 0;
    virtual ScaleVerdict bounded(const SetExpr& A) const = 0;
    virtual std::string describe() const = 0;
    virtual const spaces::Space* space_ptr() const { return nullptr; }
    virtual const ProbeBudget* probe_ptr() const { return nullptr; }
};

using ModelPtr = std::shared_ptr<const Model>;

ModelPtr metric_windowed(spaces::SpacePtr space, ProbeBudget probe);
ModelPtr ray_on_r();
ModelPtr discrete_on_n();
ModelPtr finite_infinite_on_n();
ModelPtr group_left(spaces::SpacePtr word_space, ProbeBudget probe);
ModelPtr subspace(ModelPtr parent, SetExpr Y);

// The windowed engine behind the metric variants. Certification rule, both
// directions: every point of one set with norm <= R - r has a partner in the
// other set strictly closer than r. Refutation carries a point breaking every
// probed scale at the widest window.
ScaleVerdict metric_alike(const spaces::Space& space, const ProbeBudget& probe,
                          const SetExpr& A, const SetExpr& B);

// Splits A along a two-part covering: A_i = A meet the open r-neighborhood of B_i.
// Requires every window point of A to lie within r of B1 union B2.
struct DecomposeResult {
    PointSet a1, a2;
    bool b1_covered = false;  // B1 within the shrunk window sits in the r-neighborhood of a1
    bool b2_covered = false;
    std::optional<Point> b_side_witness;
};
DecomposeResult decompose(const spaces::Space& space, const SetExpr& A,
                          const SetExpr& B1, const SetExpr& B2, const Rat& r, const Rat& R);

// Alikeness of singleton pairs; the reported scale is the largest certified one.
ScaleVerdict connected(const Model& model, const std::vector<std::pair<Point, Point>>& pairs);

// Given alike line sets A, B and a nonempty A1 inside A, produce B1 inside B
// with A1 alike B1 (infimum-class matching on the line model).
SetExpr ray_subset_partner(const SetExpr& A, const SetExpr& B, const SetExpr& A1);

}  // namespace ck::asr
