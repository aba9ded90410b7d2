#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ck/geometry.hpp"
#include "ck/maps.hpp"
#include "ck/setexpr.hpp"
#include "ck/space.hpp"
#include "ck/verdict.hpp"

namespace ck::asdim {

// A family of symbolic sets read against a fixed window of the ambient space.
struct Cover {
    Rat window;
    std::vector<SetExpr> members;
};

// largest number of members any single window point lands in
int multiplicity(const spaces::Space& space, const Cover& c);

// every window point lands in at least one member
bool covers_window(const spaces::Space& space, const Cover& c);

// every member of `fine` sits inside a single member of `coarse`, judged on
// fine's window points
struct RefineResult {
    bool ok = false;
    std::vector<int> assignment;  // per fine member: index into coarse (-1 for empty members)
    std::optional<Point> stray;   // a fine-member point no single coarse member absorbs
    int stray_member = -1;
};
RefineResult refines(const spaces::Space& space, const Cover& fine, const Cover& coarse);

// Cover-induced closeness: A and B each sit inside the union of members
// meeting the other, judged on the cover window.
bool s_relation(const spaces::Space& space, const Cover& c, const SetExpr& A, const SetExpr& B);

// A common finite diameter bound across the family. Metric-backed models get
// exact diameters; exact models fall back to per-member boundedness.
struct UBReport {
    enum class Outcome { Bounded, NotBounded, Inconclusive };
    Outcome outcome = Outcome::Inconclusive;
    Rat bound;          // Bounded: max diameter + 1
    int offender = -1;  // NotBounded: member index
    std::vector<ExtRat> diameters;
    std::string note;
};
UBReport uniformly_bounded_check(const asr::Model& model, const std::vector<SetExpr>& family,
                                 const ProbeBudget& probe);

// Staggered brick cover of a line or plane lattice: axis-0 slabs of pitch L,
// odd slabs shifted half a pitch crosswise plus a global quarter-pitch lift,
// every brick inflated by the scale. Pitch at least 4x the scale keeps the
// point load at dim + 1; higher dimensions would need 2^(dim-1) + 1 and are
// rejected.
Cover brick_cover(const spaces::Space& space, long long L, long long r, const Rat& window);

// Per-scale certificate: the r-ball cover around every window point refines
// the brick cover, whose load, reach and member size are all checked.
struct ScaleEntry {
    Rat r;
    long long L = 0;
    int multiplicity = 0;
    bool covers = false;
    bool refines_ok = false;
    bool ub_ok = false;
    Rat ub_bound;
};
struct DimCertificate {
    int claimed_dim = 0;
    Rat window;
    std::vector<ScaleEntry> entries;
    std::vector<Cover> covers;  // the certified cover per scale
    std::string assumptions;
    bool ok() const;
};
DimCertificate asdim_upper(const spaces::Space& space, const std::vector<Rat>& scales,
                           long long l_factor, const Rat& window, const ProbeBudget& probe);

// Can the region be covered by members of diameter at most m, no point in
// more than n of them, with every closed r-ball around a core point (one
// whose ball stays inside the region) absorbed by a single member? The line
// with n = 1 is decided exactly by chaining overlapping core balls;
// construction shortcuts answer the common feasible cases; small regions get
// an exhaustive ball-assignment search. Budget exhaustion never claims
// infeasibility.
struct LowerBoundReport {
    enum class Outcome { Feasible, Infeasible, Budget };
    Outcome outcome = Outcome::Budget;
    long long nodes = 0;
    std::vector<PointSet> cover;  // Feasible: a validated witness cover
    PointSet core;
    bool validated = false;
    std::string note;
};
LowerBoundReport lower_bound_search(const spaces::Space& space, const SetExpr& region, const Rat& m,
                                    const Rat& r, int n, long long budget);

// restriction of a cover to a subset: symbolic intersection when the variant
// pair supports it, windowed points otherwise; empty members dropped
Cover restrict_cover(const spaces::Space& space, const Cover& c, const SetExpr& Y);

enum class TransportDirection { Image, Preimage };
std::vector<SetExpr> transport_family(const maps::MapDescriptor& f,
                                      const std::vector<SetExpr>& members, TransportDirection dir,
                                      const Rat& window);

}  // namespace ck::asdim
