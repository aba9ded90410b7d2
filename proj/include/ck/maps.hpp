#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ck/asr.hpp"
#include "ck/entourage.hpp"
#include "ck/setexpr.hpp"
#include "ck/space.hpp"
#include "ck/verdict.hpp"

namespace ck::maps {

struct MapDescriptor {
    std::string name;
    spaces::SpacePtr domain;
    spaces::SpacePtr codomain;
    std::function<Point(const Point&)> apply;
};

MapDescriptor identity_map(spaces::SpacePtr space);
MapDescriptor scale_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, Coord k);
MapDescriptor square_map(spaces::SpacePtr domain, spaces::SpacePtr codomain);
MapDescriptor floor_div_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, Coord k);
MapDescriptor project_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, int axis);
MapDescriptor constant_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, Point value);
MapDescriptor axis_embed_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, int axis);
MapDescriptor diagonal_map(spaces::SpacePtr domain, spaces::SpacePtr codomain);
MapDescriptor table_map(spaces::SpacePtr domain, spaces::SpacePtr codomain,
                        std::map<Point, Point> entries);
MapDescriptor compose_maps(const MapDescriptor& outer, const MapDescriptor& inner);

// the map's graph over a window, as an explicit entourage
coarse::Entourage graph_of(const MapDescriptor& f, const Rat& window);

// window preimage by forward scan: { x : |x| <= window, f(x) in target }
PointSet preimage(const MapDescriptor& f, const SetExpr& target, const Rat& window);

// Windowed expansion modulus: s_R(r) = sup image distance over domain pairs
// closer than r inside the R-window. A map is certified when every per-scale
// tail stabilizes and preimages of bounded sets stay bounded.
struct ModulusEntry {
    Rat r;
    ExtRat s;
};

struct ProperReport {
    enum class Outcome { Proper, NotProper, Inconclusive };
    Outcome outcome = Outcome::Inconclusive;
    // rows: codomain radius (the probed scales); cols: domain window; value:
    // deepest domain norm whose image lands inside the codomain ball (-inf
    // when none does)
    std::vector<std::vector<ExtRat>> pull;
    std::optional<Point> witness;
};

struct CoarseReport {
    enum class Outcome { Coarse, NotCoarse, Inconclusive };
    enum class Reason { None, ModulusGrowth, Improper };
    Outcome outcome = Outcome::Inconclusive;
    Reason reason = Reason::None;
    std::vector<std::vector<ExtRat>> table;  // rows: window radius; cols: scale
    std::vector<ModulusEntry> profile;       // widest-window row
    std::optional<std::pair<Point, Point>> witness_pair;
    Rat witness_scale;
    ExtRat witness_gap;
    ProperReport properness;
};
CoarseReport coarse_check(const MapDescriptor& f, const ProbeBudget& probe);

// pointwise distance of two parallel maps over growing windows
ScaleVerdict close_check(const MapDescriptor& f, const MapDescriptor& g, const ProbeBudget& probe);

struct PairCheck {
    ScaleVerdict domain_verdict;
    ScaleVerdict image_verdict;
    bool applicable = false;  // the domain verdict certified the pair
    bool preserved = false;   // and the image verdict certified the image pair
};

struct TargetCheck {
    std::vector<ExtRat> pull;  // per domain window
    bool bounded = false;
    std::optional<Point> witness;
};

struct MapCheckReport {
    CoarseReport coarse;
    std::vector<PairCheck> pairs;
    std::vector<TargetCheck> targets;
    bool ok() const;
};
MapCheckReport asr_map_check(const MapDescriptor& f, const asr::Model& domain_model,
                             const asr::Model& image_model,
                             const std::vector<std::pair<SetExpr, SetExpr>>& pairs,
                             const std::vector<SetExpr>& bounded_targets, const ProbeBudget& probe);

struct EquivalenceReport {
    CoarseReport f_report;
    CoarseReport g_report;
    ScaleVerdict back_close;   // g after f, against the domain identity
    ScaleVerdict forth_close;  // f after g, against the codomain identity
    bool ok() const;
    Rat closeness_bound() const;
};
EquivalenceReport equivalence_check(const MapDescriptor& f, const MapDescriptor& g,
                                    const ProbeBudget& probe);

// Two parallel point streams whose displacement is unbounded yield index
// selections whose value sets defeat every probed scale: each chosen index
// starts a tail clear of the previous pair's scaled neighborhood.
struct EscapeWitness {
    std::vector<long long> indices;  // 1-based
    std::vector<Point> xs, ys;       // stream values at the chosen indices
    ExtRat defeat_margin;            // worst point-to-other-set distance among them
    bool verified = false;           // margin beats the top probed scale
};
using Stream = std::function<Point(long long)>;  // 1-based index
EscapeWitness escape_witness(const spaces::Space& space, const Stream& xs, const Stream& ys,
                             int count, const ProbeBudget& probe, long long max_index = 100000);

// sup of |f(x)-f(y)| (max over the two components) along entourage pairs
// with an endpoint at or beyond each radius
struct VariationEntry {
    Rat radius;
    ExtRat variation;
};
using PairFunction = std::function<std::pair<Rat, Rat>(const Point&)>;
std::vector<VariationEntry> higson_variation(const spaces::Space& space, const PairFunction& f,
                                             const coarse::Entourage& E, const std::vector<Rat>& radii);

PairFunction pf_constant(Rat re, Rat im);
PairFunction pf_parity();      // coordinate-sum parity as 0/1
PairFunction pf_reciprocal();  // 1 / (1 + coordinate-sum norm)

}  // namespace ck::maps
