#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ck/point.hpp"

namespace ck::axioms {

// An oracle over subsets of a small finite universe.
using SetRelation = std::function<bool(const PointSet&, const PointSet&)>;

struct AxiomLimits {
    int max_equivalence = 8;      // universe cap: equivalence laws and union compatibility
    int max_decomposition = 6;    // universe cap: decomposition / separation scans
    int max_violations = 16;      // recorded per check
    long long max_work = 200000000;  // guard on the union-compatibility pair scan
};

struct NamedSet {
    std::string label;
    PointSet set;
};

struct Violation {
    std::string axiom;
    std::vector<NamedSet> sets;
    std::string note;
};

enum class CheckStatus { Passed, Violated, Capped };

struct AxiomCheck {
    std::string name;
    CheckStatus status = CheckStatus::Passed;
    std::vector<Violation> violations;
    long long tuples_checked = 0;
    std::string note;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_passed() const;
    bool any_violation() const;
    bool any_capped() const;
};

// Equivalence laws, union compatibility, and the nonempty two-part
// decomposition law. Violations are reported in enumeration order
// (subsets ordered by rank over the sorted universe).
AxiomReport check_asr_axioms(const PointSet& universe, const SetRelation& rel,
                             const AxiomLimits& limits = {});

// The nearness axioms: symmetry, apartness of the empty set, meeting implies
// near, distribution over unions, and the separating-set axiom.
AxiomReport check_proximity_axioms(const PointSet& universe, const SetRelation& delta,
                                   const AxiomLimits& limits = {});

// Named oracles for tests and the command line.
SetRelation relation_always();
SetRelation relation_discrete();              // finite symmetric difference: total on a finite universe
SetRelation relation_cardinality_equal();     // breaks union compatibility
SetRelation relation_intersects_or_both_empty();  // breaks transitivity
SetRelation relation_large_or_equal(std::size_t min_size);  // breaks decomposition
SetRelation delta_intersects();               // satisfies all nearness axioms
SetRelation delta_always();                   // breaks empty-set apartness
SetRelation delta_sum_card_geq(std::size_t threshold);  // breaks union distribution
// Deterministic pseudo-random oracle; reflexive and symmetric when forced.
SetRelation random_relation(std::uint64_t seed, bool force_reflexive_symmetric);

}  // namespace ck::axioms
