#include "ck/axioms.hpp"

#include <algorithm>

#include "ck/errors.hpp"

namespace ck::axioms {

namespace {

using Mask = unsigned;

PointSet mask_set(const PointSet& universe, Mask m) {
    PointSet out;
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (m & (1u << i)) out.push_back(universe[i]);
    return out;
}

struct Table {
    PointSet universe;
    std::vector<PointSet> sets;
    std::vector<std::vector<char>> rel;

    Table(const PointSet& u, const SetRelation& oracle, int hard_cap) : universe(u) {
        if (static_cast<int>(u.size()) > hard_cap)
            throw Error(ErrorKind::CapExceeded, "universe larger than the supported cap");
        Mask total = 1u << u.size();
        sets.reserve(total);
        for (Mask m = 0; m < total; ++m) sets.push_back(mask_set(u, m));
        rel.assign(total, std::vector<char>(total, 0));
        for (Mask a = 0; a < total; ++a)
            for (Mask b = 0; b < total; ++b) rel[a][b] = oracle(sets[a], sets[b]) ? 1 : 0;
    }

    Mask count() const { return static_cast<Mask>(sets.size()); }
};

bool push_violation(AxiomCheck& check, const AxiomLimits& lim, Violation v) {
    check.status = CheckStatus::Violated;
    if (static_cast<int>(check.violations.size()) < lim.max_violations)
        check.violations.push_back(std::move(v));
    return static_cast<int>(check.violations.size()) >= lim.max_violations;
}

}  // namespace

bool AxiomReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.status == CheckStatus::Passed; });
}
bool AxiomReport::any_violation() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.status == CheckStatus::Violated; });
}
bool AxiomReport::any_capped() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const AxiomCheck& c) { return c.status == CheckStatus::Capped; });
}

AxiomReport check_asr_axioms(const PointSet& universe, const SetRelation& rel,
                             const AxiomLimits& limits) {
    Table t(universe, rel, limits.max_equivalence);
    const Mask n = t.count();
    AxiomReport report;

    {
        AxiomCheck c;
        c.name = "reflexivity";
        for (Mask a = 0; a < n; ++a) {
            ++c.tuples_checked;
            if (!t.rel[a][a]) {
                if (push_violation(c, limits, {c.name, {{"A", t.sets[a]}}, "set not related to itself"}))
                    break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c;
        c.name = "symmetry";
        bool full = false;
        for (Mask a = 0; a < n && !full; ++a)
            for (Mask b = a + 1; b < n; ++b) {
                ++c.tuples_checked;
                if (t.rel[a][b] != t.rel[b][a]) {
                    full = push_violation(c, limits,
                                          {c.name,
                                           {{"A", t.sets[a]}, {"B", t.sets[b]}},
                                           t.rel[a][b] ? "holds left-to-right only" : "holds right-to-left only"});
                    if (full) break;
                }
            }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c;
        c.name = "transitivity";
        bool full = false;
        for (Mask a = 0; a < n && !full; ++a)
            for (Mask b = 0; b < n && !full; ++b) {
                if (!t.rel[a][b]) continue;
                for (Mask d = 0; d < n; ++d) {
                    if (!t.rel[b][d]) continue;
                    ++c.tuples_checked;
                    if (!t.rel[a][d]) {
                        full = push_violation(c, limits,
                                              {c.name,
                                               {{"A", t.sets[a]}, {"B", t.sets[b]}, {"C", t.sets[d]}},
                                               "first and third set unrelated through the middle one"});
                        if (full) break;
                    }
                }
            }
        report.checks.push_back(std::move(c));
    }

    {
        // related pairs stay related after pairwise unions
        AxiomCheck c;
        c.name = "union-compatibility";
        std::vector<std::pair<Mask, Mask>> related;
        for (Mask a = 0; a < n; ++a)
            for (Mask b = 0; b < n; ++b)
                if (t.rel[a][b]) related.emplace_back(a, b);
        long long work = static_cast<long long>(related.size()) * static_cast<long long>(related.size());
        if (work > limits.max_work) {
            c.status = CheckStatus::Capped;
            c.note = "related-pair scan exceeds the work budget";
        } else {
            bool full = false;
            for (const auto& [a1, b1] : related) {
                for (const auto& [a2, b2] : related) {
                    ++c.tuples_checked;
                    if (!t.rel[a1 | a2][b1 | b2]) {
                        full = push_violation(c, limits,
                                              {c.name,
                                               {{"A1", t.sets[a1]},
                                                {"B1", t.sets[b1]},
                                                {"A2", t.sets[a2]},
                                                {"B2", t.sets[b2]}},
                                               "unions of related pairs fell out of the relation"});
                        if (full) break;
                    }
                }
                if (full) break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        // a set related to a nonempty two-part union splits into nonempty
        // parts related to the respective pieces
        AxiomCheck c;
        c.name = "decomposition";
        if (static_cast<int>(universe.size()) > limits.max_decomposition) {
            c.status = CheckStatus::Capped;
            c.note = "universe larger than the decomposition cap";
        } else {
            bool full = false;
            for (Mask b1 = 1; b1 < n && !full; ++b1)
                for (Mask b2 = 1; b2 < n && !full; ++b2)
                    for (Mask a = 1; a < n; ++a) {
                        if (!t.rel[b1 | b2][a]) continue;
                        ++c.tuples_checked;
                        bool found = t.rel[b1][a] && t.rel[b2][a];  // the lazy split A = A union A
                        for (Mask a1 = a; a1 && !found; a1 = (a1 - 1) & a) {
                            if (!t.rel[b1][a1]) continue;
                            Mask rem = a & ~a1;
                            for (Mask extra = a1;; extra = (extra - 1) & a1) {
                                Mask a2 = rem | extra;
                                if (a2 && t.rel[b2][a2]) { found = true; break; }
                                if (!extra) break;
                            }
                        }
                        if (!found) {
                            full = push_violation(c, limits,
                                                  {c.name,
                                                   {{"B1", t.sets[b1]}, {"B2", t.sets[b2]}, {"A", t.sets[a]}},
                                                   "no nonempty two-part split matches the pieces"});
                            if (full) break;
                        }
                    }
        }
        report.checks.push_back(std::move(c));
    }

    return report;
}

AxiomReport check_proximity_axioms(const PointSet& universe, const SetRelation& delta,
                                   const AxiomLimits& limits) {
    Table t(universe, delta, limits.max_equivalence);
    const Mask n = t.count();
    AxiomReport report;

    {
        AxiomCheck c;
        c.name = "symmetry";
        bool full = false;
        for (Mask a = 0; a < n && !full; ++a)
            for (Mask b = a + 1; b < n; ++b) {
                ++c.tuples_checked;
                if (t.rel[a][b] != t.rel[b][a]) {
                    full = push_violation(c, limits,
                                          {c.name,
                                           {{"A", t.sets[a]}, {"B", t.sets[b]}},
                                           t.rel[a][b] ? "holds left-to-right only" : "holds right-to-left only"});
                    if (full) break;
                }
            }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c;
        c.name = "empty-apartness";
        for (Mask a = 0; a < n; ++a) {
            ++c.tuples_checked;
            if (t.rel[0][a] || t.rel[a][0]) {
                if (push_violation(c, limits, {c.name, {{"A", t.sets[a]}}, "the empty set must be apart from everything"}))
                    break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c;
        c.name = "meeting-implies-near";
        bool full = false;
        for (Mask a = 0; a < n && !full; ++a)
            for (Mask b = 0; b < n; ++b) {
                if (!(a & b)) continue;
                ++c.tuples_checked;
                if (!t.rel[a][b]) {
                    full = push_violation(c, limits,
                                          {c.name, {{"A", t.sets[a]}, {"B", t.sets[b]}}, "sets meet but are not near"});
                    if (full) break;
                }
            }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c;
        c.name = "union-distribution";
        bool full = false;
        for (Mask a = 0; a < n && !full; ++a)
            for (Mask b = 0; b < n && !full; ++b)
                for (Mask d = 0; d < n; ++d) {
                    ++c.tuples_checked;
                    bool lhs = t.rel[a][b | d];
                    bool rhs = t.rel[a][b] || t.rel[a][d];
                    if (lhs != rhs) {
                        full = push_violation(c, limits,
                                              {c.name,
                                               {{"A", t.sets[a]}, {"B", t.sets[b]}, {"C", t.sets[d]}},
                                               lhs ? "near the union but near neither piece"
                                                   : "near a piece but not the union"});
                        if (full) break;
                    }
                }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c;
        c.name = "separation";
        if (static_cast<int>(universe.size()) > limits.max_decomposition) {
            c.status = CheckStatus::Capped;
            c.note = "universe larger than the separation cap";
        } else {
            Mask all = n - 1;
            bool full = false;
            for (Mask a = 0; a < n && !full; ++a)
                for (Mask b = 0; b < n; ++b) {
                    if (t.rel[a][b]) continue;
                    ++c.tuples_checked;
                    bool found = false;
                    for (Mask e = 0; e < n; ++e)
                        if (!t.rel[a][e] && !t.rel[all & ~e][b]) { found = true; break; }
                    if (!found) {
                        full = push_violation(c, limits,
                                              {c.name,
                                               {{"A", t.sets[a]}, {"B", t.sets[b]}},
                                               "no separating set keeps both sides apart"});
                        if (full) break;
                    }
                }
        }
        report.checks.push_back(std::move(c));
    }

    return report;
}

SetRelation relation_always() {
    return [](const PointSet&, const PointSet&) { return true; };
}

SetRelation relation_discrete() {
    // finite symmetric difference; every pair qualifies on a finite universe
    return [](const PointSet&, const PointSet&) { return true; };
}

SetRelation relation_cardinality_equal() {
    return [](const PointSet& a, const PointSet& b) { return a.size() == b.size(); };
}

SetRelation relation_intersects_or_both_empty() {
    return [](const PointSet& a, const PointSet& b) {
        if (a.empty() && b.empty()) return true;
        PointSet meet = set_intersection(a, b);
        return !meet.empty();
    };
}

SetRelation relation_large_or_equal(std::size_t min_size) {
    return [min_size](const PointSet& a, const PointSet& b) {
        return a == b || (a.size() >= min_size && b.size() >= min_size);
    };
}

SetRelation delta_intersects() {
    return [](const PointSet& a, const PointSet& b) { return !set_intersection(a, b).empty(); };
}

SetRelation delta_always() {
    return [](const PointSet&, const PointSet&) { return true; };
}

SetRelation delta_sum_card_geq(std::size_t threshold) {
    return [threshold](const PointSet& a, const PointSet& b) { return a.size() + b.size() >= threshold; };
}

SetRelation random_relation(std::uint64_t seed, bool force_reflexive_symmetric) {
    auto hash_set = [](const PointSet& s) {
        std::uint64_t h = 1469598103934665603ull;
        for (const Point& p : s)
            for (Coord c : p) {
                h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
        return h;
    };
    return [seed, force_reflexive_symmetric, hash_set](const PointSet& a, const PointSet& b) {
        if (force_reflexive_symmetric && a == b) return true;
        std::uint64_t ha = hash_set(a), hb = hash_set(b);
        if (force_reflexive_symmetric && hb < ha) std::swap(ha, hb);
        std::uint64_t mix = seed ^ (ha * 0x100000001b3ull) ^ (hb + 0x9e3779b97f4a7c15ull + (ha << 6));
        mix ^= mix >> 33;
        mix *= 0xff51afd7ed558ccdull;
        mix ^= mix >> 33;
        return (mix & 1ull) == 0;
    };
}

}  // namespace ck::axioms
