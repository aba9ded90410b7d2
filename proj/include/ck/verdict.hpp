#pragma once

// Scale verdicts are the library's currency: windowed procedures never claim a
// limit fact outright, they certify behavior over the probed windows. Exact
// models reuse the same type with scale 0 and exact=true.

#include <optional>
#include <string>
#include <vector>

#include "ck/errors.hpp"
#include "ck/point.hpp"
#include "ck/rat.hpp"

namespace ck {

struct ProbeBudget {
    std::vector<Rat> radii = {Rat(25), Rat(50), Rat(100), Rat(200)};
    std::vector<Rat> scales = {Rat(1), Rat(2), Rat(4), Rat(8), Rat(16)};
    int stability = 3;

    // Radii and scales must be positive and strictly ascending.
    void validate() const;

    const Rat& max_radius() const { return radii.back(); }
    const Rat& max_scale() const { return scales.back(); }
};

struct Witness {
    std::optional<Point> point;
    ExtRat distance;          // distance from the witness to the other set
    std::string note;         // symbolic justification when no concrete point applies
};

struct ScaleVerdict {
    enum class Outcome { AlikeWithin, RefutedUpTo, Inconclusive };

    Outcome outcome = Outcome::Inconclusive;
    Rat scale;                // AlikeWithin: least certifying scale (0 for exact verdicts)
    Rat refuted_up_to;        // RefutedUpTo: largest probed window
    std::optional<Witness> witness;
    Rat probed_radius;        // Inconclusive: probe echo
    Rat probed_scale;
    bool exact = false;       // produced by an exact decision procedure, not a window probe

    bool alike() const { return outcome == Outcome::AlikeWithin; }
    bool refuted() const { return outcome == Outcome::RefutedUpTo; }
    bool inconclusive() const { return outcome == Outcome::Inconclusive; }

    static ScaleVerdict alike_within(Rat r, bool exact = false) {
        ScaleVerdict v;
        v.outcome = Outcome::AlikeWithin;
        v.scale = r;
        v.exact = exact;
        return v;
    }

    static ScaleVerdict refuted_at(Rat up_to, Witness w, bool exact = false) {
        ScaleVerdict v;
        v.outcome = Outcome::RefutedUpTo;
        v.refuted_up_to = up_to;
        v.witness = std::move(w);
        v.exact = exact;
        return v;
    }

    static ScaleVerdict inconclusive(Rat max_radius, Rat max_scale) {
        ScaleVerdict v;
        v.outcome = Outcome::Inconclusive;
        v.probed_radius = max_radius;
        v.probed_scale = max_scale;
        return v;
    }
};

inline void ProbeBudget::validate() const {
    auto ascending_positive = [](const std::vector<Rat>& xs) {
        if (xs.empty()) return false;
        Rat prev(0);
        for (const auto& x : xs) {
            if (!(x > prev)) return false;
            prev = x;
        }
        return true;
    };
    if (!ascending_positive(radii))
        throw Error(ErrorKind::InvalidParams, "probe radii must be positive and strictly ascending");
    if (!ascending_positive(scales))
        throw Error(ErrorKind::InvalidParams, "probe scales must be positive and strictly ascending");
    if (stability < 1)
        throw Error(ErrorKind::InvalidParams, "stability window must be at least 1");
}

}  // namespace ck
