#include "ck/maps.hpp"

#include <algorithm>
#include <utility>

namespace ck::maps {

namespace {

// last `stability` entries equal and finite
bool tail_stable_finite(const std::vector<ExtRat>& v, int stability) {
    if (static_cast<int>(v.size()) < stability) return false;
    const ExtRat& last = v.back();
    if (!last.finite()) return false;
    for (int i = 1; i < stability; ++i)
        if (!(v[v.size() - 1 - i] == last)) return false;
    return true;
}

// last `stability` entries equal (empty markers and finite values both count)
bool tail_stable(const std::vector<ExtRat>& v, int stability) {
    if (static_cast<int>(v.size()) < stability) return false;
    const ExtRat& last = v.back();
    if (last.is_pos_inf()) return false;
    for (int i = 1; i < stability; ++i)
        if (!(v[v.size() - 1 - i] == last)) return false;
    return true;
}

bool strictly_growing(const std::vector<ExtRat>& v) {
    if (v.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i] < v[i + 1])) return false;
    return true;
}

// sup image distance per scale over pairs of window points closer than the scale
std::vector<ExtRat> modulus_row(const MapDescriptor& f, const PointSet& win,
                                const std::vector<Rat>& scales) {
    // bucket by the first scale a pair qualifies for, then take suffix maxima;
    // the diagonal pair contributes 0 at every scale
    std::vector<ExtRat> bucket(scales.size(), ExtRat::neg_inf());
    std::vector<Point> images;
    images.reserve(win.size());
    for (const Point& p : win) images.push_back(f.apply(p));
    for (std::size_t i = 0; i < win.size(); ++i) {
        for (std::size_t j = i + 1; j < win.size(); ++j) {
            ExtRat d = f.domain->dist(win[i], win[j]);
            std::size_t k0 = scales.size();
            for (std::size_t k = 0; k < scales.size(); ++k) {
                if (d < ExtRat(scales[k])) {
                    k0 = k;
                    break;
                }
            }
            if (k0 == scales.size()) continue;
            ExtRat gap = f.codomain->dist(images[i], images[j]);
            bucket[k0] = max(bucket[k0], gap);
        }
    }
    std::vector<ExtRat> row(scales.size());
    ExtRat run{Rat(0)};
    for (std::size_t k = 0; k < scales.size(); ++k) {
        run = max(run, bucket[k]);
        row[k] = run;
    }
    return row;
}

// deepest domain norm landing inside each probed codomain ball, per window;
// a row that keeps growing with the window is the improperness signature
ProperReport properness_report(const MapDescriptor& f, const ProbeBudget& probe,
                               const std::vector<PointSet>& wins) {
    ProperReport rep;
    const std::vector<Rat>& rows = probe.scales;
    const Point ybase = f.codomain->basepoint();
    rep.pull.assign(rows.size(), std::vector<ExtRat>(wins.size(), ExtRat::neg_inf()));
    for (std::size_t c = 0; c < wins.size(); ++c) {
        for (const Point& x : wins[c]) {
            ExtRat nx = spaces::norm_from_base(*f.domain, x);
            ExtRat ny = f.codomain->dist(ybase, f.apply(x));
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (ny <= ExtRat(rows[r])) rep.pull[r][c] = max(rep.pull[r][c], nx);
        }
    }
    bool all_stable = true;
    std::optional<std::size_t> growing;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (tail_stable(rep.pull[r], probe.stability)) continue;
        all_stable = false;
        if (!growing && strictly_growing(rep.pull[r])) growing = r;
    }
    if (all_stable) {
        rep.outcome = ProperReport::Outcome::Proper;
    } else if (growing) {
        rep.outcome = ProperReport::Outcome::NotProper;
        const ExtRat& deep = rep.pull[*growing].back();
        for (const Point& x : wins.back()) {
            if (!(f.codomain->dist(ybase, f.apply(x)) <= ExtRat(rows[*growing]))) continue;
            if (spaces::norm_from_base(*f.domain, x) == deep) {
                rep.witness = x;
                break;
            }
        }
    } else {
        rep.outcome = ProperReport::Outcome::Inconclusive;
    }
    return rep;
}

}  // namespace

MapDescriptor identity_map(spaces::SpacePtr space) {
    return {"id", space, space, [](const Point& p) { return p; }};
}

MapDescriptor scale_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, Coord k) {
    return {"scale(" + std::to_string(k) + ")", std::move(domain), std::move(codomain),
            [k](const Point& p) {
                Point q = p;
                for (Coord& c : q) c *= k;
                return q;
            }};
}

MapDescriptor square_map(spaces::SpacePtr domain, spaces::SpacePtr codomain) {
    return {"square", std::move(domain), std::move(codomain), [](const Point& p) {
                Point q = p;
                for (Coord& c : q) c *= c;
                return q;
            }};
}

MapDescriptor floor_div_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, Coord k) {
    if (k < 1) throw Error(ErrorKind::InvalidParams, "floor-div divisor must be positive");
    return {"floor-div(" + std::to_string(k) + ")", std::move(domain), std::move(codomain),
            [k](const Point& p) {
                Point q = p;
                for (Coord& c : q) {
                    Coord quo = c / k;
                    if (c % k != 0 && c < 0) --quo;  // floor, not truncation
                    c = quo;
                }
                return q;
            }};
}

MapDescriptor project_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, int axis) {
    if (axis < 0) throw Error(ErrorKind::InvalidParams, "projection axis must be nonnegative");
    return {"project(" + std::to_string(axis) + ")", std::move(domain), std::move(codomain),
            [axis](const Point& p) {
                if (axis >= static_cast<int>(p.size()))
                    throw Error(ErrorKind::InvalidParams, "projection axis out of range");
                return Point{p[static_cast<std::size_t>(axis)]};
            }};
}

MapDescriptor constant_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, Point value) {
    return {"constant(" + point_str(value) + ")", std::move(domain), std::move(codomain),
            [value](const Point&) { return value; }};
}

MapDescriptor axis_embed_map(spaces::SpacePtr domain, spaces::SpacePtr codomain, int axis) {
    int d = codomain->dim();
    if (axis < 0 || axis >= d) throw Error(ErrorKind::InvalidParams, "embed axis out of range");
    return {"axis-embed(" + std::to_string(axis) + ")", std::move(domain), std::move(codomain),
            [axis, d](const Point& p) {
                if (p.size() != 1)
                    throw Error(ErrorKind::InvalidParams, "axis embedding expects line points");
                Point q(static_cast<std::size_t>(d), 0);
                q[static_cast<std::size_t>(axis)] = p[0];
                return q;
            }};
}

MapDescriptor diagonal_map(spaces::SpacePtr domain, spaces::SpacePtr codomain) {
    int d = codomain->dim();
    if (d < 1) throw Error(ErrorKind::InvalidParams, "diagonal needs a fixed-arity codomain");
    return {"diagonal", std::move(domain), std::move(codomain), [d](const Point& p) {
                if (p.size() != 1)
                    throw Error(ErrorKind::InvalidParams, "diagonal expects line points");
                return Point(static_cast<std::size_t>(d), p[0]);
            }};
}

MapDescriptor table_map(spaces::SpacePtr domain, spaces::SpacePtr codomain,
                        std::map<Point, Point> entries) {
    return {"table", std::move(domain), std::move(codomain),
            [entries = std::move(entries)](const Point& p) {
                auto it = entries.find(p);
                if (it == entries.end())
                    throw Error(ErrorKind::InvalidParams, "point missing from map table", p);
                return it->second;
            }};
}

MapDescriptor compose_maps(const MapDescriptor& outer, const MapDescriptor& inner) {
    auto fo = outer.apply;
    auto fi = inner.apply;
    return {"(" + outer.name + " after " + inner.name + ")", inner.domain, outer.codomain,
            [fo, fi](const Point& p) { return fo(fi(p)); }};
}

coarse::Entourage graph_of(const MapDescriptor& f, const Rat& window) {
    std::vector<std::pair<Point, Point>> pairs;
    for (const Point& x : f.domain->enumerate(window)) pairs.emplace_back(x, f.apply(x));
    return coarse::Entourage::explicit_pairs(std::move(pairs), "graph(" + f.name + ")");
}

PointSet preimage(const MapDescriptor& f, const SetExpr& target, const Rat& window) {
    PointSet out;
    for (const Point& x : f.domain->enumerate(window))
        if (target.contains(f.apply(x))) out.push_back(x);
    normalize(out);
    return out;
}

CoarseReport coarse_check(const MapDescriptor& f, const ProbeBudget& probe) {
    probe.validate();
    CoarseReport rep;
    const std::vector<Rat>& scales = probe.scales;

    std::vector<PointSet> wins;
    wins.reserve(probe.radii.size());
    for (const Rat& R : probe.radii) wins.push_back(f.domain->enumerate(R));
    for (const PointSet& win : wins) rep.table.push_back(modulus_row(f, win, scales));

    bool all_stable = true;
    std::optional<std::size_t> growing_scale;
    for (std::size_t k = 0; k < scales.size(); ++k) {
        std::vector<ExtRat> column;
        column.reserve(wins.size());
        for (const auto& row : rep.table) column.push_back(row[k]);
        if (tail_stable_finite(column, probe.stability)) continue;
        all_stable = false;
        if (!growing_scale && (strictly_growing(column) || column.back().is_pos_inf()))
            growing_scale = k;
    }

    for (std::size_t k = 0; k < scales.size(); ++k)
        rep.profile.push_back({scales[k], rep.table.back()[k]});

    rep.properness = properness_report(f, probe, wins);

    if (growing_scale) {
        rep.outcome = CoarseReport::Outcome::NotCoarse;
        rep.reason = CoarseReport::Reason::ModulusGrowth;
        rep.witness_scale = scales[*growing_scale];
        rep.witness_gap = rep.table.back()[*growing_scale];
        const PointSet& win = wins.back();
        std::vector<Point> images;
        images.reserve(win.size());
        for (const Point& p : win) images.push_back(f.apply(p));
        for (std::size_t i = 0; i < win.size() && !rep.witness_pair; ++i) {
            for (std::size_t j = i + 1; j < win.size(); ++j) {
                if (!(f.domain->dist(win[i], win[j]) < ExtRat(rep.witness_scale))) continue;
                if (f.codomain->dist(images[i], images[j]) == rep.witness_gap) {
                    rep.witness_pair = std::make_pair(win[i], win[j]);
                    break;
                }
            }
        }
        return rep;
    }
    if (!all_stable) {
        rep.outcome = CoarseReport::Outcome::Inconclusive;
        return rep;
    }
    switch (rep.properness.outcome) {
        case ProperReport::Outcome::Proper:
            rep.outcome = CoarseReport::Outcome::Coarse;
            break;
        case ProperReport::Outcome::NotProper:
            rep.outcome = CoarseReport::Outcome::NotCoarse;
            rep.reason = CoarseReport::Reason::Improper;
            break;
        case ProperReport::Outcome::Inconclusive:
            rep.outcome = CoarseReport::Outcome::Inconclusive;
            break;
    }
    return rep;
}

ScaleVerdict close_check(const MapDescriptor& f, const MapDescriptor& g, const ProbeBudget& probe) {
    probe.validate();
    std::vector<ExtRat> gaps;
    Point arg = f.domain->basepoint();
    ExtRat worst{Rat(0)};
    for (const Rat& W : probe.radii) {
        worst = ExtRat(Rat(0));
        arg = f.domain->basepoint();
        for (const Point& x : f.domain->enumerate(W)) {
            ExtRat gap = f.codomain->dist(f.apply(x), g.apply(x));
            if (gap > worst) {
                worst = gap;
                arg = x;
            }
        }
        gaps.push_back(worst);
    }
    if (tail_stable_finite(gaps, probe.stability))
        return ScaleVerdict::alike_within(gaps.back().value() + Rat(1));
    if (strictly_growing(gaps) || gaps.back().is_pos_inf())
        return ScaleVerdict::refuted_at(probe.max_radius(),
                                        Witness{arg, worst, "pointwise gap grows with the window"});
    return ScaleVerdict::inconclusive(probe.max_radius(), probe.max_scale());
}

bool MapCheckReport::ok() const {
    if (coarse.outcome != CoarseReport::Outcome::Coarse) return false;
    for (const PairCheck& p : pairs)
        if (p.applicable && !p.preserved) return false;
    for (const TargetCheck& t : targets)
        if (!t.bounded) return false;
    return true;
}

MapCheckReport asr_map_check(const MapDescriptor& f, const asr::Model& domain_model,
                             const asr::Model& image_model,
                             const std::vector<std::pair<SetExpr, SetExpr>>& pairs,
                             const std::vector<SetExpr>& bounded_targets, const ProbeBudget& probe) {
    probe.validate();
    if (image_model.exact())
        throw Error(ErrorKind::UnsupportedModel,
                    "image sets are window samples; the image model must be window-based");
    MapCheckReport rep;
    rep.coarse = coarse_check(f, probe);

    const Rat& W = probe.max_radius();
    for (const auto& [A, B] : pairs) {
        PairCheck pc;
        pc.domain_verdict = domain_model.alike(A, B);
        pc.applicable = pc.domain_verdict.alike();
        if (pc.applicable) {
            std::vector<Point> fa, fb;
            for (const Point& a : A.window_points(*f.domain, W)) fa.push_back(f.apply(a));
            for (const Point& b : B.window_points(*f.domain, W)) fb.push_back(f.apply(b));
            pc.image_verdict = image_model.alike(SetExpr::explicit_set(std::move(fa)),
                                                 SetExpr::explicit_set(std::move(fb)));
            pc.preserved = pc.image_verdict.alike();
        }
        rep.pairs.push_back(std::move(pc));
    }

    for (const SetExpr& S : bounded_targets) {
        TargetCheck tc;
        Point arg = f.domain->basepoint();
        for (const Rat& R : probe.radii) {
            ExtRat deep = ExtRat::neg_inf();
            for (const Point& x : f.domain->enumerate(R)) {
                if (!S.contains(f.apply(x))) continue;
                ExtRat nx = spaces::norm_from_base(*f.domain, x);
                if (nx > deep) {
                    deep = nx;
                    arg = x;
                }
            }
            tc.pull.push_back(deep);
        }
        tc.bounded = tail_stable(tc.pull, probe.stability);
        if (!tc.bounded && strictly_growing(tc.pull)) tc.witness = arg;
        rep.targets.push_back(std::move(tc));
    }
    return rep;
}

bool EquivalenceReport::ok() const {
    return f_report.outcome == CoarseReport::Outcome::Coarse &&
           g_report.outcome == CoarseReport::Outcome::Coarse && back_close.alike() &&
           forth_close.alike();
}

Rat EquivalenceReport::closeness_bound() const {
    return back_close.scale < forth_close.scale ? forth_close.scale : back_close.scale;
}

EquivalenceReport equivalence_check(const MapDescriptor& f, const MapDescriptor& g,
                                    const ProbeBudget& probe) {
    EquivalenceReport rep;
    rep.f_report = coarse_check(f, probe);
    rep.g_report = coarse_check(g, probe);
    rep.back_close = close_check(compose_maps(g, f), identity_map(f.domain), probe);
    rep.forth_close = close_check(compose_maps(f, g), identity_map(g.domain), probe);
    return rep;
}

EscapeWitness escape_witness(const spaces::Space& space, const Stream& xs, const Stream& ys,
                             int count, const ProbeBudget& probe, long long max_index) {
    probe.validate();
    if (count < 1 || max_index < count)
        throw Error(ErrorKind::InvalidParams, "escape witness needs a positive count within the horizon");
    const ExtRat top{probe.max_scale()};

    bool displacement_evidence = false;
    for (long long n = 1; n <= max_index; ++n) {
        if (space.dist(xs(n), ys(n)) > top) {
            displacement_evidence = true;
            break;
        }
    }
    if (!displacement_evidence)
        throw Error(ErrorKind::BoundedDisplacement,
                    "stream displacement never exceeds the probed scales");

    EscapeWitness w;
    long long k = 1;
    for (int i = 0; i < count; ++i) {
        w.indices.push_back(k);
        w.xs.push_back(xs(k));
        w.ys.push_back(ys(k));
        if (i + 1 == count) break;
        // next index: the whole tail from it on must clear the open ball of the
        // current index's radius around the current pair, on both streams
        const ExtRat rad{Rat(k)};
        const Point cx = xs(k), cy = ys(k);
        long long last_bad = k;
        for (long long n = k; n <= max_index; ++n) {
            Point xn = xs(n), yn = ys(n);
            bool hit = space.dist(xn, cx) < rad || space.dist(xn, cy) < rad ||
                       space.dist(yn, cx) < rad || space.dist(yn, cy) < rad;
            if (hit) last_bad = n;
        }
        if (last_bad >= max_index)
            throw Error(ErrorKind::InvalidParams, "index horizon exhausted before the tail cleared");
        k = last_bad + 1;
    }

    ExtRat margin{Rat(0)};
    auto side = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
        for (const Point& a : from) {
            ExtRat best = ExtRat::pos_inf();
            for (const Point& b : to) best = min(best, space.dist(a, b));
            margin = max(margin, best);
        }
    };
    side(w.xs, w.ys);
    side(w.ys, w.xs);
    w.defeat_margin = margin;
    w.verified = margin > top;
    return w;
}

std::vector<VariationEntry> higson_variation(const spaces::Space& space, const PairFunction& f,
                                             const coarse::Entourage& E,
                                             const std::vector<Rat>& radii) {
    if (radii.empty()) throw Error(ErrorKind::InvalidParams, "variation profile needs radii");
    std::vector<Rat> rs = radii;
    std::sort(rs.begin(), rs.end());

    // value variation and outermost endpoint norm, per entourage pair
    std::vector<std::pair<ExtRat, Rat>> samples;  // (endpoint norm, variation)
    auto record = [&](const Point& x, const Point& y) {
        ExtRat nx = spaces::norm_from_base(space, x);
        ExtRat ny = spaces::norm_from_base(space, y);
        auto [re1, im1] = f(x);
        auto [re2, im2] = f(y);
        Rat var = std::max(abs(re1 - re2), abs(im1 - im2));
        samples.emplace_back(max(nx, ny), var);
    };
    if (E.kind() == coarse::Entourage::Kind::ExplicitPairs) {
        for (const auto& [x, y] : E.pairs()) record(x, y);
    } else {
        Rat W = rs.back() + E.bound();
        PointSet win = space.enumerate(W);
        if (win.size() > 4000)
            throw Error(ErrorKind::CapExceeded, "variation window enumerates too many points");
        for (std::size_t i = 0; i < win.size(); ++i)
            for (std::size_t j = i + 1; j < win.size(); ++j)
                if (E.member(space, win[i], win[j])) record(win[i], win[j]);
    }

    std::vector<VariationEntry> out;
    for (const Rat& R : rs) {
        ExtRat sup{Rat(0)};
        for (const auto& [norm, var] : samples)
            if (norm >= ExtRat(R)) sup = max(sup, ExtRat(var));
        out.push_back({R, sup});
    }
    return out;
}

PairFunction pf_constant(Rat re, Rat im) {
    return [re, im](const Point&) { return std::make_pair(re, im); };
}

PairFunction pf_parity() {
    return [](const Point& p) {
        Coord s = 0;
        for (Coord c : p) s += c;
        Rat bit{((s % 2) + 2) % 2};
        return std::make_pair(bit, Rat(0));
    };
}

PairFunction pf_reciprocal() {
    return [](const Point& p) {
        Coord s = 0;
        for (Coord c : p) s += c < 0 ? -c : c;
        return std::make_pair(Rat(1, s + 1), Rat(0));
    };
}

}  // namespace ck::maps
