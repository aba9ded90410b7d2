#include "ck/asdim.hpp"

#include <algorithm>
#include <map>
#include <map>

namespace ck::asdim {

namespace {

long long floor_div_ll(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

bool member_meets(const spaces::Space& space, const SetExpr& member, const SetExpr& S,
                  const PointSet& s_window) {
    if (auto both = SetExpr::intersect(member, S)) return !both->empty();
    (void)space;
    for (const Point& p : s_window)
        if (member.contains(p)) return true;
    return false;
}

}  // namespace

int multiplicity(const spaces::Space& space, const Cover& c) {
    int best = 0;
    for (const Point& p : space.enumerate(c.window)) {
        int load = 0;
        for (const SetExpr& m : c.members)
            if (m.contains(p)) ++load;
        best = std::max(best, load);
    }
    return best;
}

bool covers_window(const spaces::Space& space, const Cover& c) {
    for (const Point& p : space.enumerate(c.window)) {
        bool hit = false;
        for (const SetExpr& m : c.members)
            if (m.contains(p)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

RefineResult refines(const spaces::Space& space, const Cover& fine, const Cover& coarse) {
    RefineResult res;
    res.ok = true;
    for (std::size_t i = 0; i < fine.members.size(); ++i) {
        PointSet pts = fine.members[i].window_points(space, fine.window);
        if (pts.empty()) {
            res.assignment.push_back(-1);
            continue;
        }
        int found = -1;
        for (std::size_t j = 0; j < coarse.members.size() && found < 0; ++j) {
            bool all = true;
            for (const Point& p : pts)
                if (!coarse.members[j].contains(p)) {
                    all = false;
                    break;
                }
            if (all) found = static_cast<int>(j);
        }
        res.assignment.push_back(found);
        if (found < 0) {
            res.ok = false;
            if (!res.stray) {
                res.stray = pts.front();
                res.stray_member = static_cast<int>(i);
            }
        }
    }
    return res;
}

bool s_relation(const spaces::Space& space, const Cover& c, const SetExpr& A, const SetExpr& B) {
    const PointSet aw = A.window_points(space, c.window);
    const PointSet bw = B.window_points(space, c.window);
    std::vector<char> meets_a(c.members.size()), meets_b(c.members.size());
    for (std::size_t j = 0; j < c.members.size(); ++j) {
        meets_a[j] = member_meets(space, c.members[j], A, aw);
        meets_b[j] = member_meets(space, c.members[j], B, bw);
    }
    auto absorbed = [&](const PointSet& side, const std::vector<char>& flag) {
        for (const Point& p : side) {
            bool hit = false;
            for (std::size_t j = 0; j < c.members.size() && !hit; ++j)
                hit = flag[j] && c.members[j].contains(p);
            if (!hit) return false;
        }
        return true;
    };
    return absorbed(aw, meets_b) && absorbed(bw, meets_a);
}

UBReport uniformly_bounded_check(const asr::Model& model, const std::vector<SetExpr>& family,
                                 const ProbeBudget& probe) {
    probe.validate();
    UBReport rep;
    if (family.empty()) {
        rep.outcome = UBReport::Outcome::Bounded;
        rep.bound = Rat(1);
        rep.note = "empty family";
        return rep;
    }
    if (const spaces::Space* sp = model.space_ptr()) {
        ExtRat widest{Rat(0)};
        for (std::size_t i = 0; i < family.size(); ++i) {
            ExtRat d = geom::diameter(*sp, family[i]);
            rep.diameters.push_back(d);
            if (!d.finite()) {
                rep.outcome = UBReport::Outcome::NotBounded;
                rep.offender = static_cast<int>(i);
                rep.note = "member of unbounded extent";
                return rep;
            }
            widest = max(widest, d);
        }
        rep.outcome = UBReport::Outcome::Bounded;
        rep.bound = widest.value() + Rat(1);
        return rep;
    }
    Rat widest(0);
    for (std::size_t i = 0; i < family.size(); ++i) {
        ScaleVerdict v = model.bounded(family[i]);
        rep.diameters.push_back(v.alike() ? ExtRat(v.scale) : ExtRat::pos_inf());
        if (v.refuted()) {
            rep.outcome = UBReport::Outcome::NotBounded;
            rep.offender = static_cast<int>(i);
            return rep;
        }
        if (v.inconclusive()) {
            rep.outcome = UBReport::Outcome::Inconclusive;
            rep.offender = static_cast<int>(i);
            rep.note = "member boundedness undecided";
            return rep;
        }
        widest = std::max(widest, v.scale);
    }
    rep.outcome = UBReport::Outcome::Bounded;
    rep.bound = widest + Rat(1);
    return rep;
}

Cover brick_cover(const spaces::Space& space, long long L, long long r, const Rat& window) {
    if (space.kind() != spaces::Space::Kind::Lattice)
        throw Error(ErrorKind::UnsupportedModel, "brick covers are built on lattices");
    const int d = space.dim();
    if (d < 1 || d > 2)
        throw Error(ErrorKind::InvalidParams,
                    "brick covers handle one or two axes; beyond that the staggered load "
                    "exceeds one more than the axis count");
    if (r < 0 || L < 1 || L < 4 * r)
        throw Error(ErrorKind::InvalidParams, "brick pitch must be at least four times the scale");
    if (d == 2 && L % 4 != 0)
        throw Error(ErrorKind::InvalidParams, "plane bricks need a pitch divisible by four");

    const long long M = window.ceil();
    Cover cov;
    cov.window = window;
    const long long k_lo = floor_div_ll(-M - r, L) - 1;
    const long long k_hi = floor_div_ll(M + r, L) + 1;
    for (long long k = k_lo; k <= k_hi; ++k) {
        const ExtRat x0{Rat(k * L - r)}, x1{Rat((k + 1) * L - 1 + r)};
        if (d == 1) {
            cov.members.push_back(SetExpr::box_union(1, {{{x0, x1}}}));
            continue;
        }
        const long long lift = (((k % 2) + 2) % 2) * (L / 2) + L / 4;
        const long long m_lo = floor_div_ll(-M - r - lift, L) - 1;
        const long long m_hi = floor_div_ll(M + r - lift, L) + 1;
        for (long long mm = m_lo; mm <= m_hi; ++mm) {
            const ExtRat y0{Rat(lift + mm * L - r)}, y1{Rat(lift + (mm + 1) * L - 1 + r)};
            cov.members.push_back(SetExpr::box_union(2, {{{x0, x1}, {y0, y1}}}));
        }
    }
    return cov;
}

bool DimCertificate::ok() const {
    if (entries.empty()) return false;
    for (const ScaleEntry& e : entries)
        if (!(e.covers && e.refines_ok && e.ub_ok && e.multiplicity <= claimed_dim + 1))
            return false;
    return true;
}

DimCertificate asdim_upper(const spaces::Space& space, const std::vector<Rat>& scales,
                           long long l_factor, const Rat& window, const ProbeBudget& probe) {
    probe.validate();
    if (scales.empty() || !(window > Rat(0)))
        throw Error(ErrorKind::InvalidParams, "certificate needs scales and a positive window");
    if (l_factor < 4) throw Error(ErrorKind::InvalidParams, "pitch factor must be at least 4");

    DimCertificate cert;
    cert.window = window;

    if (space.kind() == spaces::Space::Kind::Finite) {
        cert.claimed_dim = 0;
        cert.assumptions = "single member holding the whole finite space";
        SetExpr whole = SetExpr::explicit_set(space.enumerate(window));
        ExtRat diam = geom::diameter(space, whole);
        for (const Rat& r : scales) {
            Cover v;
            v.window = window;
            v.members = {whole};
            ScaleEntry e;
            e.r = r;
            e.L = 0;
            e.multiplicity = multiplicity(space, v);
            e.covers = covers_window(space, v);
            Cover u;
            u.window = window;
            for (const Point& p : space.enumerate(window))
                u.members.push_back(
                    SetExpr::explicit_set(geom::closed_ball(space, p, r, window)));
            e.refines_ok = refines(space, u, v).ok;
            e.ub_ok = diam.finite();
            if (diam.finite()) e.ub_bound = diam.value() + Rat(1);
            cert.entries.push_back(e);
            cert.covers.push_back(std::move(v));
        }
        return cert;
    }

    if (space.kind() != spaces::Space::Kind::Lattice)
        throw Error(ErrorKind::UnsupportedModel, "upper certificates cover lattices and finite spaces");

    cert.claimed_dim = space.dim();
    cert.assumptions = "staggered bricks at pitch factor " + std::to_string(l_factor) +
                       "; loads and refinement checked on the enumerated window";
    for (const Rat& r : scales) {
        if (!r.is_integer() || r.num() < 1)
            throw Error(ErrorKind::InvalidParams, "brick scales must be positive integers");
        const long long rl = r.num();
        const long long L = l_factor * rl;
        Cover v = brick_cover(space, L, rl, window);

        Cover u;
        u.window = window + r;
        for (const Point& p : space.enumerate(window))
            u.members.push_back(SetExpr::explicit_set(geom::closed_ball(space, p, r, window + r)));

        ScaleEntry e;
        e.r = r;
        e.L = L;
        e.multiplicity = multiplicity(space, v);
        e.covers = covers_window(space, v);
        e.refines_ok = refines(space, u, v).ok;
        ExtRat widest{Rat(0)};
        bool all_finite = true;
        for (const SetExpr& m : v.members) {
            ExtRat dm = geom::diameter(space, m);
            if (!dm.finite()) {
                all_finite = false;
                break;
            }
            widest = max(widest, dm);
        }
        e.ub_ok = all_finite;
        if (all_finite) e.ub_bound = widest.value() + Rat(1);
        cert.entries.push_back(e);
        cert.covers.push_back(std::move(v));
    }
    return cert;
}

namespace {

// coverage, member diameters, point load, and core-ball absorption,
// re-checked from scratch on the emitted cover
bool validate_lb(const spaces::Space& space, const PointSet& pts, const PointSet& core,
                 const std::vector<PointSet>& core_balls, const std::vector<PointSet>& cover,
                 const Rat& m, int n) {
    const ExtRat diam_cap{m};
    for (const PointSet& mem : cover) {
        if (mem.empty()) return false;
        for (const Point& p : mem)
            if (!contains(pts, p)) return false;
        for (std::size_t i = 0; i < mem.size(); ++i)
            for (std::size_t j = i + 1; j < mem.size(); ++j)
                if (space.dist(mem[i], mem[j]) > diam_cap) return false;
    }
    for (const Point& p : pts) {
        int load = 0;
        for (const PointSet& mem : cover)
            if (contains(mem, p)) ++load;
        if (load < 1 || load > n) return false;
    }
    for (std::size_t c = 0; c < core.size(); ++c) {
        bool absorbed = false;
        for (const PointSet& mem : cover) {
            bool whole = true;
            for (const Point& q : core_balls[c])
                if (!contains(mem, q)) {
                    whole = false;
                    break;
                }
            if (whole) {
                absorbed = true;
                break;
            }
        }
        if (!absorbed) return false;
    }
    return true;
}

// Exhaustive ball-to-member assignment. Members are unions of assigned balls
// and leftovers become singletons, which is complete for feasibility: any
// valid cover shrinks member-wise to this shape without raising point loads.
struct LBSearch {
    const spaces::Space& space;
    const std::vector<PointSet>& balls;
    ExtRat diam_cap;
    int n;
    long long budget;
    long long nodes = 0;
    bool exhausted = false;
    bool done = false;
    std::vector<PointSet> members;
    std::map<Point, int> load;

    bool fits(const PointSet& mem, const PointSet& ball) const {
        for (const Point& p : mem)
            for (const Point& q : ball)
                if (space.dist(p, q) > diam_cap) return false;
        return true;
    }

    void rec(std::size_t bi) {
        if (done || exhausted) return;
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        if (bi == balls.size()) {
            done = true;
            return;
        }
        const PointSet& ball = balls[bi];
        for (std::size_t mi = 0; mi < members.size() && !done && !exhausted; ++mi) {
            if (!fits(members[mi], ball)) continue;
            PointSet fresh;
            for (const Point& q : ball)
                if (!contains(members[mi], q)) fresh.push_back(q);
            bool roomy = true;
            for (const Point& q : fresh)
                if (load[q] + 1 > n) {
                    roomy = false;
                    break;
                }
            if (!roomy) continue;
            for (const Point& q : fresh) ++load[q];
            PointSet before = members[mi];
            members[mi] = set_union(members[mi], fresh);
            rec(bi + 1);
            if (done) return;
            members[mi] = std::move(before);
            for (const Point& q : fresh) --load[q];
        }
        if (done || exhausted) return;
        bool roomy = true;
        for (const Point& q : ball)
            if (load[q] + 1 > n) {
                roomy = false;
                break;
            }
        if (!roomy) return;
        for (const Point& q : ball) ++load[q];
        members.push_back(ball);
        rec(bi + 1);
        if (done) return;
        members.pop_back();
        for (const Point& q : ball) --load[q];
    }
};

}  // namespace

LowerBoundReport lower_bound_search(const spaces::Space& space, const SetExpr& region, const Rat& m,
                                    const Rat& r, int n, long long budget) {
    if (n < 1 || m < Rat(0) || r < Rat(0) || budget < 1)
        throw Error(ErrorKind::InvalidParams, "cover search needs a load cap, bounds and a budget");
    LowerBoundReport rep;
    PointSet pts = region.enumerate_finite();
    for (const Point& p : pts)
        if (space.dim() >= 0 && static_cast<int>(p.size()) != space.dim())
            throw Error(ErrorKind::InvalidParams, "region arity does not match the space");
    if (pts.empty()) {
        rep.outcome = LowerBoundReport::Outcome::Feasible;
        rep.validated = true;
        rep.note = "empty region";
        return rep;
    }
    const bool line = space.kind() == spaces::Space::Kind::Lattice && space.dim() == 1;
    if (pts.size() > (line ? 500u : 50u))
        throw Error(ErrorKind::CapExceeded, "region exceeds the exhaustive search cap");

    Rat reach(0);
    for (const Point& p : pts) {
        ExtRat np = spaces::norm_from_base(space, p);
        if (!np.finite())
            throw Error(ErrorKind::UnsupportedModel, "region reaches across an infinite gap");
        reach = std::max(reach, np.value());
    }
    reach += r;

    PointSet core;
    std::vector<PointSet> core_balls;
    for (const Point& p : pts) {
        PointSet ball = geom::closed_ball(space, p, r, reach);
        bool inside = true;
        for (const Point& q : ball)
            if (!contains(pts, q)) {
                inside = false;
                break;
            }
        if (!inside) continue;
        core.push_back(p);
        core_balls.push_back(std::move(ball));
    }
    rep.core = core;

    const ExtRat diam_cap{m};
    for (const PointSet& b : core_balls)
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                if (space.dist(b[i], b[j]) > diam_cap) {
                    rep.outcome = LowerBoundReport::Outcome::Infeasible;
                    rep.note = "a single core ball outspans the diameter bound";
                    return rep;
                }

    auto finish = [&](std::vector<PointSet> cover, const char* how) -> bool {
        PointSet covered;
        for (const PointSet& mem : cover)
            for (const Point& p : mem) covered.push_back(p);
        normalize(covered);
        for (const Point& p : pts)
            if (!contains(covered, p)) cover.push_back(PointSet{p});
        rep.cover = std::move(cover);
        rep.validated = validate_lb(space, pts, core, core_balls, rep.cover, m, n);
        if (!rep.validated) {
            rep.cover.clear();
            return false;
        }
        rep.outcome = LowerBoundReport::Outcome::Feasible;
        rep.note = how;
        return true;
    };

    if (static_cast<std::size_t>(n) >= pts.size()) {
        if (finish(core_balls, "core balls plus singletons")) return rep;
    }

    if (line && n == 1) {
        // overlapping core balls must share a member when only one layer is
        // allowed, so chains of balls within 2r collapse; the verdict is exact
        std::vector<std::pair<std::size_t, std::size_t>> chains;
        for (std::size_t c = 0; c < core.size(); ++c) {
            if (!chains.empty() &&
                !(space.dist(core[chains.back().second], core[c]) > ExtRat(r + r)))
                chains.back().second = c;
            else
                chains.emplace_back(c, c);
        }
        std::vector<PointSet> members;
        for (const auto& [a, b] : chains) {
            PointSet mem;
            for (std::size_t c = a; c <= b; ++c) mem = set_union(mem, core_balls[c]);
            members.push_back(std::move(mem));
        }
        for (const PointSet& mem : members)
            for (std::size_t i = 0; i < mem.size(); ++i)
                for (std::size_t j = i + 1; j < mem.size(); ++j)
                    if (space.dist(mem[i], mem[j]) > diam_cap) {
                        rep.outcome = LowerBoundReport::Outcome::Infeasible;
                        rep.note = "chained core balls outspan the diameter bound";
                        return rep;
                    }
        if (finish(std::move(members), "chained core balls plus singletons")) return rep;
    }

    if (line && n >= 2) {
        // two staggered families of pitch floor(m)+1 blocks; validation decides
        const long long bw = m.floor() + 1;
        if (bw >= 1) {
            std::vector<PointSet> members;
            auto blocks = [&](long long shift) {
                std::map<long long, PointSet> by_slot;
                for (const Point& p : pts) by_slot[floor_div_ll(p[0] - shift, bw)].push_back(p);
                for (auto& [slot, blk] : by_slot) members.push_back(std::move(blk));
            };
            blocks(0);
            blocks(bw / 2);
            if (finish(std::move(members), "two staggered block families")) return rep;
        }
    }

    LBSearch search{space, core_balls, diam_cap, n, budget, 0, false, false, {}, {}};
    search.rec(0);
    rep.nodes = search.nodes;
    if (search.done) {
        if (finish(std::move(search.members), "exhaustive ball assignment")) return rep;
        rep.outcome = LowerBoundReport::Outcome::Budget;
        rep.note = "search produced an assignment that failed validation";
        return rep;
    }
    if (search.exhausted) {
        rep.outcome = LowerBoundReport::Outcome::Budget;
        rep.note = "node budget exhausted";
        return rep;
    }
    rep.outcome = LowerBoundReport::Outcome::Infeasible;
    rep.note = "ball assignment search exhausted every branch";
    return rep;
}

Cover restrict_cover(const spaces::Space& space, const Cover& c, const SetExpr& Y) {
    Cover out;
    out.window = c.window;
    for (const SetExpr& m : c.members) {
        if (auto both = SetExpr::intersect(m, Y)) {
            if (!both->empty()) out.members.push_back(*both);
            continue;
        }
        std::vector<Point> pts;
        for (const Point& p : m.window_points(space, c.window))
            if (Y.contains(p)) pts.push_back(p);
        if (!pts.empty()) out.members.push_back(SetExpr::explicit_set(std::move(pts)));
    }
    return out;
}

std::vector<SetExpr> transport_family(const maps::MapDescriptor& f,
                                      const std::vector<SetExpr>& members, TransportDirection dir,
                                      const Rat& window) {
    std::vector<SetExpr> out;
    if (dir == TransportDirection::Image) {
        for (const SetExpr& m : members) {
            std::vector<Point> img;
            for (const Point& x : m.window_points(*f.domain, window)) img.push_back(f.apply(x));
            if (!img.empty()) out.push_back(SetExpr::explicit_set(std::move(img)));
        }
        return out;
    }
    const PointSet dom = f.domain->enumerate(window);
    for (const SetExpr& m : members) {
        std::vector<Point> pre;
        for (const Point& x : dom)
            if (m.contains(f.apply(x))) pre.push_back(x);
        if (!pre.empty()) out.push_back(SetExpr::explicit_set(std::move(pre)));
    }
    return out;
}

}  // namespace ck::asdim
