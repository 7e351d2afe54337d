#include "om/metrics.hpp"

#include "om/detail/flow.hpp"
#include "om/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace om {

namespace {

constexpr double kChainEps = 1e-9;

// ---------------------------------------------------------------------------
// Shared scaled-integer view of the trace masses: per trace coordinate, all
// masses of both sides multiplied by a common denominator.
// ---------------------------------------------------------------------------
struct ScaledMasses {
    std::vector<std::vector<BigInt>> x; // [coord][atom]
    std::vector<std::vector<BigInt>> y;
};

ScaledMasses scale_masses(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model) {
    ScaledMasses out;
    out.x.assign(model.trace_count, {});
    out.y.assign(model.trace_count, {});
    for (std::size_t s = 0; s < model.trace_count; ++s) {
        std::vector<Rat> column;
        for (std::size_t i = 0; i < x.size(); ++i) column.push_back(x.mass_of(i).coords[s]);
        for (std::size_t j = 0; j < y.size(); ++j) column.push_back(y.mass_of(j).coords[s]);
        const BigInt den = common_denominator(column);
        for (std::size_t i = 0; i < x.size(); ++i)
            out.x[s].push_back(scale_to_integer(x.mass_of(i).coords[s], den));
        for (std::size_t j = 0; j < y.size(); ++j)
            out.y[s].push_back(scale_to_integer(y.mass_of(j).coords[s], den));
    }
    return out;
}

} // namespace

double metric_DT(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model) {
    return bottleneck(x, y, model, WeightOrder::Trace).radius;
}

double metric_Dc(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model) {
    return bottleneck(x, y, model, WeightOrder::Group).radius;
}

// ---------------------------------------------------------------------------
// D^: least radius r >= covering radius such that every proper nonempty atom
// subset A satisfies mass(A) < mass(r-neighbourhood of A) strictly in every
// trace coordinate.  Per coordinate this is checked with one forced min cut
// per row: the minimal minimiser containing row i either exhibits a proper
// subset with nonpositive surplus (violation) or equals the full set, in
// which case every proper superset of {i} is strictly dominated.
// ---------------------------------------------------------------------------
namespace {

bool strictly_dominated_everywhere(const ScaledMasses& sm,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   std::size_t mx) {
    for (std::size_t s = 0; s < sm.x.size(); ++s) {
        for (std::size_t i = 0; i < mx; ++i) {
            const detail::ForcedCutResult r = detail::forced_min_surplus(sm.x[s], sm.y[s], edges, i);
            if (r.surplus > 0) continue;
            if (r.min_rows.size() < mx) return false;
            // Minimal minimiser is the full set: the full-set surplus is zero
            // at these radii, so every proper A containing i is strict.
            if (r.surplus < 0)
                fail(errc::invariant_violation,
                     "full-set surplus is negative at a covering radius");
        }
    }
    return true;
}

} // namespace

double metric_D_upper(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model) {
    const double cover = directed_hausdorff(y.support(), x.support());
    if (x.size() == 1) return cover;

    const DistanceMatrix cross = pairwise_distances(x.support(), y.support());
    std::vector<double> cands{cover};
    for (const auto& row : cross)
        for (double d : row)
            if (d > cover) cands.push_back(d);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    const ScaledMasses sm = scale_masses(x, y, model);
    auto strict_at = [&](double r) {
        const PairRelation rel = PairRelation::from_radius(cross, r);
        return strictly_dominated_everywhere(sm, rel.pairs, x.size());
    };

    if (!strict_at(cands.back())) return std::numeric_limits<double>::infinity();
    std::size_t lo = 0, hi = cands.size() - 1;
    if (strict_at(cands.front())) return cands.front();
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (strict_at(cands[mid])) hi = mid;
        else lo = mid;
    }
    return cands[hi];
}

// ---------------------------------------------------------------------------
// Disc metrics.  For a disc centre l and closed radius d, the x-atoms inside
// the disc must be trace- (resp. cone-) dominated by the y-atoms within
// d + r; the metric takes the worst such r over all centres and radii, in
// both directions.  Candidate radii are the sorted atom distances from l, so
// each centre costs two monotone prefix sweeps.
// ---------------------------------------------------------------------------
namespace {

struct SortedAtom {
    double dist;
    std::size_t idx;
};

std::vector<SortedAtom> sort_by_distance(const PlanarPoint& l, const PointSet& pts) {
    std::vector<SortedAtom> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) v[i] = {distance(l, pts[i]), i};
    std::sort(v.begin(), v.end(), [](const SortedAtom& a, const SortedAtom& b) {
        return a.dist < b.dist || (a.dist == b.dist && a.idx < b.idx);
    });
    return v;
}

bool geq_entrywise(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    for (std::size_t c = 0; c < a.size(); ++c)
        if (a[c] < b[c]) return false;
    return true;
}

bool geq_entrywise_int(const std::vector<Int>& a, const std::vector<Int>& b) {
    for (std::size_t c = 0; c < a.size(); ++c)
        if (a[c] < b[c]) return false;
    return true;
}

// Worst needed dilation at centre l in one direction, trace and cone order.
struct CentreNeed {
    double trace = 0.0;
    double cone = 0.0;
};

struct DirectionContext {
    const AtomicHom* from = nullptr;
    const AtomicHom* to = nullptr;
    // Scaled integer masses [coord][atom] of both sides.
    const std::vector<std::vector<BigInt>>* from_mass = nullptr;
    const std::vector<std::vector<BigInt>>* to_mass = nullptr;
    const ModelSpec* model = nullptr;
};

CentreNeed evaluate_centre(const PlanarPoint& l, const DirectionContext& ctx) {
    const auto da = sort_by_distance(l, ctx.from->support());
    const auto db = sort_by_distance(l, ctx.to->support());
    const std::size_t ma = da.size(), nb = db.size();
    const std::size_t coords = ctx.from_mass->size();

    CentreNeed need;

    // --- trace order: entrywise scaled-mass domination, two-pointer sweep.
    {
        std::vector<BigInt> cumA(coords, 0), cumB(coords, 0);
        std::size_t t = 0;
        for (std::size_t q = 0; q < ma; ++q) {
            for (std::size_t s = 0; s < coords; ++s) cumA[s] += (*ctx.from_mass)[s][da[q].idx];
            if (q + 1 < ma && da[q + 1].dist == da[q].dist) continue; // extend the tie run
            while (t < nb && !geq_entrywise(cumB, cumA)) {
                for (std::size_t s = 0; s < coords; ++s) cumB[s] += (*ctx.to_mass)[s][db[t].idx];
                ++t;
            }
            if (!geq_entrywise(cumB, cumA))
                fail(errc::invariant_violation, "trace totals cannot cover a disc prefix");
            if (t == 0) continue; // zero-mass prefix needs nothing
            need.trace = std::max(need.trace, db[t - 1].dist - da[q].dist);
        }
    }

    // --- cone order.
    const GroupSpec& spec = ctx.model->group;
    if (!spec.is_stagewise()) {
        // The cone is decided by the free part alone, so prefix sums of the
        // free coordinates admit the same two-pointer sweep.
        const std::size_t k = spec.free_rank();
        std::vector<Int> cumA(k, 0), cumB(k, 0);
        std::size_t t = 0;
        for (std::size_t q = 0; q < ma; ++q) {
            const auto& fa = (*ctx.from)[da[q].idx].cls.free;
            for (std::size_t c = 0; c < k; ++c) cumA[c] += fa[c];
            if (q + 1 < ma && da[q + 1].dist == da[q].dist) continue;
            while (t < nb && !geq_entrywise_int(cumB, cumA)) {
                const auto& fb = (*ctx.to)[db[t].idx].cls.free;
                for (std::size_t c = 0; c < k; ++c) cumB[c] += fb[c];
                ++t;
            }
            if (!geq_entrywise_int(cumB, cumA))
                fail(errc::invariant_violation, "cone totals cannot cover a disc prefix");
            if (t == 0) continue;
            need.cone = std::max(need.cone, db[t - 1].dist - da[q].dist);
        }
    } else {
        // Stagewise cone comparisons go through the limit order; the first
        // certified prefix wins, an undecided comparison aborts the metric.
        std::vector<GroupElement> cumB;
        cumB.reserve(nb);
        for (std::size_t tt = 0; tt < nb; ++tt) {
            const GroupElement& cls = (*ctx.to)[db[tt].idx].cls;
            cumB.push_back(tt == 0 ? cls : add(cumB.back(), cls, spec));
        }
        GroupElement cumA = zero_element(spec);
        std::size_t t = 0;
        for (std::size_t q = 0; q < ma; ++q) {
            cumA = add(cumA, (*ctx.from)[da[q].idx].cls, spec);
            if (q + 1 < ma && da[q + 1].dist == da[q].dist) continue;
            if (is_positive(cumA, spec) == Positivity::Zero) continue;
            while (t < nb) {
                switch (leq(cumA, cumB[t], spec)) {
                    case Ternary::True:
                        goto found;
                    case Ternary::Undecided:
                        fail(errc::undecided,
                             "cone comparison for a disc prefix is undecided at the stage cap");
                    case Ternary::False:
                        ++t;
                }
            }
            fail(errc::invariant_violation, "cone totals cannot cover a disc prefix");
        found:
            need.cone = std::max(need.cone, db[t].dist - da[q].dist);
        }
    }

    need.trace = std::max(need.trace, 0.0);
    need.cone = std::max(need.cone, 0.0);
    return need;
}

// ---------------------------------------------------------------------------
// Candidate disc centres.
// ---------------------------------------------------------------------------
void append_grid(std::vector<PlanarPoint>& out, const std::vector<PlanarPoint>& pts,
                 double pitch) {
    double lo_re = pts.front().re, hi_re = pts.front().re;
    double lo_im = pts.front().im, hi_im = pts.front().im;
    double diam = 0.0;
    for (const PlanarPoint& p : pts) {
        lo_re = std::min(lo_re, p.re);
        hi_re = std::max(hi_re, p.re);
        lo_im = std::min(lo_im, p.im);
        hi_im = std::max(hi_im, p.im);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            diam = std::max(diam, distance(pts[i], pts[j]));
    const double pad = std::max(diam, pitch);
    lo_re -= pad;
    hi_re += pad;
    lo_im -= pad;
    hi_im += pad;
    const auto steps = [&](double lo, double hi) {
        const double raw = std::ceil((hi - lo) / pitch) + 1.0;
        if (!(raw <= 4096.0))
            fail(errc::invalid_pitch, "disc grid would exceed 4096 centres per axis; increase the pitch");
        return static_cast<std::size_t>(raw);
    };
    const std::size_t nx = steps(lo_re, hi_re);
    const std::size_t ny = steps(lo_im, hi_im);
    if (nx * ny > 4'000'000)
        fail(errc::invalid_pitch, "disc grid would exceed 4e6 centres; increase the pitch");
    out.reserve(out.size() + nx * ny);
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy)
            out.push_back({lo_re + static_cast<double>(ix) * pitch,
                           lo_im + static_cast<double>(iy) * pitch});
}

std::optional<PlanarPoint> circumcentre(const PlanarPoint& a, const PlanarPoint& b,
                                        const PlanarPoint& c) {
    const double d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    const double scale = std::max({std::abs(a.re), std::abs(a.im), std::abs(b.re),
                                   std::abs(b.im), std::abs(c.re), std::abs(c.im), 1.0});
    if (std::abs(d) < 1e-12 * scale * scale) return std::nullopt;
    const double a2 = a.re * a.re + a.im * a.im;
    const double b2 = b.re * b.re + b.im * b.im;
    const double c2 = c.re * c.re + c.im * c.im;
    return PlanarPoint{(a2 * (b.im - c.im) + b2 * (c.im - a.im) + c2 * (a.im - b.im)) / d,
                       (a2 * (c.re - b.re) + b2 * (a.re - c.re) + c2 * (b.re - a.re)) / d};
}

struct Line {
    PlanarPoint origin;
    PlanarPoint dir;
};

Line bisector(const PlanarPoint& p, const PlanarPoint& q) {
    return Line{{0.5 * (p.re + q.re), 0.5 * (p.im + q.im)}, {p.im - q.im, q.re - p.re}};
}

std::optional<PlanarPoint> line_intersection(const Line& a, const Line& b) {
    const double det = a.dir.re * (-b.dir.im) - (-b.dir.re) * a.dir.im;
    const double norm = std::hypot(a.dir.re, a.dir.im) * std::hypot(b.dir.re, b.dir.im);
    if (std::abs(det) < 1e-12 * std::max(norm, 1e-300)) return std::nullopt;
    const double rx = b.origin.re - a.origin.re;
    const double ry = b.origin.im - a.origin.im;
    const double t = (rx * (-b.dir.im) - (-b.dir.re) * ry) / det;
    return PlanarPoint{a.origin.re + t * a.dir.re, a.origin.im + t * a.dir.im};
}

// Parameter of the intersection of the ray o + t*u with the bisector of
// (p, q), or nothing when (near-)parallel.
std::optional<double> ray_bisector_param(const PlanarPoint& o, const PlanarPoint& u,
                                         const PlanarPoint& p, const PlanarPoint& q) {
    const double wx = q.re - p.re, wy = q.im - p.im;
    const double den = 2.0 * (u.re * wx + u.im * wy);
    if (std::abs(den) < 1e-12 * std::max(1.0, std::hypot(wx, wy) * std::hypot(u.re, u.im)))
        return std::nullopt;
    const double c = (q.re * q.re + q.im * q.im) - (p.re * p.re + p.im * p.im);
    const double t = (c - 2.0 * (o.re * wx + o.im * wy)) / den;
    return t;
}

void append_analytic(std::vector<PlanarPoint>& out, const std::vector<PlanarPoint>& pts) {
    const std::size_t n = pts.size();
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) diam = std::max(diam, distance(pts[i], pts[j]));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.push_back({0.5 * (pts[i].re + pts[j].re), 0.5 * (pts[i].im + pts[j].im)});

    if (n <= 40) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    if (auto c = circumcentre(pts[i], pts[j], pts[k])) out.push_back(*c);
    }
    if (n > 20) return;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const Line la = bisector(pts[pairs[a].first], pts[pairs[a].second]);
            const Line lb = bisector(pts[pairs[b].first], pts[pairs[b].second]);
            if (auto z = line_intersection(la, lb)) out.push_back(*z);
        }

    // Pair rays: beyond one atom, directly away from another, the distance
    // difference of that pair is pinned at its maximum; probe the validity
    // intervals the remaining bisectors carve on the ray.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const PlanarPoint o = pts[i];
            const PlanarPoint u{pts[i].re - pts[j].re, pts[i].im - pts[j].im};
            const double ulen = std::hypot(u.re, u.im);
            if (ulen == 0.0) continue;
            std::vector<double> ts;
            for (const auto& [p, q] : pairs)
                if (auto t = ray_bisector_param(o, u, pts[p], pts[q]))
                    if (*t > 0) ts.push_back(*t);
            std::sort(ts.begin(), ts.end());
            auto push_param = [&](double t) {
                out.push_back({o.re + t * u.re, o.im + t * u.im});
            };
            double prev = 0.0;
            for (double t : ts) {
                push_param(0.5 * (prev + t));
                push_param(t);
                prev = t;
            }
            push_param(prev + 1.0 + diam / ulen);
        }
}

} // namespace

DiscMetrics disc_metrics(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model,
                         const DiscSettings& settings) {
    if (!(settings.pitch > 0.0) || !std::isfinite(settings.pitch))
        fail(errc::invalid_pitch, "grid pitch must be positive and finite");

    std::vector<PlanarPoint> pts = x.support().points();
    pts.insert(pts.end(), y.support().points().begin(), y.support().points().end());

    std::vector<PlanarPoint> centres;
    append_grid(centres, pts, settings.pitch);
    centres.insert(centres.end(), pts.begin(), pts.end());
    if (settings.exact) append_analytic(centres, pts);

    const ScaledMasses sm = scale_masses(x, y, model);
    DirectionContext fwd{&x, &y, &sm.x, &sm.y, &model};
    DirectionContext bwd{&y, &x, &sm.y, &sm.x, &model};

    DiscMetrics out;
    out.error_bound = 2.0 * settings.pitch;
    for (const PlanarPoint& l : centres) {
        const CentreNeed a = evaluate_centre(l, fwd);
        const CentreNeed b = evaluate_centre(l, bwd);
        out.d_T = std::max({out.d_T, a.trace, b.trace});
        out.d_c = std::max({out.d_c, a.cone, b.cone});
    }
    return out;
}

double metric_dT(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model,
                 const DiscSettings& settings) {
    return disc_metrics(x, y, model, settings).d_T;
}

double metric_dc(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model,
                 const DiscSettings& settings) {
    return disc_metrics(x, y, model, settings).d_c;
}

// ---------------------------------------------------------------------------
// Hub certification and the exact-matching interval.
// ---------------------------------------------------------------------------
HubResult has_hub(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model,
                  double tol, std::optional<double> Dc) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        fail(errc::invalid_option, "tolerance must be positive and finite");
    const PointSet& X = x.support();
    const PointSet& Y = y.support();
    const double dc = Dc ? *Dc : metric_Dc(x, y, model);

    HubResult res;
    if (hausdorff(X, Y) <= tol && eps_components(X, tol).size() == 1) {
        res.verdict = Ternary::True;
        res.condition = 1;
        res.detail = "supports coincide within tolerance and are chain-connected";
        return res;
    }

    std::vector<PlanarPoint> inter;
    for (const PlanarPoint& p : X.points())
        if (Y.dist_to(p) <= tol) inter.push_back(p);
    for (const PlanarPoint& q : Y.points())
        if (X.dist_to(q) <= tol) inter.push_back(q);

    if (!inter.empty()) {
        const bool inter_connected = eps_components(inter, tol).size() == 1;
        if (inter_connected) {
            // Covering surrogate: a common point whose dc-disc is filled by
            // the overlap region (sampled at half-tolerance pitch).
            const double pitch = tol / 2.0;
            const double cells = (2.0 * dc / pitch + 1.0);
            if (cells * cells <= 1e6) {
                for (const PlanarPoint& z : inter) {
                    bool covered = true;
                    for (double gx = z.re - dc; covered && gx <= z.re + dc + pitch / 2; gx += pitch)
                        for (double gy = z.im - dc; gy <= z.im + dc + pitch / 2; gy += pitch) {
                            const PlanarPoint g{gx, gy};
                            if (distance(g, z) > dc) continue;
                            double best = std::numeric_limits<double>::infinity();
                            for (const PlanarPoint& w : inter)
                                best = std::min(best, distance(g, w));
                            if (best > tol) {
                                covered = false;
                                break;
                            }
                        }
                    if (covered) {
                        res.verdict = Ternary::True;
                        res.condition = 2;
                        res.approximate = true;
                        res.detail = "connected overlap region covers a full routing disc (sampled)";
                        return res;
                    }
                }
            }
        }

        PointSet inter_set(inter, tol / 2.0);
        auto components_split = [&](const PointSet& S) {
            for (const IndexSet& comp : eps_components(S, tol)) {
                bool inside = true;
                double nearest = std::numeric_limits<double>::infinity();
                for (std::size_t i : comp) {
                    const double d = inter_set.dist_to(S[i]);
                    inside = inside && d <= tol;
                    nearest = std::min(nearest, d);
                }
                if (!inside && nearest <= dc) return false;
            }
            return true;
        };
        if (components_split(X) && components_split(Y)) {
            res.verdict = Ternary::True;
            res.condition = 3;
            res.detail = "every support component lies in the overlap or out of routing range";
            return res;
        }
    }

    if (set_distance(X, Y) > tol) {
        res.verdict = Ternary::True;
        res.condition = 4;
        res.detail = "supports are separated beyond the tolerance";
        return res;
    }

    res.detail = "no certifying condition applies";
    return res;
}

DceInterval dce_estimate(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model,
                         double tol, std::optional<double> Dc, std::optional<double> Dupper) {
    const double dc = Dc ? *Dc : metric_Dc(x, y, model);
    const double dup = Dupper ? *Dupper : metric_D_upper(x, y, model);

    DceInterval out;
    out.lower = dc;
    out.upper = std::min(2.0 * dc, dup);
    if (out.upper < out.lower - kChainEps)
        fail(errc::invariant_violation, "exact-matching upper estimate fell below its lower bound");
    out.upper = std::max(out.upper, out.lower);

    const auto certify = [&](const std::string& reason) {
        out.exact = true;
        out.upper = out.lower;
        out.reason = reason;
    };
    if (out.upper - out.lower <= 1e-12) {
        certify("interval-degenerate");
        return out;
    }
    if (set_distance(x.support(), y.support()) > tol) {
        certify("supports-separated");
        return out;
    }
    if (eps_components(x.support(), tol).size() == 1 ||
        eps_components(y.support(), tol).size() == 1) {
        certify("support-connected");
        return out;
    }
    const HubResult hub = has_hub(x, y, model, tol, dc);
    if (hub.verdict == Ternary::True) {
        certify("hub-" + std::to_string(hub.condition) + (hub.approximate ? "-sampled" : ""));
        return out;
    }
    out.reason = "estimate-only";
    return out;
}

MetricReport compute_metrics(const AtomicHom& x, const AtomicHom& y, const ModelSpec& model,
                             const DiscSettings& settings, double tol) {
    MetricReport r;
    r.D_T = metric_DT(x, y, model);
    r.D_c = metric_Dc(x, y, model);
    r.D_upper = metric_D_upper(x, y, model);
    const DiscMetrics dm = disc_metrics(x, y, model, settings);
    r.d_T = dm.d_T;
    r.d_c = dm.d_c;
    r.disc_error = dm.error_bound;
    r.grid_pitch = settings.pitch;
    r.exact_discs = settings.exact;
    r.hausdorff = hausdorff(x.support(), y.support());
    r.dce = dce_estimate(x, y, model, tol, r.D_c, r.D_upper);

    // Re-verify every order relation the report asserts before emitting it.
    auto require = [&](bool ok, const char* what) {
        if (!ok) fail(errc::invariant_violation, std::string("metric relation violated: ") + what);
    };
    require(r.D_T <= r.D_c + kChainEps, "trace bottleneck exceeds cone bottleneck");
    require(r.d_T <= r.d_c + kChainEps, "trace disc metric exceeds cone disc metric");
    require(r.d_c <= r.D_c + kChainEps, "disc metric exceeds cone bottleneck");
    require(r.dce.lower <= r.dce.upper + kChainEps, "exact-matching interval is inverted");
    require(r.D_c >= r.dce.lower - kChainEps && r.D_c <= r.dce.upper + kChainEps,
            "cone bottleneck left the exact-matching interval");

    bool faithful = true;
    for (std::size_t i = 0; i < x.size(); ++i) faithful = faithful && !weight_is_zero(x.mass_of(i));
    for (std::size_t j = 0; j < y.size(); ++j) faithful = faithful && !weight_is_zero(y.mass_of(j));
    if (faithful) {
        require(r.hausdorff <= r.d_T + kChainEps, "support distance exceeds the trace disc metric");
        require(r.hausdorff <= r.D_T + kChainEps, "support distance exceeds the trace bottleneck");
    }
    return r;
}

} // namespace om
