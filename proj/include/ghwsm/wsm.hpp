#ifndef GHWSM_WSM_HPP
#define GHWSM_WSM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "ivf.hpp"
#include "subdiff.hpp"
#include "support.hpp"

namespace ghwsm {

class WsmError : public std::runtime_error {
public:
    enum class Kind { Containment, NotConvex, BadAlpha };
    WsmError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct WsmProblem {
    Ivf f;
    BoxSet s;
    BoxSet sbar;
    double alpha = 1.0;
    std::size_t grid = 33;
    std::uint64_t seed = 1;

    WsmProblem with_alpha(double a) const {
        WsmProblem p = *this;
        p.alpha = a;
        return p;
    }
};

struct WsmOptions {
    double tol = 1e-7;
    std::size_t directions = 128;
    std::size_t max_grid_points = 40000;
    std::size_t convexity_samples = 2000;
    std::size_t projection_pairs = 256;
    bool require_convex = true;
};

struct WsmReport {
    std::string checker;
    bool holds = true;
    double worst_margin = 0.0;
    Vec witness_point; // x (or y for dual-f)
    Vec witness_aux;   // x̄, direction or subgradient, depending on the checker
    std::size_t samples = 0;
    std::size_t grid_s = 0; // effective points per axis actually used
    std::size_t grid_sbar = 0;
};

// Grids and directions shared by every checker for one problem.
struct WsmSamples {
    std::size_t per_axis_s = 0;
    std::size_t per_axis_sbar = 0;
    std::vector<Vec> s_grid;
    std::vector<Vec> sbar_grid;
    std::vector<Vec> directions;
};

namespace detail {

inline std::size_t capped_density(const BoxSet& b, std::size_t want, std::size_t cap) {
    std::size_t k = std::max<std::size_t>(want, 2);
    while (k > 2 && b.grid_size(k) > cap) --k;
    return k;
}

// Running minimum with a witness; strict comparison keeps the first hit.
struct MarginTracker {
    double worst = std::numeric_limits<double>::infinity();
    Vec point;
    Vec aux;
    std::size_t samples = 0;

    void offer(double m, const Vec& p, const Vec& a) {
        ++samples;
        if (m < worst) {
            worst = m;
            point = p;
            aux = a;
        }
    }
};

inline WsmReport finish(const char* name, const MarginTracker& t, const WsmSamples& smp, double tol) {
    WsmReport r;
    r.checker = name;
    r.worst_margin = std::isinf(t.worst) ? 0.0 : t.worst;
    r.holds = r.worst_margin >= -tol;
    r.witness_point = t.point;
    r.witness_aux = t.aux;
    r.samples = t.samples;
    r.grid_s = smp.per_axis_s;
    r.grid_sbar = smp.per_axis_sbar;
    return r;
}

inline Vec normalized(Vec v) {
    const double len = norm2(v);
    if (len > 0.0) {
        for (double& x : v) x /= len;
    }
    return v;
}

} // namespace detail

inline void validate(const WsmProblem& p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
        throw WsmError(WsmError::Kind::BadAlpha, "alpha must be a positive finite real");
    }
    if (p.s.dim() != p.f.dimension() || p.sbar.dim() != p.f.dimension()) {
        throw WsmError(WsmError::Kind::Containment, "S, Sbar and the IVF domain differ in dimension");
    }
    if (!p.f.domain().contains(p.s)) throw WsmError(WsmError::Kind::Containment, "S is not inside the IVF domain");
    if (!p.s.contains(p.sbar)) throw WsmError(WsmError::Kind::Containment, "Sbar is not inside S");
}

// Containment and convexity guards. Returns the convexity result so callers
// running in warning mode can report it.
inline ConvexityResult run_guards(const WsmProblem& p, const WsmOptions& o) {
    validate(p);
    ConvexityResult c = convexity_check(p.f, o.convexity_samples, p.seed);
    if (!c.pass && o.require_convex) {
        const auto& ce = *c.counterexample;
        throw WsmError(WsmError::Kind::NotConvex,
                       std::string("the ") + to_string(ce.endpoint) +
                           " endpoint fails the sampled convexity check (Jensen gap " +
                           std::to_string(ce.gap) + ")");
    }
    return c;
}

inline WsmSamples make_samples(const WsmProblem& p, const WsmOptions& o) {
    WsmSamples s;
    s.per_axis_s = detail::capped_density(p.s, p.grid, o.max_grid_points);
    s.per_axis_sbar = detail::capped_density(p.sbar, p.grid, o.max_grid_points);
    s.s_grid = p.s.grid(s.per_axis_s);
    s.sbar_grid = p.sbar.grid(s.per_axis_sbar);
    s.directions = sample_directions(p.f.dimension(), o.directions, p.seed);
    return s;
}

// F(x̄) ⊕ α dist(x, S̄) ⪯ F(x) for all grid pairs. The inequality must hold
// for every x̄, so each endpoint of F(x̄) is replaced by its grid maximum.
inline WsmReport check_definition(const WsmProblem& p, const WsmSamples& smp, const WsmOptions& o) {
    double sup_lo = -std::numeric_limits<double>::infinity();
    double sup_hi = sup_lo;
    Vec arg_lo, arg_hi;
    for (const auto& xb : smp.sbar_grid) {
        const Interval v = p.f.eval(xb);
        if (v.lo() > sup_lo) sup_lo = v.lo(), arg_lo = xb;
        if (v.hi() > sup_hi) sup_hi = v.hi(), arg_hi = xb;
    }
    detail::MarginTracker t;
    for (const auto& x : smp.s_grid) {
        const Interval v = p.f.eval(x);
        const double ad = p.alpha * dist(x, p.sbar);
        const double ml = v.lo() - sup_lo - ad;
        const double mh = v.hi() - sup_hi - ad;
        t.offer(std::min(ml, mh), x, ml <= mh ? arg_lo : arg_hi);
    }
    WsmReport r = detail::finish("definition", t, smp, o.tol);
    r.samples = smp.s_grid.size() * smp.sbar_grid.size();
    return r;
}

// α dist(d, T_S̄(x)) ⪯ (F_o)_D(x)(d) over x in the S̄ grid.
inline WsmReport check_primal(const WsmProblem& p, const WsmSamples& smp, const WsmOptions& o) {
    const RestrictedIvf fo = restricted(p.f, p.s);
    detail::MarginTracker t;
    for (const auto& x : smp.sbar_grid) {
        const OrthantCone tan = tangent_cone(p.sbar, x);
        for (const auto& d : smp.directions) {
            const ExtInterval rhs = fo.dir_deriv(x, d);
            if (rhs.is_plus_inf()) {
                ++t.samples;
                continue;
            }
            t.offer(rhs.value().lo() - p.alpha * dist_to_cone(d, tan), x, d);
        }
    }
    return detail::finish("primal", t, smp, o.tol);
}

// αB ∩ N_S̄(x) ⊆ ∂F_o(x), checked once through support values and once by
// testing sampled members of the left side against the subgradient inequality.
inline WsmReport check_dual_normal_cone(const WsmProblem& p, const WsmSamples& smp, const WsmOptions& o) {
    const RestrictedIvf fo = restricted(p.f, p.s);
    detail::MarginTracker t;

    for (const auto& x : smp.sbar_grid) {
        const OrthantCone nc = normal_cone(p.sbar, x);
        for (const auto& d : smp.directions) {
            const ExtInterval rhs = fo.dir_deriv(x, d);
            if (rhs.is_plus_inf()) {
                ++t.samples;
                continue;
            }
            t.offer(rhs.value().lo() - cone_ball_support(nc, p.alpha, d), x, d);
        }
    }

    std::vector<ExtInterval> probe_vals;
    probe_vals.reserve(smp.s_grid.size());
    for (const auto& y : smp.s_grid) probe_vals.push_back(fo.value(y));

    auto test_point = [&](const Vec& xb, const Vec& z) {
        const auto m = is_subgradient_values(xb, p.f.eval(xb), IVector::degenerate(z), smp.s_grid,
                                             probe_vals, o.tol);
        t.offer(m.margin, xb, z);
    };

    for (const auto& x : smp.sbar_grid) {
        const OrthantCone nc = normal_cone(p.sbar, x);
        std::vector<Vec> zs{Vec(x.size(), 0.0)};
        for (auto r : nc.extreme_rays()) {
            for (double& v : r) v *= p.alpha;
            zs.push_back(std::move(r));
        }
        if (!nc.trivial()) {
            for (const auto& d : smp.directions) {
                Vec z = detail::normalized(nc.project(d));
                if (norm2(z) == 0.0) continue;
                for (double& v : z) v *= p.alpha;
                zs.push_back(std::move(z));
            }
        }
        for (const auto& z : zs) test_point(x, z);
    }

    // y - P(y) always lies in the normal cone at P(y).
    std::vector<std::size_t> outside;
    for (std::size_t k = 0; k < smp.s_grid.size(); ++k) {
        if (dist(smp.s_grid[k], p.sbar) > 0.0) outside.push_back(k);
    }
    const std::size_t stride = std::max<std::size_t>(1, outside.size() / std::max<std::size_t>(o.projection_pairs, 1));
    for (std::size_t j = 0; j < outside.size(); j += stride) {
        const Vec& y = smp.s_grid[outside[j]];
        const Vec proj = project(y, p.sbar);
        Vec z(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) z[i] = y[i] - proj[i];
        z = detail::normalized(std::move(z));
        for (double& v : z) v *= p.alpha;
        test_point(proj, z);
    }
    return detail::finish("dual-b", t, smp, o.tol);
}

// α‖d‖ ⪯ F_D(x)(d) for d in T_S(x) ∩ N_S̄(x).
inline WsmReport check_dual_e(const WsmProblem& p, const WsmSamples& smp, const WsmOptions& o) {
    const RestrictedIvf fo = restricted(p.f, p.s);
    detail::MarginTracker t;
    for (const auto& x : smp.sbar_grid) {
        const OrthantCone c = intersect(tangent_cone(p.s, x), normal_cone(p.sbar, x));
        if (c.trivial()) {
            ++t.samples;
            continue;
        }
        std::vector<Vec> ds = c.extreme_rays();
        for (const auto& d : smp.directions) {
            Vec v = detail::normalized(c.project(d));
            if (norm2(v) > 0.0) ds.push_back(std::move(v));
        }
        for (const auto& d : ds) {
            const ExtInterval rhs = fo.dir_deriv(x, d);
            if (rhs.is_plus_inf()) {
                ++t.samples;
                continue;
            }
            t.offer(rhs.value().lo() - p.alpha * norm2(d), x, d);
        }
    }
    return detail::finish("dual-e", t, smp, o.tol);
}

// α dist(y, S̄) ⪯ F_D(p)(y - p) with p the projection of y onto S̄.
inline WsmReport check_dual_f(const WsmProblem& p, const WsmSamples& smp, const WsmOptions& o) {
    const RestrictedIvf fo = restricted(p.f, p.s);
    detail::MarginTracker t;
    for (const auto& y : smp.s_grid) {
        const Vec proj = project(y, p.sbar);
        Vec v(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i] - proj[i];
        const double len = norm2(v);
        if (len == 0.0) {
            ++t.samples;
            continue;
        }
        const ExtInterval rhs = fo.dir_deriv(proj, v);
        if (rhs.is_plus_inf()) {
            ++t.samples;
            continue;
        }
        t.offer(rhs.value().lo() - p.alpha * len, y, proj);
    }
    return detail::finish("dual-f", t, smp, o.tol);
}

inline const std::vector<std::string>& checker_names() {
    static const std::vector<std::string> names{"definition", "primal", "dual-b", "dual-e", "dual-f"};
    return names;
}

inline WsmReport run_checker(const std::string& name, const WsmProblem& p, const WsmSamples& smp,
                             const WsmOptions& o) {
    if (name == "definition") return check_definition(p, smp, o);
    if (name == "primal") return check_primal(p, smp, o);
    if (name == "dual-b") return check_dual_normal_cone(p, smp, o);
    if (name == "dual-e") return check_dual_e(p, smp, o);
    if (name == "dual-f") return check_dual_f(p, smp, o);
    throw std::invalid_argument("unknown checker '" + name + "'");
}

// Single-call forms that run the guards and build their own samples.
inline WsmReport check_definition(const WsmProblem& p, const WsmOptions& o = {}) {
    run_guards(p, o);
    return check_definition(p, make_samples(p, o), o);
}
inline WsmReport check_primal(const WsmProblem& p, const WsmOptions& o = {}) {
    run_guards(p, o);
    return check_primal(p, make_samples(p, o), o);
}
inline WsmReport check_dual_normal_cone(const WsmProblem& p, const WsmOptions& o = {}) {
    run_guards(p, o);
    return check_dual_normal_cone(p, make_samples(p, o), o);
}
inline WsmReport check_dual_e(const WsmProblem& p, const WsmOptions& o = {}) {
    run_guards(p, o);
    return check_dual_e(p, make_samples(p, o), o);
}
inline WsmReport check_dual_f(const WsmProblem& p, const WsmOptions& o = {}) {
    run_guards(p, o);
    return check_dual_f(p, make_samples(p, o), o);
}

inline std::vector<WsmReport> run_all(const WsmProblem& p, const WsmOptions& o = {}) {
    run_guards(p, o);
    const WsmSamples smp = make_samples(p, o);
    std::vector<WsmReport> out;
    for (const auto& n : checker_names()) out.push_back(run_checker(n, p, smp, o));
    return out;
}

inline bool concordant(const std::vector<WsmReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [&](const WsmReport& r) { return r.holds == reports.front().holds; });
}

struct ModulusResult {
    double modulus = 0.0;
    std::optional<WsmReport> failure_above; // definition report just above the estimate
};

// Largest grid-feasible α by bisection on the definition checker.
inline ModulusResult estimate_modulus(const WsmProblem& p, const WsmOptions& o = {}) {
    WsmProblem q = p.with_alpha(1.0);
    run_guards(q, o);
    const WsmSamples smp = make_samples(q, o);
    auto run = [&](double a) { return check_definition(q.with_alpha(a), smp, o); };

    ModulusResult res;
    WsmReport low = run(1e-6);
    if (!low.holds) {
        res.failure_above = low;
        return res;
    }
    double lo = 1e-6;
    double hi = std::max(2.0 * lipschitz_estimate(p.f, 2000, p.seed), 1.0);
    WsmReport at_hi = run(hi);
    for (int k = 0; at_hi.holds && k < 60; ++k) {
        lo = hi;
        hi *= 2.0;
        at_hi = run(hi);
    }
    if (at_hi.holds) {
        res.modulus = hi;
        return res;
    }
    while (hi - lo >= 1e-3) {
        const double mid = 0.5 * (lo + hi);
        WsmReport r = run(mid);
        if (r.holds) {
            lo = mid;
        } else {
            hi = mid;
            at_hi = std::move(r);
        }
    }
    res.modulus = lo;
    res.failure_above = at_hi;
    return res;
}

} // namespace ghwsm

#endif // GHWSM_WSM_HPP
