#ifndef GHWSM_SUBDIFF_HPP
#define GHWSM_SUBDIFF_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ivf.hpp"
#include "support.hpp"

namespace ghwsm {

// A gH-subdifferential set in one of three forms. All of them answer
// support queries; only the first two can enumerate members.
class SubdiffRep {
public:
    enum class Kind { explicit_box, singleton, support_oracle };

    static SubdiffRep box(IVector lower, IVector upper) {
        return SubdiffRep(Kind::explicit_box, IVecSet::box(std::move(lower), std::move(upper)));
    }
    static SubdiffRep singleton(IVector g) {
        return SubdiffRep(Kind::singleton, IVecSet::finite({std::move(g)}));
    }
    static SubdiffRep oracle(std::size_t n, SupportFn fn) {
        return SubdiffRep(Kind::support_oracle, IVecSet::oracle(n, std::move(fn)));
    }

    Kind kind() const { return kind_; }
    const IVecSet& set() const { return set_; }
    std::size_t dim() const { return set_.dim(); }
    ExtInterval support(std::span<const double> d) const { return support_value(set_, d); }
    const IVector& element() const { return set_.members().front(); }

private:
    SubdiffRep(Kind k, IVecSet s) : kind_(k), set_(std::move(s)) {}

    Kind kind_;
    IVecSet set_;
};

struct MembershipResult {
    bool member = true;
    double margin = std::numeric_limits<double>::infinity();
    std::optional<Vec> violated_at; // worst probe point or direction
};

// Subgradient inequality (x - x̄)^T ⊙ G ⪯ F(x) ⊖gH F(x̄) at probe points
// whose values are already known. Margin is the smallest endpoint slack.
inline MembershipResult is_subgradient_values(std::span<const double> xbar, const Interval& fxbar,
                                              const IVector& g, const std::vector<Vec>& probes,
                                              const std::vector<ExtInterval>& values,
                                              double slack = default_slack) {
    MembershipResult r;
    std::size_t worst = 0;
    Vec diff(xbar.size());
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (values[k].is_plus_inf()) continue;
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = probes[k][i] - xbar[i];
        const Interval lhs = special_product(diff, g);
        const Interval rhs = gh_difference(values[k].value(), fxbar);
        const double m = std::min(rhs.lo() - lhs.lo(), rhs.hi() - lhs.hi());
        if (m < r.margin) {
            r.margin = m;
            worst = k;
        }
    }
    if (r.margin < -slack) {
        r.member = false;
        r.violated_at = probes[worst];
    }
    return r;
}

template <IntervalFunction F>
MembershipResult is_subgradient(const F& f, std::span<const double> xbar, const IVector& g,
                                const std::vector<Vec>& probes, double slack = default_slack) {
    const ExtInterval fx = f.value(xbar);
    if (!fx.finite()) throw std::invalid_argument("is_subgradient: x̄ outside the effective domain");
    if (g.size() != xbar.size()) throw std::invalid_argument("is_subgradient: dimension mismatch");
    std::vector<ExtInterval> values;
    values.reserve(probes.size());
    for (const auto& p : probes) values.push_back(f.value(p));
    return is_subgradient_values(xbar, fx.value(), g, probes, values, slack);
}

// h^T ⊙ G ⪯ F_D(x̄)(h) for each sampled direction h.
template <IntervalFunction F>
MembershipResult is_subgradient_directional(const F& f, std::span<const double> xbar, const IVector& g,
                                            const std::vector<Vec>& directions, double slack = 1e-7) {
    if (g.size() != xbar.size()) throw std::invalid_argument("is_subgradient_directional: dimension mismatch");
    MembershipResult r;
    const Vec* worst = nullptr;
    for (const auto& h : directions) {
        const ExtInterval rhs = f.dir_deriv(xbar, h);
        if (rhs.is_plus_inf()) continue;
        const Interval lhs = special_product(h, g);
        const double m = std::min(rhs.value().lo() - lhs.lo(), rhs.value().hi() - lhs.hi());
        if (m < r.margin) {
            r.margin = m;
            worst = &h;
        }
    }
    if (r.margin < -slack) {
        r.member = false;
        r.violated_at = *worst;
    }
    return r;
}

struct EndpointSubdifferentials {
    Interval lower; // [left, right] derivative of the lower endpoint
    Interval upper;
};

namespace detail {

inline void require_1d_interior(const Ivf& f, double xbar) {
    if (f.dimension() != 1) throw std::invalid_argument("subdiff_1d: IVF must be one-dimensional");
    const double x[1] = {xbar};
    if (!f.domain().interior(x)) {
        throw std::invalid_argument("subdiff_1d: x̄ must be interior to the domain");
    }
}

inline Interval sorted(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

} // namespace detail

inline EndpointSubdifferentials endpoint_subdifferentials(const Ivf& f, double xbar) {
    detail::require_1d_interior(f, xbar);
    const double x[1] = {xbar};
    const double fwd[1] = {1.0};
    const double bwd[1] = {-1.0};
    const double rl = endpoint_dir_derivative(f, Endpoint::lower, x, fwd, f.domain());
    const double ll = -endpoint_dir_derivative(f, Endpoint::lower, x, bwd, f.domain());
    const double ru = endpoint_dir_derivative(f, Endpoint::upper, x, fwd, f.domain());
    const double lu = -endpoint_dir_derivative(f, Endpoint::upper, x, bwd, f.domain());
    return {detail::sorted(ll, rl), detail::sorted(lu, ru)};
}

// Intervals [min(g, h), max(g, h)] for g, h on uniform grids over the two
// endpoint subdifferentials.
inline std::vector<IVector> endpoint_pairings(const Ivf& f, double xbar, std::size_t per_side = 9) {
    const auto e = endpoint_subdifferentials(f, xbar);
    per_side = std::max<std::size_t>(per_side, 2);
    auto pick = [&](const Interval& a, std::size_t k) {
        return a.lo() + (a.hi() - a.lo()) * static_cast<double>(k) / static_cast<double>(per_side - 1);
    };
    std::vector<IVector> out;
    for (std::size_t i = 0; i < per_side; ++i) {
        for (std::size_t j = 0; j < per_side; ++j) {
            out.push_back(IVector{detail::sorted(pick(e.lower, i), pick(e.upper, j))});
        }
    }
    return out;
}

// One-dimensional subdifferential {G : (-1) ⊙ F_D(x̄)(-1) ⪯ G ⪯ F_D(x̄)(1)}.
// Collapses to a singleton when both corners coincide.
inline SubdiffRep subdiff_1d(const Ivf& f, double xbar) {
    detail::require_1d_interior(f, xbar);
    const double x[1] = {xbar};
    const double fwd[1] = {1.0};
    const double bwd[1] = {-1.0};
    const Interval up = dir_derivative(f, x, fwd);
    const Interval down = scalar_mul(-1.0, dir_derivative(f, x, bwd));
    double ulo = up.lo();
    double uhi = up.hi();
    for (double* u : {&ulo, &uhi}) {
        const double l = u == &ulo ? down.lo() : down.hi();
        if (l > *u) {
            if (l - *u > 1e-7 * std::max(1.0, std::abs(l))) {
                throw IvfError(IvfError::Kind::NotDifferentiable,
                               "subdiff_1d: one-sided derivatives are out of order; IVF is not convex here");
            }
            *u = l;
        }
    }
    const Interval upper(ulo, uhi);
    if (std::abs(down.lo() - upper.lo()) <= 1e-6 && std::abs(down.hi() - upper.hi()) <= 1e-6) {
        return SubdiffRep::singleton(IVector{upper});
    }
    return SubdiffRep::box(IVector{down}, IVector{upper});
}

inline SubdiffRep subdiff_singleton(const Ivf& f, std::span<const double> xbar) {
    try {
        return SubdiffRep::singleton(gh_gradient(f, xbar));
    } catch (const IvfError& e) {
        throw IvfError(IvfError::Kind::NotDifferentiable,
                       std::string(e.what()) + "; use the support-oracle representation instead");
    }
}

// Support function d ↦ F_D(x̄)(d) of the subdifferential.
template <IntervalFunction F>
SubdiffRep subdiff_support(const F& f, std::span<const double> xbar) {
    if (!f.value(xbar).finite()) {
        throw std::invalid_argument("subdiff_support: x̄ outside the effective domain");
    }
    Vec x(xbar.begin(), xbar.end());
    return SubdiffRep::oracle(f.dimension(), [f, x](std::span<const double> d) { return f.dir_deriv(x, d); });
}

} // namespace ghwsm

#endif // GHWSM_SUBDIFF_HPP
