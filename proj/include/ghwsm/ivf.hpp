#ifndef GHWSM_IVF_HPP
#define GHWSM_IVF_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "expr.hpp"
#include "geometry.hpp"
#include "interval.hpp"
#include "interval_vector.hpp"

namespace ghwsm {

using ScalarFn = std::function<double(std::span<const double>)>;
using DirDerivFn = std::function<Interval(std::span<const double>, std::span<const double>)>;

class IvfError : public std::runtime_error {
public:
    enum class Kind {
        OutsideDomain,
        EndpointOrder,
        Infeasible,
        NonsmoothUncertain,
        NotDifferentiable,
        NotContained,
    };
    IvfError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

enum class Endpoint { lower, upper };

inline const char* to_string(Endpoint e) { return e == Endpoint::lower ? "lower" : "upper"; }

// Interval-valued function F = [lower, upper] over a box domain.
//
// lower <= upper is validated at every evaluation rather than globally.
class Ivf {
public:
    Ivf(ScalarFn lower, ScalarFn upper, BoxSet domain, std::optional<DirDerivFn> analytic = {})
        : lower_(std::move(lower)), upper_(std::move(upper)), domain_(std::move(domain)),
          analytic_(std::move(analytic)) {}

    static Ivf from_expressions(std::string_view lower, std::string_view upper, BoxSet domain,
                                std::optional<DirDerivFn> analytic = {}) {
        const std::size_t n = domain.dim();
        auto lo = expr::parse(lower, n);
        auto hi = expr::parse(upper, n);
        Ivf f([lo](std::span<const double> x) { return lo.eval(x); },
              [hi](std::span<const double> x) { return hi.eval(x); }, std::move(domain),
              std::move(analytic));
        f.lower_src_ = lo.to_string();
        f.upper_src_ = hi.to_string();
        return f;
    }

    std::size_t dimension() const { return domain_.dim(); }
    const BoxSet& domain() const { return domain_; }
    const std::optional<DirDerivFn>& analytic_dir_derivative() const { return analytic_; }
    const std::string& lower_source() const { return lower_src_; }
    const std::string& upper_source() const { return upper_src_; }

    // Raw endpoint values; no domain or ordering checks.
    double endpoint(Endpoint e, std::span<const double> x) const {
        return e == Endpoint::lower ? lower_(x) : upper_(x);
    }
    const ScalarFn& endpoint_fn(Endpoint e) const { return e == Endpoint::lower ? lower_ : upper_; }

    Interval eval(std::span<const double> x) const {
        if (!domain_.contains(x)) throw IvfError(IvfError::Kind::OutsideDomain, "point outside IVF domain");
        const double lo = lower_(x);
        const double hi = upper_(x);
        if (!(lo <= hi)) {
            throw IvfError(IvfError::Kind::EndpointOrder,
                           "lower endpoint exceeds upper endpoint (" + std::to_string(lo) + " > " +
                               std::to_string(hi) + ")");
        }
        return {lo, hi};
    }

    ExtInterval value(std::span<const double> x) const { return eval(x); }
    ExtInterval dir_deriv(std::span<const double> x, std::span<const double> d) const;

    // Same endpoints with the analytic directional derivative dropped.
    Ivf without_analytic() const {
        Ivf g = *this;
        g.analytic_.reset();
        return g;
    }

private:
    ScalarFn lower_;
    ScalarFn upper_;
    BoxSet domain_;
    std::optional<DirDerivFn> analytic_;
    std::string lower_src_;
    std::string upper_src_;
};

inline Interval eval_ivf(const Ivf& f, std::span<const double> x) { return f.eval(x); }

namespace detail {

// One-sided derivative of g at x along unit u, from forward differences at
// h0, h0/10, h0/100 with two Richardson estimates that must agree. Steps
// shrink when a kink sits inside the first stencil.
inline double one_sided_unit(const ScalarFn& g, const BoxSet& region, std::span<const double> x,
                             std::span<const double> u) {
    const double tmax = region.max_step(x, u);
    if (!(tmax > 1e-12)) {
        throw IvfError(IvfError::Kind::Infeasible, "no feasible step along the direction");
    }
    const double gx = g(x);
    Vec y(x.size());
    auto diff = [&](double h) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + h * u[i];
        return (g(y) - gx) / h;
    };
    double h0 = std::min(1e-3, tmax);
    double last_gap = 0.0;
    for (int attempt = 0; attempt < 4; ++attempt, h0 *= 1e-2) {
        const double d0 = diff(h0);
        const double d1 = diff(h0 / 10.0);
        const double d2 = diff(h0 / 100.0);
        const double r1 = (10.0 * d1 - d0) / 9.0;
        const double r2 = (10.0 * d2 - d1) / 9.0;
        last_gap = std::abs(r1 - r2);
        if (last_gap <= 1e-4 * std::max(1.0, std::abs(r2))) return r2;
    }
    throw IvfError(IvfError::Kind::NonsmoothUncertain,
                   "nonsmooth-uncertain: difference quotients did not settle (gap " +
                       std::to_string(last_gap) + ")");
}

} // namespace detail

// One-sided directional derivative of a single endpoint; steps stay in `region`.
inline double endpoint_dir_derivative(const Ivf& f, Endpoint e, std::span<const double> x,
                                      std::span<const double> d, const BoxSet& region) {
    const double nd = norm2(d);
    if (nd == 0.0) return 0.0;
    Vec u(d.begin(), d.end());
    for (double& v : u) v /= nd;
    return nd * detail::one_sided_unit(f.endpoint_fn(e), region, x, u);
}

inline Interval numeric_dir_derivative(const Ivf& f, std::span<const double> x,
                                       std::span<const double> d, const BoxSet& region) {
    if (x.size() != f.dimension() || d.size() != f.dimension()) {
        throw std::invalid_argument("dir_derivative: dimension mismatch");
    }
    if (!region.contains(x)) throw IvfError(IvfError::Kind::OutsideDomain, "point outside region");
    const double dl = endpoint_dir_derivative(f, Endpoint::lower, x, d, region);
    const double du = endpoint_dir_derivative(f, Endpoint::upper, x, d, region);
    return {std::min(dl, du), std::max(dl, du)};
}

inline Interval numeric_dir_derivative(const Ivf& f, std::span<const double> x,
                                       std::span<const double> d) {
    return numeric_dir_derivative(f, x, d, f.domain());
}

// gH-directional derivative of a convex IVF: [min, max] of the endpoint
// one-sided derivatives. Uses the analytic form when the IVF carries one.
inline Interval dir_derivative(const Ivf& f, std::span<const double> x, std::span<const double> d) {
    if (const auto& a = f.analytic_dir_derivative()) {
        if (!f.domain().contains(x)) throw IvfError(IvfError::Kind::OutsideDomain, "point outside domain");
        return (*a)(x, d);
    }
    return numeric_dir_derivative(f, x, d);
}

inline ExtInterval Ivf::dir_deriv(std::span<const double> x, std::span<const double> d) const {
    return dir_derivative(*this, x, d);
}

inline IVector gh_gradient(const Ivf& f, std::span<const double> x) {
    const std::size_t n = f.dimension();
    std::vector<Interval> comps;
    comps.reserve(n);
    Vec e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double partial[2];
        for (Endpoint end : {Endpoint::lower, Endpoint::upper}) {
            double right = 0.0;
            double left = 0.0;
            try {
                e[i] = 1.0;
                right = endpoint_dir_derivative(f, end, x, e, f.domain());
                e[i] = -1.0;
                left = -endpoint_dir_derivative(f, end, x, e, f.domain());
                e[i] = 0.0;
            } catch (const IvfError& err) {
                throw IvfError(IvfError::Kind::NotDifferentiable,
                               std::string("not gH-differentiable here: ") + err.what());
            }
            if (std::abs(right - left) > 1e-5 * std::max(1.0, std::abs(right))) {
                throw IvfError(IvfError::Kind::NotDifferentiable,
                               "not gH-differentiable here: one-sided partials of the " +
                                   std::string(to_string(end)) + " endpoint differ along x" +
                                   std::to_string(i + 1));
            }
            partial[end == Endpoint::lower ? 0 : 1] = 0.5 * (right + left);
        }
        comps.emplace_back(std::min(partial[0], partial[1]), std::max(partial[0], partial[1]));
    }
    return IVector(std::move(comps));
}

struct ConvexityCounterexample {
    Endpoint endpoint;
    Vec x1;
    Vec x2;
    double lambda;
    double gap; // g(λx1+(1-λ)x2) - (λg(x1)+(1-λ)g(x2)), positive on violation
};

struct ConvexityResult {
    bool pass = true;
    std::size_t samples = 0;
    std::optional<ConvexityCounterexample> counterexample;
};

namespace detail {

inline Vec sample_box(const BoxSet& b, std::mt19937_64& rng) {
    Vec x(b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        std::uniform_real_distribution<double> u(b.lo()[i], b.hi()[i]);
        x[i] = b.lo()[i] == b.hi()[i] ? b.lo()[i] : u(rng);
    }
    return x;
}

} // namespace detail

// Sampled Jensen check on both endpoints. Opposite domain corners at λ = 1/2
// are tried before the random triples.
inline ConvexityResult convexity_check(const Ivf& f, std::size_t samples, std::uint64_t seed,
                                       double slack = 1e-9) {
    ConvexityResult res;
    const BoxSet& dom = f.domain();
    const std::size_t n = dom.dim();
    auto test = [&](const Vec& a, const Vec& b, double lam) {
        ++res.samples;
        Vec m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = lam * a[i] + (1.0 - lam) * b[i];
        for (Endpoint e : {Endpoint::lower, Endpoint::upper}) {
            const double lhs = f.endpoint(e, m);
            const double rhs = lam * f.endpoint(e, a) + (1.0 - lam) * f.endpoint(e, b);
            if (lhs > rhs + slack) {
                res.pass = false;
                res.counterexample = ConvexityCounterexample{e, a, b, lam, lhs - rhs};
                return false;
            }
        }
        return true;
    };

    const std::size_t corners = n < 16 ? (std::size_t{1} << n) : 0;
    for (std::size_t mask = 0; mask < corners / 2; ++mask) {
        Vec a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool bit = (mask >> i) & 1U;
            a[i] = bit ? dom.hi()[i] : dom.lo()[i];
            b[i] = bit ? dom.lo()[i] : dom.hi()[i];
        }
        if (!test(a, b, 0.5)) return res;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t k = 0; k < samples; ++k) {
        const Vec a = detail::sample_box(dom, rng);
        const Vec b = detail::sample_box(dom, rng);
        if (!test(a, b, unit(rng))) return res;
    }
    return res;
}

// Largest sampled ratio ||F(x) ⊖gH F(y)|| / ||x - y||; a lower bound on any
// gH-Lipschitz constant of F over its domain.
inline double lipschitz_estimate(const Ivf& f, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const Vec x = detail::sample_box(f.domain(), rng);
        const Vec y = detail::sample_box(f.domain(), rng);
        Vec diff(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
        const double len = norm2(diff);
        if (len < 1e-12) continue;
        best = std::max(best, interval_norm(gh_difference(f.eval(x), f.eval(y))) / len);
    }
    return best;
}

// F restricted to a feasible box S: F inside S, +∞ outside.
class RestrictedIvf {
public:
    RestrictedIvf(Ivf base, BoxSet feasible) : base_(std::move(base)), feasible_(std::move(feasible)) {
        if (!base_.domain().contains(feasible_)) {
            throw IvfError(IvfError::Kind::NotContained, "feasible set is not inside the IVF domain");
        }
    }

    const Ivf& base() const { return base_; }
    const BoxSet& feasible() const { return feasible_; }
    std::size_t dimension() const { return base_.dimension(); }

    ExtInterval value(std::span<const double> x) const {
        if (!feasible_.contains(x)) return ExtInterval::plus_inf();
        return base_.eval(x);
    }

    // +∞ unless d is tangent to S at x; otherwise the base derivative with
    // difference steps kept inside S.
    ExtInterval dir_deriv(std::span<const double> x, std::span<const double> d) const {
        if (!feasible_.contains(x)) {
            throw IvfError(IvfError::Kind::OutsideDomain, "F_o directional derivative outside its domain");
        }
        if (!tangent_cone(feasible_, x).contains(d)) return ExtInterval::plus_inf();
        if (norm2(d) == 0.0) return Interval{};
        if (base_.analytic_dir_derivative()) return dir_derivative(base_, x, d);
        return numeric_dir_derivative(base_, x, d, feasible_);
    }

private:
    Ivf base_;
    BoxSet feasible_;
};

inline RestrictedIvf restricted(const Ivf& f, const BoxSet& s) { return RestrictedIvf(f, s); }

inline ExtInterval dir_derivative(const RestrictedIvf& f, std::span<const double> x,
                                  std::span<const double> d) {
    return f.dir_deriv(x, d);
}

// Anything with an extended value and directional derivative, i.e. Ivf or F_o.
template <class F>
concept IntervalFunction = requires(const F& f, std::span<const double> x) {
    { f.value(x) } -> std::convertible_to<ExtInterval>;
    { f.dir_deriv(x, x) } -> std::convertible_to<ExtInterval>;
    { f.dimension() } -> std::convertible_to<std::size_t>;
};

} // namespace ghwsm

#endif // GHWSM_IVF_HPP
