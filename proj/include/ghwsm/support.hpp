#ifndef GHWSM_SUPPORT_HPP
#define GHWSM_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "interval.hpp"
#include "interval_vector.hpp"

namespace ghwsm {

using SupportFn = std::function<ExtInterval(std::span<const double>)>;

// Subset of I(R)^n given as a finite list, an interval box {G : L ⪯ G ⪯ U}
// (componentwise), or only through its support function.
class IVecSet {
public:
    enum class Kind { finite, interval_box, oracle };

    static IVecSet finite(std::vector<IVector> members) {
        if (members.empty()) throw std::invalid_argument("IVecSet: finite set must be nonempty");
        const std::size_t n = members.front().size();
        for (const auto& m : members) {
            if (m.size() != n) throw std::invalid_argument("IVecSet: members differ in length");
        }
        IVecSet s(Kind::finite, n);
        s.members_ = std::move(members);
        return s;
    }

    static IVecSet box(IVector lower, IVector upper) {
        if (lower.size() != upper.size()) throw std::invalid_argument("IVecSet: corner lengths differ");
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (!dominated(lower[i], upper[i], 0.0)) {
                throw std::invalid_argument("IVecSet: lower corner does not dominate-below upper corner");
            }
        }
        IVecSet s(Kind::interval_box, lower.size());
        s.members_ = {std::move(lower), std::move(upper)};
        return s;
    }

    static IVecSet oracle(std::size_t n, SupportFn fn) {
        if (n == 0) throw std::invalid_argument("IVecSet: dimension must be positive");
        IVecSet s(Kind::oracle, n);
        s.oracle_ = std::move(fn);
        return s;
    }

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    const std::vector<IVector>& members() const { return require(Kind::finite), members_; }
    const IVector& lower_corner() const { return require(Kind::interval_box), members_[0]; }
    const IVector& upper_corner() const { return require(Kind::interval_box), members_[1]; }
    const SupportFn& oracle_fn() const { return require(Kind::oracle), oracle_; }

    // Membership of an interval vector in a box.
    bool box_contains(const IVector& g, double slack = default_slack) const {
        require(Kind::interval_box);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!dominated(members_[0][i], g[i], slack) || !dominated(g[i], members_[1][i], slack)) return false;
        }
        return true;
    }

private:
    IVecSet(Kind k, std::size_t n) : kind_(k), dim_(n) {}

    void require(Kind k) const {
        if (kind_ != k) throw std::logic_error("IVecSet: wrong representation for this accessor");
    }

    Kind kind_;
    std::size_t dim_;
    std::vector<IVector> members_;
    SupportFn oracle_;
};

// ψ*_S(x) = sup over Â in S of x^T ⊙ Â.
inline ExtInterval support_value(const IVecSet& s, std::span<const double> x) {
    if (x.size() != s.dim()) throw std::invalid_argument("support_value: dimension mismatch");
    switch (s.kind()) {
    case IVecSet::Kind::finite: {
        std::vector<Interval> prods;
        prods.reserve(s.members().size());
        for (const auto& m : s.members()) prods.push_back(special_product(x, m));
        return sup_family(prods);
    }
    case IVecSet::Kind::interval_box: {
        // Each component picks its own maximizer; the choices are compatible,
        // so both sums are attained by one member.
        const IVector& l = s.lower_corner();
        const IVector& u = s.upper_corner();
        double a = 0.0;
        double b = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            a += std::max(x[i] * l[i].lo(), x[i] * u[i].lo());
            b += std::max(x[i] * l[i].hi(), x[i] * u[i].hi());
        }
        return Interval(std::min(a, b), std::max(a, b));
    }
    case IVecSet::Kind::oracle: return s.oracle_fn()(x);
    }
    throw std::logic_error("support_value: unknown representation");
}

// ±e_i followed by `count` seeded uniform unit vectors.
inline std::vector<Vec> sample_directions(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::vector<Vec> dirs;
    dirs.reserve(2 * n + count);
    for (std::size_t i = 0; i < n; ++i) {
        for (double s : {1.0, -1.0}) {
            Vec e(n, 0.0);
            e[i] = s;
            dirs.push_back(std::move(e));
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (dirs.size() < 2 * n + count) {
        Vec d(n);
        for (double& v : d) v = gauss(rng);
        const double len = norm2(d);
        if (len < 1e-9) continue;
        for (double& v : d) v /= len;
        dirs.push_back(std::move(d));
    }
    return dirs;
}

// First direction where ψ*_{s1}(d) ⪯ ψ*_{s2}(d) fails, if any.
inline std::optional<Vec> support_dominates(const IVecSet& s1, const IVecSet& s2,
                                            const std::vector<Vec>& directions,
                                            double slack = default_slack) {
    if (s1.dim() != s2.dim()) throw std::invalid_argument("support_dominates: dimension mismatch");
    for (const auto& d : directions) {
        if (!dominated(support_value(s1, d), support_value(s2, d), slack)) return d;
    }
    return std::nullopt;
}

struct InclusionResult {
    bool included = true;
    bool exact = false;
    std::optional<Vec> counter_direction;
};

// Is the finite set of real vectors P (as degenerate interval vectors) inside Q?
//
// Against an interval box the test is exact: a violated face shows up along
// ±e_i. Otherwise it is a sampled support comparison.
inline InclusionResult inclusion_test(const std::vector<Vec>& p, const IVecSet& q,
                                      const std::vector<Vec>& directions,
                                      double slack = default_slack) {
    if (p.empty()) throw std::invalid_argument("inclusion_test: P must be nonempty");
    std::vector<IVector> pts;
    pts.reserve(p.size());
    for (const auto& v : p) {
        if (v.size() != q.dim()) throw std::invalid_argument("inclusion_test: dimension mismatch");
        pts.push_back(IVector::degenerate(v));
    }
    const IVecSet ps = IVecSet::finite(std::move(pts));
    InclusionResult r;
    if (q.kind() == IVecSet::Kind::interval_box) {
        r.exact = true;
        r.counter_direction = support_dominates(ps, q, sample_directions(q.dim(), 0, 0), slack);
    } else {
        r.counter_direction = support_dominates(ps, q, directions, slack);
    }
    r.included = !r.counter_direction.has_value();
    return r;
}

struct BoundednessResult {
    bool bounded = true;
    double bound = 0.0; // M with vnorm(Ĝ) <= M for all members
    std::optional<Vec> unbounded_direction;
};

inline BoundednessResult boundedness_check(const IVecSet& s, const std::vector<Vec>& directions) {
    BoundednessResult r;
    const std::size_t n = s.dim();
    std::vector<Vec> dirs = sample_directions(n, 0, 0);
    dirs.insert(dirs.end(), directions.begin(), directions.end());
    std::vector<ExtInterval> vals;
    vals.reserve(dirs.size());
    for (const auto& d : dirs) {
        vals.push_back(support_value(s, d));
        if (vals.back().is_plus_inf()) {
            r.bounded = false;
            r.unbounded_direction = d;
            return r;
        }
    }
    switch (s.kind()) {
    case IVecSet::Kind::finite:
        for (const auto& m : s.members()) r.bound = std::max(r.bound, vnorm(m));
        break;
    case IVecSet::Kind::interval_box:
        for (std::size_t i = 0; i < n; ++i) {
            r.bound += std::max(interval_norm(s.lower_corner()[i]), interval_norm(s.upper_corner()[i]));
        }
        break;
    case IVecSet::Kind::oracle:
        // ψ(e_i).hi bounds both endpoints of component i from above and
        // ψ(-e_i).hi bounds their negatives.
        for (std::size_t i = 0; i < n; ++i) {
            const auto& up = vals[2 * i];
            const auto& down = vals[2 * i + 1];
            if (up.is_minus_inf() || down.is_minus_inf()) continue;
            r.bound += std::max({up.value().hi(), down.value().hi(), 0.0});
        }
        break;
    }
    return r;
}

// Support function of Q ⊕ K° for an orthant cone K: ψ_Q(d) when d ∈ K,
// +∞ otherwise.
inline IVecSet polar_augmented(const IVecSet& q, const OrthantCone& k) {
    if (k.dim() != q.dim()) throw std::invalid_argument("polar_augmented: dimension mismatch");
    const std::vector<Vec> rays = k.polar().extreme_rays();
    return IVecSet::oracle(q.dim(), [q, rays](std::span<const double> d) -> ExtInterval {
        for (const auto& r : rays) {
            if (dot(d, r) > membership_tol) return ExtInterval::plus_inf();
        }
        return support_value(q, d);
    });
}

} // namespace ghwsm

#endif // GHWSM_SUPPORT_HPP
