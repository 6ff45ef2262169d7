#ifndef GHWSM_GEOMETRY_HPP
#define GHWSM_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "interval_vector.hpp"

namespace ghwsm {

// Per-axis membership tolerance for boxes.
inline constexpr double membership_tol = 1e-12;

// Axis-aligned box in R^n; an axis may collapse to a single point.
class BoxSet {
public:
    BoxSet(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_.empty() || lo_.size() != hi_.size()) {
            throw std::invalid_argument("BoxSet: bounds must be nonempty and of equal length");
        }
        for (std::size_t i = 0; i < lo_.size(); ++i) {
            if (!(lo_[i] <= hi_[i]) || !std::isfinite(lo_[i]) || !std::isfinite(hi_[i])) {
                throw std::invalid_argument("BoxSet: axis " + std::to_string(i + 1) +
                                            " has lo > hi or a non-finite bound");
            }
        }
    }

    static BoxSet point(std::span<const double> p) { return BoxSet(Vec(p.begin(), p.end()), Vec(p.begin(), p.end())); }
    static BoxSet cube(std::size_t n, double lo, double hi) { return BoxSet(Vec(n, lo), Vec(n, hi)); }

    std::size_t dim() const { return lo_.size(); }
    const Vec& lo() const { return lo_; }
    const Vec& hi() const { return hi_; }

    bool contains(std::span<const double> x, double tol = membership_tol) const {
        if (x.size() != dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
        }
        return true;
    }

    bool contains(const BoxSet& other) const {
        if (other.dim() != dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (other.lo_[i] < lo_[i] || other.hi_[i] > hi_[i]) return false;
        }
        return true;
    }

    bool interior(std::span<const double> x) const {
        for (std::size_t i = 0; i < dim(); ++i) {
            if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
        }
        return true;
    }

    // Largest t >= 0 with x + t d inside the box (may be +inf).
    double max_step(std::span<const double> x, std::span<const double> d) const {
        double t = INFINITY;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (d[i] > 0.0) t = std::min(t, (hi_[i] - x[i]) / d[i]);
            else if (d[i] < 0.0) t = std::min(t, (lo_[i] - x[i]) / d[i]);
        }
        return std::max(t, 0.0);
    }

    // Regular grid with `per_axis` points on non-degenerate axes.
    std::vector<Vec> grid(std::size_t per_axis) const {
        per_axis = std::max<std::size_t>(per_axis, 2);
        std::vector<std::vector<double>> axes(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (lo_[i] == hi_[i]) {
                axes[i] = {lo_[i]};
                continue;
            }
            for (std::size_t k = 0; k < per_axis; ++k) {
                const double s = static_cast<double>(k) / static_cast<double>(per_axis - 1);
                axes[i].push_back(k + 1 == per_axis ? hi_[i] : lo_[i] + s * (hi_[i] - lo_[i]));
            }
        }
        std::vector<Vec> pts;
        Vec cur(dim());
        std::vector<std::size_t> idx(dim(), 0);
        for (;;) {
            for (std::size_t i = 0; i < dim(); ++i) cur[i] = axes[i][idx[i]];
            pts.push_back(cur);
            std::size_t i = 0;
            while (i < dim() && ++idx[i] == axes[i].size()) idx[i++] = 0;
            if (i == dim()) break;
        }
        return pts;
    }

    // Number of points grid(per_axis) would produce.
    std::size_t grid_size(std::size_t per_axis) const {
        per_axis = std::max<std::size_t>(per_axis, 2);
        std::size_t n = 1;
        for (std::size_t i = 0; i < dim(); ++i) n *= lo_[i] == hi_[i] ? 1 : per_axis;
        return n;
    }

    friend bool operator==(const BoxSet&, const BoxSet&) = default;

private:
    Vec lo_;
    Vec hi_;
};

inline std::ostream& operator<<(std::ostream& os, const BoxSet& b) {
    os << '{';
    for (std::size_t i = 0; i < b.dim(); ++i) {
        os << (i ? " x " : "") << '[' << b.lo()[i] << ", " << b.hi()[i] << ']';
    }
    return os << '}';
}

enum class AxisCone { free, nonneg, nonpos, zero };

inline AxisCone polar(AxisCone t) {
    switch (t) {
    case AxisCone::free: return AxisCone::zero;
    case AxisCone::zero: return AxisCone::free;
    case AxisCone::nonneg: return AxisCone::nonpos;
    case AxisCone::nonpos: return AxisCone::nonneg;
    }
    return t;
}

inline const char* to_string(AxisCone t) {
    switch (t) {
    case AxisCone::free: return "free";
    case AxisCone::nonneg: return "nonneg";
    case AxisCone::nonpos: return "nonpos";
    case AxisCone::zero: return "zero";
    }
    return "?";
}

// Product of per-axis cones; represents tangent and normal cones of boxes exactly.
class OrthantCone {
public:
    explicit OrthantCone(std::vector<AxisCone> tags) : tags_(std::move(tags)) {}

    std::size_t dim() const { return tags_.size(); }
    AxisCone operator[](std::size_t i) const { return tags_[i]; }
    const std::vector<AxisCone>& tags() const { return tags_; }

    OrthantCone polar() const {
        std::vector<AxisCone> t;
        t.reserve(tags_.size());
        for (auto a : tags_) t.push_back(ghwsm::polar(a));
        return OrthantCone(std::move(t));
    }

    Vec project(std::span<const double> d) const {
        Vec p(d.begin(), d.end());
        for (std::size_t i = 0; i < dim(); ++i) {
            switch (tags_[i]) {
            case AxisCone::free: break;
            case AxisCone::nonneg: p[i] = std::max(p[i], 0.0); break;
            case AxisCone::nonpos: p[i] = std::min(p[i], 0.0); break;
            case AxisCone::zero: p[i] = 0.0; break;
            }
        }
        return p;
    }

    bool contains(std::span<const double> d, double tol = membership_tol) const {
        for (std::size_t i = 0; i < dim(); ++i) {
            switch (tags_[i]) {
            case AxisCone::free: break;
            case AxisCone::nonneg: if (d[i] < -tol) return false; break;
            case AxisCone::nonpos: if (d[i] > tol) return false; break;
            case AxisCone::zero: if (std::abs(d[i]) > tol) return false; break;
            }
        }
        return true;
    }

    // Unit generators e_i / -e_i of the cone.
    std::vector<Vec> extreme_rays() const {
        std::vector<Vec> rays;
        for (std::size_t i = 0; i < dim(); ++i) {
            auto push = [&](double s) {
                Vec r(dim(), 0.0);
                r[i] = s;
                rays.push_back(std::move(r));
            };
            if (tags_[i] == AxisCone::free || tags_[i] == AxisCone::nonneg) push(1.0);
            if (tags_[i] == AxisCone::free || tags_[i] == AxisCone::nonpos) push(-1.0);
        }
        return rays;
    }

    bool trivial() const {
        return std::all_of(tags_.begin(), tags_.end(), [](AxisCone t) { return t == AxisCone::zero; });
    }

    friend bool operator==(const OrthantCone&, const OrthantCone&) = default;

private:
    std::vector<AxisCone> tags_;
};

inline std::ostream& operator<<(std::ostream& os, const OrthantCone& k) {
    os << '(';
    for (std::size_t i = 0; i < k.dim(); ++i) os << (i ? ", " : "") << to_string(k[i]);
    return os << ')';
}

// Axis-wise intersection of two orthant cones.
inline OrthantCone intersect(const OrthantCone& a, const OrthantCone& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("intersect: dimension mismatch");
    std::vector<AxisCone> t(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const AxisCone x = a[i];
        const AxisCone y = b[i];
        if (x == AxisCone::free) t[i] = y;
        else if (y == AxisCone::free) t[i] = x;
        else if (x == y) t[i] = x;
        else t[i] = AxisCone::zero;
    }
    return OrthantCone(std::move(t));
}

inline Vec project(std::span<const double> x, const BoxSet& c) {
    if (x.size() != c.dim()) throw std::invalid_argument("project: dimension mismatch");
    Vec p(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = std::clamp(x[i], c.lo()[i], c.hi()[i]);
    return p;
}

inline double dist(std::span<const double> x, const BoxSet& c) {
    const Vec p = project(x, c);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - p[i]) * (x[i] - p[i]);
    return std::sqrt(s);
}

inline OrthantCone tangent_cone(const BoxSet& c, std::span<const double> x) {
    if (!c.contains(x)) throw std::invalid_argument("tangent_cone: point not in box");
    std::vector<AxisCone> t(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i) {
        const double lo = c.lo()[i];
        const double hi = c.hi()[i];
        const bool at_lo = std::abs(x[i] - lo) <= membership_tol;
        const bool at_hi = std::abs(x[i] - hi) <= membership_tol;
        if (lo == hi) t[i] = AxisCone::zero;
        else if (at_lo) t[i] = AxisCone::nonneg;
        else if (at_hi) t[i] = AxisCone::nonpos;
        else t[i] = AxisCone::free;
    }
    return OrthantCone(std::move(t));
}

inline OrthantCone normal_cone(const BoxSet& c, std::span<const double> x) {
    return tangent_cone(c, x).polar();
}

inline double dist_to_cone(std::span<const double> d, const OrthantCone& k) {
    if (d.size() != k.dim()) throw std::invalid_argument("dist_to_cone: dimension mismatch");
    const Vec p = k.project(d);
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) s += (d[i] - p[i]) * (d[i] - p[i]);
    return std::sqrt(s);
}

// Support value of alpha*B ∩ N at d, via the distance from d to the polar of N.
inline double cone_ball_support(const OrthantCone& normal, double alpha, std::span<const double> d) {
    if (!(alpha > 0.0)) throw std::invalid_argument("cone_ball_support: alpha must be positive");
    return alpha * dist_to_cone(d, normal.polar());
}

} // namespace ghwsm

#endif // GHWSM_GEOMETRY_HPP
