#ifndef GHWSM_TEST_FIXTURES_HPP
#define GHWSM_TEST_FIXTURES_HPP

// Shared test IVFs: random convex families with hand-written one-sided
// directional derivatives, and the WSM battery with known moduli.

#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ghwsm/ghwsm.hpp"

namespace fixtures {

using ghwsm::BoxSet;
using ghwsm::Interval;
using ghwsm::Ivf;
using ghwsm::Vec;
using Span = std::span<const double>;

// Convex scalar function paired with its one-sided directional derivative.
struct Convex {
    std::function<double(Span)> f;
    std::function<double(Span, Span)> dd;
};

inline Convex operator+(Convex a, Convex b) {
    return {[a, b](Span x) { return a.f(x) + b.f(x); },
            [a, b](Span x, Span d) { return a.dd(x, d) + b.dd(x, d); }};
}

// Σ a_i |x_i - c_i| + b·x + q ||x||^2 + k, with a_i, q >= 0.
inline Convex abs_quad(Vec a, Vec c, Vec b, double q, double k) {
    auto f = [=](Span x) {
        double s = k;
        for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * std::abs(x[i] - c[i]) + b[i] * x[i] + q * x[i] * x[i];
        return s;
    };
    auto dd = [=](Span x, Span d) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double t = x[i] - c[i];
            s += a[i] * (t > 0 ? d[i] : t < 0 ? -d[i] : std::abs(d[i])) + b[i] * d[i] + 2.0 * q * x[i] * d[i];
        }
        return s;
    };
    return {f, dd};
}

// max_k (w_k · x + b_k); the derivative is the max of w_k · d over active pieces.
inline Convex max_affine(std::vector<Vec> w, Vec b) {
    auto value = [=](Span x, std::vector<double>& vals) {
        double m = -INFINITY;
        vals.resize(w.size());
        for (std::size_t k = 0; k < w.size(); ++k) {
            double v = b[k];
            for (std::size_t i = 0; i < x.size(); ++i) v += w[k][i] * x[i];
            vals[k] = v;
            m = std::max(m, v);
        }
        return m;
    };
    auto f = [=](Span x) {
        std::vector<double> vals;
        return value(x, vals);
    };
    auto dd = [=](Span x, Span d) {
        std::vector<double> vals;
        const double m = value(x, vals);
        double best = -INFINITY;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (vals[k] < m - 1e-12 * std::max(1.0, std::abs(m))) continue;
            double s = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i) s += w[k][i] * d[i];
            best = std::max(best, s);
        }
        return best;
    };
    return {f, dd};
}

// IVF [g, g + h] with h >= 0 convex, carrying the exact derivative
// [min(g', g' + h'), max(...)].
inline Ivf make_ivf(const Convex& g, const Convex& h, BoxSet domain) {
    const Convex up = g + h;
    return Ivf(g.f, up.f, std::move(domain), [g, up](Span x, Span d) {
        const double a = g.dd(x, d);
        const double b = up.dd(x, d);
        return Interval(std::min(a, b), std::max(a, b));
    });
}

// Kink locations on a 1/8 lattice so grid points land on them.
inline double lattice(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng) / 8.0;
}

// Twenty seeded convex IVFs on [-1, 1]^n, n cycling through 1, 2, 3.
inline std::vector<Ivf> convex_battery(std::uint64_t seed, std::size_t count = 20) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.1, 2.0);
    std::uniform_real_distribution<double> any(-1.0, 1.0);
    std::vector<Ivf> out;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t n = 1 + k % 3;
        Vec a(n), c(n), b(n), e(n), cf(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = pos(rng);
            c[i] = lattice(rng, -4, 4);
            b[i] = 0.5 * any(rng);
            e[i] = pos(rng);
            cf[i] = lattice(rng, -4, 4);
        }
        Convex g = abs_quad(a, c, b, k % 2 ? pos(rng) : 0.0, any(rng));
        if (k % 4 == 3) {
            std::vector<Vec> w(3, Vec(n));
            Vec off(3);
            for (auto& row : w) {
                for (double& v : row) v = 2.0 * any(rng);
            }
            for (double& v : off) v = 0.25 * any(rng);
            g = g + max_affine(w, off);
        }
        const Convex h = abs_quad(e, cf, Vec(n, 0.0), 0.0, std::abs(any(rng)));
        out.push_back(make_ivf(g, h, BoxSet::cube(n, -1.0, 1.0)));
    }
    return out;
}

// |x| scaled by [1/4, 1] on [-1, 1].
inline Ivf sharp_abs() {
    return Ivf::from_expressions("0.25*abs(x1)", "abs(x1)", BoxSet::cube(1, -1, 1));
}

struct BatteryCase {
    std::string name;
    ghwsm::WsmProblem problem;
    double modulus; // known modulus for positives, nominal alpha for negatives
    bool positive;
};

inline ghwsm::WsmProblem make_problem(const char* lo, const char* hi, BoxSet s, BoxSet sbar) {
    return ghwsm::WsmProblem{Ivf::from_expressions(lo, hi, s), s, std::move(sbar), 1.0, 33, 7};
}

inline std::vector<BatteryCase> wsm_battery() {
    const BoxSet line = BoxSet::cube(1, -1, 1);
    const BoxSet half = BoxSet::cube(1, 0, 2);
    const BoxSet sq = BoxSet::cube(2, -1, 1);
    const BoxSet cube3 = BoxSet::cube(3, -1, 1);
    const BoxSet o1 = BoxSet::cube(1, 0, 0);
    const BoxSet o2 = BoxSet::cube(2, 0, 0);
    const BoxSet o3 = BoxSet::cube(3, 0, 0);
    const BoxSet axis({0, -1}, {0, 1});
    return {
        {"abs-quarter", make_problem("0.25*abs(x1)", "abs(x1)", line, o1), 0.25, true},
        {"l1-square", make_problem("abs(x1) + abs(x2)", "2*abs(x1) + 2*abs(x2)", sq, o2), 1.0, true},
        {"max-affine", make_problem("max(2*x1, -x1)", "max(3*x1, -x1) + 0.5", line, o1), 1.0, true},
        {"slab", make_problem("0.5*abs(x1)", "2*abs(x1) + 1", sq, axis), 0.5, true},
        {"one-sided", make_problem("0.75*x1 + x1^2", "x1 + 1 + x1^2", half, o1), 0.75, true},
        {"l1-cube", make_problem("abs(x1) + abs(x2) + abs(x3)",
                                 "abs(x1) + abs(x2) + abs(x3) + x1^2 + x2^2 + x3^2", cube3, o3),
         1.0, true},
        {"quadratic", make_problem("x1^2", "2*x1^2", line, o1), 0.5, false},
        {"shifted-min", make_problem("abs(x1 - 0.5)", "2*abs(x1 - 0.5)", line, o1), 0.5, false},
        {"flat-bottom", make_problem("max(abs(x1) - 0.25, 0)", "abs(x1)", line, o1), 0.5, false},
        {"mixed", make_problem("x1^2 + abs(x2)", "2*x1^2 + 2*abs(x2)", sq, o2), 0.5, false},
        {"valley", make_problem("abs(x1 + x2)", "2*abs(x1 + x2)", sq, o2), 0.5, false},
        {"one-sided-quad", make_problem("x1^2", "x1^2 + x1", half, o1), 0.5, false},
    };
}

} // namespace fixtures

#endif // GHWSM_TEST_FIXTURES_HPP
