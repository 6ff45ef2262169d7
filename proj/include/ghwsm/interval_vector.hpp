#ifndef GHWSM_INTERVAL_VECTOR_HPP
#define GHWSM_INTERVAL_VECTOR_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "interval.hpp"

namespace ghwsm {

using Vec = std::vector<double>;

// Element of I(R)^n. Length is fixed at construction and at least 1.
class IVector {
public:
    explicit IVector(std::vector<Interval> components) : c_(std::move(components)) {
        if (c_.empty()) throw std::invalid_argument("IVector: length must be at least 1");
    }
    IVector(std::initializer_list<Interval> components)
        : IVector(std::vector<Interval>(components)) {}

    static IVector zeros(std::size_t n) { return IVector(std::vector<Interval>(n)); }

    // Real vector embedded as degenerate intervals.
    static IVector degenerate(std::span<const double> x) {
        std::vector<Interval> c;
        c.reserve(x.size());
        for (double v : x) c.emplace_back(v);
        return IVector(std::move(c));
    }

    std::size_t size() const { return c_.size(); }
    const Interval& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Interval>& components() const { return c_; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    Vec lower() const {
        Vec v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(a.lo());
        return v;
    }
    Vec upper() const {
        Vec v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(a.hi());
        return v;
    }

    friend bool operator==(const IVector&, const IVector&) = default;

private:
    std::vector<Interval> c_;
};

inline std::ostream& operator<<(std::ostream& os, const IVector& a) {
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << a[i];
    return os << ')';
}

enum class VectorOp { add, minkowski_sub, gh_diff };

inline IVector vstar(const IVector& a, const IVector& b, VectorOp op) {
    if (a.size() != b.size()) throw std::invalid_argument("vstar: length mismatch");
    std::vector<Interval> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (op) {
        case VectorOp::add: out.push_back(add(a[i], b[i])); break;
        case VectorOp::minkowski_sub: out.push_back(detail::minkowski_sub(a[i], b[i])); break;
        case VectorOp::gh_diff: out.push_back(gh_difference(a[i], b[i])); break;
        }
    }
    return IVector(std::move(out));
}

inline IVector scalar_mul(double k, const IVector& a) {
    std::vector<Interval> out;
    out.reserve(a.size());
    for (const auto& c : a) out.push_back(scalar_mul(k, c));
    return IVector(std::move(out));
}

// x^T ⊙ A: the pair of sums over lower and over upper endpoints, ordered.
inline Interval special_product(std::span<const double> x, const IVector& a) {
    if (x.size() != a.size()) throw std::invalid_argument("special_product: length mismatch");
    double sl = 0.0;
    double su = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sl += x[i] * a[i].lo();
        su += x[i] * a[i].hi();
    }
    return {std::min(sl, su), std::max(sl, su)};
}

inline double vnorm(const IVector& a) {
    double s = 0.0;
    for (const auto& c : a) s += interval_norm(c);
    return s;
}

inline double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace ghwsm

#endif // GHWSM_INTERVAL_VECTOR_HPP
