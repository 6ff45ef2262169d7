#ifndef GHWSM_INTERVAL_HPP
#define GHWSM_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

namespace ghwsm {

// Absolute slack used by dominance comparisons unless a caller pins another.
inline constexpr double default_slack = 1e-9;

// Closed bounded interval [lo, hi].
//
// Endpoint arithmetic is plain double precision with no outward rounding;
// intervals here model uncertainty sets, not rigorous enclosures.
class Interval {
public:
    constexpr Interval() = default;
    constexpr explicit Interval(double point) : lo_(point), hi_(point) { check(); }
    constexpr Interval(double lo, double hi) : lo_(lo), hi_(hi) { check(); }

    constexpr double lo() const { return lo_; }
    constexpr double hi() const { return hi_; }
    constexpr bool degenerate() const { return lo_ == hi_; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    constexpr void check() const {
        if (!(lo_ <= hi_)) {
            throw std::invalid_argument("Interval: lower endpoint exceeds upper endpoint");
        }
    }

    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

inline constexpr Interval add(const Interval& a, const Interval& b) {
    return {a.lo() + b.lo(), a.hi() + b.hi()};
}

inline constexpr Interval scalar_mul(double k, const Interval& a) {
    if (k >= 0.0) return {k * a.lo(), k * a.hi()};
    return {k * a.hi(), k * a.lo()};
}

// Generalized Hukuhara difference: the interval C with A = B ⊕ C or B = A ⊖ C.
inline constexpr Interval gh_difference(const Interval& a, const Interval& b) {
    const double dl = a.lo() - b.lo();
    const double dh = a.hi() - b.hi();
    return {std::min(dl, dh), std::max(dl, dh)};
}

inline Interval operator+(const Interval& a, const Interval& b) { return add(a, b); }
inline Interval operator*(double k, const Interval& a) { return scalar_mul(k, a); }

inline double interval_norm(const Interval& a) {
    return std::max(std::abs(a.lo()), std::abs(a.hi()));
}

namespace detail {

// Minkowski difference [a.lo - b.hi, a.hi - b.lo]; only used by the gH
// defining-property check and by componentwise vector ops.
inline constexpr Interval minkowski_sub(const Interval& a, const Interval& b) {
    return {a.lo() - b.hi(), a.hi() - b.lo()};
}

} // namespace detail

// Relations between two intervals under the dominance order.
//
// classify() only ever returns Equal, Lt, Gt or Incomparable; LeqEq and Geq
// are queries that satisfied() answers.
enum class Dominance { LeqEq, Lt, Geq, Gt, Equal, Incomparable };

inline const char* to_string(Dominance d) {
    switch (d) {
    case Dominance::LeqEq: return "LeqEq";
    case Dominance::Lt: return "Lt";
    case Dominance::Geq: return "Geq";
    case Dominance::Gt: return "Gt";
    case Dominance::Equal: return "Equal";
    case Dominance::Incomparable: return "Incomparable";
    }
    return "?";
}

inline std::ostream& operator<<(std::ostream& os, Dominance d) { return os << to_string(d); }

// A ⪯ B iff both endpoints of A are at most those of B (up to slack).
inline bool dominated(const Interval& a, const Interval& b, double slack = default_slack) {
    return a.lo() <= b.lo() + slack && a.hi() <= b.hi() + slack;
}

inline Dominance dominance(const Interval& a, const Interval& b, double slack = default_slack) {
    const bool eq = std::abs(a.lo() - b.lo()) <= slack && std::abs(a.hi() - b.hi()) <= slack;
    if (eq) return Dominance::Equal;
    if (dominated(a, b, slack)) return Dominance::Lt;
    if (dominated(b, a, slack)) return Dominance::Gt;
    return Dominance::Incomparable;
}

// Does an observed relation (from dominance()) satisfy the queried one?
inline constexpr bool satisfies(Dominance observed, Dominance wanted) {
    if (observed == wanted) return true;
    switch (wanted) {
    case Dominance::LeqEq: return observed == Dominance::Lt || observed == Dominance::Equal;
    case Dominance::Geq: return observed == Dominance::Gt || observed == Dominance::Equal;
    default: return false;
    }
}

// Supremum of a nonempty family: endpointwise maxima.
inline Interval sup_family(std::span<const Interval> family) {
    if (family.empty()) throw std::invalid_argument("sup_family: empty family");
    double lo = family.front().lo();
    double hi = family.front().hi();
    for (const auto& a : family.subspan(1)) {
        lo = std::max(lo, a.lo());
        hi = std::max(hi, a.hi());
    }
    return {lo, hi};
}

inline Interval inf_family(std::span<const Interval> family) {
    if (family.empty()) throw std::invalid_argument("inf_family: empty family");
    double lo = family.front().lo();
    double hi = family.front().hi();
    for (const auto& a : family.subspan(1)) {
        lo = std::min(lo, a.lo());
        hi = std::min(hi, a.hi());
    }
    return {lo, hi};
}

// Interval extended by the markers ±∞ used for proper IVFs and F_o.
class ExtInterval {
public:
    enum class Kind { Finite, PlusInf, MinusInf };

    ExtInterval(const Interval& v) : kind_(Kind::Finite), value_(v) {} // NOLINT(implicit)

    static ExtInterval plus_inf() { return ExtInterval(Kind::PlusInf); }
    static ExtInterval minus_inf() { return ExtInterval(Kind::MinusInf); }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
    bool is_minus_inf() const { return kind_ == Kind::MinusInf; }

    const Interval& value() const {
        if (!finite()) throw std::logic_error("ExtInterval: value() on an infinite marker");
        return value_;
    }

    friend bool operator==(const ExtInterval& a, const ExtInterval& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
    }

private:
    explicit ExtInterval(Kind k) : kind_(k) {}

    Kind kind_;
    Interval value_{};
};

inline std::ostream& operator<<(std::ostream& os, const ExtInterval& a) {
    if (a.is_plus_inf()) return os << "[+inf, +inf]";
    if (a.is_minus_inf()) return os << "[-inf, -inf]";
    return os << a.value();
}

// Only positive scaling is defined on the markers.
inline ExtInterval scalar_mul(double k, const ExtInterval& a) {
    if (a.finite()) return scalar_mul(k, a.value());
    if (k > 0.0) return a;
    throw std::domain_error("scalar_mul: infinite marker scaled by a non-positive real");
}

inline Dominance dominance(const ExtInterval& a, const ExtInterval& b,
                           double slack = default_slack) {
    using K = ExtInterval::Kind;
    if (a.kind() == b.kind() && a.kind() != K::Finite) return Dominance::Equal;
    if (a.is_minus_inf() || b.is_plus_inf()) return Dominance::Lt;
    if (a.is_plus_inf() || b.is_minus_inf()) return Dominance::Gt;
    return dominance(a.value(), b.value(), slack);
}

inline bool dominated(const ExtInterval& a, const ExtInterval& b, double slack = default_slack) {
    return satisfies(dominance(a, b, slack), Dominance::LeqEq);
}

} // namespace ghwsm

#endif // GHWSM_INTERVAL_HPP
