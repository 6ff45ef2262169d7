#include <gtest/gtest.h>

#include <random>

#include "ghwsm/support.hpp"

using namespace ghwsm;

namespace {

const IVecSet two_points = IVecSet::finite({IVector{{0, 1}}, IVector{{2, 3}}});
const IVecSet sharp_box = IVecSet::box(IVector{{-1, -0.25}}, IVector{{0.25, 1}});

void expect_ext_near(const ExtInterval& a, const Interval& b, double tol) {
    ASSERT_TRUE(a.finite());
    EXPECT_NEAR(a.value().lo(), b.lo(), tol) << a << " vs " << b;
    EXPECT_NEAR(a.value().hi(), b.hi(), tol) << a << " vs " << b;
}

// Brute-force support of a box: every member whose endpoints sit at corner
// values, filtered to proper intervals.
Interval box_support_oracle(const IVector& l, const IVector& u, const Vec& x) {
    const std::size_t n = l.size();
    std::vector<Interval> prods;
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t mask = 0; mask < total; ++mask) {
        std::vector<Interval> comps;
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = (mask >> (2 * i)) & 1U ? u[i].lo() : l[i].lo();
            const double hi = (mask >> (2 * i + 1)) & 1U ? u[i].hi() : l[i].hi();
            if (lo > hi) {
                ok = false;
                break;
            }
            comps.emplace_back(lo, hi);
        }
        if (ok) prods.push_back(special_product(x, IVector(comps)));
    }
    return sup_family(prods);
}

} // namespace

TEST(Support, FiniteSetExamples) {
    expect_ext_near(support_value(two_points, Vec{1}), {2, 3}, 0);
    expect_ext_near(support_value(two_points, Vec{-1}), {-1, 0}, 0);
    const IVector g{{1, 2}, {-1, 3}};
    const IVecSet single = IVecSet::finite({g});
    const Vec x{0.5, -2};
    expect_ext_near(support_value(single, x), special_product(x, g), 0);
    EXPECT_THROW(support_value(single, Vec{1}), std::invalid_argument);
}

TEST(Support, SetValidation) {
    EXPECT_THROW(IVecSet::finite({}), std::invalid_argument);
    EXPECT_THROW(IVecSet::box(IVector{{0, 2}}, IVector{{1, 1}}), std::invalid_argument);
    EXPECT_THROW(IVecSet::finite({IVector{{0, 1}}, IVector{{0, 1}, {0, 1}}}), std::invalid_argument);
}

TEST(Support, BoxClosedForm) {
    expect_ext_near(support_value(sharp_box, Vec{1}), {0.25, 1}, 1e-15);
    expect_ext_near(support_value(sharp_box, Vec{-1}), {0.25, 1}, 1e-15);
    expect_ext_near(support_value(sharp_box, Vec{2}), {0.5, 2}, 1e-15);
}

TEST(Support, Dominates) {
    const IVecSet small = IVecSet::finite({IVector{{0, 1}}});
    EXPECT_FALSE(support_dominates(small, two_points, sample_directions(1, 8, 1)).has_value());
    EXPECT_FALSE(support_dominates(two_points, two_points, sample_directions(1, 8, 1)).has_value());
    const IVecSet high = IVecSet::finite({IVector{{2, 3}}});
    const auto c = support_dominates(high, small, {Vec{1}});
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(*c, Vec{1});
}

TEST(Support, InclusionTest) {
    const auto dirs = sample_directions(1, 16, 2);
    const auto in = inclusion_test({Vec{0.2}}, sharp_box, dirs);
    EXPECT_TRUE(in.included);
    EXPECT_TRUE(in.exact);
    const auto out = inclusion_test({Vec{0.5}}, sharp_box, dirs);
    EXPECT_FALSE(out.included);
    ASSERT_TRUE(out.counter_direction.has_value());
    EXPECT_EQ(*out.counter_direction, Vec{1});
    EXPECT_THROW(inclusion_test({}, sharp_box, dirs), std::invalid_argument);

    const IVecSet orc = IVecSet::oracle(1, [](std::span<const double> d) { return support_value(sharp_box, d); });
    const auto sampled = inclusion_test({Vec{-0.1}}, orc, dirs);
    EXPECT_TRUE(sampled.included);
    EXPECT_FALSE(sampled.exact);
}

TEST(Support, Boundedness) {
    const auto dirs = sample_directions(2, 16, 3);
    const IVecSet fin = IVecSet::finite({IVector{{-3, 1}, {0, 2}}, IVector{{0, 0}, {1, 1}}});
    const auto b = boundedness_check(fin, dirs);
    EXPECT_TRUE(b.bounded);
    EXPECT_DOUBLE_EQ(b.bound, 5.0);
    const auto z = boundedness_check(IVecSet::finite({IVector::zeros(2)}), dirs);
    EXPECT_TRUE(z.bounded);
    EXPECT_EQ(z.bound, 0.0);
    EXPECT_DOUBLE_EQ(boundedness_check(sharp_box, {}).bound, 1.0);

    const OrthantCone k({AxisCone::nonneg, AxisCone::free});
    const auto aug = boundedness_check(polar_augmented(fin, k), dirs);
    EXPECT_FALSE(aug.bounded);
    ASSERT_TRUE(aug.unbounded_direction.has_value());
    EXPECT_LT((*aug.unbounded_direction)[0], 0.0);
}

TEST(SupportProperty, BoxMatchesCornerEnumeration) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 1 + k % 3;
        std::vector<Interval> lc, uc;
        for (std::size_t i = 0; i < n; ++i) {
            double v[4] = {u(rng), u(rng), u(rng), u(rng)};
            std::sort(v, v + 4);
            // Either overlapping or separated corners; both keep L ⪯ U.
            if (rng() & 1U) {
                lc.emplace_back(v[0], v[2]);
                uc.emplace_back(v[1], v[3]);
            } else {
                lc.emplace_back(v[0], v[1]);
                uc.emplace_back(v[2], v[3]);
            }
        }
        const IVector l(lc), up(uc);
        const IVecSet box = IVecSet::box(l, up);
        Vec x(n);
        for (double& v : x) v = u(rng);
        expect_ext_near(support_value(box, x), box_support_oracle(l, up, x), 1e-9);
    }
}

TEST(SupportProperty, PositiveHomogeneity) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2, 2);
    const IVecSet s = IVecSet::finite({IVector{{0, 1}, {2, 3}}, IVector{{-1, 4}, {0, 0}}, IVector{{1, 1}, {-2, -1}}});
    for (int k = 0; k < 200; ++k) {
        Vec x{u(rng), u(rng)};
        const double t = std::uniform_real_distribution<double>(0.01, 10)(rng);
        Vec tx{t * x[0], t * x[1]};
        const Interval a = support_value(s, tx).value();
        const Interval b = scalar_mul(t, support_value(s, x).value());
        EXPECT_NEAR(a.lo(), b.lo(), 1e-12 * std::max(1.0, t));
        EXPECT_NEAR(a.hi(), b.hi(), 1e-12 * std::max(1.0, t));
    }
}

TEST(SupportProperty, BoundedByNormTimesConstant) {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-2, 2);
    const IVecSet s = IVecSet::finite({IVector{{0, 1}, {2, 3}}, IVector{{-1, 4}, {0, 0}}});
    const double m = boundedness_check(s, {}).bound;
    for (int k = 0; k < 200; ++k) {
        const Vec x{u(rng), u(rng)};
        const double r = norm2(x) * m;
        EXPECT_TRUE(dominated(support_value(s, x), Interval(r, r)));
    }
}

// Support comparison on directions of K matches comparison against Q ⊕ K°
// on all directions.
TEST(SupportProperty, PolarAugmentationEquivalence) {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(-1, 1);
    const OrthantCone k({AxisCone::nonneg, AxisCone::nonneg});
    const auto all = sample_directions(2, 256, 44);
    std::vector<Vec> in_k;
    for (const auto& d : all) {
        if (k.contains(d)) in_k.push_back(d);
    }
    int agree = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<IVector> q, p;
        for (int j = 0; j < 3; ++j) {
            const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
            q.push_back(IVector{{std::min(a, b), std::max(a, b)}, {std::min(c, d), std::max(c, d)}});
        }
        const Vec pt{u(rng), u(rng)};
        p.push_back(IVector::degenerate(pt));
        const IVecSet qs = IVecSet::finite(q);
        const IVecSet ps = IVecSet::finite(p);
        const bool on_k = !support_dominates(ps, qs, in_k).has_value();
        const bool on_all = !support_dominates(ps, polar_augmented(qs, k), all).has_value();
        EXPECT_EQ(on_k, on_all);
        agree += on_k;
    }
    EXPECT_GT(agree, 0);
    EXPECT_LT(agree, 200);
}
