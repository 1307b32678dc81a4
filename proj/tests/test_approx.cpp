#include <support/brute_force.hpp>
#include <support/random_paths.hpp>

#include <tvkit/approx.hpp>
#include <tvkit/fixtures.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace tvkit;

namespace
{
    SampledPath ramp ()
    {
        std::vector<double> t, v;
        for (int i = 0; i <= 10; ++i)
        {
            t.push_back (i / 10.0);
            v.push_back (i / 10.0);
        }
        return SampledPath (t, v);
    }

    std::vector<double> knot_times (const PiecewiseLinear &pl) { return pl.times; }
} // namespace

TEST (Skeleton, Ramp)
{
    const auto s = greedy_skeleton (ramp (), 0.5);
    ASSERT_EQ (s.taus.size (), 4u);
    EXPECT_EQ (s.knots, (std::vector<std::size_t> {0, 3, 6, 9}));
    for (std::size_t m = 0; m < 4; ++m)
        EXPECT_NEAR (s.taus[m], 0.3 * double (m), 1e-15);
    for (Branch b : s.branches)
        EXPECT_EQ (b, Branch::small_jump);
}

TEST (Skeleton, Circle3)
{
    // One-step increments sqrt(3) >= sqrt(3)/2 give the big-jump branch;
    // after the jump to sample 1 the next exceedance is sample 2, which is
    // also the last sample.
    const auto s = greedy_skeleton (fixtures::circle3 (), std::sqrt (3.0));
    EXPECT_EQ (s.knots, (std::vector<std::size_t> {0, 2}));
    EXPECT_EQ (s.branches.front (), Branch::big_jump);
    EXPECT_EQ (s.branches.size (), s.knots.size ());
}

TEST (Skeleton, ConstantAndErrors)
{
    const SampledPath flat ({0, 1, 2, 3}, {1, 1, 1, 1});
    EXPECT_EQ (greedy_skeleton (flat, 0.1).taus, (std::vector<double> {0.0}));
    EXPECT_THROW ((void)greedy_skeleton (flat, 0.0), DomainError);
    EXPECT_THROW ((void)greedy_skeleton (flat, -1.0), DomainError);
}

TEST (StepApprox, Ramp)
{
    const auto a = step_approx (ramp (), 0.5);
    const std::vector<double> expect {0, 0, 0, 0.3, 0.3, 0.3, 0.6, 0.6, 0.6, 0.9, 0.9};
    for (std::size_t i = 0; i < expect.size (); ++i)
        EXPECT_NEAR (a.samples.value (i)[0], expect[i], 1e-15);
    EXPECT_NEAR (a.tv, 0.9, 1e-15);
    EXPECT_NEAR (2.0 * ttv (ramp (), 0.125), 1.75, 1e-14);
}

TEST (StepApprox, Circle3)
{
    const auto c = fixtures::circle3 ();
    const double r3 = std::sqrt (3.0);
    const auto a = step_approx (c, r3);
    EXPECT_EQ (a.samples, c);
    EXPECT_NEAR (a.tv, 2.0 * r3, 1e-15);
    EXPECT_NEAR (ttv (c, r3 / 4.0), 2.0 * r3 - r3 / 2.0, 1e-15);
}

TEST (StepApprox, Constant)
{
    const SampledPath flat ({0, 1, 2}, {2, 2, 2});
    const auto a = step_approx (flat, 0.3);
    EXPECT_EQ (a.samples, flat);
    EXPECT_EQ (a.tv, 0.0);
}

TEST (LinearApprox, RampInterpolatesWhenContinuous)
{
    const auto a = linear_approx (ramp (), 0.5, 0.15);
    ASSERT_TRUE (a.linear.has_value ());
    const auto &pl = *a.linear;
    EXPECT_EQ (knot_times (pl).size (), 5u); // four knots plus the held end at b
    EXPECT_NEAR (a.tv, 0.9, 1e-14);
    EXPECT_NEAR (a.tv, step_approx (ramp (), 0.5).tv, 1e-14);
    EXPECT_NEAR (pl.value (0.15)[0], 0.15, 1e-14);
    EXPECT_NEAR (pl.value (0.45)[0], 0.45, 1e-14);
    EXPECT_NEAR (pl.value (0.95)[0], 0.9, 1e-14);
    EXPECT_TRUE (pl.jump_times ().empty ());
    EXPECT_LE (sup_distance (a.samples, ramp ()), 0.5 + 0.15);
}

TEST (LinearApprox, RampHeldWithDefaultThreshold)
{
    const auto a = linear_approx (ramp (), 0.5);
    EXPECT_NEAR (a.tv, 0.9, 1e-14);
    EXPECT_EQ (a.samples, step_approx (ramp (), 0.5).samples);
}

TEST (LinearApprox, ConstantAndStepSplit)
{
    const SampledPath flat ({0, 1, 2}, {-1, -1, -1});
    EXPECT_EQ (linear_approx (flat, 1.0).tv, 0.0);
    EXPECT_EQ (linear_approx (flat, 1.0).samples, flat);

    const auto s = fixtures::step_split ();
    const auto lin = linear_approx (s, 1.0);
    EXPECT_NEAR (lin.tv, step_approx (s, 1.0).tv, 1e-15);
    EXPECT_LE (sup_distance (lin.samples, s), 1.0);
}

TEST (Sandwich, Circle3HasStrictGap)
{
    const double r3 = std::sqrt (3.0);
    const auto r = sandwich (fixtures::circle3 (), r3);
    EXPECT_EQ (r.lower, 0.0);
    EXPECT_NEAR (r.witness_tv, 2.0 * r3, 1e-15);
    EXPECT_NEAR (r.upper, 3.0 * r3, 1e-14);
    EXPECT_LT (r.lower, r.witness_tv);
}

TEST (Sandwich, ConstantAndErrors)
{
    const SampledPath flat ({0, 1}, {5, 5});
    const auto r = sandwich (flat, 1.0);
    EXPECT_EQ (r.lower, 0.0);
    EXPECT_EQ (r.upper, 0.0);
    EXPECT_EQ (r.witness_tv, 0.0);
    EXPECT_THROW ((void)sandwich (flat, 1.0, {1.0}), DomainError);
    EXPECT_THROW ((void)sandwich (flat, 1.0, {}), DomainError);
}

TEST (Sandwich, RandomScalarPaths)
{
    std::mt19937_64 rng (31);
    std::uniform_real_distribution<double> uc (0.05, 1.5);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto p = sample::random_path (rng, 10, 1, NormKind::euclidean);
        const double c = uc (rng);
        const auto r = sandwich (p, c);
        EXPECT_NEAR (r.lower, oracle::ttv_brute (p, c), 1e-12);
        EXPECT_LE (r.lower, r.witness_tv + 1e-12);
        EXPECT_LE (r.witness_tv, 2.0 * oracle::ttv_brute (p, c / 4.0) + 1e-12);
    }
}

TEST (Approx, RandomGuarantees)
{
    std::mt19937_64 rng (77);
    std::uniform_real_distribution<double> uc (0.02, 2.0);
    const std::vector<double> lambdas {1.5, 2.0, 3.0, 10.0};
    int violations = 0;
    for (int trial = 0; trial < 500; ++trial)
    {
        const auto p = sample::random_path (rng, 2 + trial % 40, 1 + trial % 3, sample::pick_norm (rng));
        const double c = uc (rng);
        const auto step = step_approx (p, c);
        const auto lin = linear_approx (p, c);
        const auto prof = ttv_profile (p);

        violations += sup_distance (step.samples, p) > c / 2.0;
        for (double l : lambdas)
            violations += step.tv > l * prof.truncated_variation ((l - 1.0) * c / (2.0 * l)) + 1e-12;
        violations += sup_distance (lin.samples, p) > c;
        violations += std::abs (lin.tv - step.tv) > 1e-12 * (1.0 + step.tv);
        EXPECT_EQ (violations, 0) << "trial " << trial;
        if (violations)
            break;
    }
}

TEST (Approx, ConsecutiveStepValuesMoveByHalfC)
{
    std::mt19937_64 rng (88);
    std::uniform_real_distribution<double> uc (0.05, 1.5);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto p = sample::random_path (rng, 2 + trial % 30, 1 + trial % 3, sample::pick_norm (rng));
        const double c = uc (rng);
        const auto a = step_approx (p, c);
        for (std::size_t i = 1; i < a.samples.size (); ++i)
        {
            const double d = a.samples.distance (i - 1, i);
            if (d != 0.0)
            {
                EXPECT_GE (d, c / 2.0);
            }
        }
    }
}

TEST (Approx, LinearJumpsOnlyWhereSourceJumps)
{
    std::mt19937_64 rng (99);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto p = sample::random_path (rng, 3 + trial % 30, 1 + trial % 2, sample::pick_norm (rng));
        const double eps = 0.3 * double (trial % 3);
        const auto a = linear_approx (p, 0.4, eps);
        for (double t : a.linear->jump_times ())
        {
            // A knot may jump from the left (source increment into it above
            // eps) or to the right (big-jump branch onto the next sample).
            const std::size_t i = p.index_at (t);
            ASSERT_EQ (p.time (i), t);
            const bool from_left = i > 0 && p.distance (i - 1, i) > eps;
            const bool to_right = i + 1 < p.size () && p.distance (i, i + 1) > 0.0;
            EXPECT_TRUE (from_left || to_right) << t;
        }
        EXPECT_LE (sup_distance (a.samples, p), 0.4 + eps + 1e-12);
        EXPECT_NEAR (a.tv, step_approx (p, 0.4).tv, 1e-12 * (1.0 + a.tv));
    }
}
