#pragma once
/**
 * @file   approx.hpp
 * @brief  Greedy bounded-variation approximants within uniform distance c/2 (step)
 *         or c (piecewise linear), and the resulting two-sided bounds on
 *         inf { TV(g) : sup |f - g| <= c/2 }.
 *
 * Greedy rule on samples v_0..v_{n-1}, starting from knot i = 0:
 *   - if |v_{i+1} - v_i| >= c/2 the step is a big jump and ref = v_{i+1},
 *     otherwise a small jump and ref = v_i;
 *   - the next knot is the first j > i with |v_j - ref| > c/2 (strict);
 *   - stop when there is none.
 * The step approximant keeps v at each knot and ref on the samples in
 * between, so it stays within c/2 of f and moves by at least c/2 each time
 * it changes value.
 */

#include <tvkit/error.hpp>
#include <tvkit/norms.hpp>
#include <tvkit/path.hpp>
#include <tvkit/variation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace tvkit
{
    enum class Branch
    {
        small_jump,
        big_jump
    };

    struct GreedySkeleton
    {
        std::vector<std::size_t> knots; ///< sample indices, knots[0] = 0
        std::vector<double> taus;       ///< times of the knots
        std::vector<Branch> branches;   ///< rule used on the segment starting at each knot
        std::vector<std::size_t> refs;  ///< sample index holding the reference value of each segment
    };

    [[nodiscard]] inline GreedySkeleton greedy_skeleton (const SampledPath &path, double c)
    {
        detail::require (c > 0.0 && std::isfinite (c), "approximation width c must be > 0");
        const std::size_t n = path.size ();
        const double half = c / 2.0;
        GreedySkeleton s;
        std::size_t i = 0;
        for (;;)
        {
            s.knots.push_back (i);
            s.taus.push_back (path.time (i));
            if (i + 1 >= n)
            {
                s.branches.push_back (Branch::small_jump);
                s.refs.push_back (i);
                break;
            }
            const bool big = path.distance (i, i + 1) >= half;
            const std::size_t ref = big ? i + 1 : i;
            s.branches.push_back (big ? Branch::big_jump : Branch::small_jump);
            s.refs.push_back (ref);

            std::size_t next = n;
            for (std::size_t j = i + 1; j < n; ++j)
                if (path.distance (j, ref) > half)
                {
                    next = j;
                    break;
                }
            if (next == n)
                break;
            i = next;
        }
        return s;
    }

    /// Piecewise-linear path given by knots with a value at, just before
    /// (left) and just after (right) each knot. On (tau_m, tau_{m+1}) it runs
    /// linearly from right_m to left_{m+1}.
    struct PiecewiseLinear
    {
        std::vector<double> times;
        std::vector<double> at, left, right; ///< flattened, dim values per knot
        std::size_t dim = 1;
        NormKind norm = NormKind::euclidean;

        [[nodiscard]] std::size_t size () const noexcept { return times.size (); }

        [[nodiscard]] std::span<const double> at_value (std::size_t m) const { return {at.data () + m * dim, dim}; }
        [[nodiscard]] std::span<const double> left_value (std::size_t m) const { return {left.data () + m * dim, dim}; }
        [[nodiscard]] std::span<const double> right_value (std::size_t m) const { return {right.data () + m * dim, dim}; }

        /// Value at t (clamped to the knot range).
        [[nodiscard]] std::vector<double> value (double t) const
        {
            const std::size_t m = detail::step_index (times, t);
            auto a = at_value (m);
            if (t <= times[m] || m + 1 >= times.size ())
                return {a.begin (), a.end ()};
            const double w = (t - times[m]) / (times[m + 1] - times[m]);
            auto r = right_value (m), l = left_value (m + 1);
            std::vector<double> out (dim);
            for (std::size_t k = 0; k < dim; ++k)
                out[k] = r[k] + w * (l[k] - r[k]);
            return out;
        }

        /// Exact total variation: every segment is monotone along a line.
        [[nodiscard]] double total_variation () const
        {
            double tv = 0.0;
            for (std::size_t m = 0; m + 1 < times.size (); ++m)
            {
                tv += vector_distance (at_value (m), right_value (m), norm);
                tv += vector_distance (right_value (m), left_value (m + 1), norm);
                tv += vector_distance (left_value (m + 1), at_value (m + 1), norm);
            }
            return tv;
        }

        /// Knots where the path is discontinuous (left, at and right differ).
        [[nodiscard]] std::vector<double> jump_times () const
        {
            std::vector<double> out;
            for (std::size_t m = 0; m < times.size (); ++m)
            {
                const bool from_left = m > 0 && !std::ranges::equal (left_value (m), at_value (m));
                const bool to_right = m + 1 < times.size () && !std::ranges::equal (at_value (m), right_value (m));
                if (from_left || to_right)
                    out.push_back (times[m]);
            }
            return out;
        }

        /// Samples at the given times as a SampledPath.
        [[nodiscard]] SampledPath sample (const std::vector<double> &ts) const
        {
            std::vector<double> v;
            v.reserve (ts.size () * dim);
            for (double t : ts)
            {
                auto x = value (t);
                v.insert (v.end (), x.begin (), x.end ());
            }
            return SampledPath (ts, std::move (v), dim, norm);
        }
    };

    enum class ApproxKind
    {
        step,
        linear
    };

    struct Approximant
    {
        ApproxKind kind = ApproxKind::step;
        SampledPath samples;                  ///< values at the source sample times
        std::optional<PiecewiseLinear> linear; ///< knot description for kind == linear
        GreedySkeleton skeleton;
        double tv = 0.0;
    };

    /// Step approximant f^c: within c/2 of f at every sample.
    [[nodiscard]] inline Approximant step_approx (const SampledPath &path, double c)
    {
        GreedySkeleton s = greedy_skeleton (path, c);
        const std::size_t n = path.size (), d = path.dim ();
        std::vector<double> v (n * d);
        std::size_t seg = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            while (seg + 1 < s.knots.size () && s.knots[seg + 1] <= i)
                ++seg;
            const std::size_t src = (i == s.knots[seg]) ? i : s.refs[seg];
            auto x = path.value (src);
            std::copy (x.begin (), x.end (), v.begin () + static_cast<std::ptrdiff_t> (i * d));
        }
        SampledPath out (path.times (), std::move (v), d, path.norm ());
        const double tv = consecutive_variation (out);
        return Approximant {ApproxKind::step, std::move (out), std::nullopt, std::move (s), tv};
    }

    /**
     * @brief Piecewise-linear approximant f^{c,lin}: within c + eps_cont of f.
     *
     * Knots are the greedy knots. A segment is interpolated from its
     * reference value to the value at the next knot when the path is
     * continuous there, i.e. the increment into that knot is at most
     * `eps_cont`; otherwise it is held at the reference value and jumps at
     * the knot. Sampled paths jump at every sample, so with the default
     * eps_cont = 0 interpolation happens only across repeated values.
     * Its total variation equals that of the step approximant.
     */
    [[nodiscard]] inline Approximant linear_approx (const SampledPath &path, double c, double eps_cont = 0.0)
    {
        detail::require (eps_cont >= 0.0, "continuity threshold must be >= 0");
        GreedySkeleton s = greedy_skeleton (path, c);
        const std::size_t n = path.size (), d = path.dim ();
        PiecewiseLinear pl;
        pl.dim = d;
        pl.norm = path.norm ();

        auto push = [d] (std::vector<double> &dst, std::span<const double> x) { dst.insert (dst.end (), x.begin (), x.begin () + d); };

        const std::size_t k = s.knots.size ();
        for (std::size_t m = 0; m < k; ++m)
        {
            const std::size_t idx = s.knots[m];
            pl.times.push_back (path.time (idx));
            push (pl.at, path.value (idx));
            push (pl.right, path.value (s.refs[m]));
            if (m == 0)
                push (pl.left, path.value (idx));
            else
            {
                const bool continuous = path.distance (idx - 1, idx) <= eps_cont;
                push (pl.left, continuous ? path.value (idx) : path.value (s.refs[m - 1]));
            }
        }
        // Hold the last reference value up to b.
        if (s.knots.back () + 1 < n)
        {
            auto ref = path.value (s.refs.back ());
            pl.times.push_back (path.end ());
            push (pl.at, ref);
            push (pl.left, ref);
            push (pl.right, ref);
        }

        SampledPath samples = pl.sample (path.times ());
        const double tv = pl.total_variation ();
        return Approximant {ApproxKind::linear, std::move (samples), std::move (pl), std::move (s), tv};
    }

    /// max_i |f(t_i) - g(t_i)| over shared sample times.
    [[nodiscard]] inline double sup_distance (const SampledPath &f, const SampledPath &g)
    {
        detail::require (f.times () == g.times () && f.dim () == g.dim (), "sup distance needs matching samples");
        double best = 0.0;
        for (std::size_t i = 0; i < f.size (); ++i)
            best = std::max (best, vector_distance (f.value (i), g.value (i), f.norm ()));
        return best;
    }

    struct SandwichReport
    {
        double lower = 0.0;      ///< TTV(f, c)
        double upper = 0.0;      ///< min over lambda of lambda * TTV(f, (lambda-1) c / (2 lambda))
        double witness_tv = 0.0; ///< TV of the greedy step approximant
        double best_lambda = 2.0;
    };

    /// TTV(f, c) <= inf { TV(g) : |f - g| <= c/2 } <= lambda TTV(f, (lambda-1)c/(2 lambda)).
    [[nodiscard]] inline SandwichReport sandwich (const SampledPath &path, double c, const std::vector<double> &lambdas = {2.0})
    {
        detail::require (c > 0.0 && std::isfinite (c), "approximation width c must be > 0");
        detail::require (!lambdas.empty (), "sandwich needs at least one lambda");
        for (double l : lambdas)
            detail::require (l > 1.0 && std::isfinite (l), "every lambda must be > 1");
        const TtvProfile prof = ttv_profile (path);
        SandwichReport r;
        r.lower = prof.truncated_variation (c);
        r.upper = std::numeric_limits<double>::infinity ();
        for (double l : lambdas)
        {
            const double u = l * prof.truncated_variation ((l - 1.0) * c / (2.0 * l));
            if (u < r.upper)
            {
                r.upper = u;
                r.best_lambda = l;
            }
        }
        r.witness_tv = step_approx (path, c).tv;
        return r;
    }

} // namespace tvkit
