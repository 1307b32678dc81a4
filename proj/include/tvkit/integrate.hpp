#pragma once
/**
 * @file   integrate.hpp
 * @brief  Riemann-Stieltjes sums and integrals  int_a^b f dg  for matrix-valued
 *         integrands f and vector-valued integrators g.
 *
 * Functions are given either analytically or as step / piecewise-linear
 * completions of sampled paths. The integral is computed by dyadic
 * refinement of the partition formed by all breakpoints of f and g and
 * stops when two successive levels agree to `tol`.
 */

#include <tvkit/error.hpp>
#include <tvkit/norms.hpp>
#include <tvkit/path.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tvkit
{
    /**
     * @brief A function on [a, b] with values in R^width.
     *
     * `width` is d for vector functions and d*d for matrix functions.
     * `knots` lists interior breakpoints (where the function may be
     * non-smooth); `jumps` lists discontinuities.
     */
    struct TimeFunction
    {
        double a = 0.0, b = 1.0;
        std::size_t dim = 1;
        std::size_t width = 1;
        NormKind norm = NormKind::euclidean;
        std::function<void (double, double *)> eval;
        std::vector<double> knots;
        std::vector<double> jumps;

        [[nodiscard]] std::vector<double> operator() (double t) const
        {
            std::vector<double> out (width);
            eval (t, out.data ());
            return out;
        }
    };

    /// Integrator g: [a, b] -> R^d.
    struct VectorFunction : TimeFunction
    {
    };

    /// Integrand f: [a, b] -> d x d matrices (row-major).
    struct OperatorFunction : TimeFunction
    {
    };

    namespace detail
    {
        template <class Out, class P>
        Out make_step (const P &path)
        {
            auto shared = std::make_shared<const P> (path);
            Out f;
            f.a = path.start ();
            f.b = path.end ();
            f.dim = path.dim ();
            f.width = path.width ();
            f.norm = path.norm ();
            f.knots = path.times ();
            f.jumps = jump_times (path);
            f.eval = [shared] (double t, double *out) {
                auto v = shared->at (t);
                std::copy (v.begin (), v.end (), out);
            };
            return f;
        }

        template <class Out, class P>
        Out make_linear (const P &path)
        {
            auto shared = std::make_shared<const P> (path);
            Out f;
            f.a = path.start ();
            f.b = path.end ();
            f.dim = path.dim ();
            f.width = path.width ();
            f.norm = path.norm ();
            f.knots = path.times ();
            f.eval = [shared] (double t, double *out) {
                const auto &ts = shared->times ();
                const std::size_t i = step_index (ts, t);
                auto v0 = shared->value (i);
                if (i + 1 >= ts.size () || t <= ts[i])
                {
                    std::copy (v0.begin (), v0.end (), out);
                    return;
                }
                auto v1 = shared->value (i + 1);
                const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
                for (std::size_t k = 0; k < v0.size (); ++k)
                    out[k] = v0[k] + w * (v1[k] - v0[k]);
            };
            return f;
        }
    } // namespace detail

    /// Right-continuous step completion of a sampled path.
    [[nodiscard]] inline VectorFunction step_function (const SampledPath &p) { return detail::make_step<VectorFunction> (p); }
    [[nodiscard]] inline OperatorFunction step_function (const OperatorPath &p) { return detail::make_step<OperatorFunction> (p); }

    /// Continuous piecewise-linear interpolation of a sampled path.
    [[nodiscard]] inline VectorFunction linear_function (const SampledPath &p) { return detail::make_linear<VectorFunction> (p); }
    [[nodiscard]] inline OperatorFunction linear_function (const OperatorPath &p) { return detail::make_linear<OperatorFunction> (p); }

    /// g(t) given by a callable writing d numbers.
    [[nodiscard]] inline VectorFunction analytic_vector (double a, double b, std::size_t dim, std::function<void (double, double *)> fn,
                                                         std::vector<double> jumps = {}, NormKind norm = NormKind::euclidean)
    {
        detail::require (a < b, "analytic function needs a < b");
        VectorFunction f;
        f.a = a;
        f.b = b;
        f.dim = dim;
        f.width = dim;
        f.norm = norm;
        f.eval = std::move (fn);
        f.knots = jumps;
        f.jumps = std::move (jumps);
        return f;
    }

    /// f(t) given by a callable writing d*d numbers (row-major).
    [[nodiscard]] inline OperatorFunction analytic_operator (double a, double b, std::size_t dim, std::function<void (double, double *)> fn,
                                                             std::vector<double> jumps = {}, NormKind norm = NormKind::euclidean)
    {
        detail::require (a < b, "analytic function needs a < b");
        OperatorFunction f;
        f.a = a;
        f.b = b;
        f.dim = dim;
        f.width = dim * dim;
        f.norm = norm;
        f.eval = std::move (fn);
        f.knots = jumps;
        f.jumps = std::move (jumps);
        return f;
    }

    enum class TagRule
    {
        left,
        mid,
        right
    };

    [[nodiscard]] inline TagRule parse_tag_rule (const std::string &s)
    {
        if (s == "left")
            return TagRule::left;
        if (s == "mid")
            return TagRule::mid;
        if (s == "right")
            return TagRule::right;
        throw DomainError ("unknown tag rule '" + s + "' (expected left|mid|right)");
    }

    namespace detail
    {
        inline void check_pair (const OperatorFunction &f, const VectorFunction &g)
        {
            require (f.dim == g.dim, "integrand and integrator dimensions differ");
            require (f.width == f.dim * f.dim, "integrand must be matrix valued");
            require (f.a == g.a && f.b == g.b, "integrand and integrator must share the interval [a, b]");
        }

        /// First time present in both sorted lists, if any.
        inline std::optional<double> first_common (std::vector<double> x, std::vector<double> y)
        {
            std::sort (x.begin (), x.end ());
            std::sort (y.begin (), y.end ());
            std::vector<double> both;
            std::set_intersection (x.begin (), x.end (), y.begin (), y.end (), std::back_inserter (both));
            if (both.empty ())
                return std::nullopt;
            return both.front ();
        }

        inline void check_no_common_jump (const std::vector<double> &fj, const std::vector<double> &gj)
        {
            if (auto t = first_common (fj, gj))
                throw CommonJumpError ("integrand and integrator jump at the same time t = " + std::to_string (*t));
        }

        /// out += F * v.
        inline void add_mat_vec (const double *m, const double *v, double *out, std::size_t d) noexcept
        {
            for (std::size_t r = 0; r < d; ++r)
            {
                double s = 0.0;
                for (std::size_t c = 0; c < d; ++c)
                    s += m[r * d + c] * v[c];
                out[r] += s;
            }
        }
    } // namespace detail

    /// Sum_i f(xi_i) [g(t_i) - g(t_{i-1})].
    [[nodiscard]] inline std::vector<double> rs_sum (const OperatorFunction &f, const VectorFunction &g, std::span<const double> partition,
                                                     std::span<const double> tags)
    {
        detail::check_pair (f, g);
        detail::require (partition.size () >= 2, "partition needs at least two points");
        detail::require (tags.size () + 1 == partition.size (), "need one tag per partition cell");
        for (std::size_t i = 1; i < partition.size (); ++i)
            detail::require (partition[i] > partition[i - 1], "partition must be strictly increasing");
        detail::require (partition.front () >= f.a && partition.back () <= f.b, "partition leaves [a, b]");

        const std::size_t d = g.dim;
        std::vector<double> out (d, 0.0), fv (f.width), g0 (d), g1 (d), dg (d);
        g.eval (partition[0], g0.data ());
        for (std::size_t i = 1; i < partition.size (); ++i)
        {
            const double xi = tags[i - 1];
            detail::require (xi >= partition[i - 1] && xi <= partition[i], "tag outside its cell");
            g.eval (partition[i], g1.data ());
            f.eval (xi, fv.data ());
            for (std::size_t k = 0; k < d; ++k)
                dg[k] = g1[k] - g0[k];
            detail::add_mat_vec (fv.data (), dg.data (), out.data (), d);
            std::swap (g0, g1);
        }
        return out;
    }

    /// Both sides of the summation-by-parts identity
    ///   sum [f(xi_i) - f(c)] [g(t_i) - g(t_{i-1})] = sum [f(xi_i) - f(xi_{i-1})] [g(d) - g(t_{i-1})]
    /// with xi_0 = c.
    struct SummationByParts
    {
        std::vector<double> lhs, rhs;
    };

    [[nodiscard]] inline SummationByParts summation_by_parts (const OperatorFunction &f, const VectorFunction &g,
                                                              std::span<const double> partition, std::span<const double> tags)
    {
        detail::check_pair (f, g);
        detail::require (tags.size () + 1 == partition.size () && partition.size () >= 2, "need one tag per partition cell");
        const std::size_t n = tags.size (), d = g.dim, w = f.width;
        std::vector<double> fc = f (partition.front ()), gd = g (partition.back ());
        SummationByParts out {std::vector<double> (d, 0.0), std::vector<double> (d, 0.0)};
        std::vector<double> fprev = fc, diff (w), dg (d);
        for (std::size_t i = 1; i <= n; ++i)
        {
            const auto fx = f (tags[i - 1]);
            const auto gi = g (partition[i]), gim = g (partition[i - 1]);
            for (std::size_t k = 0; k < w; ++k)
                diff[k] = fx[k] - fc[k];
            for (std::size_t k = 0; k < d; ++k)
                dg[k] = gi[k] - gim[k];
            detail::add_mat_vec (diff.data (), dg.data (), out.lhs.data (), d);

            for (std::size_t k = 0; k < w; ++k)
                diff[k] = fx[k] - fprev[k];
            for (std::size_t k = 0; k < d; ++k)
                dg[k] = gd[k] - gim[k];
            detail::add_mat_vec (diff.data (), dg.data (), out.rhs.data (), d);
            fprev = fx;
        }
        return out;
    }

    /// Reported Loeve-Young comparison.
    struct LyReport
    {
        double lhs = 0.0;
        double rhs = 0.0;
        double ratio = 0.0;
        double C_pq = 0.0;
    };

    struct IntegralReport
    {
        std::vector<double> value;
        int refinement_levels = 0;
        double cauchy_gap = 0.0;
        bool converged = false;
        std::optional<double> bound_S;
        std::optional<LyReport> ly;
    };

    /// Refinement cap: TVKIT_MAX_LEVELS if set to a positive integer, else 24.
    [[nodiscard]] inline int default_max_levels ()
    {
        if (const char *env = std::getenv ("TVKIT_MAX_LEVELS"))
        {
            char *end = nullptr;
            const long v = std::strtol (env, &end, 10);
            if (end != env && *end == '\0' && v > 0 && v < 64)
                return static_cast<int> (v);
        }
        return 24;
    }

    struct RsOptions
    {
        double tol = 1e-9;
        int max_levels = default_max_levels ();
        TagRule tag = TagRule::left;
    };

    /// Base partition: {a, b} plus every breakpoint of f and g inside (a, b).
    [[nodiscard]] inline std::vector<double> base_partition (const TimeFunction &f, const TimeFunction &g)
    {
        std::vector<double> pts {f.a, f.b};
        for (const auto *src : {&f.knots, &g.knots})
            for (double t : *src)
                if (t > f.a && t < f.b)
                    pts.push_back (t);
        std::sort (pts.begin (), pts.end ());
        pts.erase (std::unique (pts.begin (), pts.end ()), pts.end ());
        return pts;
    }

    namespace detail
    {
        inline std::vector<double> level_sum (const OperatorFunction &f, const VectorFunction &g, const std::vector<double> &base, int level,
                                              TagRule tag)
        {
            const std::size_t d = g.dim;
            const std::size_t parts = std::size_t {1} << level;
            std::vector<double> out (d, 0.0), fv (f.width), g0 (d), g1 (d), dg (d);
            g.eval (base.front (), g0.data ());
            for (std::size_t c = 0; c + 1 < base.size (); ++c)
            {
                const double lo = base[c], hi = base[c + 1];
                const double h = (hi - lo) / static_cast<double> (parts);
                double left = lo;
                for (std::size_t j = 1; j <= parts; ++j)
                {
                    const double right = (j == parts) ? hi : lo + h * static_cast<double> (j);
                    const double xi = tag == TagRule::left ? left : tag == TagRule::right ? right : 0.5 * (left + right);
                    g.eval (right, g1.data ());
                    f.eval (xi, fv.data ());
                    for (std::size_t k = 0; k < d; ++k)
                        dg[k] = g1[k] - g0[k];
                    add_mat_vec (fv.data (), dg.data (), out.data (), d);
                    std::swap (g0, g1);
                    left = right;
                }
            }
            return out;
        }
    } // namespace detail

    /**
     * @brief int_a^b f dg by dyadic refinement.
     *
     * Level L splits every cell of the base partition into 2^L equal parts.
     * Returns once |S_L - S_{L-1}| <= tol; throws ConvergenceError when
     * max_levels is reached first and CommonJumpError when f and g share a
     * discontinuity. With left tags, step completions with disjoint jumps
     * are summed exactly already at level 0.
     */
    [[nodiscard]] inline IntegralReport rs_integral (const OperatorFunction &f, const VectorFunction &g, const RsOptions &opt = {})
    {
        detail::check_pair (f, g);
        detail::require (opt.tol > 0.0, "tolerance must be > 0");
        detail::require (opt.max_levels >= 1, "max_levels must be >= 1");
        detail::check_no_common_jump (f.jumps, g.jumps);

        const auto base = base_partition (f, g);
        IntegralReport r;
        std::vector<double> prev = detail::level_sum (f, g, base, 0, opt.tag);
        for (int level = 1; level <= opt.max_levels; ++level)
        {
            std::vector<double> cur = detail::level_sum (f, g, base, level, opt.tag);
            std::vector<double> diff (cur.size ());
            for (std::size_t k = 0; k < cur.size (); ++k)
                diff[k] = cur[k] - prev[k];
            const double gap = vector_norm (diff, g.norm);
            r.refinement_levels = level;
            r.cauchy_gap = gap;
            prev = std::move (cur);
            if (gap <= opt.tol)
            {
                r.value = std::move (prev);
                r.converged = true;
                return r;
            }
        }
        throw ConvergenceError ("refinement did not reach tol " + std::to_string (opt.tol) + " within " + std::to_string (opt.max_levels) +
                                " levels (last gap " + std::to_string (r.cauchy_gap) + ")");
    }

    [[nodiscard]] inline IntegralReport rs_integral (const OperatorPath &f, const SampledPath &g, const RsOptions &opt = {})
    {
        return rs_integral (step_function (f), step_function (g), opt);
    }

    namespace detail
    {
        inline void check_step_pair (const OperatorPath &f, const SampledPath &g)
        {
            require (f.dim () == g.dim (), "integrand and integrator dimensions differ");
            require (f.start () == g.start () && f.end () == g.end (), "integrand and integrator must share the interval [a, b]");
            check_no_common_jump (jump_times (f), jump_times (g));
        }
    } // namespace detail

    /// Exact integral of step completions: sum over jumps s of g of f(s) dg(s).
    [[nodiscard]] inline std::vector<double> step_integral (const OperatorPath &f, const SampledPath &g)
    {
        detail::check_step_pair (f, g);
        const std::size_t d = g.dim ();
        std::vector<double> out (d, 0.0), dg (d);
        for (std::size_t i = 1; i < g.size (); ++i)
        {
            auto a = g.value (i - 1), b = g.value (i);
            bool moved = false;
            for (std::size_t k = 0; k < d; ++k)
            {
                dg[k] = b[k] - a[k];
                moved = moved || dg[k] != 0.0;
            }
            if (moved)
                detail::add_mat_vec (f.at (g.time (i)).data (), dg.data (), out.data (), d);
        }
        return out;
    }

    /**
     * @brief I(t) = int_a^t [f(s) - f(a)] dg(s) for step completions.
     *
     * Sampled at a and at every jump time of g; a step path in the norm of g.
     */
    [[nodiscard]] inline SampledPath indefinite_integral (const OperatorPath &f, const SampledPath &g)
    {
        detail::check_step_pair (f, g);
        const std::size_t d = g.dim (), w = f.width ();
        auto fa = f.value (0);
        std::vector<double> times {g.start ()}, values (d, 0.0), acc (d, 0.0), dg (d), diff (w);
        for (std::size_t i = 1; i < g.size (); ++i)
        {
            auto a = g.value (i - 1), b = g.value (i);
            bool moved = false;
            for (std::size_t k = 0; k < d; ++k)
            {
                dg[k] = b[k] - a[k];
                moved = moved || dg[k] != 0.0;
            }
            if (!moved)
                continue;
            auto fs = f.at (g.time (i));
            for (std::size_t k = 0; k < w; ++k)
                diff[k] = fs[k] - fa[k];
            detail::add_mat_vec (diff.data (), dg.data (), acc.data (), d);
            times.push_back (g.time (i));
            values.insert (values.end (), acc.begin (), acc.end ());
        }
        return SampledPath (std::move (times), std::move (values), d, g.norm ());
    }

    /// |v| in the integrator's norm.
    [[nodiscard]] inline double result_norm (std::span<const double> v, NormKind kind) { return vector_norm (v, kind); }

} // namespace tvkit
