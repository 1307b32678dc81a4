#pragma once
/**
 * @file   variation.hpp
 * @brief  Truncated, total, p- and phi-variation of sampled paths.
 *
 * Truncated variation at threshold c is
 *
 *     TTV(f, c) = sup over t_0 < ... < t_n of  sum_i max(|f(t_i) - f(t_{i-1})| - c, 0).
 *
 * For one path we compute the pair profile M_k, the largest sum of k
 * distances over disjoint ordered pairs s_1 < t_1 <= s_2 < t_2 <= ... .
 * Then TTV(f, c) = max(0, max_k (M_k - k c)) for every c at once: an
 * optimal subsequence contributes only its increments above c, and those
 * increments are exactly a system of disjoint pairs.
 */

#include <tvkit/error.hpp>
#include <tvkit/path.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace tvkit
{
    /// M_1 <= M_2 <= ... <= M_K with K = n - 1.
    struct TtvProfile
    {
        std::vector<double> sums;

        [[nodiscard]] std::size_t max_pairs () const noexcept { return sums.size (); }

        /// M_k for k >= 1; M_0 = 0.
        [[nodiscard]] double pair_sum (std::size_t k) const noexcept
        {
            if (k == 0 || sums.empty ())
                return 0.0;
            return sums[std::min (k, sums.size ()) - 1];
        }

        [[nodiscard]] double truncated_variation (double c) const
        {
            detail::require (c >= 0.0 && !std::isnan (c), "truncation level c must be >= 0");
            double best = 0.0;
            for (std::size_t k = 0; k < sums.size (); ++k)
                best = std::max (best, sums[k] - static_cast<double> (k + 1) * c);
            return best;
        }

        [[nodiscard]] double total_variation () const noexcept { return sums.empty () ? 0.0 : sums.back (); }
        [[nodiscard]] double oscillation () const noexcept { return sums.empty () ? 0.0 : sums.front (); }
    };

    namespace detail
    {
        inline TtvProfile profile_from_table (const DistanceTable &dt)
        {
            const std::size_t n = dt.size ();
            TtvProfile out;
            if (n < 2)
                return out;

            double tv = 0.0;
            for (std::size_t i = 1; i < n; ++i)
                tv += dt.distance (i - 1, i);

            constexpr double none = -std::numeric_limits<double>::infinity ();
            std::vector<double> prev (n, 0.0), cur (n, none);
            out.sums.reserve (n - 1);

            for (std::size_t k = 1; k < n; ++k)
            {
                // cur[j]: best sum of k pairs with every index <= j.
                std::fill (cur.begin (), cur.end (), none);
                for (std::size_t j = k; j < n; ++j)
                {
                    const double *dj = dt.row (j);
                    double best = cur[j - 1];
                    for (std::size_t s = k - 1; s < j; ++s)
                        best = std::max (best, prev[s] + dj[s]);
                    cur[j] = best;
                }
                const double mk = cur[n - 1];
                out.sums.push_back (mk);
                std::swap (prev, cur);

                // M_k never exceeds TV and TV = M_{n-1}; once reached the
                // rest of the profile is flat.
                if (mk >= tv * (1.0 - 1e-14))
                {
                    out.sums.resize (n - 1, std::max (mk, tv));
                    out.sums.back () = std::max (mk, tv);
                    break;
                }
            }
            for (std::size_t k = 1; k < out.sums.size (); ++k)
                out.sums[k] = std::max (out.sums[k], out.sums[k - 1]);
            return out;
        }

        template <class Weight>
        double subsequence_dp (const DistanceTable &dt, Weight &&w)
        {
            const std::size_t n = dt.size ();
            std::vector<double> best (n, 0.0);
            double top = 0.0;
            for (std::size_t j = 1; j < n; ++j)
            {
                const double *dj = dt.row (j);
                double b = 0.0;
                for (std::size_t i = 0; i < j; ++i)
                    b = std::max (b, best[i] + w (dj[i]));
                best[j] = b;
                top = std::max (top, b);
            }
            return top;
        }
    } // namespace detail

    /// Pair profile by dynamic programming over (index, pairs used); O(n^3) worst case.
    template <MetricSequence P>
    [[nodiscard]] TtvProfile ttv_profile (const P &path)
    {
        if constexpr (std::is_same_v<P, DistanceTable>)
            return detail::profile_from_table (path);
        else
            return detail::profile_from_table (DistanceTable (path));
    }

    /// Exact truncated variation of the step completion at level c >= 0.
    template <MetricSequence P>
    [[nodiscard]] double ttv (const P &path, double c)
    {
        detail::require (c >= 0.0 && !std::isnan (c), "truncation level c must be >= 0");
        return ttv_profile (path).truncated_variation (c);
    }

    template <MetricSequence P>
    [[nodiscard]] double total_variation (const P &path)
    {
        return consecutive_variation (path);
    }

    /// sup over subsequences of sum |increment|^p (the p-th power, no root).
    template <MetricSequence P>
    [[nodiscard]] double p_variation (const P &path, double p)
    {
        detail::require (p >= 1.0, "p-variation needs p >= 1");
        if (path.size () < 2)
            return 0.0;
        const DistanceTable dt (path);
        if (p == 1.0)
            return detail::subsequence_dp (dt, [] (double d) { return d; });
        return detail::subsequence_dp (dt, [p] (double d) { return std::pow (d, p); });
    }

    /**
     * @brief Weight function for phi-variation.
     *
     * Built-in families, for p > 1 and gamma > 1:
     *   kind 1:  x^p / ln(1 + 1/x)^gamma
     *   kind 2:  x^p / ( ln(1 + 1/x) * ln(ln(e + 1/x))^gamma )
     * both extended by phi(0) = 0. A custom callable carries a caller-supplied
     * admissibility flag.
     */
    class PhiSpec
    {
      public:
        struct Family
        {
            int kind;
            double p;
            double gamma;
        };
        struct Custom
        {
            std::function<double (double)> fn;
            bool admissible;
        };

        [[nodiscard]] static PhiSpec family (int kind, double p, double gamma)
        {
            detail::require (kind == 1 || kind == 2, "phi family kind must be 1 or 2");
            detail::require (p > 1.0, "phi family needs p > 1");
            detail::require (gamma > 1.0, "phi family needs gamma > 1");
            return PhiSpec (Family {kind, p, gamma});
        }

        [[nodiscard]] static PhiSpec custom (std::function<double (double)> fn, bool admissible)
        {
            detail::require (static_cast<bool> (fn), "custom phi needs a callable");
            return PhiSpec (Custom {std::move (fn), admissible});
        }

        [[nodiscard]] double operator() (double x) const
        {
            if (const auto *f = std::get_if<Family> (&spec_))
            {
                if (x == 0.0)
                    return 0.0;
                const double u = 1.0 / x;
                const double l1 = std::log1p (u);
                const double xp = std::pow (x, f->p);
                if (f->kind == 1)
                    return xp / std::pow (l1, f->gamma);
                // ln ln(e + u) = ln(1 + ln(1 + u/e))
                const double ll = std::log1p (std::log1p (u / std::numbers::e));
                return xp / (l1 * std::pow (ll, f->gamma));
            }
            return std::get<Custom> (spec_).fn (x);
        }

        [[nodiscard]] bool admissible () const noexcept
        {
            if (const auto *c = std::get_if<Custom> (&spec_))
                return c->admissible;
            return true;
        }

        [[nodiscard]] const std::variant<Family, Custom> &spec () const noexcept { return spec_; }

      private:
        explicit PhiSpec (std::variant<Family, Custom> s) : spec_ (std::move (s)) {}
        std::variant<Family, Custom> spec_;
    };

    [[nodiscard]] inline double phi_value (const PhiSpec &phi, double x)
    {
        detail::require (x >= 0.0, "phi is defined for x >= 0");
        return phi (x);
    }

    /// Spot check: phi(0) = 0 and phi nondecreasing on `points` log-spaced
    /// points of [lo, hi].
    [[nodiscard]] inline bool phi_looks_valid (const PhiSpec &phi, double lo = 1e-6, double hi = 10.0, std::size_t points = 1000)
    {
        if (phi (0.0) != 0.0)
            return false;
        double last = 0.0;
        const double step = std::log (hi / lo) / static_cast<double> (points - 1);
        for (std::size_t i = 0; i < points; ++i)
        {
            const double v = phi (lo * std::exp (step * static_cast<double> (i)));
            if (!(v >= last))
                return false;
            last = v;
        }
        return true;
    }

    /// sup over subsequences of sum phi(|increment|).
    template <MetricSequence P>
    [[nodiscard]] double phi_variation (const P &path, const PhiSpec &phi)
    {
        if (phi (0.0) != 0.0)
            throw DomainError ("phi(0) must be 0");
        if (path.size () < 2)
            return 0.0;
        const DistanceTable dt (path);
        return detail::subsequence_dp (dt, [&phi] (double d) { return phi (d); });
    }

} // namespace tvkit
