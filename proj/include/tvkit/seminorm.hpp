#pragma once
/**
 * @file   seminorm.hpp
 * @brief  The p-TV seminorm (sup_{delta>0} delta^(p-1) TTV(f, delta))^(1/p).
 *
 * For a single increment x, sup_delta delta^(p-1) (x - delta)_+ = c_p x^p
 * with c_p = (p-1)^(p-1) / p^p, attained at delta = x (p-1)/p. Combined
 * with TTV(f, delta) = max_k (M_k - k delta) the two suprema commute and
 *
 *     ||f||_{p-TV}^p = max_k c_p M_k^p / k^(p-1),
 *
 * attained at delta*_k = M_k (p-1) / (k p). No numerical optimizer is used.
 */

#include <tvkit/error.hpp>
#include <tvkit/path.hpp>
#include <tvkit/variation.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace tvkit
{
    /// (p-1)^(p-1) / p^p with 0^0 = 1, so c_1 = 1. Lies in [2^-p, 1].
    [[nodiscard]] inline double c_p_const (double p)
    {
        detail::require (p >= 1.0, "c_p needs p >= 1");
        if (p == 1.0)
            return 1.0;
        return std::pow (p - 1.0, p - 1.0) / std::pow (p, p);
    }

    /// sup_{delta > 0} delta^(p-1) (x - delta)_+ = c_p x^p.
    [[nodiscard]] inline double sup_delta_single (double x, double p)
    {
        detail::require (x >= 0.0, "x must be >= 0");
        return c_p_const (p) * std::pow (x, p);
    }

    /**
     * @brief (sup_delta delta^(p-1) sum_i (x_i - delta)_+)^(1/p) for a fixed
     *        list of increments.
     *
     * With x* sorted nondecreasingly the supremum is
     * max_j (n-j+1)^(1/p-1) c_p^(1/p) sum_{i>=j} x*_i.
     */
    [[nodiscard]] inline double fixed_partition_seminorm (std::span<const double> increments, double p)
    {
        detail::require (p >= 1.0, "seminorm needs p >= 1");
        for (double x : increments)
            detail::require (x >= 0.0, "increments must be >= 0");
        if (increments.empty ())
            return 0.0;
        std::vector<double> x (increments.begin (), increments.end ());
        std::sort (x.begin (), x.end ());
        const double cp = std::pow (c_p_const (p), 1.0 / p);
        double best = 0.0, tail = 0.0;
        const std::size_t n = x.size ();
        for (std::size_t j = n; j-- > 0;)
        {
            tail += x[j];
            const double count = static_cast<double> (n - j);
            best = std::max (best, std::pow (count, 1.0 / p - 1.0) * cp * tail);
        }
        return best;
    }

    struct SeminormReport
    {
        double value = 0.0;                 ///< ||f||_{p-TV}
        double value_pow = 0.0;             ///< value^p, computed without the root
        std::optional<std::size_t> argmax_k;
        std::optional<double> argmax_delta; ///< M_k (p-1) / (k p); 0 when p = 1
        double p = 1.0;
    };

    /// Seminorm from a precomputed pair profile.
    [[nodiscard]] inline SeminormReport p_tv_seminorm (const TtvProfile &profile, double p)
    {
        detail::require (p >= 1.0, "seminorm needs p >= 1");
        SeminormReport r;
        r.p = p;
        const double cp = c_p_const (p);
        double best = 0.0;
        for (std::size_t k = 1; k <= profile.sums.size (); ++k)
        {
            const double m = profile.sums[k - 1];
            if (m <= 0.0)
                continue;
            const double kd = static_cast<double> (k);
            const double v = p == 1.0 ? m : cp * std::pow (m, p) / std::pow (kd, p - 1.0);
            if (v > best)
            {
                best = v;
                r.argmax_k = k;
                r.argmax_delta = m * (p - 1.0) / (kd * p);
            }
        }
        r.value_pow = best;
        r.value = p == 1.0 ? best : std::pow (best, 1.0 / p);
        return r;
    }

    template <MetricSequence P>
    [[nodiscard]] SeminormReport p_tv_seminorm (const P &path, double p)
    {
        detail::require (p >= 1.0, "seminorm needs p >= 1");
        return p_tv_seminorm (ttv_profile (path), p);
    }

    /// ||f(a)|| + ||f||_{p-TV}.
    template <class P>
    [[nodiscard]] double tv_p_norm (const P &path, double p)
    {
        return path.value_norm (0) + p_tv_seminorm (path, p).value;
    }

} // namespace tvkit
