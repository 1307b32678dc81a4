#pragma once
/**
 * @file   fixtures.hpp
 * @brief  Small hand-made paths with known variation values.
 */

#include <tvkit/error.hpp>
#include <tvkit/path.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace tvkit::fixtures
{
    /// Three points on the unit circle at mutual distance sqrt(3), times 0, 1, 2.
    /// Coordinates are written in closed form so all three distances are the
    /// same double.
    [[nodiscard]] inline SampledPath circle3 ()
    {
        const double h = std::sqrt (3.0) / 2.0;
        return SampledPath ({0.0, 1.0, 2.0}, {1.0, 0.0, -0.5, h, -0.5, -h}, 2, NormKind::euclidean);
    }

    /// Scalar path on [-1, 1]: 0 at -1, jumps to 1 at 0 and to -1 at 1.
    [[nodiscard]] inline SampledPath step_split ()
    {
        return SampledPath ({-1.0, 0.0, 1.0}, {0.0, 1.0, -1.0}, 1, NormKind::euclidean);
    }

    /**
     * @brief f(1/k) = (ln k / k)^(1/p) for k = 1..n, zero elsewhere on [0, 1].
     *
     * Samples: t = 0, then 1/n, ..., 1/2, 1 with a zero sample at the
     * midpoint of every pair of neighbours, so the step completion returns
     * to zero between spikes. 2n samples in total.
     */
    [[nodiscard]] inline SampledPath log_seq (double p, std::size_t n)
    {
        detail::require (p > 1.0, "logSeq needs p > 1");
        detail::require (n >= 2, "logSeq needs n >= 2");
        std::vector<double> t {0.0}, v {0.0};
        for (std::size_t k = n; k > 0; --k)
        {
            const double tk = 1.0 / static_cast<double> (k);
            if (k < n)
            {
                const double prev = 1.0 / static_cast<double> (k + 1);
                t.push_back (0.5 * (prev + tk));
                v.push_back (0.0);
            }
            t.push_back (tk);
            const double kd = static_cast<double> (k);
            v.push_back (std::pow (std::log (kd) / kd, 1.0 / p));
        }
        return SampledPath (std::move (t), std::move (v), 1, NormKind::euclidean);
    }

    /// Lookup by name: "circle3", "stepSplit", "logSeq" (uses p and n).
    [[nodiscard]] inline SampledPath by_name (std::string_view name, double p = 2.0, std::size_t n = 16)
    {
        if (name == "circle3")
            return circle3 ();
        if (name == "stepSplit")
            return step_split ();
        if (name == "logSeq")
            return log_seq (p, n);
        throw DomainError ("unknown fixture '" + std::string (name) + "' (expected circle3|stepSplit|logSeq)");
    }

} // namespace tvkit::fixtures
