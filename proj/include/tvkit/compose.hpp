#pragma once
/**
 * @file   compose.hpp
 * @brief  Time changes and pointwise maps of sampled paths.
 */

#include <tvkit/error.hpp>
#include <tvkit/path.hpp>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace tvkit
{
    using TimeChange = std::function<double (double)>;
    using PointMap = std::function<double (double)>;

    /**
     * @brief t_i -> G(X(A(t_i))) on the original time grid.
     *
     * X is the step completion of `path` looked up at the nearest sample to
     * the left; an argument within 1e-12 * (b - a) of a sample snaps onto it
     * so grid-preserving maps such as reversal are exact. G acts on each
     * coordinate. A must map the sample range into itself.
     */
    [[nodiscard]] inline SampledPath compose (const SampledPath &path, const TimeChange &time_change, const PointMap &point_map)
    {
        const double a = path.start (), b = path.end ();
        const double snap = 1e-12 * (b - a);
        const auto &times = path.times ();
        std::vector<double> out;
        out.reserve (path.size () * path.dim ());
        for (double t : times)
        {
            const double s = time_change ? time_change (t) : t;
            if (!(s >= a - snap && s <= b + snap))
                throw DomainError ("time change leaves the sample range at t = " + std::to_string (t));
            std::size_t idx = detail::step_index (times, s + snap);
            for (double x : path.value (idx))
                out.push_back (point_map ? point_map (x) : x);
        }
        return SampledPath (times, std::move (out), path.dim (), path.norm ());
    }

    [[nodiscard]] inline TimeChange reversal (double a, double b)
    {
        return [a, b] (double t) { return a + b - t; };
    }

} // namespace tvkit
