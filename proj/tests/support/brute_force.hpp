#pragma once
// Exponential-time reference implementations. Test code only.

#include <tvkit/path.hpp>
#include <tvkit/seminorm.hpp>
#include <tvkit/variation.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace tvkit::oracle
{
    /// max over every subsequence i_0 < ... < i_m of sum w(d(i_{j-1}, i_j)).
    template <class P, class W>
    double subsequence_brute (const P &path, W &&w)
    {
        const std::size_t n = path.size ();
        if (n > 14)
            throw std::invalid_argument ("brute force needs at most 14 samples");
        double best = 0.0;
        std::vector<std::size_t> idx;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        {
            idx.clear ();
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                    idx.push_back (i);
            double s = 0.0;
            for (std::size_t j = 1; j < idx.size (); ++j)
                s += w (path.distance (idx[j - 1], idx[j]));
            best = std::max (best, s);
        }
        return best;
    }

    /// Truncated variation straight from its definition.
    template <class P>
    double ttv_brute (const P &path, double c)
    {
        if (c < 0)
            throw std::invalid_argument ("c must be >= 0");
        return subsequence_brute (path, [c] (double d) { return std::max (d - c, 0.0); });
    }

    template <class P>
    double p_variation_brute (const P &path, double p)
    {
        return subsequence_brute (path, [p] (double d) { return std::pow (d, p); });
    }

    template <class P>
    double phi_variation_brute (const P &path, const PhiSpec &phi)
    {
        return subsequence_brute (path, [&phi] (double d) { return phi (d); });
    }

    /// O(n^2) truncated variation: best[j] = max_i best[i] + (d(i, j) - c)_+.
    template <class P>
    double ttv_direct (const P &path, double c)
    {
        const std::size_t n = path.size ();
        std::vector<double> best (n, 0.0);
        double top = 0.0;
        for (std::size_t j = 1; j < n; ++j)
        {
            for (std::size_t i = 0; i < j; ++i)
                best[j] = std::max (best[j], best[i] + std::max (path.distance (i, j) - c, 0.0));
            top = std::max (top, best[j]);
        }
        return top;
    }

    /// M_k by enumerating every system of k disjoint ordered pairs.
    template <class P>
    std::vector<double> profile_brute (const P &path)
    {
        const std::size_t n = path.size ();
        std::vector<double> best (n > 0 ? n - 1 : 0, 0.0);
        std::function<void (std::size_t, std::size_t, double)> rec = [&] (std::size_t from, std::size_t k, double sum) {
            if (k > 0)
                best[k - 1] = std::max (best[k - 1], sum);
            for (std::size_t s = from; s < n; ++s)
                for (std::size_t t = s + 1; t < n; ++t)
                    rec (t, k + 1, sum + path.distance (s, t));
        };
        rec (0, 0, 0.0);
        for (std::size_t k = 1; k < best.size (); ++k)
            best[k] = std::max (best[k], best[k - 1]);
        return best;
    }

    /// (max over nonempty subsets J of c_p (sum_J x)^p / |J|^(p-1))^(1/p).
    inline double fixed_partition_brute (std::span<const double> x, double p)
    {
        const std::size_t n = x.size ();
        if (n > 16)
            throw std::invalid_argument ("brute force needs at most 16 increments");
        const double cp = c_p_const (p);
        double best = 0.0;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
        {
            double s = 0.0;
            double m = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                {
                    s += x[i];
                    m += 1.0;
                }
            best = std::max (best, cp * std::pow (s, p) / std::pow (m, p - 1.0));
        }
        return std::pow (best, 1.0 / p);
    }

    /// max over a delta grid of delta^(p-1) * h(delta).
    template <class H>
    double grid_sup (H &&h, double p, const std::vector<double> &grid)
    {
        double best = 0.0;
        for (double d : grid)
            if (d > 0.0)
                best = std::max (best, std::pow (d, p - 1.0) * h (d));
        return best;
    }

} // namespace tvkit::oracle
