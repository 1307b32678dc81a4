#pragma once
/**
 * @file   random.hpp
 * @brief  Seeded generators: SplitMix64 seed derivation and symmetric
 *         alpha-stable random walks.
 *
 * Parametrization: increments are S(alpha, beta = 0, sigma, mu = 0) in the
 * Samorodnitsky-Taqqu convention, drawn by the Chambers-Mallows-Stuck
 * formula. For alpha = 2 this is N(0, 2 sigma^2), so an increment over a
 * grid step h has variance 2 * scale^2 * h.
 */

#include <tvkit/error.hpp>
#include <tvkit/path.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace tvkit
{
    /// SplitMix64 step; used to derive independent per-trial seeds.
    [[nodiscard]] constexpr std::uint64_t splitmix64 (std::uint64_t x) noexcept
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Seed for trial `index` of a run seeded with `base`.
    [[nodiscard]] constexpr std::uint64_t derive_seed (std::uint64_t base, std::uint64_t index) noexcept
    {
        return splitmix64 (base ^ splitmix64 (index + 1));
    }

    /// Uniform double in (0, 1) from the top 53 bits; never 0 or 1.
    [[nodiscard]] inline double open_uniform (std::mt19937_64 &rng) noexcept
    {
        return (static_cast<double> (rng () >> 11) + 0.5) * 0x1.0p-53;
    }

    /// One standard symmetric alpha-stable draw (sigma = 1).
    [[nodiscard]] inline double stable_draw (std::mt19937_64 &rng, double alpha)
    {
        const double v = std::numbers::pi * (open_uniform (rng) - 0.5);
        const double w = -std::log (1.0 - open_uniform (rng));
        if (alpha == 1.0)
            return std::tan (v);
        const double a = std::sin (alpha * v) / std::pow (std::cos (v), 1.0 / alpha);
        const double b = std::pow (std::cos ((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
        return a * b;
    }

    /**
     * @brief Symmetric alpha-stable random walk on a uniform grid of [0, horizon].
     *
     * X_0 = 0 and X_{i+1} - X_i = scale * h^(1/alpha) * S_i with h = horizon/(n-1).
     * Bitwise reproducible for a given seed (mt19937_64 plus explicit
     * transforms, no std distributions).
     */
    [[nodiscard]] inline SampledPath gen_alpha_stable (std::size_t n, double alpha, double scale, std::uint64_t seed,
                                                       double horizon = 1.0)
    {
        detail::require (n >= 2, "alpha-stable generator needs n >= 2");
        detail::require (alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2]");
        detail::require (scale > 0.0 && std::isfinite (scale), "scale must be positive");
        detail::require (horizon > 0.0 && std::isfinite (horizon), "horizon must be positive");

        std::mt19937_64 rng (seed);
        const double h = horizon / static_cast<double> (n - 1);
        const double factor = scale * std::pow (h, 1.0 / alpha);
        std::vector<double> t (n), v (n);
        double x = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            t[i] = (i + 1 == n) ? horizon : h * static_cast<double> (i);
            v[i] = x;
            if (i + 1 < n)
                x += factor * stable_draw (rng, alpha);
        }
        detail::require (std::isfinite (x), "alpha-stable draw overflowed");
        return SampledPath (std::move (t), std::move (v), 1, NormKind::euclidean);
    }

} // namespace tvkit
