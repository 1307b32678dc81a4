#pragma once
/**
 * @file   norms.hpp
 * @brief  Vector norms on R^d and the operator norms they induce on d x d matrices.
 */

#include <tvkit/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tvkit
{
    enum class NormKind
    {
        euclidean,
        supremum,
        l1
    };

    [[nodiscard]] inline std::string_view to_string (NormKind kind) noexcept
    {
        switch (kind)
        {
        case NormKind::euclidean:
            return "euclidean";
        case NormKind::supremum:
            return "sup";
        case NormKind::l1:
            return "l1";
        }
        return "euclidean";
    }

    /// Accepts "euclidean", "sup" (alias "supremum") and "l1".
    [[nodiscard]] inline NormKind parse_norm (std::string_view name)
    {
        if (name == "euclidean")
            return NormKind::euclidean;
        if (name == "sup" || name == "supremum")
            return NormKind::supremum;
        if (name == "l1")
            return NormKind::l1;
        throw DomainError ("unknown norm '" + std::string (name) + "' (expected euclidean|sup|l1)");
    }

    [[nodiscard]] inline double vector_norm (std::span<const double> v, NormKind kind) noexcept
    {
        switch (kind)
        {
        case NormKind::supremum:
        {
            double m = 0.0;
            for (double x : v)
                m = std::max (m, std::abs (x));
            return m;
        }
        case NormKind::l1:
        {
            double s = 0.0;
            for (double x : v)
                s += std::abs (x);
            return s;
        }
        case NormKind::euclidean:
        default:
        {
            if (v.size () == 1)
                return std::abs (v[0]);
            double s = 0.0;
            for (double x : v)
                s += x * x;
            return std::sqrt (s);
        }
        }
    }

    /// Distance ||a - b|| without allocating.
    [[nodiscard]] inline double vector_distance (std::span<const double> a, std::span<const double> b, NormKind kind) noexcept
    {
        switch (kind)
        {
        case NormKind::supremum:
        {
            double m = 0.0;
            for (std::size_t i = 0; i < a.size (); ++i)
                m = std::max (m, std::abs (a[i] - b[i]));
            return m;
        }
        case NormKind::l1:
        {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size (); ++i)
                s += std::abs (a[i] - b[i]);
            return s;
        }
        case NormKind::euclidean:
        default:
        {
            if (a.size () == 1)
                return std::abs (a[0] - b[0]);
            double s = 0.0;
            for (std::size_t i = 0; i < a.size (); ++i)
            {
                const double d = a[i] - b[i];
                s += d * d;
            }
            return std::sqrt (s);
        }
        }
    }

    namespace detail
    {
        /// Largest eigenvalue of a symmetric d x d matrix (row-major, modified
        /// in place) by cyclic Jacobi rotations. Stops once the off-diagonal
        /// mass is below `rel_tol` times the diagonal mass.
        inline double symmetric_max_eigenvalue (std::vector<double> &a, std::size_t d, double rel_tol = 1e-12)
        {
            auto at = [&] (std::size_t r, std::size_t c) -> double & { return a[r * d + c]; };

            for (int sweep = 0; sweep < 64; ++sweep)
            {
                double off = 0.0, diag = 0.0;
                for (std::size_t r = 0; r < d; ++r)
                {
                    diag += at (r, r) * at (r, r);
                    for (std::size_t c = r + 1; c < d; ++c)
                        off += at (r, c) * at (r, c);
                }
                if (off <= rel_tol * rel_tol * diag || off == 0.0)
                    break;

                for (std::size_t p = 0; p + 1 < d; ++p)
                {
                    for (std::size_t q = p + 1; q < d; ++q)
                    {
                        const double apq = at (p, q);
                        if (apq == 0.0)
                            continue;
                        const double theta = (at (q, q) - at (p, p)) / (2.0 * apq);
                        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs (theta) + std::sqrt (theta * theta + 1.0));
                        const double c = 1.0 / std::sqrt (t * t + 1.0);
                        const double s = t * c;
                        for (std::size_t k = 0; k < d; ++k)
                        {
                            const double akp = at (k, p), akq = at (k, q);
                            at (k, p) = c * akp - s * akq;
                            at (k, q) = s * akp + c * akq;
                        }
                        for (std::size_t k = 0; k < d; ++k)
                        {
                            const double apk = at (p, k), aqk = at (q, k);
                            at (p, k) = c * apk - s * aqk;
                            at (q, k) = s * apk + c * aqk;
                        }
                    }
                }
            }

            double top = at (0, 0);
            for (std::size_t r = 1; r < d; ++r)
                top = std::max (top, at (r, r));
            return top;
        }
    } // namespace detail

    /**
     * @brief Operator norm of a d x d row-major matrix induced by `kind`.
     *
     * sup -> maximum absolute row sum, l1 -> maximum absolute column sum,
     * euclidean -> largest singular value (Jacobi iteration on A^T A).
     */
    [[nodiscard]] inline double operator_norm (std::span<const double> m, std::size_t d, NormKind kind)
    {
        if (d == 1)
            return std::abs (m[0]);

        switch (kind)
        {
        case NormKind::supremum:
        {
            double best = 0.0;
            for (std::size_t r = 0; r < d; ++r)
            {
                double s = 0.0;
                for (std::size_t c = 0; c < d; ++c)
                    s += std::abs (m[r * d + c]);
                best = std::max (best, s);
            }
            return best;
        }
        case NormKind::l1:
        {
            double best = 0.0;
            for (std::size_t c = 0; c < d; ++c)
            {
                double s = 0.0;
                for (std::size_t r = 0; r < d; ++r)
                    s += std::abs (m[r * d + c]);
                best = std::max (best, s);
            }
            return best;
        }
        case NormKind::euclidean:
        default:
        {
            std::vector<double> gram (d * d, 0.0);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i; j < d; ++j)
                {
                    double s = 0.0;
                    for (std::size_t k = 0; k < d; ++k)
                        s += m[k * d + i] * m[k * d + j];
                    gram[i * d + j] = s;
                    gram[j * d + i] = s;
                }
            return std::sqrt (std::max (0.0, detail::symmetric_max_eigenvalue (gram, d)));
        }
        }
    }

    /// out = M * v for a d x d row-major matrix.
    inline void mat_vec (std::span<const double> m, std::span<const double> v, std::span<double> out) noexcept
    {
        const std::size_t d = v.size ();
        for (std::size_t r = 0; r < d; ++r)
        {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c)
                s += m[r * d + c] * v[c];
            out[r] = s;
        }
    }

} // namespace tvkit
