#pragma once
/**
 * @file   path.hpp
 * @brief  Sampled paths with vector or matrix values.
 *
 * A path is a finite list of strictly increasing time stamps with a value
 * attached to each. It stands for its right-continuous step completion:
 * f(t) = v_i for t_i <= t < t_{i+1}. Every variation functional of that
 * step function is attained on sample points, so all functionals in this
 * library work on sample indices only.
 */

#include <tvkit/error.hpp>
#include <tvkit/norms.hpp>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tvkit
{
    namespace detail
    {
        inline void check_times (const std::vector<double> &times)
        {
            require (!times.empty (), "path needs at least one sample");
            for (std::size_t i = 0; i < times.size (); ++i)
            {
                require (std::isfinite (times[i]), "time stamps must be finite");
                if (i > 0)
                    require (times[i] > times[i - 1], "time stamps must be strictly increasing");
            }
        }

        inline void check_finite (const std::vector<double> &values)
        {
            for (double x : values)
                require (std::isfinite (x), "path values must be finite");
        }

        /// Index of the sample whose step contains t (clamped to the ends).
        inline std::size_t step_index (const std::vector<double> &times, double t) noexcept
        {
            auto it = std::upper_bound (times.begin (), times.end (), t);
            if (it == times.begin ())
                return 0;
            return static_cast<std::size_t> (it - times.begin ()) - 1;
        }
    } // namespace detail

    /// Anything that exposes `size()` points and a metric `distance(i, j)`.
    template <class P>
    concept MetricSequence = requires (const P &p, std::size_t i) {
        { p.size () } -> std::convertible_to<std::size_t>;
        { p.distance (i, i) } -> std::convertible_to<double>;
    };

    /**
     * @brief Common storage for vector and matrix valued paths.
     *
     * `Width` values are stored per sample: d for vectors, d*d for matrices.
     */
    template <class Derived>
    class PathBase
    {
      public:
        [[nodiscard]] std::size_t size () const noexcept { return times_.size (); }
        [[nodiscard]] std::size_t dim () const noexcept { return dim_; }
        [[nodiscard]] std::size_t width () const noexcept { return width_; }
        [[nodiscard]] NormKind norm () const noexcept { return norm_; }

        [[nodiscard]] const std::vector<double> &times () const noexcept { return times_; }
        [[nodiscard]] double time (std::size_t i) const { return times_[i]; }
        [[nodiscard]] double start () const noexcept { return times_.front (); }
        [[nodiscard]] double end () const noexcept { return times_.back (); }

        [[nodiscard]] const std::vector<double> &flat_values () const noexcept { return values_; }

        [[nodiscard]] std::span<const double> value (std::size_t i) const
        {
            return {values_.data () + i * width_, width_};
        }

        /// Step completion evaluated at t (clamped outside the sample range).
        [[nodiscard]] std::span<const double> at (double t) const
        {
            return value (detail::step_index (times_, t));
        }

        [[nodiscard]] std::size_t index_at (double t) const noexcept { return detail::step_index (times_, t); }

        /// Samples [first, last] inclusive.
        [[nodiscard]] Derived restricted (std::size_t first, std::size_t last) const
        {
            detail::require (first <= last && last < size (), "restriction indices out of range");
            std::vector<double> t (times_.begin () + first, times_.begin () + last + 1);
            std::vector<double> v (values_.begin () + first * width_, values_.begin () + (last + 1) * width_);
            return Derived (std::move (t), std::move (v), dim_, norm_);
        }

        /**
         * @brief Step completion restricted to [c, d].
         *
         * The first sample is (c, f(c)); when c is not a sample time the value
         * of the step containing c is used. Samples in (c, d] follow.
         */
        [[nodiscard]] Derived restricted_to (double c, double d) const
        {
            detail::require (c <= d, "restriction needs c <= d");
            detail::require (c >= start () && d <= end (), "restriction interval outside the sample range");
            std::vector<double> t {c};
            auto v0 = at (c);
            std::vector<double> v (v0.begin (), v0.end ());
            for (std::size_t i = 0; i < size (); ++i)
            {
                if (times_[i] > c && times_[i] <= d)
                {
                    t.push_back (times_[i]);
                    auto vi = value (i);
                    v.insert (v.end (), vi.begin (), vi.end ());
                }
            }
            return Derived (std::move (t), std::move (v), dim_, norm_);
        }

        /// Same samples, every coordinate multiplied by `factor`.
        [[nodiscard]] Derived scaled (double factor) const
        {
            std::vector<double> v = values_;
            for (double &x : v)
                x *= factor;
            return Derived (times_, std::move (v), dim_, norm_);
        }

        /// Same samples, different norm.
        [[nodiscard]] Derived with_norm (NormKind kind) const { return Derived (times_, values_, dim_, kind); }

        [[nodiscard]] friend Derived operator+ (const Derived &a, const Derived &b)
        {
            detail::require (a.times_ == b.times_, "path sum needs identical time stamps");
            detail::require (a.dim_ == b.dim_, "path sum needs equal dimensions");
            std::vector<double> v = a.values_;
            for (std::size_t i = 0; i < v.size (); ++i)
                v[i] += b.values_[i];
            return Derived (a.times_, std::move (v), a.dim_, a.norm_);
        }

        [[nodiscard]] friend Derived operator- (const Derived &a, const Derived &b) { return a + b.scaled (-1.0); }

        [[nodiscard]] bool operator== (const PathBase &) const = default;

      protected:
        PathBase (std::vector<double> times, std::vector<double> values, std::size_t dim, std::size_t width, NormKind norm)
            : times_ (std::move (times)), values_ (std::move (values)), dim_ (dim), width_ (width), norm_ (norm)
        {
            detail::require (dim_ >= 1, "dimension must be at least 1");
            detail::check_times (times_);
            detail::require (values_.size () == times_.size () * width_, "value count does not match times and dimension");
            detail::check_finite (values_);
        }

        std::vector<double> times_;
        std::vector<double> values_;
        std::size_t dim_;
        std::size_t width_;
        NormKind norm_;
    };

    /// Path with values in R^d.
    class SampledPath : public PathBase<SampledPath>
    {
      public:
        /// `values` holds times.size() * dim numbers, sample-major.
        SampledPath (std::vector<double> times, std::vector<double> values, std::size_t dim = 1, NormKind norm = NormKind::euclidean)
            : PathBase (std::move (times), std::move (values), dim, dim, norm)
        {
        }

        [[nodiscard]] static SampledPath from_rows (std::vector<double> times, const std::vector<std::vector<double>> &rows,
                                                    NormKind norm = NormKind::euclidean)
        {
            detail::require (!rows.empty (), "path needs at least one sample");
            const std::size_t d = rows.front ().size ();
            std::vector<double> flat;
            flat.reserve (rows.size () * d);
            for (const auto &r : rows)
            {
                detail::require (r.size () == d, "all values must have the same dimension");
                flat.insert (flat.end (), r.begin (), r.end ());
            }
            return SampledPath (std::move (times), std::move (flat), d, norm);
        }

        [[nodiscard]] double distance (std::size_t i, std::size_t j) const noexcept
        {
            return vector_distance (value (i), value (j), norm_);
        }

        [[nodiscard]] double value_norm (std::size_t i) const noexcept { return vector_norm (value (i), norm_); }

        /// Coordinate k of sample i.
        [[nodiscard]] double coord (std::size_t i, std::size_t k) const { return values_[i * width_ + k]; }
    };

    /// Path with values in the d x d real matrices (row-major), measured in
    /// the operator norm induced by its vector norm.
    class OperatorPath : public PathBase<OperatorPath>
    {
      public:
        OperatorPath (std::vector<double> times, std::vector<double> values, std::size_t dim = 1, NormKind norm = NormKind::euclidean)
            : PathBase (std::move (times), std::move (values), dim, dim * dim, norm)
        {
        }

        /// A scalar path seen as 1 x 1 matrices.
        [[nodiscard]] static OperatorPath from_scalar (const SampledPath &p)
        {
            detail::require (p.dim () == 1, "from_scalar needs a one-dimensional path");
            return OperatorPath (p.times (), p.flat_values (), 1, p.norm ());
        }

        /// Multiples of the identity: value_i = s_i * I_d.
        [[nodiscard]] static OperatorPath diagonal (const SampledPath &scalar, std::size_t d, NormKind norm = NormKind::euclidean)
        {
            detail::require (scalar.dim () == 1, "diagonal needs a one-dimensional path");
            std::vector<double> v (scalar.size () * d * d, 0.0);
            for (std::size_t i = 0; i < scalar.size (); ++i)
                for (std::size_t k = 0; k < d; ++k)
                    v[i * d * d + k * d + k] = scalar.coord (i, 0);
            return OperatorPath (scalar.times (), std::move (v), d, norm);
        }

        [[nodiscard]] double distance (std::size_t i, std::size_t j) const
        {
            if (dim_ == 1)
                return std::abs (values_[i] - values_[j]);
            std::vector<double> diff (width_);
            auto a = value (i), b = value (j);
            for (std::size_t k = 0; k < width_; ++k)
                diff[k] = a[k] - b[k];
            return operator_norm (diff, dim_, norm_);
        }

        [[nodiscard]] double value_norm (std::size_t i) const { return operator_norm (value (i), dim_, norm_); }
    };

    /**
     * @brief Dense cache of pairwise distances.
     *
     * The variation algorithms touch every pair many times; for matrix
     * paths each distance is an eigenvalue problem, so it pays to compute
     * them once.
     */
    class DistanceTable
    {
      public:
        template <MetricSequence P>
        explicit DistanceTable (const P &p) : n_ (p.size ()), d_ (n_ * n_, 0.0)
        {
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i + 1; j < n_; ++j)
                {
                    const double x = p.distance (i, j);
                    d_[i * n_ + j] = x;
                    d_[j * n_ + i] = x;
                }
        }

        [[nodiscard]] std::size_t size () const noexcept { return n_; }
        [[nodiscard]] double distance (std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

        /// Row i: distances from sample i to every sample.
        [[nodiscard]] const double *row (std::size_t i) const noexcept { return d_.data () + i * n_; }

      private:
        std::size_t n_;
        std::vector<double> d_;
    };

    /// max_{i<j} d(v_i, v_j); zero for a single sample.
    template <MetricSequence P>
    [[nodiscard]] double oscillation (const P &p)
    {
        double best = 0.0;
        for (std::size_t i = 0; i < p.size (); ++i)
            for (std::size_t j = i + 1; j < p.size (); ++j)
                best = std::max (best, static_cast<double> (p.distance (i, j)));
        return best;
    }

    /// max_i d(v_i, v_0): the half-width reference used by the integral bounds.
    template <MetricSequence P>
    [[nodiscard]] double max_distance_from_start (const P &p)
    {
        double best = 0.0;
        for (std::size_t i = 1; i < p.size (); ++i)
            best = std::max (best, static_cast<double> (p.distance (0, i)));
        return best;
    }

    /// Sum of consecutive distances: the total variation of the step completion.
    template <MetricSequence P>
    [[nodiscard]] double consecutive_variation (const P &p)
    {
        double s = 0.0;
        for (std::size_t i = 1; i < p.size (); ++i)
            s += p.distance (i - 1, i);
        return s;
    }

    /// Sample times i >= 1 whose value differs from the previous sample.
    template <class P>
    [[nodiscard]] std::vector<double> jump_times (const P &p)
    {
        std::vector<double> out;
        for (std::size_t i = 1; i < p.size (); ++i)
        {
            auto a = p.value (i - 1), b = p.value (i);
            if (!std::equal (a.begin (), a.end (), b.begin ()))
                out.push_back (p.time (i));
        }
        return out;
    }

} // namespace tvkit
