#pragma once
/**
 * @file   bounds.hpp
 * @brief  Truncated-variation bounds for Riemann-Stieltjes integrals.
 *
 * Main quantity, for nonincreasing positive sequences eta_k, theta_k and
 * eta_{-1} = 1/2 sup |f(t) - f(a)|:
 *
 *     S = 4 sum_k 3^k eta_{k-1} TTV(g, theta_k/4) + 4 sum_k 3^k theta_k TTV(f, eta_k/4)
 *
 * and |int f dg - f(a)[g(b) - g(a)]| <= S whenever f and g share no jump.
 * With the geometric-in-exponent sequences built by `choose_sequences`
 * S is dominated by C_{p,q} |f|_{p-var}^{p-p/q} |f|_osc^{1+p/q-p} |g|_{q-var}
 * (an improved Loeve-Young inequality); the analogous bound for the q-TV
 * seminorm of the indefinite integral uses the constant D_{p,q}.
 */

#include <tvkit/error.hpp>
#include <tvkit/integrate.hpp>
#include <tvkit/path.hpp>
#include <tvkit/seminorm.hpp>
#include <tvkit/variation.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tvkit
{
    namespace detail
    {
        inline const double ln3 = std::log (3.0);

        /// 3^k * x without overflowing when x is tiny; 0 when x is 0.
        inline double pow3_times (double k, double x)
        {
            if (x == 0.0)
                return 0.0;
            return std::exp (k * ln3 + std::log (x));
        }

        inline void check_exponents (double p, double q)
        {
            require (p > 1.0 && q > 1.0, "p and q must both be > 1");
            require (1.0 / p + 1.0 / q > 1.0, "hypothesis violated: 1/p + 1/q must be > 1");
        }

        inline void check_sequence (const std::vector<double> &s, const char *name)
        {
            for (std::size_t i = 0; i < s.size (); ++i)
            {
                require (s[i] > 0.0 && std::isfinite (s[i]), std::string (name) + " must be positive");
                if (i > 0)
                    require (s[i] <= s[i - 1], std::string (name) + " must be nonincreasing");
            }
        }
    } // namespace detail

    /**
     * @brief The pair (eta_k)_{k>=0}, (theta_k)_{k>=0}.
     *
     * eta_{-1} is not stored: it is always 1/2 sup |f - f(a)| of the
     * integrand at hand.
     */
    class SequencePair
    {
      public:
        enum class Kind
        {
            explicit_lists,
            closed_form,
            generated,
            trivial
        };

        /// Finite lists eta_0.., theta_0.. (positive, nonincreasing).
        [[nodiscard]] static SequencePair explicit_lists (std::vector<double> eta, std::vector<double> theta)
        {
            detail::check_sequence (eta, "eta");
            detail::check_sequence (theta, "theta");
            SequencePair s (Kind::explicit_lists);
            s.eta_list_ = std::move (eta);
            s.theta_list_ = std::move (theta);
            return s;
        }

        /**
         * @brief eta_{k-1} = beta 3^(1 - r^k), theta_k = gamma 3^(-r^k alpha/(q-1)) with
         *        alpha = (sqrt((q-1)(p-1)) + 1)/2 and r = alpha^2 / ((q-1)(p-1)).
         */
        [[nodiscard]] static SequencePair closed_form (double p, double q, double beta, double gamma)
        {
            detail::check_exponents (p, q);
            detail::require (beta > 0.0 && gamma > 0.0, "beta and gamma must be positive");
            SequencePair s (Kind::closed_form);
            s.p_ = p;
            s.q_ = q;
            s.alpha_ = (std::sqrt ((q - 1.0) * (p - 1.0)) + 1.0) / 2.0;
            s.r_ = s.alpha_ * s.alpha_ / ((q - 1.0) * (p - 1.0));
            s.beta_ = beta;
            s.gamma_ = gamma;
            return s;
        }

        /// Arbitrary callables k -> eta_k, k -> theta_k (k >= 0). The tail bound
        /// assumes the ratios of consecutive terms are eventually nonincreasing.
        [[nodiscard]] static SequencePair generated (std::function<double (long)> eta, std::function<double (long)> theta)
        {
            detail::require (eta && theta, "generated sequences need callables");
            SequencePair s (Kind::generated);
            s.eta_fn_ = std::move (eta);
            s.theta_fn_ = std::move (theta);
            return s;
        }

        /// All zeros: used when the integrand is constant or the integrator has no variation.
        [[nodiscard]] static SequencePair trivial () { return SequencePair (Kind::trivial); }

        [[nodiscard]] Kind kind () const noexcept { return kind_; }
        [[nodiscard]] double alpha () const noexcept { return alpha_; }
        [[nodiscard]] double r () const noexcept { return r_; }
        [[nodiscard]] double beta () const noexcept { return beta_; }
        [[nodiscard]] double gamma () const noexcept { return gamma_; }

        /// Number of available terms, if finite.
        [[nodiscard]] std::optional<std::size_t> length () const
        {
            if (kind_ == Kind::explicit_lists)
                return std::min (eta_list_.size (), theta_list_.size ());
            return std::nullopt;
        }

        /// eta_k for k >= -1; eta_{-1} is only defined for the closed form.
        [[nodiscard]] double eta (long k) const
        {
            switch (kind_)
            {
            case Kind::explicit_lists:
                return eta_list_.at (static_cast<std::size_t> (k));
            case Kind::closed_form:
                return beta_ * std::exp (detail::ln3 * (1.0 - std::pow (r_, static_cast<double> (k + 1))));
            case Kind::generated:
                return eta_fn_ (k);
            case Kind::trivial:
            default:
                return 0.0;
            }
        }

        /// 3^k eta_{k-1} computed in log space (closed form) to avoid 0 * inf.
        [[nodiscard]] double scaled_eta_prev (long k) const
        {
            if (kind_ == Kind::closed_form)
                return beta_ * std::exp (detail::ln3 * (static_cast<double> (k) + 1.0 - std::pow (r_, static_cast<double> (k))));
            return detail::pow3_times (static_cast<double> (k), eta (k - 1));
        }

        [[nodiscard]] double theta (long k) const
        {
            switch (kind_)
            {
            case Kind::explicit_lists:
                return theta_list_.at (static_cast<std::size_t> (k));
            case Kind::closed_form:
                return gamma_ * std::exp (-detail::ln3 * std::pow (r_, static_cast<double> (k)) * alpha_ / (q_ - 1.0));
            case Kind::generated:
                return theta_fn_ (k);
            case Kind::trivial:
            default:
                return 0.0;
            }
        }

        [[nodiscard]] double scaled_theta (long k) const
        {
            if (kind_ == Kind::closed_form)
                return gamma_ *
                       std::exp (detail::ln3 * (static_cast<double> (k) - std::pow (r_, static_cast<double> (k)) * alpha_ / (q_ - 1.0)));
            return detail::pow3_times (static_cast<double> (k), theta (k));
        }

      private:
        explicit SequencePair (Kind k) : kind_ (k) {}

        Kind kind_;
        std::vector<double> eta_list_, theta_list_;
        std::function<double (long)> eta_fn_, theta_fn_;
        double p_ = 0, q_ = 0, alpha_ = 0, r_ = 0, beta_ = 0, gamma_ = 0;
    };

    struct SBound
    {
        double value = 0.0;      ///< partial sum (a lower estimate of S)
        double tail_bound = 0.0; ///< certified bound on the omitted terms
        std::size_t terms = 0;

        [[nodiscard]] double upper () const noexcept { return value + tail_bound; }
    };

    inline constexpr std::size_t series_term_cap = 10000;

    /**
     * @brief The bound S with a certified tail.
     *
     * TTV(., delta) <= TV, so the omitted part after index K is at most
     * 4 TV(g) sum_{k>K} 3^k eta_{k-1} + 4 TV(f) sum_{k>K} 3^k theta_k; each of
     * these sums is bounded by its first term over (1 - ratio) once the
     * ratio of consecutive terms drops below one. Summation stops when the
     * bound is <= tail_tol. Throws ConvergenceError when an explicit list
     * runs out first, after 10^4 terms, or on non-finite terms.
     */
    [[nodiscard]] inline SBound young_bound_S (const TtvProfile &pf, const TtvProfile &pg, double eta_minus1, const SequencePair &seqs,
                                               double tail_tol = 1e-12)
    {
        detail::require (tail_tol > 0.0, "tail tolerance must be > 0");
        SBound out;
        if (eta_minus1 == 0.0 || seqs.kind () == SequencePair::Kind::trivial)
            return out; // constant integrand or trivial sequences

        const double tvf = pf.total_variation (), tvg = pg.total_variation ();
        const auto len = seqs.length ();
        auto eta_prev_scaled = [&] (long k) { return k == 0 ? eta_minus1 : seqs.scaled_eta_prev (k); };
        auto avail = [&] (long k) { return !len || static_cast<std::size_t> (k) < *len; };

        auto tail_part = [] (double a1, double a2) -> std::optional<double> {
            if (a1 == 0.0)
                return 0.0;
            const double rho = a2 / a1;
            if (!(rho < 1.0))
                return std::nullopt;
            return a1 / (1.0 - rho);
        };

        for (long k = 0; static_cast<std::size_t> (k) < series_term_cap; ++k)
        {
            if (!avail (k))
                throw ConvergenceError ("explicit sequences end before the tail bound reaches tail_tol");
            const double th = seqs.theta (k), et = seqs.eta (k);
            const double term = 4.0 * eta_prev_scaled (k) * pg.truncated_variation (th / 4.0) +
                                4.0 * seqs.scaled_theta (k) * pf.truncated_variation (et / 4.0);
            if (!std::isfinite (term))
                throw ConvergenceError ("bound S diverges: non-finite term at k = " + std::to_string (k));
            out.value += term;
            out.terms = static_cast<std::size_t> (k) + 1;

            if (!avail (k + 2))
                continue; // cannot certify yet; the next iteration reports exhaustion
            const auto tg = tail_part (4.0 * tvg * seqs.scaled_eta_prev (k + 1), 4.0 * tvg * seqs.scaled_eta_prev (k + 2));
            const auto tf = tail_part (4.0 * tvf * seqs.scaled_theta (k + 1), 4.0 * tvf * seqs.scaled_theta (k + 2));
            if (tg && tf)
            {
                out.tail_bound = *tg + *tf;
                if (!std::isfinite (out.tail_bound))
                    throw ConvergenceError ("bound S diverges: tail bound is not finite");
                if (out.tail_bound <= tail_tol)
                    return out;
            }
        }
        throw ConvergenceError ("bound S: tail bound not below tail_tol within 10^4 terms");
    }

    template <MetricSequence F, MetricSequence G>
    [[nodiscard]] SBound young_bound_S (const F &f, const G &g, const SequencePair &seqs, double tail_tol = 1e-12)
    {
        const double eta_minus1 = 0.5 * max_distance_from_start (f);
        if (eta_minus1 == 0.0)
            return {};
        return young_bound_S (ttv_profile (f), ttv_profile (g), eta_minus1, seqs, tail_tol);
    }

    /**
     * @brief Right-hand side of the partition estimate on [c, d] (the ends of
     *        `partition`) for step completions:
     *
     *   4 sum_{k<=r} 3^k delta_{k-1} TTV(g, eps_k/4) + 4 sum_{k<=r} 3^k eps_k TTV(f, delta_k/4) + n delta_r eps_r
     *
     * with delta_{-1} = 1/2 sup_{[c,d]} |f - f(c)| and n the number of cells.
     */
    [[nodiscard]] inline double lemma2_bound (const OperatorPath &f, const SampledPath &g, std::span<const double> partition,
                                              std::span<const double> tags, const std::vector<double> &deltas,
                                              const std::vector<double> &epsilons, std::size_t r)
    {
        detail::require (deltas.size () == r + 1 && epsilons.size () == r + 1, "delta and epsilon lists must have length r + 1");
        detail::check_sequence (deltas, "deltas");
        detail::check_sequence (epsilons, "epsilons");
        detail::require (partition.size () >= 2 && tags.size () + 1 == partition.size (), "need one tag per partition cell");
        for (std::size_t i = 1; i < partition.size (); ++i)
        {
            detail::require (partition[i] > partition[i - 1], "partition must be strictly increasing");
            detail::require (tags[i - 1] >= partition[i - 1] && tags[i - 1] <= partition[i], "tag outside its cell");
        }
        const double c = partition.front (), d = partition.back ();
        const OperatorPath fr = f.restricted_to (c, d);
        const SampledPath gr = g.restricted_to (c, d);
        const TtvProfile pf = ttv_profile (fr), pg = ttv_profile (gr);
        const double delta_m1 = 0.5 * max_distance_from_start (fr);

        double bound = 0.0;
        for (std::size_t k = 0; k <= r; ++k)
        {
            const double dprev = k == 0 ? delta_m1 : deltas[k - 1];
            const double kd = static_cast<double> (k);
            bound += 4.0 * detail::pow3_times (kd, dprev) * pg.truncated_variation (epsilons[k] / 4.0);
            bound += 4.0 * detail::pow3_times (kd, epsilons[k]) * pf.truncated_variation (deltas[k] / 4.0);
        }
        const double n = static_cast<double> (partition.size () - 1);
        return bound + n * deltas[r] * epsilons[r];
    }

    /// |sum f(xi_i)[g(t_i) - g(t_{i-1})] - f(c)[g(d) - g(c)]| for step completions.
    [[nodiscard]] inline double partition_deviation (const OperatorPath &f, const SampledPath &g, std::span<const double> partition,
                                                     std::span<const double> tags)
    {
        const OperatorFunction ff = step_function (f);
        const VectorFunction gf = step_function (g);
        std::vector<double> s = rs_sum (ff, gf, partition, tags);
        const auto fc = ff (partition.front ());
        const auto gc = gf (partition.front ()), gd = gf (partition.back ());
        const std::size_t dim = g.dim ();
        std::vector<double> dg (dim);
        for (std::size_t k = 0; k < dim; ++k)
            dg[k] = gd[k] - gc[k];
        std::vector<double> base (dim, 0.0);
        detail::add_mat_vec (fc.data (), dg.data (), base.data (), dim);
        for (std::size_t k = 0; k < dim; ++k)
            s[k] -= base[k];
        return vector_norm (s, g.norm ());
    }

    /**
     * @brief Sequences for the improved Loeve-Young bound:
     *        beta = 1/2 sup |f - f(a)|, gamma = (V^q(g)/V^p(f))^(1/q) beta^(p/q).
     *
     * Degenerate data (constant f or g) give the trivial pair, for which S = 0.
     */
    template <MetricSequence F, MetricSequence G>
    [[nodiscard]] SequencePair choose_sequences (double p, double q, const F &f, const G &g)
    {
        detail::check_exponents (p, q);
        const double beta = 0.5 * max_distance_from_start (f);
        if (beta == 0.0)
            return SequencePair::trivial ();
        const double vp = p_variation (f, p), vq = p_variation (g, q);
        if (vp == 0.0 || vq == 0.0)
            return SequencePair::trivial ();
        const double gamma = std::pow (vq / vp, 1.0 / q) * std::pow (beta, p / q);
        return SequencePair::closed_form (p, q, beta, gamma);
    }

    struct SeriesSum
    {
        double value = 0.0;
        double tail_bound = 0.0;
        std::size_t terms = 0;
    };

    namespace detail
    {
        /// sum_{k>=0} 3^{e(k)} for a concave exponent e eventually tending to -inf.
        /// Stops once the certified tail is <= rel_tol * partial sum.
        template <class Exponent>
        SeriesSum sum_pow3_series (Exponent &&e, double rel_tol)
        {
            require (rel_tol > 0.0, "tolerance must be > 0");
            SeriesSum s;
            for (std::size_t k = 0; k < series_term_cap; ++k)
            {
                const double kd = static_cast<double> (k);
                const double t = std::exp (ln3 * e (kd));
                if (!std::isfinite (t))
                    throw ConvergenceError ("series diverges: non-finite term at k = " + std::to_string (k));
                s.value += t;
                s.terms = k + 1;
                const double e1 = e (kd + 1.0), e2 = e (kd + 2.0);
                if (e2 < e1)
                {
                    // Concave exponent: term ratios keep shrinking from here on.
                    const double t1 = std::exp (ln3 * e1);
                    const double rho = std::exp (ln3 * (e2 - e1));
                    s.tail_bound = (t1 == 0.0) ? 0.0 : t1 / (1.0 - rho);
                    if (s.tail_bound <= rel_tol * s.value)
                        return s;
                }
            }
            throw ConvergenceError ("series did not converge within 10^4 terms");
        }
    } // namespace detail

    struct LyConstants
    {
        double alpha = 0.0;
        double r = 0.0;
        SeriesSum A; ///< sum 3^{k+1-(1-alpha) r^k}
        SeriesSum B; ///< sum 3^{k+1-p-alpha(1-alpha) r^k/(q-1)}
    };

    /// Both series behind C_{p,q} and D_{p,q}, each to relative accuracy `tol`.
    [[nodiscard]] inline LyConstants ly_series (double p, double q, double tol)
    {
        detail::check_exponents (p, q);
        LyConstants c;
        c.alpha = (std::sqrt ((q - 1.0) * (p - 1.0)) + 1.0) / 2.0;
        c.r = c.alpha * c.alpha / ((q - 1.0) * (p - 1.0));
        const double a = c.alpha, r = c.r;
        c.A = detail::sum_pow3_series ([a, r] (double k) { return k + 1.0 - (1.0 - a) * std::pow (r, k); }, tol);
        c.B = detail::sum_pow3_series ([a, r, p, q] (double k) { return k + 1.0 - p - a * (1.0 - a) * std::pow (r, k) / (q - 1.0); }, tol);
        return c;
    }

    /// C_{p,q} = 4^q A + 4^p B; the relative truncation error is at most tol.
    [[nodiscard]] inline double ly_constant (double p, double q, double tol = 1e-12)
    {
        const LyConstants c = ly_series (p, q, tol);
        return std::pow (4.0, q) * c.A.value + std::pow (4.0, p) * c.B.value;
    }

    /// D~_{p,q} = 4^q A (2 4^p B)^{q-1}.
    [[nodiscard]] inline double d_tilde_constant (double p, double q, double tol = 1e-12)
    {
        const LyConstants c = ly_series (p, q, tol / q);
        return std::pow (4.0, q) * c.A.value * std::pow (2.0 * std::pow (4.0, p) * c.B.value, q - 1.0);
    }

    /// D_{p,q} = D~_{p,q}^{1/q}; the relative truncation error is at most tol.
    [[nodiscard]] inline double d_constant (double p, double q, double tol = 1e-12)
    {
        return std::pow (d_tilde_constant (p, q, tol), 1.0 / q);
    }

    enum class Completion
    {
        step,
        linear
    };

    struct LyOptions
    {
        Completion completion = Completion::step;
        double tol = 1e-9;              ///< series accuracy and refinement tolerance
        std::optional<TagRule> tag;     ///< default: left for step, mid for linear
        int max_levels = default_max_levels ();
        bool with_bound_S = true;
    };

    namespace detail
    {
        inline double safe_ratio (double lhs, double rhs)
        {
            if (lhs == 0.0)
                return 0.0;
            if (rhs == 0.0)
                return std::numeric_limits<double>::infinity ();
            return lhs / rhs;
        }
    } // namespace detail

    /**
     * @brief Compare |int f dg - f(a)[g(b) - g(a)]| with
     *        C_{p,q} |f|_{p-var}^{p-p/q} |f|_osc^{1+p/q-p} |g|_{q-var}.
     *
     * Variations are taken over samples, which is exact for both
     * completions: on a linear piece every functional used here is convex
     * in the position of a partition point, so suprema sit on vertices.
     */
    [[nodiscard]] inline IntegralReport improved_ly_check (const OperatorPath &f, const SampledPath &g, double p, double q,
                                                           const LyOptions &opt = {})
    {
        detail::check_exponents (p, q);
        detail::require (opt.tol > 0.0, "tolerance must be > 0");
        // Integrate f - f(a) directly so a flat f gives exactly zero rather
        // than the rounding residue of a difference of two sums.
        const std::size_t d = g.dim (), dd = d * d;
        std::vector<double> shifted = f.flat_values ();
        for (std::size_t i = 0; i < shifted.size (); ++i)
            shifted[i] -= f.flat_values ()[i % dd];
        const OperatorPath f0 (f.times (), std::move (shifted), d, f.norm ());

        IntegralReport rep;
        if (opt.completion == Completion::step)
        {
            rep.value = step_integral (f0, g);
            rep.converged = true;
        }
        else
        {
            RsOptions ro;
            ro.tol = opt.tol;
            ro.max_levels = opt.max_levels;
            ro.tag = opt.tag.value_or (TagRule::mid);
            rep = rs_integral (linear_function (f0), linear_function (g), ro);
        }

        std::vector<double> dev = rep.value, dg (d), base (d, 0.0);
        for (std::size_t k = 0; k < d; ++k)
            dg[k] = g.value (g.size () - 1)[k] - g.value (0)[k];
        detail::add_mat_vec (f.value (0).data (), dg.data (), base.data (), d);
        for (std::size_t k = 0; k < d; ++k)
            rep.value[k] += base[k];

        LyReport ly;
        ly.lhs = vector_norm (dev, g.norm ());
        ly.C_pq = ly_constant (p, q, opt.tol);
        const double vp = p_variation (f, p), vq = p_variation (g, q), osc = oscillation (f);
        ly.rhs = ly.C_pq * std::pow (vp, 1.0 - 1.0 / q) * std::pow (osc, 1.0 + p / q - p) * std::pow (vq, 1.0 / q);
        ly.ratio = detail::safe_ratio (ly.lhs, ly.rhs);
        rep.ly = ly;

        if (opt.with_bound_S)
            rep.bound_S = young_bound_S (f, g, choose_sequences (p, q, f, g), opt.tol).upper ();
        return rep;
    }

    struct IrregularityReport
    {
        double lhs = 0.0;
        double rhs = 0.0;
        double ratio = 0.0;
        double D_pq = 0.0;
    };

    /**
     * @brief Compare the q-TV seminorm of t -> int_a^t [f(s) - f(a)] dg(s) with
     *        D_{p,q} |f|_{p-TV}^{p-p/q} |f|_osc^{1+p/q-p} |g|_{q-TV}
     *        for step completions.
     */
    [[nodiscard]] inline IrregularityReport irregularity_check (const OperatorPath &f, const SampledPath &g, double p, double q,
                                                                double tol = 1e-12)
    {
        detail::check_exponents (p, q);
        IrregularityReport r;
        const SampledPath integral = indefinite_integral (f, g);
        r.lhs = p_tv_seminorm (integral, q).value;
        r.D_pq = d_constant (p, q, tol);
        const double fp = p_tv_seminorm (f, p).value, gq = p_tv_seminorm (g, q).value, osc = oscillation (f);
        r.rhs = r.D_pq * std::pow (fp, p - p / q) * std::pow (osc, 1.0 + p / q - p) * gq;
        r.ratio = detail::safe_ratio (r.lhs, r.rhs);
        return r;
    }

} // namespace tvkit
