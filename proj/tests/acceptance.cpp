// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <support/brute_force.hpp>
#include <support/random_paths.hpp>

#include <tvkit/tvkit.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace tvkit;

namespace
{
    struct Outcome
    {
        bool pass;
        std::string detail;
    };

    std::string fmt (const char *f, double a, double b = 0, double c = 0, double d = 0)
    {
        char buf[256];
        std::snprintf (buf, sizeof buf, f, a, b, c, d);
        return buf;
    }

    double deviation_of (const sample::StepPair &pair, const std::vector<double> &value)
    {
        const std::size_t d = pair.g.dim ();
        auto v = value;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                v[r] -= pair.f.value (0)[r * d + c] * (pair.g.value (pair.g.size () - 1)[c] - pair.g.value (0)[c]);
        return vector_norm (v, pair.g.norm ());
    }

    // 1 --------------------------------------------------------------------
    Outcome step_split_values ()
    {
        const auto s = fixtures::step_split ();
        double worst = 0.0;
        for (double d : {0.0, 0.25, 0.5, 1.0, 1.5, 2.5})
            worst = std::max (worst, std::abs (ttv (s, d) - (std::max (1.0 - d, 0.0) + std::max (2.0 - d, 0.0))));
        const double whole = p_tv_seminorm (s, 2.0).value_pow;
        const double left = p_tv_seminorm (s.restricted_to (-1.0, 0.0), 2.0).value_pow;
        const double right = p_tv_seminorm (s.restricted_to (0.0, 1.0), 2.0).value_pow;
        worst = std::max ({worst, std::abs (whole - 9.0 / 8.0), std::abs (left - 0.25), std::abs (right - 1.0)});
        return {worst <= 1e-12, fmt ("max error %.3g; ||f||^2 = %.17g, %.17g, %.17g", worst, whole, left, right)};
    }

    // 2 --------------------------------------------------------------------
    Outcome circle3_gap ()
    {
        const double r3 = std::sqrt (3.0);
        const auto c = fixtures::circle3 ();
        const double t = ttv (c, r3);
        const auto s = sandwich (c, r3);
        return {t == 0.0 && s.lower == 0.0 && s.lower < s.witness_tv,
                fmt ("ttv = %g, lower = %g, witness_tv = %.17g, upper = %.17g", t, s.lower, s.witness_tv, s.upper)};
    }

    // 3 --------------------------------------------------------------------
    Outcome cp_identity ()
    {
        // Grid over delta = x u, u = i / N; delta^(p-1)(x - delta) = x^p u^(p-1)(1 - u),
        // maximized through its logarithm.
        constexpr std::size_t N = 1000000;
        std::vector<double> lu (N), l1u (N);
        for (std::size_t i = 1; i < N; ++i)
        {
            const double u = double (i) / double (N);
            lu[i] = std::log (u);
            l1u[i] = std::log1p (-u);
        }
        std::mt19937_64 rng (3);
        std::uniform_real_distribution<double> ux (0.01, 10.0), up (1.0, 6.0);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial)
        {
            const double x = ux (rng), p = up (rng);
            double best = -INFINITY;
            for (std::size_t i = 1; i < N; ++i)
                best = std::max (best, (p - 1.0) * lu[i] + l1u[i]);
            const double grid = std::pow (x, p) * std::exp (best);
            const double exact = sup_delta_single (x, p);
            worst = std::max (worst, std::abs (grid - exact) / exact);
        }
        return {worst <= 1e-7, fmt ("max relative error %.3g over 1000 pairs", worst)};
    }

    // 4 --------------------------------------------------------------------
    Outcome oracle_equivalence ()
    {
        std::mt19937_64 rng (4);
        std::uniform_real_distribution<double> uc (0.0, 1.5);
        double worst = 0.0;
        int paths = 0;
        for (int trial = 0; trial < 240; ++trial)
        {
            const std::size_t n = 1 + trial % 12, d = trial % 2 == 0 ? 1 : 3;
            const auto p = sample::random_path (rng, n, d, sample::pick_norm (rng));
            const double c = uc (rng), q = 1.0 + 2.0 * uc (rng) / 1.5;
            const auto phi = PhiSpec::family (1 + trial % 2, 1.2 + 0.1 * double (trial % 8), 1.5 + 0.5 * double (trial % 3));
            worst = std::max (worst, std::abs (ttv (p, c) - oracle::ttv_brute (p, c)));
            worst = std::max (worst, std::abs (p_variation (p, q) - oracle::p_variation_brute (p, q)));
            worst = std::max (worst, std::abs (phi_variation (p, phi) - oracle::phi_variation_brute (p, phi)));
            std::vector<double> inc;
            for (std::size_t i = 1; i < p.size (); ++i)
                inc.push_back (p.distance (i - 1, i));
            worst = std::max (worst, std::abs (fixed_partition_seminorm (inc, q) - oracle::fixed_partition_brute (inc, q)));
            ++paths;
        }
        return {worst <= 1e-12, fmt ("%g paths, max abs difference %.3g", paths, worst)};
    }

    // 5 --------------------------------------------------------------------
    Outcome approximant_suite ()
    {
        std::mt19937_64 rng (5);
        std::uniform_real_distribution<double> uc (0.02, 2.0);
        int violations = 0;
        for (int trial = 0; trial < 500; ++trial)
        {
            const auto p = sample::random_path (rng, 2 + trial % 40, 1 + trial % 3, sample::pick_norm (rng));
            const double c = uc (rng);
            const auto step = step_approx (p, c);
            const auto lin = linear_approx (p, c);
            const auto prof = ttv_profile (p);
            violations += sup_distance (step.samples, p) > c / 2.0;
            for (double l : {1.5, 2.0, 3.0, 10.0})
                violations += step.tv > l * prof.truncated_variation ((l - 1.0) * c / (2.0 * l)) * (1 + 1e-12);
            violations += sup_distance (lin.samples, p) > c;
            violations += std::abs (lin.tv - step.tv) > 1e-12 * (1.0 + step.tv);
        }
        return {violations == 0, fmt ("%g violations over 500 paths", violations)};
    }

    // 6 --------------------------------------------------------------------
    Outcome seminorm_axioms ()
    {
        std::mt19937_64 rng (6);
        std::uniform_real_distribution<double> us (0.01, 5.0);
        int violations = 0;
        for (double p : {1.1, 1.5, 2.0, 3.0})
            for (int trial = 0; trial < 500; ++trial)
            {
                const auto f = sample::random_path (rng, 2 + trial % 16, 1 + trial % 3, sample::pick_norm (rng));
                const auto h = sample::random_path_like (rng, f);
                const double nf = p_tv_seminorm (f, p).value, nh = p_tv_seminorm (h, p).value;
                violations += p_tv_seminorm (f + h, p).value > nf + nh + 1e-10;
                const double a = us (rng);
                violations += std::abs (p_tv_seminorm (f.scaled (a), p).value - a * nf) > 1e-10 * (1.0 + a * nf);
                violations += nf > std::pow (p_variation (f, p), 1.0 / p) + 1e-12;
                violations += tv_p_norm (f, p) + 1e-12 < f.value_norm (0) + std::pow (c_p_const (p), 1.0 / p) * oscillation (f);
            }
        return {violations == 0, fmt ("%g violations over 4 x 500 pairs", violations)};
    }

    // 7 --------------------------------------------------------------------
    Outcome summation_by_parts_identity ()
    {
        std::mt19937_64 rng (7);
        std::uniform_real_distribution<double> u (0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial)
        {
            const std::size_t n = 2 + trial % 19, d = 1 + trial % 3;
            const auto pair = sample::random_step_pair (rng, n, d, sample::pick_norm (rng));
            const double hi = double (n - 1);
            std::vector<double> part {0.0, hi}, tags;
            while (part.size () < std::size_t (2 + trial % 20))
                part.push_back (hi * u (rng));
            std::sort (part.begin (), part.end ());
            part.erase (std::unique (part.begin (), part.end ()), part.end ());
            for (std::size_t i = 1; i < part.size (); ++i)
                tags.push_back (part[i - 1] + (part[i] - part[i - 1]) * u (rng));
            const auto s = summation_by_parts (step_function (pair.f), step_function (pair.g), part, tags);
            for (std::size_t k = 0; k < d; ++k)
                worst = std::max (worst, std::abs (s.lhs[k] - s.rhs[k]));
        }
        return {worst <= 1e-12, fmt ("max abs difference %.3g over 500 datasets", worst)};
    }

    // 8 --------------------------------------------------------------------
    Outcome bound_S_and_partition_bound ()
    {
        std::mt19937_64 rng (8);
        std::uniform_real_distribution<double> u (0.0, 1.0);
        int violations = 0;
        double worst_ratio = 0.0;
        for (int trial = 0; trial < 500; ++trial)
        {
            const std::size_t n = 2 + trial % 20;
            const auto pair = sample::random_step_pair (rng, n, 1 + trial % 3, sample::pick_norm (rng));
            const auto seqs = choose_sequences (1.5, 1.5, pair.f, pair.g);
            const double S = young_bound_S (pair.f, pair.g, seqs).upper ();
            const double dev = deviation_of (pair, step_integral (pair.f, pair.g));
            violations += dev > S * (1 + 1e-12) + 1e-12;
            if (S > 0)
                worst_ratio = std::max (worst_ratio, dev / S);

            if (seqs.kind () != SequencePair::Kind::closed_form)
                continue;
            // Random partition of [a, b] with the first r+1 sequence terms.
            const double hi = double (n - 1);
            std::vector<double> part {0.0, hi}, tags;
            while (part.size () < std::size_t (2 + trial % 8))
                part.push_back (hi * u (rng));
            std::sort (part.begin (), part.end ());
            part.erase (std::unique (part.begin (), part.end ()), part.end ());
            for (std::size_t i = 1; i < part.size (); ++i)
                tags.push_back (part[i - 1] + (part[i] - part[i - 1]) * u (rng));
            const std::size_t r = trial % 4;
            std::vector<double> deltas, eps;
            for (std::size_t k = 0; k <= r; ++k)
            {
                deltas.push_back (seqs.eta (long (k)));
                eps.push_back (seqs.theta (long (k)));
            }
            const double pd = partition_deviation (pair.f, pair.g, part, tags);
            violations += pd > lemma2_bound (pair.f, pair.g, part, tags, deltas, eps, r) * (1 + 1e-12) + 1e-12;
        }
        return {violations == 0, fmt ("%g violations over 500 pairs; max deviation / S = %.3g", violations, worst_ratio)};
    }

    // 9 --------------------------------------------------------------------
    Outcome improved_ly ()
    {
        std::mt19937_64 rng (9);
        int violations = 0;
        double worst_step = 0.0, worst_stable = 0.0;
        for (int trial = 0; trial < 200; ++trial)
        {
            const auto pair = sample::random_step_pair (rng, 2 + trial % 25, 1 + trial % 3, sample::pick_norm (rng));
            const auto r = improved_ly_check (pair.f, pair.g, 1.5, 1.5);
            violations += !(r.ly->ratio <= 1.0);
            worst_step = std::max (worst_step, r.ly->ratio);
        }
        LyOptions opt;
        opt.completion = Completion::linear;
        for (std::uint64_t trial = 0; trial < 20; ++trial)
        {
            const auto f = OperatorPath::from_scalar (gen_alpha_stable (512, 1.8, 1.0, derive_seed (900, 2 * trial)));
            const auto g = gen_alpha_stable (512, 1.8, 1.0, derive_seed (900, 2 * trial + 1));
            const auto r = improved_ly_check (f, g, 1.9, 1.9, opt);
            violations += !(r.ly->ratio <= 1.0);
            worst_stable = std::max (worst_stable, r.ly->ratio);
        }
        return {violations == 0, fmt ("%g violations; max ratio %.3g (step pairs), %.3g (alpha-stable)", violations, worst_step, worst_stable)};
    }

    // 10 -------------------------------------------------------------------
    Outcome irregularity ()
    {
        std::mt19937_64 rng (10);
        int violations = 0;
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial)
        {
            const auto pair = sample::random_step_pair (rng, 2 + trial % 25, 1 + trial % 3, sample::pick_norm (rng));
            const auto r = irregularity_check (pair.f, pair.g, 1.5, 1.5);
            violations += !(r.ratio <= 1.0);
            worst = std::max (worst, r.ratio);
        }
        return {violations == 0, fmt ("%g violations; max ratio %.3g", violations, worst)};
    }

    // 11 -------------------------------------------------------------------
    Outcome cauchy_contract ()
    {
        int violations = 0;
        double worst = 0.0;
        for (double p : {1.2, 1.5, 1.8})
            for (double tol : {1e-6, 1e-9, 1e-12})
            {
                const double c1 = ly_constant (p, p, tol), c2 = ly_constant (p, p, tol / 2);
                const double d1 = d_constant (p, p, tol), d2 = d_constant (p, p, tol / 2);
                const double ec = std::abs (c1 - c2) / c1, ed = std::abs (d1 - d2) / d1;
                violations += !(ec < tol) + !(ed < tol);
                worst = std::max ({worst, ec / tol, ed / tol});
            }
        return {violations == 0, fmt ("%g violations; max change / tol = %.3g (relative)", violations, worst)};
    }

    // 12 -------------------------------------------------------------------
    Outcome phi_trend ()
    {
        const auto phi = PhiSpec::family (1, 2.0, 2.0);
        std::vector<double> vphi, vq;
        for (std::size_t n : {16u, 64u, 256u, 1024u})
        {
            const auto f = fixtures::log_seq (2.0, n);
            vphi.push_back (phi_variation (f, phi));
            vq.push_back (p_variation (f, 2.5));
        }
        bool increasing = true;
        for (std::size_t i = 1; i < vphi.size (); ++i)
            increasing = increasing && vphi[i] > vphi[i - 1];
        const double growth = vphi.back () / vphi.front ();
        const double q_change = vq[3] / vq[2] - 1.0;
        const bool pass = increasing && growth > 10.0 && q_change < 0.05;
        std::ostringstream os;
        os << "V^phi = " << vphi[0] << ", " << vphi[1] << ", " << vphi[2] << ", " << vphi[3] << " (last/first " << growth << ", need > 10); "
           << "V^2.5 = " << vq[0] << ", " << vq[1] << ", " << vq[2] << ", " << vq[3] << " (+" << 100.0 * q_change << "% from 2^8 to 2^10, need < 5%)";
        return {pass, os.str ()};
    }

    // 13 -------------------------------------------------------------------
    std::string capture (const std::string &cmd, int &status)
    {
        std::string out;
        FILE *pipe = ::popen (cmd.c_str (), "r");
        if (!pipe)
        {
            status = -1;
            return out;
        }
        std::array<char, 4096> buf;
        std::size_t got;
        while ((got = std::fread (buf.data (), 1, buf.size (), pipe)) > 0)
            out.append (buf.data (), got);
        status = ::pclose (pipe);
        return out;
    }

    Outcome reproducible_cli ()
    {
        const std::string cli = TVKIT_CLI_PATH;
        const std::vector<std::string> runs {
            " ly-check --gen alpha-stable --alpha 1.8 --n 512 --p 1.9 --q 1.9 --seed 7 --trials 4",
            " seminorm --gen alpha-stable --alpha 1.5 --n 300 --p 1.7 --seed 99 --trials 6 --format csv",
            " gen --gen alpha-stable --alpha 1.2 --n 200 --seed 5 --format csv",
        };
        std::size_t bytes = 0;
        for (const auto &args : runs)
        {
            int s1 = 0, s2 = 0;
            const std::string a = capture (cli + args, s1), b = capture (cli + args, s2);
            if (s1 != 0 || s2 != 0 || a.empty () || a != b)
                return {false, "outputs differ or the command failed:" + args};
            bytes += a.size ();
        }
        return {true, fmt ("3 commands, %g bytes, identical across two runs", double (bytes))};
    }

} // namespace

int main ()
{
    const std::vector<std::pair<const char *, std::function<Outcome ()>>> criteria {
        {"stepSplit truncated variation and 2-TV seminorm values", step_split_values},
        {"circle3 ttv at sqrt(3) is 0 and the sandwich gap is strict", circle3_gap},
        {"c_p identity against a 10^6-point grid", cp_identity},
        {"oracle equivalence with 2^n enumeration", oracle_equivalence},
        {"step and linear approximant guarantees", approximant_suite},
        {"p-TV seminorm axioms and comparisons", seminorm_axioms},
        {"summation by parts identity", summation_by_parts_identity},
        {"integral deviation below S and partition bounds", bound_S_and_partition_bound},
        {"improved Loeve-Young ratio <= 1", improved_ly},
        {"indefinite integral q-TV bound ratio <= 1", irregularity},
        {"constant evaluation tolerance contract", cauchy_contract},
        {"phi-variation growth on logSeq(2, n)", phi_trend},
        {"CLI reports are byte-identical across runs", reproducible_cli},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size (); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second ();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string ("exception: ") + e.what ()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << " -- " << o.detail << std::endl;
    }
    std::cout << (criteria.size () - failed) << "/" << criteria.size () << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
