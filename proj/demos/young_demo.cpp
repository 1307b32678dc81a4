// Improved Loeve-Young bound for integrals of one alpha-stable path against
// another, with the constant C_{p,q} for a few exponents.

#include <tvkit/tvkit.hpp>

#include <cstdio>

int main ()
{
    using namespace tvkit;

    std::printf ("%6s %16s %16s\n", "p=q", "C_pq", "D_pq");
    for (double p : {1.2, 1.5, 1.8, 1.9})
        std::printf ("%6.2f %16.6g %16.6g\n", p, ly_constant (p, p), d_constant (p, p));

    std::printf ("\nalpha = 1.8, n = 512, p = q = 1.9, linear completions\n");
    std::printf ("%6s %14s %14s %14s %10s\n", "seed", "|I - f(a)dg|", "S", "LY rhs", "ratio");
    LyOptions opt;
    opt.completion = Completion::linear;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto f = OperatorPath::from_scalar (gen_alpha_stable (512, 1.8, 1.0, derive_seed (seed, 0)));
        const auto g = gen_alpha_stable (512, 1.8, 1.0, derive_seed (seed, 1));
        const auto r = improved_ly_check (f, g, 1.9, 1.9, opt);
        std::printf ("%6llu %14.6g %14.6g %14.6g %10.3g\n", static_cast<unsigned long long> (seed), r.ly->lhs, *r.bound_S, r.ly->rhs,
                     r.ly->ratio);
    }
    return 0;
}
