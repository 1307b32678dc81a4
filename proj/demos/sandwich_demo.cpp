// Bounds on the least total variation of a path within c/2 of f, for
// three points on a circle and for an alpha-stable path.

#include <tvkit/tvkit.hpp>

#include <cstdio>

int main ()
{
    using namespace tvkit;

    const double r3 = std::sqrt (3.0);
    const auto circle = fixtures::circle3 ();
    const auto s = sandwich (circle, r3, {1.5, 2.0, 3.0});
    std::printf ("circle3, c = sqrt(3)\n");
    std::printf ("  TTV(f, c)           %.6f\n", s.lower);
    std::printf ("  greedy witness TV   %.6f\n", s.witness_tv);
    std::printf ("  upper bound         %.6f (lambda %.1f)\n\n", s.upper, s.best_lambda);

    const auto path = gen_alpha_stable (2000, 1.5, 1.0, 2024);
    std::printf ("alpha-stable, alpha = 1.5, n = 2000\n");
    std::printf ("  %8s %12s %12s %12s\n", "c", "lower", "witness", "upper");
    for (double c : {0.05, 0.1, 0.2, 0.5, 1.0})
    {
        const auto r = sandwich (path, c, {1.5, 2.0, 3.0, 10.0});
        std::printf ("  %8.3f %12.5f %12.5f %12.5f\n", c, r.lower, r.witness_tv, r.upper);
    }
    return 0;
}
