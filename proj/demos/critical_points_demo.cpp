// Samples roots on the unit circle, solves for the critical points, and
// prints the statistics the library exists to study.

#include <cstdio>

#include "polycrit/circle_measure.hpp"
#include "polycrit/differentiator.hpp"
#include "polycrit/empirics.hpp"
#include "polycrit/limit_function.hpp"
#include "polycrit/root_poly.hpp"

int main() {
    using namespace polycrit;

    const CircleMeasure halves = CircleMeasure::atomic({0.0, 0.5}, {0.5, 0.5});
    const CircleMeasure uniform = CircleMeasure::uniform();

    for (const CircleMeasure& m : {uniform, halves}) {
        const int n = 400;
        const RootSample roots = sample(m, n, 20240817);
        const CriticalSet cs = critical_points(from_roots(roots.points));
        const PolarSet polar = to_polar(cs.points);

        std::printf("measure %s, n=%d\n", describe(m).c_str(), n);
        std::printf("  solver: %d sweeps, converged=%d, max residual %.2e\n",
                    cs.iterations, cs.converged ? 1 : 0, cs.max_residual);
        std::printf("  mean of roots     %+.6f%+.6fi\n",
                    empirical_moment(roots.points, 1).real(),
                    empirical_moment(roots.points, 1).imag());
        std::printf("  mean of criticals %+.6f%+.6fi\n",
                    empirical_moment(cs.points, 1).real(),
                    empirical_moment(cs.points, 1).imag());
        std::printf("  radial moment k=2: %.6f\n", radial_moment(polar, 2));
        std::printf("  inside |z|<0.5: %d of %zu\n",
                    interior_count(cs.points, 0.5), cs.points.size());
        if (m.kind == MeasureKind::atomic) {
            const DiscZeroCount zeros = count_zeros_in_disc(m, 0.5);
            std::printf("  limit function zeros in |z|<0.5: %d\n", zeros.count);
        }
        std::printf("\n");
    }
    return 0;
}
