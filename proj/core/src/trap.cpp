#include "etscope/trap.hpp"

#include <cmath>
#include <stdexcept>

namespace etscope {

namespace {

void check_durations(double t_stress_s, double t_recover_s) {
    if (!(t_stress_s > 0.0) || !(t_recover_s > 0.0)) {
        throw std::domain_error("phase durations must be > 0");
    }
}

// occupancies live in [0, 1]; division rounding can overshoot by one ulp
double clamp_unit(double x) {
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

}  // namespace

OccupancyFixedPoint steady_state_occupancy(const TrapModel& trap,
                                           double t_stress_s,
                                           double t_recover_s) {
    check_durations(t_stress_s, t_recover_s);

    // Work with am1 = a - 1 and bm1 = b - 1 (a = exp(-ts/tt), b = exp(-tr/td))
    // so that 1 - a*b stays accurate when both exponents are small.
    const double am1 = std::expm1(-t_stress_s / trap.tau_trap_s);
    const double bm1 = std::expm1(-t_recover_s / trap.tau_detrap_s);
    const double one_minus_ab = -(am1 + bm1 + am1 * bm1);

    OccupancyFixedPoint fp;
    fp.x1 = clamp_unit(-am1 / one_minus_ab);
    fp.x0 = clamp_unit(fp.x1 * (1.0 + bm1));
    return fp;
}

double cycle_averaged_occupancy(const TrapModel& trap,
                                double t_stress_s,
                                double t_recover_s) {
    check_durations(t_stress_s, t_recover_s);

    const auto fp = steady_state_occupancy(trap, t_stress_s, t_recover_s);
    const double am1 = std::expm1(-t_stress_s / trap.tau_trap_s);
    const double bm1 = std::expm1(-t_recover_s / trap.tau_detrap_s);

    // Exact integrals of the two exponential arcs.
    const double stress_area =
        t_stress_s + (fp.x0 - 1.0) * trap.tau_trap_s * (-am1);
    const double recover_area = fp.x1 * trap.tau_detrap_s * (-bm1);
    return clamp_unit((stress_area + recover_area) / (t_stress_s + t_recover_s));
}

}  // namespace etscope
