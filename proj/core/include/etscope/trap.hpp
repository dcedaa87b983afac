#pragma once

#include "etscope/device.hpp"

namespace etscope {

/// Periodic steady state of the two-phase first-order kinetics.
/// Occupancy rises toward 1 during the stress interval (tau_trap) and
/// decays toward 0 during the recovery interval (tau_detrap):
///   x1 = 1 + (x0 - 1) * exp(-t_stress / tau_trap)
///   x0 = x1 * exp(-t_recover / tau_detrap)
struct OccupancyFixedPoint {
    double x0 = 0.0;  ///< post-recovery occupancy (the periodic floor)
    double x1 = 0.0;  ///< post-stress occupancy (the periodic peak)
};

/// Closed-form solution of the fixed-point equations above.
/// Throws std::domain_error for non-positive durations.
OccupancyFixedPoint steady_state_occupancy(const TrapModel& trap,
                                           double t_stress_s,
                                           double t_recover_s);

/// Occupancy averaged over one full period in steady state.
double cycle_averaged_occupancy(const TrapModel& trap,
                                double t_stress_s,
                                double t_recover_s);

}  // namespace etscope
