#pragma once

#include "etscope/device.hpp"
#include "etscope/trap.hpp"

namespace etscope {

/// Fraction of the remaining gate swing above threshold at which the
/// turn-on current ramp completes (and, mirrored below threshold, at
/// which the turn-off tail dies out).
inline constexpr double kOverdriveFraction = 0.2;

/// Device parameters after applying the steady-state trap occupancy for
/// one operating point.
///
/// R_DSon and C_iss scale with the cycle-averaged occupancy of the
/// stress-phase population: r_dson_eff = r_dson_0 * (1 + alpha_r * x_bar),
/// ciss_eff = ciss_0 * (1 + alpha_c * x_bar).
///
/// The two edge thresholds carry the periodic floor (post-recovery fixed
/// point) of each population: the charge that never escapes within a
/// period and therefore accumulates as frequency rises. The stress-phase
/// population raises the turn-off reading by beta_pos * x0, the mirrored
/// population raises the turn-on reading by beta_neg * x0, so the net
/// per-period variation is beta_pos * x0_primary - beta_neg * x0_mirror.
struct EffectiveParams {
    double r_dson_eff_ohm = 0.0;
    double ciss_eff_f = 0.0;
    double vth_eff_on_phase_v = 0.0;   ///< threshold governing the turn-on edge
    double vth_eff_off_phase_v = 0.0;  ///< threshold governing the turn-off edge
    double x_bar = 0.0;                ///< cycle-averaged primary occupancy
    OccupancyFixedPoint primary;       ///< stress-phase population fixed point
    OccupancyFixedPoint mirror;        ///< opposite-phase population fixed point
};

EffectiveParams effective_params(const DeviceModel& model, const DriveConfig& drive);

/// Exact continuous-time steady-state switching waveform.
///
/// Equivalent time 0 is the rising edge of the gate command. The gate
/// node follows a single-pole exponential (tau = r_g * ciss_eff) with the
/// periodic start/end values solved in closed form. The drain current is
/// off until the gate crosses the turn-on threshold, ramps linearly in
/// time until the gate reaches the overdrive level, and conducts i_0 on
/// the plateau; at turn-off it holds i_0 until the gate falls through the
/// turn-off threshold and then ramps out over the mirrored sub-threshold
/// interval. The drain voltage traverses v_bus <-> r_dson_eff * i_0
/// linearly across each crossover and equals r_dson_eff * i_d exactly on
/// the plateau.
class WaveformModel {
public:
    WaveformModel(const DeviceModel& model, const DriveConfig& drive);

    /// Waveform at t in [0, period); throws std::domain_error outside.
    WaveformPoint eval(double t_s) const;

    /// Extended-domain wrapper: eval(t mod period) for any finite t.
    WaveformPoint eval_periodic(double t_s) const;

    double period_s() const noexcept { return period_s_; }
    const EffectiveParams& effective() const noexcept { return eff_; }
    const DeviceModel& device() const noexcept { return model_; }
    const DriveConfig& drive() const noexcept { return drive_; }

    /// Gate voltage at t = 0 (periodic steady state, not necessarily the rail).
    double gate_start_v() const noexcept { return v_gate_start_; }

    /// Crossover windows, exposed for tests and calibration.
    double ramp_on_start_s() const noexcept { return t_ramp_on_start_; }
    double ramp_on_end_s() const noexcept { return t_ramp_on_end_; }
    double ramp_off_start_s() const noexcept { return t_ramp_off_start_; }
    double ramp_off_end_s() const noexcept { return t_ramp_off_end_; }

private:
    double gate_voltage(double t_s) const;

    DeviceModel model_;
    DriveConfig drive_;
    EffectiveParams eff_;

    double period_s_ = 0.0;
    double t_on_s_ = 0.0;
    double tau_gate_s_ = 0.0;
    double v_gate_start_ = 0.0;  ///< gate voltage at t = 0
    double v_gate_peak_ = 0.0;   ///< gate voltage at t = t_on
    double t_ramp_on_start_ = 0.0;
    double t_ramp_on_end_ = 0.0;
    double t_ramp_off_start_ = 0.0;
    double t_ramp_off_end_ = 0.0;
    double v_d_on_ = 0.0;  ///< plateau drain voltage, r_dson_eff * i_0
};

}  // namespace etscope
