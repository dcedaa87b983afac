#include "etscope/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace etscope {

namespace {

/// Durations of the primary population's stress and recovery intervals.
struct PhaseSplit {
    double stress_s;
    double recover_s;
};

PhaseSplit primary_phases(const TrapModel& trap, const DriveConfig& drive) {
    if (trap.stress_phase == StressPhase::OffState) {
        return {drive.t_off_s(), drive.t_on_s()};
    }
    return {drive.t_on_s(), drive.t_off_s()};
}

}  // namespace

EffectiveParams effective_params(const DeviceModel& model, const DriveConfig& drive) {
    validate(model);
    validate(drive);

    const PhaseSplit ph = primary_phases(model.trap, drive);

    EffectiveParams eff;
    eff.primary = steady_state_occupancy(model.trap, ph.stress_s, ph.recover_s);
    eff.mirror = steady_state_occupancy(model.trap, ph.recover_s, ph.stress_s);
    eff.x_bar = cycle_averaged_occupancy(model.trap, ph.stress_s, ph.recover_s);

    eff.r_dson_eff_ohm = model.r_dson_0_ohm * (1.0 + model.alpha_r * eff.x_bar);
    eff.ciss_eff_f = model.ciss_0_f * (1.0 + model.alpha_c * eff.x_bar);
    eff.vth_eff_on_phase_v = model.vth_0_v + model.beta_neg_v * eff.mirror.x0;
    eff.vth_eff_off_phase_v = model.vth_0_v + model.beta_pos_v * eff.primary.x0;
    return eff;
}

WaveformModel::WaveformModel(const DeviceModel& model, const DriveConfig& drive)
    : model_(model), drive_(drive), eff_(effective_params(model, drive)) {
    period_s_ = drive.period_s();
    t_on_s_ = drive.t_on_s();
    tau_gate_s_ = drive.r_g_ohm * eff_.ciss_eff_f;
    v_d_on_ = eff_.r_dson_eff_ohm * drive.i_0_a;

    const double vh = drive.v_gate_high_v;
    const double vl = drive.v_gate_low_v;
    const double p = std::exp(-t_on_s_ / tau_gate_s_);
    const double q = std::exp(-drive.t_off_s() / tau_gate_s_);

    // Periodic fixed point of the gate node driven by the square command.
    v_gate_start_ = (vl * (1.0 - q) + q * vh * (1.0 - p)) / (1.0 - p * q);
    v_gate_peak_ = vh * (1.0 - p) + p * v_gate_start_;

    // Rising crossing of level L: t = tau * ln((vh - v0) / (vh - L)).
    const auto rise_cross = [&](double level) {
        if (v_gate_start_ >= level) return 0.0;
        if (level >= v_gate_peak_) return t_on_s_;
        return tau_gate_s_ * std::log((vh - v_gate_start_) / (vh - level));
    };
    // Falling crossing of level L after t_on: t_on + tau * ln((v1 - vl) / (L - vl)).
    const auto fall_cross = [&](double level) {
        if (v_gate_peak_ <= level) return t_on_s_;
        if (level <= v_gate_start_) return period_s_;
        return t_on_s_ +
               tau_gate_s_ * std::log((v_gate_peak_ - vl) / (level - vl));
    };

    const double vth_on = eff_.vth_eff_on_phase_v;
    const double vth_off = eff_.vth_eff_off_phase_v;
    const double v_overdrive = vth_on + kOverdriveFraction * (vh - vth_on);
    const double v_tail_end = vth_off - kOverdriveFraction * (vh - vth_off);

    t_ramp_on_start_ = rise_cross(vth_on);
    t_ramp_on_end_ = std::max(rise_cross(v_overdrive), t_ramp_on_start_);
    t_ramp_off_start_ = fall_cross(vth_off);
    t_ramp_off_end_ = std::max(fall_cross(v_tail_end), t_ramp_off_start_);
}

double WaveformModel::gate_voltage(double t_s) const {
    const double vh = drive_.v_gate_high_v;
    const double vl = drive_.v_gate_low_v;
    if (t_s < t_on_s_) {
        return vh - (vh - v_gate_start_) * std::exp(-t_s / tau_gate_s_);
    }
    return vl + (v_gate_peak_ - vl) * std::exp(-(t_s - t_on_s_) / tau_gate_s_);
}

WaveformPoint WaveformModel::eval(double t_s) const {
    if (!(t_s >= 0.0) || !(t_s < period_s_)) {
        throw std::domain_error("eval time outside [0, T_sw)");
    }

    WaveformPoint pt;
    pt.t_s = t_s;
    pt.v_g_v = gate_voltage(t_s);

    const double i0 = drive_.i_0_a;
    const double leak = model_.i_leak_a;
    const double vbus = drive_.v_bus_v;

    if (t_s < t_ramp_on_start_) {
        pt.i_d_a = leak;
        pt.v_d_v = vbus;
    } else if (t_s < t_ramp_on_end_) {
        const double frac =
            (t_s - t_ramp_on_start_) / (t_ramp_on_end_ - t_ramp_on_start_);
        pt.i_d_a = leak + (i0 - leak) * frac;
        pt.v_d_v = vbus + (v_d_on_ - vbus) * frac;
    } else if (t_s < t_ramp_off_start_) {
        pt.i_d_a = i0;
        pt.v_d_v = eff_.r_dson_eff_ohm * pt.i_d_a;
    } else if (t_s < t_ramp_off_end_) {
        const double frac =
            (t_s - t_ramp_off_start_) / (t_ramp_off_end_ - t_ramp_off_start_);
        pt.i_d_a = i0 - (i0 - leak) * frac;
        pt.v_d_v = v_d_on_ + (vbus - v_d_on_) * frac;
    } else {
        pt.i_d_a = leak;
        pt.v_d_v = vbus;
    }
    return pt;
}

WaveformPoint WaveformModel::eval_periodic(double t_s) const {
    double t = std::fmod(t_s, period_s_);
    if (t < 0.0) t += period_s_;
    if (t >= period_s_) t = 0.0;  // fmod rounding at the boundary
    return eval(t);
}

}  // namespace etscope
