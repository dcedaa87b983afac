#pragma once

#include <string>
#include <string_view>

namespace etscope {

enum class DeviceKind { GanCascode, GanEmode, SicMosfet };

bool is_gan(DeviceKind kind) noexcept;
std::string_view to_string(DeviceKind kind) noexcept;
DeviceKind device_kind_from_string(const std::string& name);

/// Which half of the switching period charges the trap population.
enum class StressPhase { OffState, OnState };

/// First-order trap kinetics: the stress phase drives occupancy toward 1
/// with tau_trap, the other phase relaxes it toward 0 with tau_detrap.
struct TrapModel {
    double tau_trap_s = 1e-6;
    double tau_detrap_s = 1e-3;
    StressPhase stress_phase = StressPhase::OffState;
};

/// Static transistor parameters plus the trap kinetics that make
/// R_DSon, C_iss and V_th frequency dependent.
struct DeviceModel {
    DeviceKind kind = DeviceKind::GanEmode;
    double r_dson_0_ohm = 0.1;   ///< untrapped on-resistance
    double vth_0_v = 1.7;        ///< nominal threshold voltage
    double ciss_0_f = 300e-12;   ///< low-frequency input capacitance
    double i_leak_a = 1e-6;      ///< off-state leakage
    TrapModel trap;
    double alpha_r = 0.0;        ///< R_DSon sensitivity to mean occupancy
    double alpha_c = 0.0;        ///< C_iss sensitivity to mean occupancy
    double beta_pos_v = 0.0;     ///< V_th shift at full stress-channel floor
    double beta_neg_v = 0.0;     ///< V_th shift at full mirror-channel floor
};

/// Gate drive and bias for one operating point. On-time and period are
/// always derived: t_on = duty / f_s, T_sw = 1 / f_s.
struct DriveConfig {
    double f_s_hz = 100e3;
    double duty = 0.9;
    double v_gate_high_v = 5.0;
    double v_gate_low_v = -5.0;
    double r_g_ohm = 100.0;
    double v_bus_v = 60.0;
    double i_0_a = 0.4;

    double period_s() const noexcept { return 1.0 / f_s_hz; }
    double t_on_s() const noexcept { return duty / f_s_hz; }
    double t_off_s() const noexcept { return (1.0 - duty) / f_s_hz; }
};

/// One point of the continuous-time waveform.
struct WaveformPoint {
    double t_s = 0.0;
    double v_g_v = 0.0;
    double v_d_v = 0.0;
    double i_d_a = 0.0;
};

/// Throw std::domain_error on any violated invariant.
void validate(const TrapModel& trap, DeviceKind kind);
void validate(const DeviceModel& model);
void validate(const DriveConfig& drive);

}  // namespace etscope
