#include "etscope/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace etscope {

std::vector<double> log_grid(double f_min_hz, double f_max_hz, std::size_t points) {
    if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz) || points < 2) {
        throw std::domain_error("log grid needs 0 < f_min < f_max and >= 2 points");
    }
    std::vector<double> grid(points);
    const double ratio = f_max_hz / f_min_hz;
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = f_min_hz *
                  std::pow(ratio, static_cast<double>(i) / static_cast<double>(points - 1));
    }
    grid.front() = f_min_hz;
    grid.back() = f_max_hz;
    return grid;
}

AdcModel default_adc(const DriveConfig& drive) {
    constexpr double kPinSpanV = 5.0;
    constexpr double kPinNoiseV = 0.3e-3;

    AdcModel adc;
    adc.bits = 16;

    AdcChannel& gate = adc.channel(Channel::GateV);
    gate.full_scale_low = drive.v_gate_low_v - 1.0;
    gate.full_scale_high = drive.v_gate_high_v + 1.0;
    gate.gain = (gate.full_scale_high - gate.full_scale_low) / kPinSpanV;
    gate.noise_sigma_v = kPinNoiseV;

    AdcChannel& vd = adc.channel(Channel::DrainV);
    vd.full_scale_low = 0.0;
    vd.full_scale_high = 1.1 * drive.v_bus_v;
    vd.gain = vd.full_scale_high / kPinSpanV;
    vd.noise_sigma_v = kPinNoiseV;

    AdcChannel& id = adc.channel(Channel::DrainI);
    id.full_scale_low = 0.0;
    id.full_scale_high = 1.25 * drive.i_0_a;
    id.gain = id.full_scale_high / kPinSpanV;
    id.noise_sigma_v = kPinNoiseV;

    return adc;
}

// Trap kinetics and sensitivities below were fitted with tools/calibrate
// (coarse grid search against the frequency-trend bands); rerun that tool
// after touching any of them.
Preset preset(DeviceKind kind) {
    Preset p;
    switch (kind) {
        case DeviceKind::GanCascode: {
            p.device.kind = kind;
            p.device.r_dson_0_ohm = 0.18;
            p.device.vth_0_v = 2.2;
            p.device.ciss_0_f = 1.0e-9;
            p.device.i_leak_a = 1e-6;
            p.device.trap = {15e-9, 4e-6, StressPhase::OffState};
            p.device.alpha_r = 0.3796;
            p.device.alpha_c = 1.605;
            p.device.beta_pos_v = 0.01;
            p.device.beta_neg_v = 0.0;

            p.drive.v_gate_high_v = 5.0;
            p.drive.v_gate_low_v = -5.0;
            p.drive.r_g_ohm = 30.0;
            p.drive.v_bus_v = 60.0;
            p.drive.i_0_a = 0.4;
            p.grid_hz = log_grid(10e3, 1e6, 10);
            break;
        }
        case DeviceKind::GanEmode: {
            p.device.kind = kind;
            p.device.r_dson_0_ohm = 0.10;
            p.device.vth_0_v = 1.7;
            p.device.ciss_0_f = 300e-12;
            p.device.i_leak_a = 1e-6;
            p.device.trap = {20e-9, 5e-6, StressPhase::OffState};
            p.device.alpha_r = 0.3775;
            p.device.alpha_c = 1.6137;
            p.device.beta_pos_v = 0.5394;
            p.device.beta_neg_v = 0.0;

            p.drive.v_gate_high_v = 5.0;
            p.drive.v_gate_low_v = -5.0;
            p.drive.r_g_ohm = 100.0;
            p.drive.v_bus_v = 60.0;
            p.drive.i_0_a = 0.4;
            p.grid_hz = log_grid(10e3, 1e6, 10);
            break;
        }
        case DeviceKind::SicMosfet: {
            p.device.kind = kind;
            p.device.r_dson_0_ohm = 0.28;
            p.device.vth_0_v = 4.5;
            p.device.ciss_0_f = 350e-12;
            p.device.i_leak_a = 1e-6;
            p.device.trap = {1.0e-6, 2.5e-6, StressPhase::OnState};
            p.device.alpha_r = 0.0530;
            p.device.alpha_c = 1.0;
            p.device.beta_pos_v = 5.9625;
            p.device.beta_neg_v = 0.3;

            p.drive.v_gate_high_v = 15.0;
            p.drive.v_gate_low_v = 0.0;
            p.drive.r_g_ohm = 100.0;
            p.drive.v_bus_v = 50.0;
            p.drive.i_0_a = 2.0;
            p.grid_hz = log_grid(10e3, 200e3, 6);
            break;
        }
        default:
            throw std::domain_error("unknown device kind");
    }
    p.drive.f_s_hz = p.grid_hz.front();
    p.drive.duty = 0.9;
    p.adc = default_adc(p.drive);
    validate(p.device);
    validate(p.drive);
    return p;
}

}  // namespace etscope
