#include "etscope/device.hpp"

#include <stdexcept>

namespace etscope {

bool is_gan(DeviceKind kind) noexcept {
    return kind == DeviceKind::GanCascode || kind == DeviceKind::GanEmode;
}

std::string_view to_string(DeviceKind kind) noexcept {
    switch (kind) {
        case DeviceKind::GanCascode: return "gan-cascode";
        case DeviceKind::GanEmode: return "gan-emode";
        case DeviceKind::SicMosfet: return "sic";
    }
    return "unknown";
}

DeviceKind device_kind_from_string(const std::string& name) {
    if (name == "gan-cascode") return DeviceKind::GanCascode;
    if (name == "gan-emode") return DeviceKind::GanEmode;
    if (name == "sic" || name == "sic-mosfet") return DeviceKind::SicMosfet;
    throw std::domain_error("unknown device kind: " + name);
}

void validate(const TrapModel& trap, DeviceKind kind) {
    if (!(trap.tau_trap_s > 0.0)) {
        throw std::domain_error("trap.tau_trap must be > 0");
    }
    if (!(trap.tau_detrap_s > 0.0)) {
        throw std::domain_error("trap.tau_detrap must be > 0");
    }
    if (is_gan(kind) && trap.tau_detrap_s / trap.tau_trap_s < 100.0) {
        throw std::domain_error(
            "GaN trap model requires tau_detrap / tau_trap >= 100");
    }
}

void validate(const DeviceModel& model) {
    if (!(model.r_dson_0_ohm > 0.0)) throw std::domain_error("r_dson_0 must be > 0");
    if (!(model.ciss_0_f > 0.0)) throw std::domain_error("ciss_0 must be > 0");
    if (model.i_leak_a < 0.0) throw std::domain_error("i_leak must be >= 0");
    if (model.alpha_r < 0.0) throw std::domain_error("alpha_r must be >= 0");
    if (model.alpha_c < 0.0) throw std::domain_error("alpha_c must be >= 0");
    if (model.beta_pos_v < 0.0) throw std::domain_error("beta_pos must be >= 0");
    if (model.beta_neg_v < 0.0) throw std::domain_error("beta_neg must be >= 0");
    if (is_gan(model.kind) && model.beta_neg_v != 0.0) {
        throw std::domain_error("GaN models have a single trap population: beta_neg must be 0");
    }
    validate(model.trap, model.kind);
}

void validate(const DriveConfig& drive) {
    if (!(drive.f_s_hz > 0.0)) throw std::domain_error("f_s must be > 0");
    if (!(drive.duty > 0.0 && drive.duty < 1.0)) {
        throw std::domain_error("duty must be in (0, 1)");
    }
    if (!(drive.v_gate_high_v > drive.v_gate_low_v)) {
        throw std::domain_error("v_gate_high must exceed v_gate_low");
    }
    if (!(drive.r_g_ohm > 0.0)) throw std::domain_error("r_g must be > 0");
    if (!(drive.v_bus_v > 0.0)) throw std::domain_error("v_bus must be > 0");
    if (!(drive.i_0_a > 0.0)) throw std::domain_error("i_0 must be > 0");
}

}  // namespace etscope
