#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "etscope/presets.hpp"

namespace etscope {

/// Run configuration resolved from a preset base, an optional flat
/// key = value config file, and command-line overrides (applied last,
/// so they win). All physical quantities are SI base units. Unknown
/// keys raise ConfigError naming the key.
///
/// Key schema (dots select sub-objects):
///   preset                       gan-cascode | gan-emode | sic
///   n, seed, output
///   device.kind                  same names as preset
///   device.r_dson_0 device.vth_0 device.ciss_0 device.i_leak
///   device.alpha_r device.alpha_c device.beta_pos device.beta_neg
///   device.tau_trap device.tau_detrap device.stress_phase (off|on)
///   drive.fs drive.duty drive.v_gate_high drive.v_gate_low
///   drive.r_g drive.v_bus drive.i_0
///   adc.bits
///   adc.<gate_v|drain_v|drain_i>.full_scale_low / full_scale_high /
///       gain / noise_sigma / jitter_sigma
class RunConfig {
public:
    RunConfig();

    /// Apply one key; throws ConfigError on unknown key or bad value.
    void set(const std::string& key, const std::string& value);

    /// Validate the resolved (device, drive, adc) triple; throws
    /// ConfigError on any violated invariant.
    void finalize() const;

    const DeviceModel& device() const noexcept { return bundle_.device; }
    const DriveConfig& drive() const noexcept { return bundle_.drive; }
    const AdcModel& adc() const noexcept { return bundle_.adc; }
    const std::vector<double>& grid_hz() const noexcept { return bundle_.grid_hz; }
    const Preset& bundle() const noexcept { return bundle_; }

    std::size_t n() const noexcept { return n_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::string& output() const noexcept { return output_; }

private:
    Preset bundle_;
    bool adc_overridden_ = false;  ///< keep explicit adc keys across drive edits
    std::size_t n_ = 20000;
    std::uint64_t seed_ = 1;
    std::string output_;
};

/// Ordered key = value pairs from a flat config file. '#' starts a
/// comment; blank lines are skipped. Malformed lines throw ConfigError
/// naming the line number.
std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path);

}  // namespace etscope
