#pragma once

#include <vector>

#include "etscope/device.hpp"
#include "etscope/sampler.hpp"

namespace etscope {

/// Calibrated operating configuration for one device family: the device
/// model, the nominal drive (f_s is overridden per sweep point), the
/// sweep frequency grid, and the matching acquisition front end.
struct Preset {
    DeviceModel device;
    DriveConfig drive;
    std::vector<double> grid_hz;
    AdcModel adc;
};

/// The three committed configurations. GaN presets run 60 V / 0.4 A with
/// a +/-5 V gate over 10 kHz - 1 MHz; the SiC preset runs 50 V / 2 A with
/// a 0-15 V gate over 10 kHz - 200 kHz. All use duty 0.9.
Preset preset(DeviceKind kind);

/// Front end sized from the drive: full scales cover the rails with
/// headroom, transducer gains map each range onto a 5 V pin span.
AdcModel default_adc(const DriveConfig& drive);

/// Log-spaced grid including both endpoints exactly.
std::vector<double> log_grid(double f_min_hz, double f_max_hz, std::size_t points);

}  // namespace etscope
