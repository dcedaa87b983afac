#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "etscope/device.hpp"

namespace etscope {

/// Equivalent-time sampling schedule: the sampler period exceeds the
/// signal period by t_et = t_signal / n, so sample k lands at equivalent
/// time k * t_et and one full period is reconstructed after n samples.
struct EtSchedule {
    double t_signal_s = 0.0;
    std::size_t n = 0;
    double t_et_s = 0.0;      ///< t_signal / n
    double t_sample_s = 0.0;  ///< t_signal + t_et
};

EtSchedule make_schedule(double t_signal_s, std::size_t n);

enum class Channel : int { GateV = 0, DrainV = 1, DrainI = 2 };
inline constexpr std::size_t kChannelCount = 3;
inline constexpr std::array<Channel, kChannelCount> kChannelOrder = {
    Channel::GateV, Channel::DrainV, Channel::DrainI};

std::string_view to_string(Channel ch) noexcept;

/// One acquisition channel: transducer gain plus converter imperfections.
/// Full scale is expressed in the physical unit of the channel; gain maps
/// one volt at the ADC pin to that unit, and noise_sigma is the RMS noise
/// at the pin.
struct AdcChannel {
    double full_scale_low = 0.0;
    double full_scale_high = 1.0;
    double gain = 1.0;
    double noise_sigma_v = 0.0;
    double jitter_sigma_s = 0.0;
};

struct AdcModel {
    int bits = 16;
    std::array<AdcChannel, kChannelCount> channels;

    const AdcChannel& channel(Channel ch) const {
        return channels[static_cast<std::size_t>(ch)];
    }
    AdcChannel& channel(Channel ch) {
        return channels[static_cast<std::size_t>(ch)];
    }
};

void validate(const AdcModel& adc);

/// Uniform mid-rise quantization over the channel's full-scale range with
/// 2^bits codes; out-of-range values clip to the rails exactly.
double quantize(const AdcModel& adc, Channel ch, double value);

/// Combined standard uncertainty of one sample, referred to the physical
/// quantity: quantization (uniform std) and pin noise in quadrature.
double channel_uncertainty(const AdcModel& adc, Channel ch);

/// Reconstructed single-period multi-channel waveform. Timestamps are the
/// equivalent times k * t_et, strictly increasing and uniformly spaced.
struct EquivalentTimeRecord {
    EtSchedule schedule;
    double f_s_hz = 0.0;  ///< drive switching frequency of the source
    std::uint64_t seed = 0;
    bool saturated = false;
    AdcModel adc;

    std::vector<double> t_eq_s;
    std::array<std::vector<double>, kChannelCount> samples;

    bool has(Channel ch) const {
        return !samples[static_cast<std::size_t>(ch)].empty();
    }
    const std::vector<double>& channel(Channel ch) const {
        return samples[static_cast<std::size_t>(ch)];
    }
    std::size_t size() const { return t_eq_s.size(); }
};

/// A periodic source the sampler can digitize.
struct PeriodicSource {
    std::function<WaveformPoint(double)> eval;
    double period_s = 0.0;
};

class WaveformModel;
PeriodicSource make_source(const WaveformModel& model);

/// Equivalent-time acquisition of `source` through the ADC model.
///
/// Sample k is taken at real time k * t_sample (plus Gaussian trigger
/// jitter per channel), which folds back to equivalent time k * t_et
/// within one signal period. Each value passes through the transducer
/// gain, picks up pin-referred Gaussian noise, and is quantized over the
/// channel full scale. The saturation flag is set iff any pre-quantization
/// sample exceeded its full-scale range. Deterministic for a fixed seed.
///
/// Requires at least two channels (simultaneous multi-signal capture);
/// throws std::domain_error if the source period does not match the
/// schedule.
EquivalentTimeRecord acquire(const PeriodicSource& source,
                             const EtSchedule& schedule,
                             const AdcModel& adc,
                             const std::vector<Channel>& channels,
                             std::uint64_t seed);

}  // namespace etscope
