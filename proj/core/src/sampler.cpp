#include "etscope/sampler.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "etscope/waveform.hpp"

namespace etscope {

EtSchedule make_schedule(double t_signal_s, std::size_t n) {
    if (!(t_signal_s > 0.0)) {
        throw std::domain_error("signal period must be > 0");
    }
    if (n < 2) {
        throw std::domain_error("equivalent-time schedule needs n >= 2");
    }
    EtSchedule s;
    s.t_signal_s = t_signal_s;
    s.n = n;
    s.t_et_s = t_signal_s / static_cast<double>(n);
    s.t_sample_s = t_signal_s + s.t_et_s;
    return s;
}

std::string_view to_string(Channel ch) noexcept {
    switch (ch) {
        case Channel::GateV: return "gate_v";
        case Channel::DrainV: return "drain_v";
        case Channel::DrainI: return "drain_i";
    }
    return "unknown";
}

void validate(const AdcModel& adc) {
    if (adc.bits < 8 || adc.bits > 24) {
        throw std::domain_error("adc bits must be in [8, 24]");
    }
    for (Channel ch : kChannelOrder) {
        const AdcChannel& c = adc.channel(ch);
        if (!(c.full_scale_high > c.full_scale_low)) {
            throw std::domain_error("full_scale_high must exceed full_scale_low");
        }
        if (c.gain == 0.0) throw std::domain_error("channel gain must be nonzero");
        if (c.noise_sigma_v < 0.0) throw std::domain_error("noise_sigma must be >= 0");
        if (c.jitter_sigma_s < 0.0) throw std::domain_error("jitter_sigma must be >= 0");
    }
}

double quantize(const AdcModel& adc, Channel ch, double value) {
    const AdcChannel& c = adc.channel(ch);
    const double lo = c.full_scale_low;
    const double hi = c.full_scale_high;
    if (value <= lo) return lo;
    if (value >= hi) return hi;

    const double codes = std::ldexp(1.0, adc.bits);
    const double lsb = (hi - lo) / codes;
    double idx = std::floor((value - lo) / lsb);
    if (idx >= codes) idx = codes - 1.0;
    return lo + (idx + 0.5) * lsb;
}

double channel_uncertainty(const AdcModel& adc, Channel ch) {
    const AdcChannel& c = adc.channel(ch);
    const double lsb = (c.full_scale_high - c.full_scale_low) / std::ldexp(1.0, adc.bits);
    const double quant = lsb / std::sqrt(12.0);
    const double noise = std::abs(c.gain) * c.noise_sigma_v;
    return std::hypot(quant, noise);
}

PeriodicSource make_source(const WaveformModel& model) {
    return {[&model](double t) { return model.eval_periodic(t); },
            model.period_s()};
}

namespace {

double channel_value(const WaveformPoint& pt, Channel ch) {
    switch (ch) {
        case Channel::GateV: return pt.v_g_v;
        case Channel::DrainV: return pt.v_d_v;
        case Channel::DrainI: return pt.i_d_a;
    }
    return 0.0;
}

double wrap_phase(double t, double period) {
    if (t >= 0.0 && t < period) return t;
    double w = std::fmod(t, period);
    if (w < 0.0) w += period;
    if (w >= period) w = 0.0;
    return w;
}

}  // namespace

EquivalentTimeRecord acquire(const PeriodicSource& source,
                             const EtSchedule& schedule,
                             const AdcModel& adc,
                             const std::vector<Channel>& channels,
                             std::uint64_t seed) {
    validate(adc);
    if (schedule.n < 2) {
        throw std::domain_error("schedule must hold n >= 2 samples");
    }
    if (source.period_s != schedule.t_signal_s) {
        throw std::domain_error("source period does not match schedule period");
    }
    if (channels.size() < 2) {
        throw std::domain_error("acquisition needs at least two channels");
    }

    std::array<bool, kChannelCount> active{};
    for (Channel ch : channels) active[static_cast<std::size_t>(ch)] = true;

    EquivalentTimeRecord rec;
    rec.schedule = schedule;
    rec.f_s_hz = 1.0 / schedule.t_signal_s;
    rec.seed = seed;
    rec.adc = adc;
    rec.t_eq_s.reserve(schedule.n);
    for (Channel ch : kChannelOrder) {
        if (active[static_cast<std::size_t>(ch)]) {
            rec.samples[static_cast<std::size_t>(ch)].reserve(schedule.n);
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (std::size_t k = 0; k < schedule.n; ++k) {
        // Real sample time k * t_sample folds to k * t_et within one period.
        const double t_eq = static_cast<double>(k) * schedule.t_et_s;
        rec.t_eq_s.push_back(t_eq);

        for (Channel ch : kChannelOrder) {
            if (!active[static_cast<std::size_t>(ch)]) continue;
            const AdcChannel& c = adc.channel(ch);

            double phase = t_eq;
            if (c.jitter_sigma_s > 0.0) {
                phase = wrap_phase(t_eq + gauss(rng) * c.jitter_sigma_s,
                                   schedule.t_signal_s);
            }
            double value = channel_value(source.eval(phase), ch);
            if (c.noise_sigma_v > 0.0) {
                value += c.gain * (gauss(rng) * c.noise_sigma_v);
            }
            if (value < c.full_scale_low || value > c.full_scale_high) {
                rec.saturated = true;
            }
            rec.samples[static_cast<std::size_t>(ch)].push_back(
                quantize(adc, ch, value));
        }
    }
    return rec;
}

}  // namespace etscope
