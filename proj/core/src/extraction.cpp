#include "etscope/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "etscope/errors.hpp"

namespace etscope {

namespace {

const std::vector<double>& require_channel(const EquivalentTimeRecord& rec,
                                           Channel ch, const char* fom) {
    if (!rec.has(ch)) {
        throw ExtractionError(fom, std::string("record lacks channel ") +
                                       std::string(to_string(ch)));
    }
    return rec.channel(ch);
}

struct Crossing {
    std::size_t index;  ///< lower sample of the straddling pair
    double frac;        ///< position within [index, index+1]
    double t;           ///< interpolated equivalent time
};

std::optional<Crossing> rising_crossing(const std::vector<double>& t,
                                        const std::vector<double>& y,
                                        double level, std::size_t from = 0) {
    for (std::size_t k = from; k + 1 < y.size(); ++k) {
        if (y[k] < level && level <= y[k + 1]) {
            const double frac = (level - y[k]) / (y[k + 1] - y[k]);
            return Crossing{k, frac, t[k] + frac * (t[k + 1] - t[k])};
        }
    }
    return std::nullopt;
}

std::optional<Crossing> falling_crossing(const std::vector<double>& t,
                                         const std::vector<double>& y,
                                         double level, std::size_t from = 0) {
    for (std::size_t k = from; k + 1 < y.size(); ++k) {
        if (y[k] >= level && level > y[k + 1]) {
            const double frac = (y[k] - level) / (y[k] - y[k + 1]);
            return Crossing{k, frac, t[k] + frac * (t[k + 1] - t[k])};
        }
    }
    return std::nullopt;
}

// Turn-off edges are located from the back of the record: the waveform
// ends in the off state far below these levels, so the last straddling
// pair is the genuine edge. A forward scan instead stops at the noisy
// top of the turn-on ramp, where per-sample increments drop below the
// noise floor and fake reversals appear.
std::optional<Crossing> last_falling_crossing(const std::vector<double>& t,
                                              const std::vector<double>& y,
                                              double level) {
    for (std::size_t k = y.size() - 1; k-- > 0;) {
        if (y[k] >= level && level > y[k + 1]) {
            const double frac = (y[k] - level) / (y[k] - y[k + 1]);
            return Crossing{k, frac, t[k] + frac * (t[k + 1] - t[k])};
        }
    }
    return std::nullopt;
}

std::optional<Crossing> last_rising_crossing(const std::vector<double>& t,
                                             const std::vector<double>& y,
                                             double level) {
    for (std::size_t k = y.size() - 1; k-- > 0;) {
        if (y[k] < level && level <= y[k + 1]) {
            const double frac = (level - y[k]) / (y[k + 1] - y[k]);
            return Crossing{k, frac, t[k] + frac * (t[k + 1] - t[k])};
        }
    }
    return std::nullopt;
}

double interpolate_at(const std::vector<double>& v, const Crossing& c) {
    return v[c.index] + c.frac * (v[c.index + 1] - v[c.index]);
}

}  // namespace

double select_ic(double u_id_a) {
    if (!(u_id_a > 0.0)) {
        throw std::domain_error("drain-current uncertainty must be > 0");
    }
    return 100.0 * u_id_a;
}

double extract_vth_on(const EquivalentTimeRecord& record, double i_c_a) {
    const auto& i_d = require_channel(record, Channel::DrainI, "vth_on");
    const auto& v_g = require_channel(record, Channel::GateV, "vth_on");

    const auto cross = rising_crossing(record.t_eq_s, i_d, i_c_a);
    if (!cross) {
        throw ExtractionError("vth_on", "threshold not observable: no rising "
                                        "crossing of i_c");
    }
    return interpolate_at(v_g, *cross);
}

double extract_vth_off(const EquivalentTimeRecord& record, double i_0_a,
                       double i_c_a) {
    const auto& i_d = require_channel(record, Channel::DrainI, "vth_off");
    const auto& v_g = require_channel(record, Channel::GateV, "vth_off");

    const double level = i_0_a - i_c_a;
    const auto cross = last_falling_crossing(record.t_eq_s, i_d, level);
    if (!cross) {
        throw ExtractionError("vth_off", "threshold not observable: no "
                                         "turn-off edge crosses i_0 - i_c");
    }
    return interpolate_at(v_g, *cross);
}

ThresholdResult delta_vth(const EquivalentTimeRecord& record, double i_0_a,
                          double i_c_a) {
    if (!(i_c_a > 0.0) || !(i_c_a < i_0_a)) {
        throw std::domain_error("i_c must satisfy 0 < i_c < i_0");
    }
    ThresholdResult res;
    res.i_c_a = i_c_a;
    res.vth_on_v = extract_vth_on(record, i_c_a);
    res.vth_off_v = extract_vth_off(record, i_0_a, i_c_a);
    res.delta_vth_v = res.vth_off_v - res.vth_on_v;
    res.saturated_input = record.saturated;
    return res;
}

RdsonResult extract_rdson(const EquivalentTimeRecord& record, double t_on_s) {
    const auto& i_d = require_channel(record, Channel::DrainI, "r_dson");
    const auto& v_d = require_channel(record, Channel::DrainV, "r_dson");
    if (!(t_on_s > 0.0)) throw std::domain_error("t_on must be > 0");

    RdsonResult res;
    res.window_lo_s = 0.1 * t_on_s;
    res.window_hi_s = 0.9 * t_on_s;

    long double v_sum = 0.0L;
    long double i_sum = 0.0L;
    for (std::size_t k = 0; k < record.size(); ++k) {
        const double t = record.t_eq_s[k];
        if (t < res.window_lo_s || t > res.window_hi_s) continue;
        v_sum += v_d[k];
        i_sum += i_d[k];
        ++res.sample_count;
    }
    if (res.sample_count < 10) {
        throw ExtractionError("r_dson", "insufficient plateau samples");
    }
    res.v_d_mean_v = static_cast<double>(v_sum / res.sample_count);
    res.i_d_mean_a = static_cast<double>(i_sum / res.sample_count);
    if (res.i_d_mean_a == 0.0) {
        throw ExtractionError("r_dson", "mean drain current is zero");
    }
    res.r_dson_ohm = res.v_d_mean_v / res.i_d_mean_a;
    return res;
}

CissResult extract_tau(const EquivalentTimeRecord& record) {
    const auto& v_g = require_channel(record, Channel::GateV, "tau");
    const auto& t = record.t_eq_s;

    const auto [min_it, max_it] = std::minmax_element(v_g.begin(), v_g.end());
    const double v_low = *min_it;
    const double v_high = *max_it;
    const double swing = v_high - v_low;
    if (!(swing > 0.0)) {
        throw ExtractionError("tau", "gate channel has no swing");
    }
    const double lo_level = v_low + 0.1 * swing;
    const double hi_level = v_low + 0.9 * swing;

    // Window over the rising transient, which starts at equivalent time 0.
    std::size_t start = 0;
    while (start < v_g.size() && v_g[start] < lo_level) ++start;
    std::size_t stop = start;
    while (stop < v_g.size() && v_g[stop] < hi_level) ++stop;

    CissResult res;
    res.window_count = stop - start;
    if (res.window_count < 10) {
        throw ExtractionError("tau", "transient under-resolved: fewer than 10 "
                                     "samples between 10 % and 90 % of swing");
    }

    // Least squares on y = ln(v_high - v_g): slope is -1/tau regardless of
    // the (possibly unsettled) start level.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(res.window_count);
    for (std::size_t k = start; k < stop; ++k) {
        const double x = t[k];
        const double y = std::log(v_high - v_g[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) {
        throw ExtractionError("tau", "degenerate time axis in fit window");
    }
    const double slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / m;
    if (!(slope < 0.0)) {
        throw ExtractionError("tau", "gate transient is not an exponential rise");
    }
    res.tau_s = -1.0 / slope;

    double ss_res = 0.0, ss_tot = 0.0;
    const double y_mean = sy / m;
    for (std::size_t k = start; k < stop; ++k) {
        const double y = std::log(v_high - v_g[k]);
        const double fit = intercept + slope * t[k];
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - y_mean) * (y - y_mean);
    }
    res.fit_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    if (res.fit_r2 < 0.9) {
        throw ExtractionError("tau", "fit_r2 below 0.9: transient is not "
                                     "single-pole within the noise floor");
    }
    return res;
}

double extract_ciss(double tau_s, double r_g_ohm) {
    if (!(tau_s > 0.0)) throw std::domain_error("tau must be > 0");
    if (!(r_g_ohm > 0.0)) throw std::domain_error("r_g must be > 0");
    return tau_s / r_g_ohm;
}

SwitchingTimes extract_switching_times(const EquivalentTimeRecord& record,
                                       double i_0_a, double v_bus_v) {
    const auto& i_d = require_channel(record, Channel::DrainI, "tc_on");
    const auto& v_d = require_channel(record, Channel::DrainV, "tc_on");
    const auto& t = record.t_eq_s;

    const auto i_rise = rising_crossing(t, i_d, 0.1 * i_0_a);
    if (!i_rise) {
        throw ExtractionError("tc_on", "missing turn-on current edge (i_d "
                                       "never rises through 10 % of i_0)");
    }
    const auto v_fall = falling_crossing(t, v_d, 0.1 * v_bus_v);
    if (!v_fall) {
        throw ExtractionError("tc_on", "missing turn-on voltage edge (v_d "
                                       "never falls through 10 % of v_bus)");
    }

    const auto i_fall = last_falling_crossing(t, i_d, 0.9 * i_0_a);
    if (!i_fall || i_fall->index <= i_rise->index) {
        throw ExtractionError("tc_off", "missing turn-off current edge (i_d "
                                        "never falls through 90 % of i_0)");
    }
    const auto v_rise = last_rising_crossing(t, v_d, 0.9 * v_bus_v);
    if (!v_rise || v_rise->index <= v_fall->index) {
        throw ExtractionError("tc_off", "missing turn-off voltage edge (v_d "
                                        "never rises through 90 % of v_bus)");
    }

    SwitchingTimes res;
    res.tc_on_s = v_fall->t - i_rise->t;
    res.tc_off_s = v_rise->t - i_fall->t;
    res.tc_on_under_resolved = res.tc_on_s < record.schedule.t_et_s;
    res.tc_off_under_resolved = res.tc_off_s < record.schedule.t_et_s;
    return res;
}

}  // namespace etscope
