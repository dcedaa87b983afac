#pragma once

#include <cstddef>

#include "etscope/sampler.hpp"

namespace etscope {

/// Constant-current threshold extraction on both edges.
/// delta_vth = vth_off - vth_on within a single equivalent period.
struct ThresholdResult {
    double vth_on_v = 0.0;   ///< gate voltage where i_d rises through i_c
    double vth_off_v = 0.0;  ///< gate voltage where i_d falls through i_0 - i_c
    double i_c_a = 0.0;
    double delta_vth_v = 0.0;
    bool saturated_input = false;  ///< warning: record carried clipped samples
};

struct RdsonResult {
    double r_dson_ohm = 0.0;
    double v_d_mean_v = 0.0;
    double i_d_mean_a = 0.0;
    double window_lo_s = 0.0;
    double window_hi_s = 0.0;
    std::size_t sample_count = 0;
};

struct CissResult {
    double tau_s = 0.0;
    double ciss_f = 0.0;
    double fit_r2 = 0.0;
    std::size_t window_count = 0;  ///< samples used by the log-linear fit
};

struct SwitchingTimes {
    double tc_on_s = 0.0;
    double tc_off_s = 0.0;
    bool tc_on_under_resolved = false;   ///< tc_on below one t_et
    bool tc_off_under_resolved = false;  ///< tc_off below one t_et
};

/// Constant reference current: 100 times the absolute drain-current
/// measurement uncertainty. Throws std::domain_error for u_id <= 0.
double select_ic(double u_id_a);

/// Gate voltage, linearly interpolated, at the first rising crossing of
/// i_d through i_c. Throws ExtractionError("vth_on") when no crossing.
double extract_vth_on(const EquivalentTimeRecord& record, double i_c_a);

/// Same interpolation on the turn-off edge at current level i_0 - i_c.
double extract_vth_off(const EquivalentTimeRecord& record, double i_0_a, double i_c_a);

/// Both edge extractions plus their difference.
ThresholdResult delta_vth(const EquivalentTimeRecord& record, double i_0_a, double i_c_a);

/// Mean(v_d)/mean(i_d) over the on-state interval trimmed by 10 % of t_on
/// on each side. Throws ExtractionError("r_dson") with fewer than 10
/// window samples.
RdsonResult extract_rdson(const EquivalentTimeRecord& record, double t_on_s);

/// Gate time constant from a log-linear least-squares fit of
/// ln(v_max - v_g) over the 10-90 % portion of the rising swing.
/// Requires >= 10 window samples and fit_r2 >= 0.9. The returned result
/// has ciss_f = 0; combine with extract_ciss.
CissResult extract_tau(const EquivalentTimeRecord& record);

/// C_iss = tau / R_G.
double extract_ciss(double tau_s, double r_g_ohm);

/// tc_on: i_d rising through 10 % i_0 until v_d falling through 10 % v_bus.
/// tc_off: i_d falling through 90 % i_0 until v_d rising through 90 % v_bus.
/// Missing crossings throw ExtractionError naming the edge.
SwitchingTimes extract_switching_times(const EquivalentTimeRecord& record,
                                       double i_0_a, double v_bus_v);

}  // namespace etscope
