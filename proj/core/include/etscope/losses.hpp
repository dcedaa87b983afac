#pragma once

namespace etscope {

/// Power-loss decomposition: p_l = p_on + p_s + p_off. approx_ratio is
/// (p_on + p_s) / p_l, the share covered by neglecting leakage.
struct LossReport {
    double p_on_w = 0.0;
    double p_s_w = 0.0;
    double p_off_w = 0.0;
    double p_l_w = 0.0;
    double approx_ratio = 1.0;
};

/// Conduction loss r_dson * i_0^2 * t_on / t_sw.
double conduction_loss(double r_dson_ohm, double i_0_a, double t_on_s, double t_sw_s);

/// Switching loss 0.5 * v_d * i_0 * f_s * (tc_on + tc_off).
double switching_loss(double v_d_v, double i_0_a, double f_s_hz,
                      double tc_on_s, double tc_off_s);

/// Off-state leakage loss v_bus * i_leak * t_off / t_sw.
double leakage_loss(double i_leak_a, double v_bus_v, double t_off_s, double t_sw_s);

LossReport total_loss(double p_on_w, double p_s_w, double p_off_w);

}  // namespace etscope
