#include "etscope/losses.hpp"

#include <stdexcept>

namespace etscope {

double conduction_loss(double r_dson_ohm, double i_0_a, double t_on_s, double t_sw_s) {
    if (r_dson_ohm < 0.0 || i_0_a < 0.0) {
        throw std::domain_error("r_dson and i_0 must be >= 0");
    }
    if (!(t_on_s > 0.0) || !(t_sw_s > 0.0) || !(t_on_s < t_sw_s)) {
        throw std::domain_error("need 0 < t_on < t_sw");
    }
    return r_dson_ohm * i_0_a * i_0_a * t_on_s / t_sw_s;
}

double switching_loss(double v_d_v, double i_0_a, double f_s_hz,
                      double tc_on_s, double tc_off_s) {
    if (v_d_v < 0.0 || i_0_a < 0.0 || tc_on_s < 0.0 || tc_off_s < 0.0) {
        throw std::domain_error("switching loss terms must be >= 0");
    }
    if (!(f_s_hz > 0.0)) throw std::domain_error("f_s must be > 0");
    return 0.5 * v_d_v * i_0_a * f_s_hz * (tc_on_s + tc_off_s);
}

double leakage_loss(double i_leak_a, double v_bus_v, double t_off_s, double t_sw_s) {
    if (i_leak_a < 0.0 || v_bus_v < 0.0 || t_off_s < 0.0) {
        throw std::domain_error("leakage loss terms must be >= 0");
    }
    if (!(t_sw_s > 0.0)) throw std::domain_error("t_sw must be > 0");
    return v_bus_v * i_leak_a * t_off_s / t_sw_s;
}

LossReport total_loss(double p_on_w, double p_s_w, double p_off_w) {
    if (p_on_w < 0.0 || p_s_w < 0.0 || p_off_w < 0.0) {
        throw std::domain_error("loss terms must be >= 0");
    }
    LossReport rep;
    rep.p_on_w = p_on_w;
    rep.p_s_w = p_s_w;
    rep.p_off_w = p_off_w;
    rep.p_l_w = p_on_w + p_s_w + p_off_w;
    rep.approx_ratio = rep.p_l_w > 0.0 ? (p_on_w + p_s_w) / rep.p_l_w : 1.0;
    return rep;
}

}  // namespace etscope
