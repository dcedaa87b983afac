// Preset calibration search: tunes the trap sensitivities per device
// family until the frequency-trend bands are centered, then verifies the
// committed constants through the full acquisition + extraction pipeline.
//
// Usage:
//   etscope_calibrate search   # grid-search and print preset constants
//   etscope_calibrate verify   # run the pipeline bands on committed presets

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "etscope/harness.hpp"
#include "etscope/presets.hpp"
#include "etscope/waveform.hpp"

namespace {

using namespace etscope;

double model_metric(const Preset& p, double f_hz,
                    const std::function<double(const EffectiveParams&)>& pick) {
    DriveConfig drive = p.drive;
    drive.f_s_hz = f_hz;
    return pick(effective_params(p.device, drive));
}

/// Scan `field` over [lo, hi] and keep the value whose metric lands
/// closest to `target`. Coarse pass then one refinement decade.
double grid_search(Preset& p, double DeviceModel::*field, double lo, double hi,
                   const std::function<double(const Preset&)>& metric,
                   double target) {
    double best = lo;
    double best_err = 1e300;
    for (int pass = 0; pass < 2; ++pass) {
        const int steps = 200;
        for (int i = 0; i <= steps; ++i) {
            const double v = lo + (hi - lo) * i / steps;
            p.device.*field = v;
            const double err = std::abs(metric(p) - target);
            if (err < best_err) {
                best_err = err;
                best = v;
            }
        }
        const double span = (hi - lo) / steps;
        lo = best - span;
        hi = best + span;
    }
    p.device.*field = best;
    return best;
}

void print_device(const char* name, const DeviceModel& d) {
    std::printf("%s:\n", name);
    std::printf("  alpha_r  = %.4f\n", d.alpha_r);
    std::printf("  alpha_c  = %.4f\n", d.alpha_c);
    std::printf("  beta_pos = %.4f\n", d.beta_pos_v);
    std::printf("  beta_neg = %.4f\n", d.beta_neg_v);
    std::printf("  tau_trap = %.3e  tau_detrap = %.3e\n", d.trap.tau_trap_s,
                d.trap.tau_detrap_s);
}

void search_gan(DeviceKind kind, double delta_target_v) {
    Preset p = preset(kind);
    const double f_lo = p.grid_hz.front();
    const double f_hi = p.grid_hz.back();

    const auto ciss_ratio = [&](const Preset& q) {
        return model_metric(q, f_hi, [](const EffectiveParams& e) { return e.ciss_eff_f; }) /
               model_metric(q, f_lo, [](const EffectiveParams& e) { return e.ciss_eff_f; });
    };
    const auto rdson_ratio = [&](const Preset& q) {
        return model_metric(q, f_hi, [](const EffectiveParams& e) { return e.r_dson_eff_ohm; }) /
               model_metric(q, f_lo, [](const EffectiveParams& e) { return e.r_dson_eff_ohm; });
    };
    const auto delta_vth = [&](const Preset& q) {
        return model_metric(q, f_hi, [](const EffectiveParams& e) {
            return e.vth_eff_off_phase_v - e.vth_eff_on_phase_v;
        });
    };

    grid_search(p, &DeviceModel::alpha_c, 0.2, 4.0, ciss_ratio, 2.0);
    grid_search(p, &DeviceModel::alpha_r, 0.02, 1.5, rdson_ratio, 1.275);
    if (delta_target_v > 0.0) {
        grid_search(p, &DeviceModel::beta_pos_v, 0.05, 2.0, delta_vth, delta_target_v);
    }

    print_device(std::string(to_string(kind)).c_str(), p.device);
    std::printf("  model ciss_ratio(max)=%.4f rdson_ratio(max)=%.4f "
                "delta_vth(max)=%.4f V\n\n",
                ciss_ratio(p), rdson_ratio(p), delta_vth(p));
}

void search_sic() {
    Preset p = preset(DeviceKind::SicMosfet);
    const double f_hi = p.grid_hz.back();

    const auto delta_vth = [&](const Preset& q) {
        return model_metric(q, f_hi, [](const EffectiveParams& e) {
            return e.vth_eff_off_phase_v - e.vth_eff_on_phase_v;
        });
    };
    const auto rdson_ratio_hi = [&](const Preset& q) {
        return model_metric(q, f_hi, [](const EffectiveParams& e) { return e.r_dson_eff_ohm; }) /
               model_metric(q, q.grid_hz.front(),
                            [](const EffectiveParams& e) { return e.r_dson_eff_ohm; });
    };

    grid_search(p, &DeviceModel::beta_pos_v, 2.0, 12.0, delta_vth, 4.85);
    grid_search(p, &DeviceModel::alpha_r, 0.0, 0.2, rdson_ratio_hi, 1.002);

    print_device("sic", p.device);
    std::printf("  model delta_vth(200k)=%.4f V rdson_ratio(200k)=%.4f\n\n",
                delta_vth(p), rdson_ratio_hi(p));
}

int verify_committed() {
    int rc = 0;
    for (DeviceKind kind :
         {DeviceKind::GanCascode, DeviceKind::GanEmode, DeviceKind::SicMosfet}) {
        const SweepTable table = run_sweep(kind, kDefaultSweepSamples, 1);
        const TrendReport report = verify_trends(table, default_bands(kind));
        std::printf("== %s ==\n%s\n", std::string(to_string(kind)).c_str(),
                    render_trend_report(report).c_str());
        if (!report.all_pass()) rc = 1;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "verify";
    if (mode == "search") {
        search_gan(DeviceKind::GanCascode, 0.0);
        search_gan(DeviceKind::GanEmode, 0.45);
        search_sic();
        return 0;
    }
    if (mode == "verify") {
        return verify_committed();
    }
    std::fprintf(stderr, "usage: %s [search|verify]\n", argv[0]);
    return 2;
}
