// etscope command-line front end: simulate / extract / sweep / losses.
// Exit codes: 0 success, 1 analysis or verification failure, 2 usage or
// configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "etscope/config.hpp"
#include "etscope/errors.hpp"
#include "etscope/extraction.hpp"
#include "etscope/harness.hpp"
#include "etscope/losses.hpp"
#include "etscope/record_csv.hpp"
#include "etscope/waveform.hpp"

namespace {

using namespace etscope;

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitUsage = 2;

void apply_overrides(RunConfig& cfg, const std::string& config_path,
                     const std::vector<std::string>& sets) {
    if (!config_path.empty()) {
        for (const auto& [key, value] : parse_config_file(config_path)) {
            cfg.set(key, value);
        }
    }
    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(kv, "--set expects key=value, got '" + kv + "'");
        }
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
}

int cmd_simulate(const RunConfig& cfg, const std::string& output) {
    cfg.finalize();
    const std::string path = !output.empty() ? output : cfg.output();
    if (path.empty()) {
        throw ConfigError("output", "simulate needs an output path (-o)");
    }

    const WaveformModel model(cfg.device(), cfg.drive());
    const EtSchedule schedule = make_schedule(cfg.drive().period_s(), cfg.n());
    const EquivalentTimeRecord rec =
        acquire(make_source(model), schedule, cfg.adc(),
                {Channel::GateV, Channel::DrainV, Channel::DrainI}, cfg.seed());
    write_record_csv(rec, path);

    std::printf("fs_hz=%.17g n=%zu seed=%llu saturated=%d -> %s\n",
                rec.f_s_hz, rec.size(),
                static_cast<unsigned long long>(rec.seed),
                rec.saturated ? 1 : 0, path.c_str());
    if (rec.saturated) {
        std::printf("warning: at least one sample exceeded a channel full "
                    "scale and was clipped\n");
    }
    return kExitOk;
}

struct ExtractOptions {
    std::string record_path;
    std::string output;
    double duty = 0.9;
    double r_g_ohm = 0.0;   // 0 = not given, ciss marked absent
    double i_0_a = 0.0;     // 0 = estimate from the plateau
    double v_bus_v = 0.0;   // 0 = estimate from the off state
    double i_c_a = 0.0;     // 0 = 100 * u_id of a default front end
};

double estimate_i0(const EquivalentTimeRecord& rec) {
    const auto& i_d = rec.channel(Channel::DrainI);
    const double peak = *std::max_element(i_d.begin(), i_d.end());
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : i_d) {
        if (v >= 0.9 * peak) {
            sum += v;
            ++count;
        }
    }
    return count > 0 ? sum / static_cast<double>(count) : peak;
}

int cmd_extract(const ExtractOptions& opt) {
    const EquivalentTimeRecord rec = read_record_csv(opt.record_path);

    std::printf("record: %s (fs_hz=%.6g, n=%zu, saturated=%d)\n",
                opt.record_path.c_str(), rec.f_s_hz, rec.size(),
                rec.saturated ? 1 : 0);

    const bool has_i = rec.has(Channel::DrainI);
    const bool has_v = rec.has(Channel::DrainV);
    const bool has_g = rec.has(Channel::GateV);
    const double t_on = opt.duty / rec.f_s_hz;
    int failures = 0;

    std::optional<double> i0;
    if (opt.i_0_a > 0.0) i0 = opt.i_0_a;
    else if (has_i) i0 = estimate_i0(rec);

    std::optional<double> vbus;
    if (opt.v_bus_v > 0.0) vbus = opt.v_bus_v;
    else if (has_v) {
        const auto& v_d = rec.channel(Channel::DrainV);
        vbus = *std::max_element(v_d.begin(), v_d.end());
    }

    if (has_i && has_g && i0) {
        double i_c = opt.i_c_a;
        if (!(i_c > 0.0)) {
            // Default reference current: the I_C rule against a 16-bit
            // front end sized for the observed current range.
            AdcModel adc;
            AdcChannel& c = adc.channel(Channel::DrainI);
            c.full_scale_high = 1.25 * *i0;
            c.gain = c.full_scale_high / 5.0;
            c.noise_sigma_v = 0.3e-3;
            i_c = select_ic(channel_uncertainty(adc, Channel::DrainI));
        }
        try {
            const ThresholdResult th = delta_vth(rec, *i0, i_c);
            std::printf("vth_on_v     = %.9g\n", th.vth_on_v);
            std::printf("vth_off_v    = %.9g\n", th.vth_off_v);
            std::printf("delta_vth_v  = %.9g (i_c_a=%.6g)\n", th.delta_vth_v,
                        th.i_c_a);
            if (th.saturated_input) {
                std::printf("warning: thresholds extracted from a saturated record\n");
            }
        } catch (const ExtractionError& e) {
            std::printf("threshold    : failed (%s)\n", e.what());
            ++failures;
        }
    } else {
        std::printf("threshold    : absent (needs gate_v and drain_i channels)\n");
    }

    if (has_i && has_v) {
        try {
            const RdsonResult r = extract_rdson(rec, t_on);
            std::printf("r_dson_ohm   = %.9g (window [%.6g, %.6g] s, %zu samples)\n",
                        r.r_dson_ohm, r.window_lo_s, r.window_hi_s, r.sample_count);
        } catch (const ExtractionError& e) {
            std::printf("r_dson       : failed (%s)\n", e.what());
            ++failures;
        }
    } else {
        std::printf("r_dson       : absent (needs drain_v and drain_i channels)\n");
    }

    if (has_g) {
        try {
            CissResult c = extract_tau(rec);
            std::printf("tau_s        = %.9g (fit_r2=%.6f, %zu samples)\n",
                        c.tau_s, c.fit_r2, c.window_count);
            if (opt.r_g_ohm > 0.0) {
                c.ciss_f = extract_ciss(c.tau_s, opt.r_g_ohm);
                std::printf("ciss_f       = %.9g (r_g_ohm=%.6g)\n", c.ciss_f,
                            opt.r_g_ohm);
            } else {
                std::printf("ciss_f       : absent (pass --rg to convert tau)\n");
            }
        } catch (const ExtractionError& e) {
            std::printf("tau          : failed (%s)\n", e.what());
            ++failures;
        }
    } else {
        std::printf("tau          : absent (needs gate_v channel)\n");
    }

    if (has_i && has_v && i0 && vbus) {
        try {
            const SwitchingTimes st = extract_switching_times(rec, *i0, *vbus);
            std::printf("tc_on_s      = %.9g%s\n", st.tc_on_s,
                        st.tc_on_under_resolved ? " (under-resolved)" : "");
            std::printf("tc_off_s     = %.9g%s\n", st.tc_off_s,
                        st.tc_off_under_resolved ? " (under-resolved)" : "");
        } catch (const ExtractionError& e) {
            std::printf("tc           : failed (%s)\n", e.what());
            ++failures;
        }
    } else {
        std::printf("tc           : absent (needs drain_v and drain_i channels)\n");
    }

    if (!opt.output.empty()) {
        std::ofstream out(opt.output);
        if (!out) throw ConfigError("output", "cannot open " + opt.output);
        out << "fs_hz,duty,i0_a,vbus_v\n";
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", rec.f_s_hz,
                      opt.duty, i0 ? *i0 : 0.0, vbus ? *vbus : 0.0);
        out << buf;
    }
    return failures == 0 ? kExitOk : kExitAnalysis;
}

int cmd_sweep(const RunConfig& cfg, const std::string& output,
              const std::string& report_path, bool verify, bool serial) {
    cfg.finalize();
    const std::string path = !output.empty() ? output : "sweep.csv";

    const SweepTable table =
        run_sweep(cfg.bundle(), cfg.grid_hz(), cfg.n(), cfg.seed(), !serial);
    write_sweep_csv(table, path);
    std::printf("sweep: %zu points -> %s\n", table.rows.size(), path.c_str());

    if (!verify) return kExitOk;

    const TrendReport report = verify_trends(table, default_bands(table.kind));
    const std::string rendered = render_trend_report(report);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw ConfigError("output", "cannot open " + report_path);
        out << rendered;
    }
    std::fputs(rendered.c_str(), stdout);
    return report.all_pass() ? kExitOk : kExitAnalysis;
}

struct LossOptions {
    double rdson_ohm = 0.0;
    double i_0_a = 0.0;
    double duty = 0.9;
    double f_s_hz = 100e3;
    double v_bus_v = 0.0;
    double tc_on_s = 0.0;
    double tc_off_s = 0.0;
    double i_leak_a = 0.0;
};

int cmd_losses(const LossOptions& opt) {
    const double t_sw = 1.0 / opt.f_s_hz;
    const double t_on = opt.duty * t_sw;
    const double p_on = conduction_loss(opt.rdson_ohm, opt.i_0_a, t_on, t_sw);
    const double p_s = switching_loss(opt.v_bus_v, opt.i_0_a, opt.f_s_hz,
                                      opt.tc_on_s, opt.tc_off_s);
    const double p_off = leakage_loss(opt.i_leak_a, opt.v_bus_v, t_sw - t_on, t_sw);
    const LossReport rep = total_loss(p_on, p_s, p_off);
    std::printf("p_on_w       = %.9g\n", rep.p_on_w);
    std::printf("p_s_w        = %.9g\n", rep.p_s_w);
    std::printf("p_off_w      = %.9g\n", rep.p_off_w);
    std::printf("p_l_w        = %.9g\n", rep.p_l_w);
    std::printf("approx_ratio = %.9f\n", rep.approx_ratio);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivalent-time sampling testbench for GaN/SiC switching "
                 "figure-of-merit extraction"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string preset_name;
    std::string output;
    std::optional<double> fs_flag;
    std::optional<std::uint64_t> n_flag;
    std::optional<std::uint64_t> seed_flag;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--preset", preset_name,
                        "device preset: gan-cascode | gan-emode | sic");
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--set", sets, "override a config key, e.g. --set device.alpha_r=0");
        sub->add_option("--n", n_flag, "samples per equivalent period");
        sub->add_option("--seed", seed_flag, "root RNG seed");
        sub->add_option("-o,--output", output, "output file path");
    };

    CLI::App* sim = app.add_subcommand("simulate",
                                       "synthesize one operating point and write a record CSV");
    add_common(sim);
    sim->add_option("--fs", fs_flag, "switching frequency in Hz");

    ExtractOptions ext;
    CLI::App* extract = app.add_subcommand("extract",
                                           "extract figures of merit from a record CSV");
    extract->add_option("record", ext.record_path, "record CSV path")->required();
    extract->add_option("--duty", ext.duty, "gate command duty cycle");
    extract->add_option("--rg", ext.r_g_ohm, "external gate resistance in ohm");
    extract->add_option("--i0", ext.i_0_a, "on-state current in A (default: estimated)");
    extract->add_option("--vbus", ext.v_bus_v, "bus voltage in V (default: estimated)");
    extract->add_option("--ic", ext.i_c_a, "constant reference current in A");
    extract->add_option("-o,--output", ext.output, "optional CSV summary row");

    CLI::App* sweep = app.add_subcommand("sweep",
                                         "run the preset frequency sweep and write the sweep CSV");
    add_common(sweep);
    bool verify = false;
    bool serial = false;
    std::string report_path;
    sweep->add_flag("--verify", verify, "evaluate the frequency-trend bands; exit 1 on failure");
    sweep->add_flag("--serial", serial, "disable parallel grid evaluation");
    sweep->add_option("--report", report_path, "write the trend report to a file");

    LossOptions loss;
    CLI::App* losses = app.add_subcommand("losses",
                                          "power-loss calculator from explicit parameters");
    losses->add_option("--rdson", loss.rdson_ohm, "on-resistance in ohm")->required();
    losses->add_option("--i0", loss.i_0_a, "on-state current in A")->required();
    losses->add_option("--duty", loss.duty, "duty cycle");
    losses->add_option("--fs", loss.f_s_hz, "switching frequency in Hz")->required();
    losses->add_option("--vbus", loss.v_bus_v, "bus voltage in V")->required();
    losses->add_option("--tc-on", loss.tc_on_s, "turn-on crossover time in s");
    losses->add_option("--tc-off", loss.tc_off_s, "turn-off crossover time in s");
    losses->add_option("--ileak", loss.i_leak_a, "off-state leakage in A");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (extract->parsed()) return cmd_extract(ext);
        if (losses->parsed()) return cmd_losses(loss);

        RunConfig cfg;
        if (!preset_name.empty()) cfg.set("preset", preset_name);
        apply_overrides(cfg, config_path, sets);
        if (fs_flag) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", *fs_flag);
            cfg.set("drive.fs", buf);
        }
        if (n_flag) cfg.set("n", std::to_string(*n_flag));
        if (seed_flag) cfg.set("seed", std::to_string(*seed_flag));

        if (sim->parsed()) return cmd_simulate(cfg, output);
        if (sweep->parsed()) {
            if (!n_flag) cfg.set("n", std::to_string(kDefaultSweepSamples));
            return cmd_sweep(cfg, output, report_path, verify, serial);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.key().c_str(), e.what());
        return kExitUsage;
    } catch (const ExtractionError& e) {
        std::fprintf(stderr, "extraction failed [%s]: %s\n", e.fom().c_str(), e.what());
        return kExitAnalysis;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitAnalysis;
    }
    return kExitUsage;
}
