#include "etscope/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "etscope/errors.hpp"
#include "etscope/waveform.hpp"

namespace etscope {

std::uint64_t point_seed(std::uint64_t root_seed, std::size_t index) {
    // splitmix64 over root ^ index: well-spread, order independent.
    std::uint64_t z = root_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

bool within_grid(const std::vector<double>& grid, double f_hz) {
    return !grid.empty() && f_hz >= grid.front() * (1.0 - 1e-12) &&
           f_hz <= grid.back() * (1.0 + 1e-12);
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); }

}  // namespace

FomReport run_point(const Preset& preset, double f_s_hz, std::size_t n,
                    std::uint64_t seed) {
    if (!within_grid(preset.grid_hz, f_s_hz)) {
        throw std::domain_error("f_s outside the preset frequency grid");
    }
    if (n < 100) {
        throw std::domain_error("run_point needs n >= 100");
    }

    DriveConfig drive = preset.drive;
    drive.f_s_hz = f_s_hz;

    const WaveformModel model(preset.device, drive);
    const EtSchedule schedule = make_schedule(drive.period_s(), n);
    const EquivalentTimeRecord rec =
        acquire(make_source(model), schedule, preset.adc,
                {Channel::GateV, Channel::DrainV, Channel::DrainI}, seed);

    FomReport rep;
    rep.kind = preset.device.kind;
    rep.f_s_hz = f_s_hz;
    rep.seed = seed;

    rep.uncertainty.u_id_a = channel_uncertainty(preset.adc, Channel::DrainI);
    rep.uncertainty.u_vd_v = channel_uncertainty(preset.adc, Channel::DrainV);
    const double i_c = select_ic(rep.uncertainty.u_id_a);

    rep.threshold = delta_vth(rec, drive.i_0_a, i_c);
    rep.rdson = extract_rdson(rec, drive.t_on_s());
    rep.ciss = extract_tau(rec);
    rep.ciss.ciss_f = extract_ciss(rep.ciss.tau_s, drive.r_g_ohm);
    rep.times = extract_switching_times(rec, drive.i_0_a, drive.v_bus_v);

    const double p_on = conduction_loss(rep.rdson.r_dson_ohm, drive.i_0_a,
                                        drive.t_on_s(), drive.period_s());
    const double p_s = switching_loss(drive.v_bus_v, drive.i_0_a, f_s_hz,
                                      rep.times.tc_on_s, rep.times.tc_off_s);
    const double p_off = leakage_loss(preset.device.i_leak_a, drive.v_bus_v,
                                      drive.t_off_s(), drive.period_s());
    rep.loss = total_loss(p_on, p_s, p_off);

    // Mean-value uncertainties. The averaged channels shrink with the
    // window population; tau keeps the equivalent-time grid term whole
    // because the fit-window edges quantize to the sample grid coherently.
    const double root_n = std::sqrt(static_cast<double>(rep.rdson.sample_count));
    rep.uncertainty.u_rdson_ohm =
        rep.rdson.r_dson_ohm *
        std::hypot(rep.uncertainty.u_vd_v / (root_n * rep.rdson.v_d_mean_v),
                   rep.uncertainty.u_id_a / (root_n * rep.rdson.i_d_mean_a));
    const double u_gate = channel_uncertainty(preset.adc, Channel::GateV);
    const double swing = drive.v_gate_high_v - drive.v_gate_low_v;
    const double u_tau = std::hypot(
        schedule.t_et_s / std::sqrt(12.0),
        rep.ciss.tau_s * u_gate /
            (swing * std::sqrt(static_cast<double>(rep.ciss.window_count))));
    rep.uncertainty.u_ciss_f = u_tau / drive.r_g_ohm;
    return rep;
}

FomReport run_point(DeviceKind kind, double f_s_hz, std::size_t n,
                    std::uint64_t seed) {
    return run_point(preset(kind), f_s_hz, n, seed);
}

SweepTable run_sweep(const Preset& preset_cfg, const std::vector<double>& grid_hz,
                     std::size_t n, std::uint64_t root_seed, bool parallel) {
    if (grid_hz.size() < 2) {
        throw std::domain_error("sweep grid needs at least two frequencies");
    }
    for (std::size_t i = 1; i < grid_hz.size(); ++i) {
        if (!(grid_hz[i] > grid_hz[i - 1])) {
            throw std::domain_error("sweep grid must be strictly increasing");
        }
    }
    for (double f : grid_hz) {
        if (!within_grid(preset_cfg.grid_hz, f)) {
            throw std::domain_error("sweep grid exceeds the preset bounds");
        }
    }
    std::size_t anchor = grid_hz.size();
    for (std::size_t i = 0; i < grid_hz.size(); ++i) {
        if (near(grid_hz[i], 10e3)) anchor = i;
    }
    if (anchor == grid_hz.size()) {
        throw std::domain_error("sweep grid is missing the 10 kHz anchor");
    }

    std::vector<FomReport> reports(grid_hz.size());
    std::vector<std::exception_ptr> failures(grid_hz.size());

    const auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                reports[i] = run_point(preset_cfg, grid_hz[i], n,
                                       point_seed(root_seed, i));
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    if (parallel && grid_hz.size() > 1) {
        // Cap the pool: each in-flight point holds a full record in memory.
        const std::size_t workers = std::min<std::size_t>(
            {grid_hz.size(),
             std::max<std::size_t>(1, std::thread::hardware_concurrency()), 8});
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < grid_hz.size(); i += workers) {
                    eval_range(i, i + 1);
                }
            });
        }
        for (auto& th : pool) th.join();
    } else {
        eval_range(0, grid_hz.size());
    }

    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (failures[i]) std::rethrow_exception(failures[i]);
    }

    SweepTable table;
    table.kind = preset_cfg.device.kind;
    table.n = n;
    table.root_seed = root_seed;
    table.rows.resize(grid_hz.size());
    const double rdson_anchor = reports[anchor].rdson.r_dson_ohm;
    const double ciss_anchor = reports[anchor].ciss.ciss_f;
    for (std::size_t i = 0; i < grid_hz.size(); ++i) {
        table.rows[i].fom = std::move(reports[i]);
        table.rows[i].rdson_ratio = table.rows[i].fom.rdson.r_dson_ohm / rdson_anchor;
        table.rows[i].ciss_ratio = table.rows[i].fom.ciss.ciss_f / ciss_anchor;
    }
    return table;
}

SweepTable run_sweep(DeviceKind kind, std::size_t n, std::uint64_t root_seed,
                     bool parallel) {
    const Preset p = preset(kind);
    return run_sweep(p, p.grid_hz, n, root_seed, parallel);
}

bool TrendReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const TrendCheck& c) { return c.pass; });
}

std::vector<TrendBand> default_bands(DeviceKind kind) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<TrendBand> bands;
    bands.push_back({"rdson_anchor", BandMetric::RdsonRatio, false, 10e3, 1.0, 1.0});
    switch (kind) {
        case DeviceKind::GanCascode:
            bands.push_back({"ciss_doubling", BandMetric::CissRatio, false, 1e6, 1.8, 2.2});
            bands.push_back({"rdson_rise", BandMetric::RdsonRatio, false, 1e6, 1.20, 1.35});
            bands.push_back({"delta_vth_null", BandMetric::AbsDeltaVth, true, 0.0, 0.0, 0.05});
            break;
        case DeviceKind::GanEmode:
            bands.push_back({"ciss_doubling", BandMetric::CissRatio, false, 1e6, 1.8, 2.2});
            bands.push_back({"rdson_rise", BandMetric::RdsonRatio, false, 1e6, 1.20, 1.35});
            bands.push_back({"delta_vth_rise", BandMetric::DeltaVth, false, 1e6, 0.1, 1.0});
            break;
        case DeviceKind::SicMosfet:
            bands.push_back({"rdson_flat", BandMetric::RdsonRatio, true, 0.0, 0.98, 1.05});
            bands.push_back({"delta_vth_rise", BandMetric::DeltaVth, false, 200e3, 4.0, kInf});
            break;
    }
    return bands;
}

namespace {

double metric_value(const SweepRow& row, BandMetric metric) {
    switch (metric) {
        case BandMetric::CissRatio: return row.ciss_ratio;
        case BandMetric::RdsonRatio: return row.rdson_ratio;
        case BandMetric::DeltaVth: return row.fom.threshold.delta_vth_v;
        case BandMetric::AbsDeltaVth: return std::abs(row.fom.threshold.delta_vth_v);
    }
    return 0.0;
}

double band_margin(const TrendBand& band, double value) {
    const double lo_margin = value - band.lo;
    const double hi_margin = band.hi - value;
    return std::min(lo_margin, hi_margin);
}

}  // namespace

TrendReport verify_trends(const SweepTable& table,
                          const std::vector<TrendBand>& bands) {
    TrendReport report;
    for (const TrendBand& band : bands) {
        TrendCheck check;
        check.band = band;
        if (band.all_points) {
            check.margin = std::numeric_limits<double>::infinity();
            for (const SweepRow& row : table.rows) {
                const double v = metric_value(row, band.metric);
                const double m = band_margin(band, v);
                if (m < check.margin) {
                    check.margin = m;
                    check.value = v;
                }
            }
        } else {
            const SweepRow* hit = nullptr;
            for (const SweepRow& row : table.rows) {
                if (near(row.fom.f_s_hz, band.f_hz)) hit = &row;
            }
            if (hit == nullptr) {
                check.value = std::numeric_limits<double>::quiet_NaN();
                check.margin = -std::numeric_limits<double>::infinity();
                check.pass = false;
                report.checks.push_back(check);
                continue;
            }
            check.value = metric_value(*hit, band.metric);
            check.margin = band_margin(band, check.value);
        }
        check.pass = check.margin >= 0.0;
        report.checks.push_back(check);
    }
    return report;
}

namespace {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
    out << "device,fs_hz,ciss_f,ciss_ratio,rdson_ohm,rdson_ratio,vth_on_v,"
           "vth_off_v,delta_vth_v,tc_on_s,tc_off_s,p_on_w,p_s_w,p_off_w,p_l_w,"
           "u_id_a\n";
    for (const SweepRow& row : table.rows) {
        const FomReport& f = row.fom;
        out << to_string(table.kind) << ',' << fmt_g17(f.f_s_hz) << ','
            << fmt_g17(f.ciss.ciss_f) << ',' << fmt_g17(row.ciss_ratio) << ','
            << fmt_g17(f.rdson.r_dson_ohm) << ',' << fmt_g17(row.rdson_ratio) << ','
            << fmt_g17(f.threshold.vth_on_v) << ',' << fmt_g17(f.threshold.vth_off_v)
            << ',' << fmt_g17(f.threshold.delta_vth_v) << ','
            << fmt_g17(f.times.tc_on_s) << ',' << fmt_g17(f.times.tc_off_s) << ','
            << fmt_g17(f.loss.p_on_w) << ',' << fmt_g17(f.loss.p_s_w) << ','
            << fmt_g17(f.loss.p_off_w) << ',' << fmt_g17(f.loss.p_l_w) << ','
            << fmt_g17(f.uncertainty.u_id_a) << "\n";
    }
}

void write_sweep_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("output", "cannot open for writing: " + path);
    write_sweep_csv(table, out);
}

std::string sweep_csv_string(const SweepTable& table) {
    std::ostringstream os;
    write_sweep_csv(table, os);
    return os.str();
}

std::string render_trend_report(const TrendReport& report) {
    std::ostringstream os;
    for (const TrendCheck& c : report.checks) {
        char line[256];
        std::snprintf(line, sizeof(line),
                      "%-16s bound=[%g, %g] value=%.6g margin=%.3g %s\n",
                      c.band.name.c_str(), c.band.lo, c.band.hi, c.value,
                      c.margin, c.pass ? "PASS" : "FAIL");
        os << line;
    }
    os << (report.all_pass() ? "ALL BANDS PASS\n" : "BAND FAILURES PRESENT\n");
    return os.str();
}

}  // namespace etscope
