#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "etscope/extraction.hpp"
#include "etscope/losses.hpp"
#include "etscope/presets.hpp"

namespace etscope {

/// Samples per equivalent period for one-off records. Resolves the gate
/// transient at every preset frequency (>= 10 fit-window samples at the
/// 10 kHz anchor).
inline constexpr std::size_t kDefaultRecordSamples = 20000;

/// Samples per equivalent period for trend sweeps. The turn-off threshold
/// interpolation error is bounded by one sample of gate slew, so the
/// near-null GaN Cascode delta-V_th band needs t_et ~ 0.1 ns at 10 kHz.
inline constexpr std::size_t kDefaultSweepSamples = 1000000;

struct FomUncertainty {
    double u_id_a = 0.0;
    double u_vd_v = 0.0;
    double u_ciss_f = 0.0;
    double u_rdson_ohm = 0.0;
};

/// Every figure of merit extracted from a single acquisition.
struct FomReport {
    DeviceKind kind = DeviceKind::GanEmode;
    double f_s_hz = 0.0;
    std::uint64_t seed = 0;
    ThresholdResult threshold;
    RdsonResult rdson;
    CissResult ciss;
    SwitchingTimes times;
    LossReport loss;
    FomUncertainty uncertainty;
};

struct SweepRow {
    FomReport fom;
    double rdson_ratio = 1.0;  ///< r_dson(f) / r_dson(10 kHz)
    double ciss_ratio = 1.0;   ///< ciss(f) / ciss(10 kHz)
};

struct SweepTable {
    DeviceKind kind = DeviceKind::GanEmode;
    std::size_t n = 0;
    std::uint64_t root_seed = 0;
    std::vector<SweepRow> rows;  ///< ordered by strictly increasing f_s
};

/// Deterministic per-point seed derived from the root seed and grid index,
/// independent of evaluation order.
std::uint64_t point_seed(std::uint64_t root_seed, std::size_t index);

/// Simulate, acquire all three channels, and extract every figure of
/// merit at one operating point. f_s must lie within the preset grid
/// bounds and n must be >= 100. Any extraction failure propagates as
/// ExtractionError naming the figure of merit; no partial report exists.
FomReport run_point(const Preset& preset, double f_s_hz, std::size_t n,
                    std::uint64_t seed);
FomReport run_point(DeviceKind kind, double f_s_hz, std::size_t n,
                    std::uint64_t seed);

/// One FomReport per grid frequency, normalized against the 10 kHz row
/// (its absence is a domain error). Grid points are independent and may
/// be evaluated in parallel; ordering and per-point seeds do not depend
/// on execution order.
SweepTable run_sweep(const Preset& preset, const std::vector<double>& grid_hz,
                     std::size_t n, std::uint64_t root_seed, bool parallel = true);
SweepTable run_sweep(DeviceKind kind, std::size_t n, std::uint64_t root_seed,
                     bool parallel = true);

enum class BandMetric { CissRatio, RdsonRatio, DeltaVth, AbsDeltaVth };

/// One acceptance band: metric within [lo, hi], checked either at a single
/// grid frequency or across every row.
struct TrendBand {
    std::string name;
    BandMetric metric = BandMetric::RdsonRatio;
    bool all_points = false;
    double f_hz = 0.0;  ///< ignored when all_points
    double lo = 0.0;
    double hi = 0.0;
};

struct TrendCheck {
    TrendBand band;
    double value = 0.0;   ///< worst-case metric value
    double margin = 0.0;  ///< distance to the nearest bound; negative = fail
    bool pass = false;
};

struct TrendReport {
    std::vector<TrendCheck> checks;
    bool all_pass() const;
};

/// The committed frequency-trend expectations per device family.
std::vector<TrendBand> default_bands(DeviceKind kind);

/// Evaluates every band and reports the margin to the nearest bound.
/// Failures are reported, never thrown; an empty set passes vacuously.
TrendReport verify_trends(const SweepTable& table,
                          const std::vector<TrendBand>& bands);

/// Sweep CSV with the fixed header
/// device,fs_hz,ciss_f,ciss_ratio,rdson_ohm,rdson_ratio,vth_on_v,vth_off_v,
/// delta_vth_v,tc_on_s,tc_off_s,p_on_w,p_s_w,p_off_w,p_l_w,u_id_a
/// and 17-significant-digit values for byte-exact reproducibility.
void write_sweep_csv(const SweepTable& table, std::ostream& out);
void write_sweep_csv(const SweepTable& table, const std::string& path);
std::string sweep_csv_string(const SweepTable& table);

/// One line per band: name, bound, value, margin, PASS/FAIL.
std::string render_trend_report(const TrendReport& report);

}  // namespace etscope
