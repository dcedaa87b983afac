#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "etscope/errors.hpp"
#include "etscope/record_csv.hpp"
#include "etscope/sampler.hpp"

using namespace etscope;
using Catch::Approx;

namespace {

AdcModel unity_adc(int bits, double lo, double hi, double noise = 0.0,
                   double jitter = 0.0) {
    AdcModel adc;
    adc.bits = bits;
    for (Channel ch : kChannelOrder) {
        adc.channel(ch) = {lo, hi, 1.0, noise, jitter};
    }
    return adc;
}

/// Test-side dense-sampling oracle with its own mid-rise quantizer.
double oracle_quantize(double v, int bits, double lo, double hi) {
    if (v <= lo) return lo;
    if (v >= hi) return hi;
    const double codes = std::pow(2.0, bits);
    const double step = (hi - lo) / codes;
    double code = std::floor((v - lo) / step);
    if (code > codes - 1.0) code = codes - 1.0;
    return lo + step * (code + 0.5);
}

struct Sinusoids {
    double period;
    double a1, a2, phi1, phi2, offset;
    double operator()(double t) const {
        const double w = 2.0 * M_PI / period;
        return offset + a1 * std::sin(w * t + phi1) +
               a2 * std::sin(2.0 * w * t + phi2);
    }
};

}  // namespace

TEST_CASE("schedule follows the sampler-period definition", "[sampler]") {
    const EtSchedule s = make_schedule(100e-6, 1000);
    CHECK(s.t_et_s == Approx(100e-9).epsilon(1e-15));
    CHECK(s.t_sample_s == Approx(100.1e-6).epsilon(1e-15));

    const EtSchedule s2 = make_schedule(1e-6, 2);
    CHECK(s2.t_et_s == Approx(0.5e-6).epsilon(1e-15));
    CHECK(s2.t_sample_s == Approx(1.5e-6).epsilon(1e-15));
}

TEST_CASE("equivalent timestamps walk one period in n steps", "[sampler]") {
    const EtSchedule s = make_schedule(1e-6, 4);
    PeriodicSource src{[](double t) { return WaveformPoint{t, t, 0.0, 0.0}; },
                       1e-6};
    const auto rec = acquire(src, s, unity_adc(24, -1.0, 2.0),
                             {Channel::GateV, Channel::DrainV}, 1);
    REQUIRE(rec.size() == 4);
    CHECK(rec.t_eq_s[0] == 0.0);
    CHECK(rec.t_eq_s[1] == 1e-6 / 4.0);
    CHECK(rec.t_eq_s[2] == 2.0 * (1e-6 / 4.0));
    CHECK(rec.t_eq_s[3] == 3.0 * (1e-6 / 4.0));
}

TEST_CASE("schedule rejects degenerate inputs", "[sampler]") {
    CHECK_THROWS_AS(make_schedule(0.0, 100), std::domain_error);
    CHECK_THROWS_AS(make_schedule(-1e-6, 100), std::domain_error);
    CHECK_THROWS_AS(make_schedule(1e-6, 1), std::domain_error);
}

TEST_CASE("quantizer maps the rails exactly and stays within half an LSB",
          "[sampler]") {
    AdcModel adc = unity_adc(16, 0.0, 3.3);
    CHECK(quantize(adc, Channel::GateV, 0.0) == 0.0);
    CHECK(quantize(adc, Channel::GateV, 3.3) == 3.3);
    CHECK(quantize(adc, Channel::GateV, -5.0) == 0.0);
    CHECK(quantize(adc, Channel::GateV, 99.0) == 3.3);

    // two-level degenerate case: the mid-rise levels are {0.25, 0.75}
    AdcModel one_bit = unity_adc(16, 0.0, 1.0);
    one_bit.bits = 1;
    CHECK(quantize(one_bit, Channel::GateV, 0.3) == 0.25);
    CHECK(quantize(one_bit, Channel::GateV, 0.6) == 0.75);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 3.3);
    const double lsb = 3.3 / 65536.0;
    for (int i = 0; i < 500; ++i) {
        const double v = uni(rng);
        CHECK(std::abs(quantize(adc, Channel::GateV, v) - v) <=
              lsb / 2 + 1e-15);
    }
}

TEST_CASE("noiseless acquisition equals dense sampling of one period",
          "[sampler][oracle]") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> period_exp(-5.0, -2.0);
    std::uniform_int_distribution<std::size_t> n_dist(2, 5000);
    std::uniform_real_distribution<double> amp(0.1, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);

    for (int trial = 0; trial < 50; ++trial) {
        const double period = std::pow(10.0, period_exp(rng));
        const std::size_t n = n_dist(rng);
        const Sinusoids wave{period, amp(rng), amp(rng), phase(rng),
                             phase(rng), amp(rng)};

        const double lo = -3.0, hi = 3.0;
        const AdcModel adc = unity_adc(24, lo, hi);
        PeriodicSource src{
            [&wave](double t) {
                const double v = wave(t);
                return WaveformPoint{t, v, v, v};
            },
            period};

        const EtSchedule schedule = make_schedule(period, n);
        const auto rec = acquire(src, schedule, adc,
                                 {Channel::GateV, Channel::DrainV}, trial);

        const double lsb = (hi - lo) / std::pow(2.0, 24);
        REQUIRE(rec.size() == n);
        for (std::size_t k = 0; k < n; ++k) {
            const double t_dense = static_cast<double>(k) * period /
                                   static_cast<double>(n);
            const double expect = oracle_quantize(wave(t_dense), 24, lo, hi);
            INFO("trial " << trial << " n=" << n << " k=" << k);
            REQUIRE(std::abs(rec.channel(Channel::GateV)[k] - expect) <= lsb);
        }
    }
}

TEST_CASE("identical seeds give bit-identical records", "[sampler]") {
    const Sinusoids wave{1e-5, 0.7, 0.2, 0.3, 1.1, 0.5};
    PeriodicSource src{[&wave](double t) {
                           const double v = wave(t);
                           return WaveformPoint{t, v, v, v};
                       },
                       1e-5};
    const AdcModel adc = unity_adc(16, -3.0, 3.0, 1e-3, 1e-9);
    const EtSchedule schedule = make_schedule(1e-5, 777);

    const auto a = acquire(src, schedule, adc,
                           {Channel::GateV, Channel::DrainI}, 123456);
    const auto b = acquire(src, schedule, adc,
                           {Channel::GateV, Channel::DrainI}, 123456);
    const auto c = acquire(src, schedule, adc,
                           {Channel::GateV, Channel::DrainI}, 123457);

    REQUIRE(a.size() == b.size());
    bool identical = true;
    bool differs_c = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        identical &= a.channel(Channel::GateV)[k] == b.channel(Channel::GateV)[k];
        identical &= a.channel(Channel::DrainI)[k] == b.channel(Channel::DrainI)[k];
        differs_c |= a.channel(Channel::GateV)[k] != c.channel(Channel::GateV)[k];
    }
    CHECK(identical);
    CHECK(differs_c);
}

TEST_CASE("constant mid-scale input gives identical samples", "[sampler]") {
    PeriodicSource src{[](double t) { return WaveformPoint{t, 1.5, 1.5, 1.5}; },
                       1e-5};
    const auto rec = acquire(src, make_schedule(1e-5, 64),
                             unity_adc(16, 0.0, 3.0),
                             {Channel::GateV, Channel::DrainV}, 5);
    for (double v : rec.channel(Channel::GateV)) {
        CHECK(v == rec.channel(Channel::GateV)[0]);
    }
    CHECK_FALSE(rec.saturated);
}

TEST_CASE("saturation flag is set iff a sample exceeded the full scale",
          "[sampler]") {
    const AdcModel adc = unity_adc(16, -1.0, 1.0);
    const EtSchedule schedule = make_schedule(1e-5, 100);

    PeriodicSource inside{
        [](double t) {
            const double v = 0.99 * std::sin(2 * M_PI * t / 1e-5);
            return WaveformPoint{t, v, v, v};
        },
        1e-5};
    CHECK_FALSE(acquire(inside, schedule, adc,
                        {Channel::GateV, Channel::DrainV}, 1)
                    .saturated);

    PeriodicSource outside{
        [](double t) {
            const double v = 1.02 * std::sin(2 * M_PI * t / 1e-5);
            return WaveformPoint{t, v, v, v};
        },
        1e-5};
    const auto rec = acquire(outside, schedule, adc,
                             {Channel::GateV, Channel::DrainV}, 1);
    CHECK(rec.saturated);
    for (double v : rec.channel(Channel::GateV)) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);  // clipped samples sit at the rails
    }
}

TEST_CASE("acquisition preconditions", "[sampler]") {
    PeriodicSource src{[](double t) { return WaveformPoint{t, 0, 0, 0}; }, 1e-5};
    const AdcModel adc = unity_adc(16, -1.0, 1.0);
    CHECK_THROWS_AS(acquire(src, make_schedule(2e-5, 100), adc,
                            {Channel::GateV, Channel::DrainV}, 1),
                    std::domain_error);
    CHECK_THROWS_AS(acquire(src, make_schedule(1e-5, 100), adc,
                            {Channel::GateV}, 1),
                    std::domain_error);
}

TEST_CASE("channel uncertainty combines quantization and noise", "[sampler]") {
    AdcModel adc = unity_adc(16, 0.0, 3.3);
    const double expect = (3.3 / 65536.0) / std::sqrt(12.0);
    CHECK(channel_uncertainty(adc, Channel::GateV) ==
          Approx(expect).epsilon(1e-12));
    CHECK(channel_uncertainty(adc, Channel::GateV) ==
          Approx(14.5e-6).epsilon(0.02));

    // noise-dominated regime: doubling the noise doubles u
    AdcModel noisy = unity_adc(24, 0.0, 1e-6, 1.0);
    AdcModel noisy2 = unity_adc(24, 0.0, 1e-6, 2.0);
    CHECK(channel_uncertainty(noisy2, Channel::GateV) ==
          Approx(2.0 * channel_uncertainty(noisy, Channel::GateV))
              .epsilon(1e-9));
}

TEST_CASE("uncertainty is monotone in resolution and noise", "[sampler]") {
    double prev = 1e9;
    for (int bits = 8; bits <= 24; ++bits) {
        const AdcModel adc = unity_adc(bits, 0.0, 3.3, 0.5e-3);
        const double u = channel_uncertainty(adc, Channel::GateV);
        CHECK(u <= prev);
        prev = u;
    }
    double prev_noise = 0.0;
    for (double sigma : {0.0, 1e-4, 5e-4, 2e-3, 1e-2}) {
        const AdcModel adc = unity_adc(16, 0.0, 3.3, sigma);
        const double u = channel_uncertainty(adc, Channel::GateV);
        CHECK(u >= prev_noise);
        prev_noise = u;
    }
}

TEST_CASE("record CSV round-trips bit-exactly", "[sampler][csv]") {
    const Sinusoids wave{1e-5, 0.7, 0.2, 0.3, 1.1, 0.5};
    PeriodicSource src{[&wave](double t) {
                           const double v = wave(t);
                           return WaveformPoint{t, v, 0.5 * v, 0.25 * v};
                       },
                       1e-5};
    const auto rec = acquire(src, make_schedule(1e-5, 200),
                             unity_adc(16, -3.0, 3.0, 1e-3),
                             {Channel::GateV, Channel::DrainI}, 2024);

    std::ostringstream os;
    write_record_csv(rec, os);
    std::istringstream is(os.str());
    const auto back = read_record_csv(is);

    REQUIRE(back.size() == rec.size());
    CHECK(back.f_s_hz == rec.f_s_hz);
    CHECK(back.seed == rec.seed);
    CHECK(back.saturated == rec.saturated);
    CHECK(back.has(Channel::GateV));
    CHECK_FALSE(back.has(Channel::DrainV));
    CHECK(back.has(Channel::DrainI));
    for (std::size_t k = 0; k < rec.size(); ++k) {
        CHECK(back.t_eq_s[k] == rec.t_eq_s[k]);
        CHECK(back.channel(Channel::GateV)[k] == rec.channel(Channel::GateV)[k]);
        CHECK(back.channel(Channel::DrainI)[k] == rec.channel(Channel::DrainI)[k]);
    }

    // a second serialization is byte-identical
    std::ostringstream os2;
    write_record_csv(back, os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("malformed record CSV reports the line number", "[sampler][csv]") {
    std::istringstream truncated("# fs_hz=1e5\n# n=4\n# seed=1\n# saturated=0\n"
                                 "t_eq_s,v_gate_v\n0,1\n1e-6,bad\n");
    try {
        read_record_csv(truncated);
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 7") != std::string::npos);
    }
}
