#include "etscope/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "etscope/errors.hpp"

namespace etscope {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "invalid numeric value '" + value + "' for " + key);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "invalid integer value '" + value + "' for " + key);
    }
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool adc_channel_key(const std::string& tail, Channel& ch, std::string& field) {
    const auto dot = tail.find('.');
    if (dot == std::string::npos) return false;
    const std::string name = tail.substr(0, dot);
    if (name == "gate_v") ch = Channel::GateV;
    else if (name == "drain_v") ch = Channel::DrainV;
    else if (name == "drain_i") ch = Channel::DrainI;
    else return false;
    field = tail.substr(dot + 1);
    return true;
}

}  // namespace

RunConfig::RunConfig() : bundle_(preset(DeviceKind::GanEmode)) {}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "preset") {
        DeviceKind kind;
        try {
            kind = device_kind_from_string(value);
        } catch (const std::exception& e) {
            throw ConfigError(key, e.what());
        }
        const AdcModel kept = bundle_.adc;
        bundle_ = preset(kind);
        if (adc_overridden_) bundle_.adc = kept;
        return;
    }
    if (key == "n") {
        n_ = static_cast<std::size_t>(parse_u64(key, value));
        return;
    }
    if (key == "seed") {
        seed_ = parse_u64(key, value);
        return;
    }
    if (key == "output") {
        output_ = value;
        return;
    }

    if (key.rfind("device.", 0) == 0) {
        const std::string f = key.substr(7);
        DeviceModel& d = bundle_.device;
        if (f == "kind") {
            try {
                d.kind = device_kind_from_string(value);
            } catch (const std::exception& e) {
                throw ConfigError(key, e.what());
            }
        } else if (f == "r_dson_0") d.r_dson_0_ohm = parse_double(key, value);
        else if (f == "vth_0") d.vth_0_v = parse_double(key, value);
        else if (f == "ciss_0") d.ciss_0_f = parse_double(key, value);
        else if (f == "i_leak") d.i_leak_a = parse_double(key, value);
        else if (f == "alpha_r") d.alpha_r = parse_double(key, value);
        else if (f == "alpha_c") d.alpha_c = parse_double(key, value);
        else if (f == "beta_pos") d.beta_pos_v = parse_double(key, value);
        else if (f == "beta_neg") d.beta_neg_v = parse_double(key, value);
        else if (f == "tau_trap") d.trap.tau_trap_s = parse_double(key, value);
        else if (f == "tau_detrap") d.trap.tau_detrap_s = parse_double(key, value);
        else if (f == "stress_phase") {
            if (value == "off") d.trap.stress_phase = StressPhase::OffState;
            else if (value == "on") d.trap.stress_phase = StressPhase::OnState;
            else throw ConfigError(key, "stress_phase must be 'off' or 'on'");
        } else {
            throw ConfigError(key, "unknown configuration key '" + key + "'");
        }
        return;
    }

    if (key.rfind("drive.", 0) == 0) {
        const std::string f = key.substr(6);
        DriveConfig& dr = bundle_.drive;
        if (f == "fs") dr.f_s_hz = parse_double(key, value);
        else if (f == "duty") dr.duty = parse_double(key, value);
        else if (f == "v_gate_high") dr.v_gate_high_v = parse_double(key, value);
        else if (f == "v_gate_low") dr.v_gate_low_v = parse_double(key, value);
        else if (f == "r_g") dr.r_g_ohm = parse_double(key, value);
        else if (f == "v_bus") dr.v_bus_v = parse_double(key, value);
        else if (f == "i_0") dr.i_0_a = parse_double(key, value);
        else throw ConfigError(key, "unknown configuration key '" + key + "'");
        return;
    }

    if (key.rfind("adc.", 0) == 0) {
        const std::string tail = key.substr(4);
        adc_overridden_ = true;
        if (tail == "bits") {
            bundle_.adc.bits = static_cast<int>(parse_u64(key, value));
            return;
        }
        Channel ch;
        std::string field;
        if (adc_channel_key(tail, ch, field)) {
            AdcChannel& c = bundle_.adc.channel(ch);
            if (field == "full_scale_low") c.full_scale_low = parse_double(key, value);
            else if (field == "full_scale_high") c.full_scale_high = parse_double(key, value);
            else if (field == "gain") c.gain = parse_double(key, value);
            else if (field == "noise_sigma") c.noise_sigma_v = parse_double(key, value);
            else if (field == "jitter_sigma") c.jitter_sigma_s = parse_double(key, value);
            else throw ConfigError(key, "unknown configuration key '" + key + "'");
            return;
        }
        throw ConfigError(key, "unknown configuration key '" + key + "'");
    }

    throw ConfigError(key, "unknown configuration key '" + key + "'");
}

void RunConfig::finalize() const {
    try {
        validate(bundle_.device);
        validate(bundle_.drive);
        validate(bundle_.adc);
    } catch (const std::domain_error& e) {
        throw ConfigError("config", e.what());
    }
    if (n_ < 2) throw ConfigError("n", "n must be >= 2");
}

std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open config file: " + path);

    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << line_no << ": expected key = value";
            throw ConfigError("config", os.str());
        }
        entries.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
    return entries;
}

}  // namespace etscope
