#include "etscope/record_csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "etscope/errors.hpp"

namespace etscope {

namespace {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    std::ostringstream os;
    os << "record CSV line " << line << ": " << what;
    throw ConfigError("record-csv", os.str());
}

const char* column_name(Channel ch) {
    switch (ch) {
        case Channel::GateV: return "v_gate_v";
        case Channel::DrainV: return "v_drain_v";
        case Channel::DrainI: return "i_drain_a";
    }
    return "";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

void write_record_csv(const EquivalentTimeRecord& record, std::ostream& out) {
    char head[128];
    std::snprintf(head, sizeof(head), "# fs_hz=%.17g\n", record.f_s_hz);
    out << head;
    out << "# n=" << record.size() << "\n";
    out << "# seed=" << record.seed << "\n";
    out << "# saturated=" << (record.saturated ? 1 : 0) << "\n";

    out << "t_eq_s";
    for (Channel ch : kChannelOrder) {
        if (record.has(ch)) out << ',' << column_name(ch);
    }
    out << "\n";

    for (std::size_t k = 0; k < record.size(); ++k) {
        out << fmt_g17(record.t_eq_s[k]);
        for (Channel ch : kChannelOrder) {
            if (record.has(ch)) out << ',' << fmt_g17(record.channel(ch)[k]);
        }
        out << "\n";
    }
}

void write_record_csv(const EquivalentTimeRecord& record, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("output", "cannot open for writing: " + path);
    write_record_csv(record, out);
}

EquivalentTimeRecord read_record_csv(std::istream& in) {
    EquivalentTimeRecord rec;
    std::string line;
    std::size_t line_no = 0;

    double fs_hz = 0.0;
    std::uint64_t n = 0;
    bool have_fs = false, have_n = false;

    // Header block: "# key=value" lines in any order.
    while (in.peek() == '#') {
        if (!std::getline(in, line)) break;
        ++line_no;
        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(line_no, "malformed header");
        const std::string key = line.substr(2, eq - 2);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "fs_hz") {
                fs_hz = std::stod(value);
                have_fs = true;
            } else if (key == "n") {
                n = std::stoull(value);
                have_n = true;
            } else if (key == "seed") {
                rec.seed = std::stoull(value);
            } else if (key == "saturated") {
                rec.saturated = std::stoi(value) != 0;
            } else {
                parse_fail(line_no, "unknown header key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            parse_fail(line_no, "bad value for header '" + key + "'");
        }
    }
    if (!have_fs || !have_n) {
        parse_fail(line_no, "missing fs_hz or n header");
    }
    if (!(fs_hz > 0.0) || n < 2) {
        parse_fail(line_no, "fs_hz must be > 0 and n >= 2");
    }

    if (!std::getline(in, line)) parse_fail(line_no + 1, "missing column header");
    ++line_no;
    const auto columns = split_csv(line);
    if (columns.empty() || columns[0] != "t_eq_s") {
        parse_fail(line_no, "first column must be t_eq_s");
    }
    std::vector<Channel> present;
    for (std::size_t i = 1; i < columns.size(); ++i) {
        bool known = false;
        for (Channel ch : kChannelOrder) {
            if (columns[i] == column_name(ch)) {
                present.push_back(ch);
                known = true;
                break;
            }
        }
        if (!known) parse_fail(line_no, "unknown column '" + columns[i] + "'");
    }
    if (present.empty()) parse_fail(line_no, "record has no data channels");

    rec.f_s_hz = fs_hz;
    rec.schedule = make_schedule(1.0 / fs_hz, static_cast<std::size_t>(n));
    rec.t_eq_s.reserve(n);
    for (Channel ch : present) {
        rec.samples[static_cast<std::size_t>(ch)].reserve(n);
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != present.size() + 1) {
            parse_fail(line_no, "expected " + std::to_string(present.size() + 1) +
                                    " fields, got " + std::to_string(fields.size()));
        }
        try {
            rec.t_eq_s.push_back(std::stod(fields[0]));
            for (std::size_t i = 0; i < present.size(); ++i) {
                rec.samples[static_cast<std::size_t>(present[i])].push_back(
                    std::stod(fields[i + 1]));
            }
        } catch (const std::exception&) {
            parse_fail(line_no, "non-numeric field");
        }
    }
    if (rec.t_eq_s.size() != n) {
        parse_fail(line_no, "expected " + std::to_string(n) + " rows, got " +
                                std::to_string(rec.t_eq_s.size()));
    }
    return rec;
}

EquivalentTimeRecord read_record_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("input", "cannot open record CSV: " + path);
    return read_record_csv(in);
}

}  // namespace etscope
