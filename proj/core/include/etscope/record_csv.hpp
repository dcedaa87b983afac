#pragma once

#include <iosfwd>
#include <string>

#include "etscope/sampler.hpp"

namespace etscope {

/// Record CSV layout, also the input format for offline extraction:
///   # fs_hz=...
///   # n=...
///   # seed=...
///   # saturated=0|1
///   t_eq_s,v_gate_v,v_drain_v,i_drain_a   (absent channels omitted)
/// Values use 17 significant digits so repeated runs are byte-identical.
void write_record_csv(const EquivalentTimeRecord& record, std::ostream& out);
void write_record_csv(const EquivalentTimeRecord& record, const std::string& path);

/// Parse failures throw ConfigError whose message names the line number.
EquivalentTimeRecord read_record_csv(std::istream& in);
EquivalentTimeRecord read_record_csv(const std::string& path);

}  // namespace etscope
