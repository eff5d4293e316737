#include "agc/timing.hpp"

#include "agc/io.hpp"

namespace agc {

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::load: return "load";
    case Phase::project: return "project";
    case Phase::sort: return "sort";
    case Phase::schedule: return "schedule";
    case Phase::per_ratio_extract: return "per_ratio_extract";
    case Phase::coarsen: return "coarsen";
    case Phase::metrics: return "metrics";
  }
  return "unknown";
}

std::string timing_csv(const std::vector<TimingRecord>& records) {
  std::string out = "phase,ratio,seconds\n";
  for (const auto& r : records) {
    out += to_string(r.phase);
    out += ',';
    if (r.ratio) out += io::format_double(*r.ratio);
    out += ',';
    out += io::format_double(r.wall_time);
    out += '\n';
  }
  return out;
}

}  // namespace agc
