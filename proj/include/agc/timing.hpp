#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace agc {

enum class Phase { load, project, sort, schedule, per_ratio_extract, coarsen, metrics };

std::string_view to_string(Phase phase) noexcept;

struct TimingRecord {
  Phase phase = Phase::load;
  double wall_time = 0.0;
  std::optional<double> ratio;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void reset() { start_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// `phase,ratio,seconds` with an empty ratio field for whole-run phases.
std::string timing_csv(const std::vector<TimingRecord>& records);

}  // namespace agc
