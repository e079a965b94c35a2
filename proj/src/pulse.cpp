#include "clearkit/pulse.hpp"

#include <cmath>

#include "clearkit/error.hpp"

namespace clearkit {

PulseEnvelope::PulseEnvelope(std::vector<PulseSegment> segments, std::string label)
    : segments_(std::move(segments)), label_(std::move(label)) {
  if (segments_.empty()) throw ConfigError("pulse envelope needs at least one segment");
  for (const auto& s : segments_) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration))
      throw ConfigError("pulse segment duration must be positive and finite");
    if (!std::isfinite(s.amplitude.real()) || !std::isfinite(s.amplitude.imag()))
      throw ConfigError("pulse segment amplitude must be finite");
  }
}

double PulseEnvelope::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments_) t += s.duration;
  return t;
}

std::vector<double> PulseEnvelope::boundaries() const {
  std::vector<double> b;
  b.reserve(segments_.size() + 1);
  double t = 0.0;
  b.push_back(t);
  for (const auto& s : segments_) b.push_back(t += s.duration);
  return b;
}

void SequenceTiming::validate() const {
  for (double v : {t_relax, t_R_max, t_buffer, t_M2, t_gate}) {
    if (!(v >= 0.0)) throw ConfigError("sequence timings must be non-negative");
  }
}

}  // namespace clearkit
