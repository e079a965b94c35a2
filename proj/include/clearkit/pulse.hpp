#pragma once

#include <complex>
#include <string>
#include <vector>

namespace clearkit {

using cplx = std::complex<double>;

/// One constant-amplitude piece of a drive envelope, in the drive frame.
struct PulseSegment {
  double duration = 0.0;  ///< us, > 0
  cplx amplitude{};       ///< rad/us
};

/// Ordered piecewise-constant drive envelope. Never empty.
class PulseEnvelope {
 public:
  PulseEnvelope(std::vector<PulseSegment> segments, std::string label);

  const std::vector<PulseSegment>& segments() const { return segments_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return segments_.size(); }
  double total_duration() const;
  /// Start time of each segment followed by the total duration (size()+1 entries).
  std::vector<double> boundaries() const;

 private:
  std::vector<PulseSegment> segments_;
  std::string label_;
};

/// Timing of the residual-photon probe sequence (all in us).
struct SequenceTiming {
  double t_relax = 0.0;
  double t_R_max = 0.6;
  double t_buffer = 0.4;
  double t_M2 = 10.0;
  double t_gate = 0.008;

  void validate() const;
};

}  // namespace clearkit
