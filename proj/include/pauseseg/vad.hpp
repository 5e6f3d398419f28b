#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pauseseg/audio_io.hpp"
#include "pauseseg/time.hpp"

namespace pauseseg {

enum class Label : std::uint8_t { kNonSpeech = 0, kSpeech = 1 };

/// Energy VAD parameters. The aggressiveness mode selects the threshold
/// multiplier over the adaptive noise floor and the hangover length; higher
/// modes are strictly harder to satisfy, so speech sets shrink as the mode
/// grows.
struct VadConfig {
  int aggressiveness = 2;
  int frame_ms = 20;
  std::size_t window_frames = 100;
  // Quantile of the energies in the window taken as the noise floor.
  double floor_quantile = 0.1;
  // Bounds on the noise floor (mean squared amplitude). The lower bound keeps
  // digital silence non-speech; the upper bound keeps loud stationary signals
  // from being absorbed into the floor.
  double min_noise_floor = 1.0;
  double max_noise_floor = 1.0e6;

  void validate() const;
  double threshold_multiplier() const;
  int hangover_frames() const;
};

/// Per-frame speech decisions at a fixed frame duration.
struct FrameLabelTrack {
  std::vector<Label> labels;
  int frame_ms = 20;

  std::size_t total_frames() const { return labels.size(); }
  Micros frame_duration() const { return from_millis(frame_ms); }
  Micros duration() const { return frame_duration() * static_cast<std::int64_t>(labels.size()); }

  /// One character per frame: 'S' speech, 'N' non-speech.
  std::string to_string() const;
  static FrameLabelTrack from_string(std::string_view text, int frame_ms);
};

/// Maximal run of non-speech frames.
struct Pause {
  Micros start{0};
  Micros duration{0};
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;

  Micros end() const { return start + duration; }
  friend bool operator==(const Pause&, const Pause&) = default;
};

/// Mean squared amplitude over the whole frame, padding included.
double frame_energy(std::span<const std::int16_t> samples);

/// Causal VAD state. Feeding the frames of a clip one by one produces exactly
/// the labels of classify(); the state can be moved between threads but must
/// not be shared.
class StreamingVad {
 public:
  explicit StreamingVad(VadConfig config);

  Label push(const Frame& frame);
  Label push_energy(double energy);

  const VadConfig& config() const { return config_; }
  std::size_t frames_seen() const { return frames_seen_; }

  void serialize(std::vector<std::byte>& out) const;
  static StreamingVad deserialize(std::span<const std::byte>& in);

 private:
  double noise_floor() const;

  VadConfig config_;
  std::vector<double> window_;  // ring buffer of recent energies
  std::size_t window_head_ = 0;
  std::size_t frames_seen_ = 0;
  int hangover_left_ = 0;
};

FrameLabelTrack classify(const AudioClip& clip, const VadConfig& config);

/// All maximal non-speech runs lasting at least min_pause, in time order.
std::vector<Pause> detect_pauses(const FrameLabelTrack& track, Micros min_pause);

}  // namespace pauseseg
