#pragma once

// Synthetic inputs for tests: label tracks with controllable pause layouts and
// PCM clips built from tone/silence plans.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "pauseseg/audio_io.hpp"
#include "pauseseg/vad.hpp"

namespace synth {

using pauseseg::AudioClip;
using pauseseg::FrameLabelTrack;
using pauseseg::Label;

struct RunShape {
  std::size_t speech_min = 1, speech_max = 50;  // frames
  std::size_t pause_min = 1, pause_max = 20;    // frames
};

/// Alternating speech / non-speech runs until n_frames are filled.
inline FrameLabelTrack runs_track(std::mt19937_64& rng, std::size_t n_frames, int frame_ms,
                                  RunShape shape) {
  FrameLabelTrack track;
  track.frame_ms = frame_ms;
  bool speech = std::bernoulli_distribution(0.6)(rng);
  while (track.labels.size() < n_frames) {
    const std::size_t lo = speech ? shape.speech_min : shape.pause_min;
    const std::size_t hi = speech ? shape.speech_max : shape.pause_max;
    std::size_t len = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    len = std::min(len, n_frames - track.labels.size());
    track.labels.insert(track.labels.end(), len, speech ? Label::kSpeech : Label::kNonSpeech);
    speech = !speech;
  }
  return track;
}

/// Random clip-like track: 1..max_seconds long with a per-track random
/// pause density, so that some tracks are pause-free and some pause-dense.
inline FrameLabelTrack random_track(std::mt19937_64& rng, double min_seconds, double max_seconds) {
  static constexpr int kFrames[] = {10, 20, 30};
  const int frame_ms = kFrames[std::uniform_int_distribution<int>(0, 2)(rng)];
  const double seconds = std::uniform_real_distribution<double>(min_seconds, max_seconds)(rng);
  const auto n = static_cast<std::size_t>(seconds * 1000.0 / frame_ms);
  const std::size_t per_second = 1000 / static_cast<std::size_t>(frame_ms);
  RunShape shape;
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:  // sparse long speech
      shape = {per_second * 2, per_second * 40, 1, per_second};
      break;
    case 1:  // dense short pauses
      shape = {1, per_second * 6, 1, per_second / 2};
      break;
    case 2:  // juncture-length pauses
      shape = {per_second, per_second * 12, per_second / 2, per_second * 2};
      break;
    default:  // anything goes
      shape = {1, per_second * 30, 1, per_second * 5};
      break;
  }
  FrameLabelTrack track = runs_track(rng, std::max<std::size_t>(n, 1), frame_ms, shape);
  if (std::bernoulli_distribution(0.05)(rng)) {
    std::fill(track.labels.begin(), track.labels.end(), Label::kSpeech);
  }
  return track;
}

/// Sorted, disjoint pauses on a `frame` grid over [0, total), without labels.
inline std::vector<pauseseg::Pause> random_pauses(std::mt19937_64& rng, pauseseg::Micros total,
                                                  pauseseg::Micros frame) {
  std::vector<pauseseg::Pause> out;
  const auto frames_total = total / frame;
  std::int64_t at = std::uniform_int_distribution<std::int64_t>(0, 200)(rng);
  while (at < frames_total) {
    const std::int64_t len = std::min<std::int64_t>(
        std::uniform_int_distribution<std::int64_t>(1, 60)(rng), frames_total - at);
    out.push_back(pauseseg::Pause{frame * at, frame * len, static_cast<std::size_t>(at),
                                  static_cast<std::size_t>(at + len - 1)});
    at += len + std::uniform_int_distribution<std::int64_t>(1, 1200)(rng);
  }
  return out;
}

inline void append_tone(AudioClip& clip, double seconds, double amplitude, double freq) {
  const auto n = static_cast<std::size_t>(std::llround(seconds * clip.sample_rate));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / clip.sample_rate;
    clip.samples.push_back(static_cast<std::int16_t>(
        std::lround(amplitude * std::sin(2.0 * std::numbers::pi * freq * t))));
  }
}

inline void append_silence(AudioClip& clip, double seconds) {
  clip.samples.insert(clip.samples.end(),
                      static_cast<std::size_t>(std::llround(seconds * clip.sample_rate)), 0);
}

inline void append_noise(AudioClip& clip, std::mt19937_64& rng, double seconds, int amplitude) {
  std::uniform_int_distribution<int> dist(-amplitude, amplitude);
  const auto n = static_cast<std::size_t>(std::llround(seconds * clip.sample_rate));
  for (std::size_t i = 0; i < n; ++i) clip.samples.push_back(static_cast<std::int16_t>(dist(rng)));
}

/// Speech-like clip: tone bursts of random loudness separated by low noise.
inline AudioClip random_clip(std::mt19937_64& rng, double seconds, std::uint32_t rate = 16000) {
  AudioClip clip;
  clip.sample_rate = rate;
  std::uniform_real_distribution<double> speech_len(0.1, 6.0), pause_len(0.02, 1.5);
  std::uniform_real_distribution<double> amp(300.0, 12000.0), freq(120.0, 900.0);
  const int noise = std::uniform_int_distribution<int>(0, 60)(rng);
  bool speech = std::bernoulli_distribution(0.5)(rng);
  const auto target = static_cast<std::size_t>(std::llround(seconds * rate));
  while (clip.samples.size() < target) {
    const double left = static_cast<double>(target - clip.samples.size()) / rate;
    if (speech) {
      append_tone(clip, std::min(left, speech_len(rng)), amp(rng), freq(rng));
    } else {
      append_noise(clip, rng, std::min(left, pause_len(rng)), noise);
    }
    speech = !speech;
  }
  return clip;
}

}  // namespace synth
