#include "pauseseg/vad.hpp"

#include <algorithm>
#include <stdexcept>

#include "serial.hpp"

namespace pauseseg {

namespace {

constexpr double kMultiplier[4] = {2.0, 3.5, 5.0, 8.0};
constexpr int kHangover[4] = {8, 6, 4, 2};
constexpr std::uint32_t kVadBlobVersion = 1;

}  // namespace

void VadConfig::validate() const {
  if (aggressiveness < 0 || aggressiveness > 3) {
    throw std::invalid_argument("aggressiveness must be in [0, 3]");
  }
  if (!is_supported_frame_ms(frame_ms)) {
    throw std::invalid_argument("frame_ms must be 10, 20 or 30");
  }
  if (window_frames == 0) throw std::invalid_argument("window_frames must be positive");
  if (!(floor_quantile >= 0.0 && floor_quantile <= 1.0)) {
    throw std::invalid_argument("floor_quantile must be in [0, 1]");
  }
  if (!(min_noise_floor > 0.0 && min_noise_floor <= max_noise_floor)) {
    throw std::invalid_argument("noise floor bounds must satisfy 0 < min <= max");
  }
}

double VadConfig::threshold_multiplier() const { return kMultiplier[aggressiveness]; }

int VadConfig::hangover_frames() const { return kHangover[aggressiveness]; }

std::string FrameLabelTrack::to_string() const {
  std::string out;
  out.reserve(labels.size());
  for (Label l : labels) out.push_back(l == Label::kSpeech ? 'S' : 'N');
  return out;
}

FrameLabelTrack FrameLabelTrack::from_string(std::string_view text, int frame_ms) {
  FrameLabelTrack track;
  track.frame_ms = frame_ms;
  track.labels.reserve(text.size());
  for (char c : text) {
    if (c == 'S') {
      track.labels.push_back(Label::kSpeech);
    } else if (c == 'N') {
      track.labels.push_back(Label::kNonSpeech);
    } else {
      throw std::invalid_argument(std::string("unexpected label character '") + c + "'");
    }
  }
  return track;
}

double frame_energy(std::span<const std::int16_t> samples) {
  if (samples.empty()) return 0.0;
  std::int64_t acc = 0;
  for (std::int16_t s : samples) acc += std::int64_t{s} * s;
  return static_cast<double>(acc) / static_cast<double>(samples.size());
}

StreamingVad::StreamingVad(VadConfig config) : config_(config) {
  config_.validate();
  window_.reserve(config_.window_frames);
}

double StreamingVad::noise_floor() const {
  // Before the window fills this is a low quantile of everything seen so far,
  // which for short prefixes is the running minimum.
  std::vector<double> scratch(window_);
  const auto k = static_cast<std::size_t>(config_.floor_quantile *
                                          static_cast<double>(scratch.size() - 1));
  std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k),
                   scratch.end());
  return std::clamp(scratch[k], config_.min_noise_floor, config_.max_noise_floor);
}

Label StreamingVad::push_energy(double energy) {
  if (window_.size() < config_.window_frames) {
    window_.push_back(energy);
  } else {
    window_[window_head_] = energy;
    window_head_ = (window_head_ + 1) % window_.size();
  }
  ++frames_seen_;

  if (energy > noise_floor() * config_.threshold_multiplier()) {
    hangover_left_ = config_.hangover_frames();
    return Label::kSpeech;
  }
  if (hangover_left_ > 0) {
    --hangover_left_;
    return Label::kSpeech;
  }
  return Label::kNonSpeech;
}

Label StreamingVad::push(const Frame& frame) {
  if (frame.frame_ms != config_.frame_ms) {
    throw std::invalid_argument("frame duration does not match VAD configuration");
  }
  return push_energy(frame_energy(frame.samples));
}

void StreamingVad::serialize(std::vector<std::byte>& out) const {
  detail::put(out, kVadBlobVersion);
  detail::put(out, config_.aggressiveness);
  detail::put(out, config_.frame_ms);
  detail::put(out, static_cast<std::uint64_t>(config_.window_frames));
  detail::put(out, config_.floor_quantile);
  detail::put(out, config_.min_noise_floor);
  detail::put(out, config_.max_noise_floor);
  detail::put(out, static_cast<std::uint64_t>(window_.size()));
  for (double e : window_) detail::put(out, e);
  detail::put(out, static_cast<std::uint64_t>(window_head_));
  detail::put(out, static_cast<std::uint64_t>(frames_seen_));
  detail::put(out, hangover_left_);
}

StreamingVad StreamingVad::deserialize(std::span<const std::byte>& in) {
  if (detail::take<std::uint32_t>(in) != kVadBlobVersion) {
    throw std::runtime_error("unsupported VAD checkpoint version");
  }
  VadConfig config;
  config.aggressiveness = detail::take<int>(in);
  config.frame_ms = detail::take<int>(in);
  config.window_frames = detail::take<std::uint64_t>(in);
  config.floor_quantile = detail::take<double>(in);
  config.min_noise_floor = detail::take<double>(in);
  config.max_noise_floor = detail::take<double>(in);
  StreamingVad vad(config);
  const auto n = detail::take<std::uint64_t>(in);
  if (n > config.window_frames) throw std::runtime_error("corrupt VAD checkpoint");
  vad.window_.resize(n);
  for (auto& e : vad.window_) e = detail::take<double>(in);
  vad.window_head_ = detail::take<std::uint64_t>(in);
  vad.frames_seen_ = detail::take<std::uint64_t>(in);
  vad.hangover_left_ = detail::take<int>(in);
  return vad;
}

FrameLabelTrack classify(const AudioClip& clip, const VadConfig& config) {
  StreamingVad vad(config);
  FrameReader reader(clip, config.frame_ms);
  FrameLabelTrack track;
  track.frame_ms = config.frame_ms;
  track.labels.reserve(reader.remaining());
  while (auto frame = reader.next()) track.labels.push_back(vad.push(*frame));
  return track;
}

std::vector<Pause> detect_pauses(const FrameLabelTrack& track, Micros min_pause) {
  if (min_pause < track.frame_duration()) {
    throw std::invalid_argument("min_pause must be at least one frame");
  }
  std::vector<Pause> pauses;
  const Micros frame = track.frame_duration();
  const std::size_t n = track.labels.size();
  std::size_t i = 0;
  while (i < n) {
    if (track.labels[i] == Label::kSpeech) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && track.labels[j + 1] == Label::kNonSpeech) ++j;
    const auto len = static_cast<std::int64_t>(j - i + 1);
    if (frame * len >= min_pause) {
      pauses.push_back(Pause{frame * static_cast<std::int64_t>(i), frame * len, i, j});
    }
    i = j + 1;
  }
  return pauses;
}

}  // namespace pauseseg
