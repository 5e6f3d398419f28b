#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pauseseg/time.hpp"

namespace pauseseg {

/// Mono 16-bit PCM audio held in memory.
struct AudioClip {
  std::vector<std::int16_t> samples;
  std::uint32_t sample_rate = 16000;

  double duration_seconds() const {
    return sample_rate == 0 ? 0.0
                            : static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class AudioErrc {
  kMalformedHeader,
  kUnsupportedFormat,
  kUnsupportedBitDepth,
  kUnsupportedChannelCount,
  kIncompatibleFrame,
  kIo,
};

const char* to_string(AudioErrc code);

class AudioError : public std::runtime_error {
 public:
  AudioError(AudioErrc code, const std::string& detail);
  AudioErrc code() const noexcept { return code_; }

 private:
  AudioErrc code_;
};

/// Parses a RIFF/WAVE container holding PCM16 mono audio. Unknown chunks are
/// skipped. Throws AudioError with a code naming the first violated
/// requirement.
AudioClip decode_wav(std::span<const std::byte> bytes);

/// Raw little-endian PCM16 mono with the sample rate supplied by the caller.
AudioClip decode_raw_pcm16(std::span<const std::byte> bytes, std::uint32_t sample_rate);

/// Canonical 44-byte-header WAV encoding of a clip.
std::vector<std::byte> encode_wav(const AudioClip& clip);

/// Reads a file and decodes it as WAV, or as raw PCM16 when raw_sample_rate is set.
AudioClip read_audio_file(const std::filesystem::path& path,
                          std::optional<std::uint32_t> raw_sample_rate = std::nullopt);

struct Frame {
  std::vector<std::int16_t> samples;
  std::size_t index = 0;
  int frame_ms = 20;
  // Set on the trailing partial frame, which is zero-padded to full length.
  bool final_padded = false;
  std::size_t valid_samples = 0;

  Micros start() const { return from_millis(frame_ms) * static_cast<std::int64_t>(index); }
  Micros end() const { return start() + from_millis(frame_ms); }
};

bool is_supported_frame_ms(int frame_ms);

/// Samples per frame; throws AudioError(kIncompatibleFrame) if the rate does
/// not divide into whole frames or frame_ms is not 10, 20 or 30.
std::size_t samples_per_frame(std::uint32_t sample_rate, int frame_ms);

/// Number of frames covering the clip, counting a trailing partial frame.
std::size_t frame_count(const AudioClip& clip, int frame_ms);

/// Pull-based framing over a clip. Single consumer; the clip must outlive the
/// reader.
class FrameReader {
 public:
  FrameReader(const AudioClip& clip, int frame_ms);

  std::optional<Frame> next();
  std::size_t remaining() const;
  std::size_t samples_per_frame() const { return frame_len_; }

 private:
  const AudioClip* clip_;
  int frame_ms_;
  std::size_t frame_len_;
  std::size_t next_index_ = 0;
};

std::vector<Frame> frames(const AudioClip& clip, int frame_ms);

}  // namespace pauseseg
