#include "pauseseg/audio_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

namespace pauseseg {

namespace {

std::uint32_t read_u32le(std::span<const std::byte> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t read_u16le(std::span<const std::byte> b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<std::uint16_t>(b[at]) |
                                    (static_cast<std::uint16_t>(b[at + 1]) << 8));
}

bool tag_equals(std::span<const std::byte> b, std::size_t at, const char (&tag)[5]) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u32le(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
}

void put_u16le(std::vector<std::byte>& out, std::uint16_t v) {
  out.push_back(static_cast<std::byte>(v & 0xFF));
  out.push_back(static_cast<std::byte>(v >> 8));
}

void put_tag(std::vector<std::byte>& out, const char (&tag)[5]) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>(tag[i]));
}

std::vector<std::int16_t> pcm16_from_bytes(std::span<const std::byte> data) {
  std::vector<std::int16_t> samples(data.size() / 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = static_cast<std::int16_t>(read_u16le(data, 2 * i));
  }
  return samples;
}

}  // namespace

const char* to_string(AudioErrc code) {
  switch (code) {
    case AudioErrc::kMalformedHeader: return "malformed header";
    case AudioErrc::kUnsupportedFormat: return "unsupported format code";
    case AudioErrc::kUnsupportedBitDepth: return "unsupported bit depth";
    case AudioErrc::kUnsupportedChannelCount: return "unsupported channel count";
    case AudioErrc::kIncompatibleFrame: return "incompatible rate/frame";
    case AudioErrc::kIo: return "i/o error";
  }
  return "unknown audio error";
}

AudioError::AudioError(AudioErrc code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(to_string(code))
                                        : std::string(to_string(code)) + ": " + detail),
      code_(code) {}

AudioClip decode_wav(std::span<const std::byte> bytes) {
  if (bytes.size() < 12 || !tag_equals(bytes, 0, "RIFF") || !tag_equals(bytes, 8, "WAVE")) {
    throw AudioError(AudioErrc::kMalformedHeader, "missing RIFF/WAVE signature");
  }

  std::optional<std::uint32_t> sample_rate;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t chunk_size = read_u32le(bytes, pos + 4);
    const std::size_t body = pos + 8;

    if (tag_equals(bytes, pos, "fmt ")) {
      if (chunk_size < 16 || body + 16 > bytes.size()) {
        throw AudioError(AudioErrc::kMalformedHeader, "fmt chunk too short");
      }
      const std::uint16_t format = read_u16le(bytes, body);
      const std::uint16_t channels = read_u16le(bytes, body + 2);
      const std::uint32_t rate = read_u32le(bytes, body + 4);
      const std::uint16_t bits = read_u16le(bytes, body + 14);
      if (format != 1) {
        throw AudioError(AudioErrc::kUnsupportedFormat, "format code " + std::to_string(format));
      }
      if (channels != 1) {
        throw AudioError(AudioErrc::kUnsupportedChannelCount,
                         std::to_string(channels) + " channels");
      }
      if (bits != 16) {
        throw AudioError(AudioErrc::kUnsupportedBitDepth, std::to_string(bits) + " bits");
      }
      if (rate == 0) {
        throw AudioError(AudioErrc::kMalformedHeader, "zero sample rate");
      }
      sample_rate = rate;
    } else if (tag_equals(bytes, pos, "data")) {
      if (!sample_rate) {
        throw AudioError(AudioErrc::kMalformedHeader, "data chunk before fmt chunk");
      }
      std::size_t size = chunk_size;
      // Streaming writers leave the size unset.
      if (chunk_size == 0xFFFFFFFFu) size = bytes.size() - body;
      if (body + size > bytes.size()) {
        throw AudioError(AudioErrc::kMalformedHeader, "data chunk exceeds file size");
      }
      AudioClip clip;
      clip.sample_rate = *sample_rate;
      clip.samples = pcm16_from_bytes(bytes.subspan(body, size));
      return clip;
    }

    const std::size_t advance = std::size_t{8} + chunk_size + (chunk_size & 1u);
    if (advance > bytes.size() - pos) break;
    pos += advance;
  }

  throw AudioError(AudioErrc::kMalformedHeader,
                   sample_rate ? "missing data chunk" : "missing fmt chunk");
}

AudioClip decode_raw_pcm16(std::span<const std::byte> bytes, std::uint32_t sample_rate) {
  if (sample_rate == 0) throw AudioError(AudioErrc::kMalformedHeader, "zero sample rate");
  if (bytes.size() % 2 != 0) {
    throw AudioError(AudioErrc::kMalformedHeader, "odd byte count for PCM16");
  }
  return AudioClip{pcm16_from_bytes(bytes), sample_rate};
}

std::vector<std::byte> encode_wav(const AudioClip& clip) {
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
  std::vector<std::byte> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32le(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32le(out, 16);
  put_u16le(out, 1);
  put_u16le(out, 1);
  put_u32le(out, clip.sample_rate);
  put_u32le(out, clip.sample_rate * 2);
  put_u16le(out, 2);
  put_u16le(out, 16);
  put_tag(out, "data");
  put_u32le(out, data_bytes);
  for (std::int16_t s : clip.samples) put_u16le(out, static_cast<std::uint16_t>(s));
  return out;
}

AudioClip read_audio_file(const std::filesystem::path& path,
                          std::optional<std::uint32_t> raw_sample_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AudioError(AudioErrc::kIo, "cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto bytes = std::as_bytes(std::span<const char>(raw));
  if (raw_sample_rate) return decode_raw_pcm16(bytes, *raw_sample_rate);
  return decode_wav(bytes);
}

bool is_supported_frame_ms(int frame_ms) {
  return frame_ms == 10 || frame_ms == 20 || frame_ms == 30;
}

std::size_t samples_per_frame(std::uint32_t sample_rate, int frame_ms) {
  if (!is_supported_frame_ms(frame_ms)) {
    throw AudioError(AudioErrc::kIncompatibleFrame,
                     "frame size " + std::to_string(frame_ms) + " ms (expected 10, 20 or 30)");
  }
  const std::uint64_t scaled = std::uint64_t{sample_rate} * static_cast<std::uint64_t>(frame_ms);
  if (sample_rate == 0 || scaled % 1000 != 0) {
    throw AudioError(AudioErrc::kIncompatibleFrame,
                     std::to_string(sample_rate) + " Hz with " + std::to_string(frame_ms) + " ms");
  }
  return static_cast<std::size_t>(scaled / 1000);
}

std::size_t frame_count(const AudioClip& clip, int frame_ms) {
  const std::size_t len = samples_per_frame(clip.sample_rate, frame_ms);
  return (clip.samples.size() + len - 1) / len;
}

FrameReader::FrameReader(const AudioClip& clip, int frame_ms)
    : clip_(&clip), frame_ms_(frame_ms), frame_len_(pauseseg::samples_per_frame(clip.sample_rate, frame_ms)) {}

std::size_t FrameReader::remaining() const {
  const std::size_t total = (clip_->samples.size() + frame_len_ - 1) / frame_len_;
  return total - next_index_;
}

std::optional<Frame> FrameReader::next() {
  const std::size_t begin = next_index_ * frame_len_;
  if (begin >= clip_->samples.size()) return std::nullopt;

  Frame frame;
  frame.index = next_index_++;
  frame.frame_ms = frame_ms_;
  frame.valid_samples = std::min(frame_len_, clip_->samples.size() - begin);
  frame.final_padded = frame.valid_samples < frame_len_;
  frame.samples.assign(frame_len_, 0);
  std::copy_n(clip_->samples.begin() + static_cast<std::ptrdiff_t>(begin), frame.valid_samples,
              frame.samples.begin());
  return frame;
}

std::vector<Frame> frames(const AudioClip& clip, int frame_ms) {
  FrameReader reader(clip, frame_ms);
  std::vector<Frame> out;
  out.reserve(reader.remaining());
  while (auto f = reader.next()) out.push_back(std::move(*f));
  return out;
}

}  // namespace pauseseg
