#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pauseseg/segmenters.hpp"
#include "pauseseg/time.hpp"

namespace pauseseg {

// Segment manifests in the IWSLT shape:
//
//   # pauseseg manifest v1
//   # config: {strategy: hybrid, min_len: 17.000000, ...}
//   # audio: {wav: talk.wav, duration: 40.000000}
//   - {wav: talk.wav, offset: 0.000000, duration: 19.300000}
//
// or as JSON lines, where the first line is a header object. Seconds are
// written with exactly six decimals, so output is byte-stable.

enum class ManifestFormat { kYaml, kJsonLines };

struct ManifestEntry {
  std::string wav;
  Micros offset{0};
  Micros duration{0};
  bool dropped = false;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct AudioInfo {
  std::string wav;
  Micros duration{0};

  friend bool operator==(const AudioInfo&, const AudioInfo&) = default;
};

struct Manifest {
  // Effective run configuration, echoed verbatim as key/value pairs.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<AudioInfo> audio;
  std::vector<ManifestEntry> entries;

  std::optional<std::string> config_value(std::string_view key) const;
  std::optional<Micros> audio_duration(std::string_view wav) const;
  /// Distinct wav names in first-appearance order (header first, then entries).
  std::vector<std::string> wavs() const;
  /// Entries of one wav as sorted segments; dropped entries become kept == false.
  std::vector<Segment> segments_for(std::string_view wav) const;
  /// Declared duration of a wav, or the end of its last entry.
  Micros duration_of(std::string_view wav) const;
};

/// Seconds with six decimals, formatted from the integer value (no rounding).
std::string format_seconds(Micros t);

void append_segments(Manifest& manifest, const std::string& wav, std::span<const Segment> segments);

std::string write_manifest(const Manifest& manifest, ManifestFormat format, bool emit_dropped);

/// Accepts both formats; JSON lines are detected by a leading '{'.
Manifest parse_manifest(std::string_view text);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace pauseseg
