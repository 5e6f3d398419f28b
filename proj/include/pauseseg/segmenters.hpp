#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pauseseg/time.hpp"
#include "pauseseg/vad.hpp"

namespace pauseseg {

/// Half-open interval [start, end) of the source audio. Segments with
/// kept == false are non-speech that a filtering strategy discarded.
struct Segment {
  Micros start{0};
  Micros end{0};
  bool kept = true;

  Micros duration() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct FixedParams {
  Micros length = from_millis(20'000);
  void validate() const;
};

struct SrpolParams {
  Micros max_len = from_millis(20'000);
  void validate() const;
};

struct HybridParams {
  Micros min_len = from_millis(17'000);
  Micros max_len = from_millis(20'000);
  bool force_split = false;
  Micros juncture = from_millis(550);
  void validate() const;
};

/// Fixed-length chunks; the last one ends exactly at total.
std::vector<Segment> segment_fixed(Micros total, Micros length);

/// Maximal speech runs become kept segments, maximal non-speech runs dropped
/// ones. The result tiles the whole track.
std::vector<Segment> segment_vad_merge(const FrameLabelTrack& track);

/// Recursive bisection of `span` at the midpoint of its longest pause until a
/// piece is shorter than max_len or holds no pause whose midpoint lies strictly
/// inside it. Needs every pause of the span up front.
std::vector<Segment> segment_srpol(const Segment& span, std::span<const Pause> pauses,
                                   const SrpolParams& params);

/// Length-driven split with pause preference. From the current segment start
/// s, with horizon h = s + max_len, a pause is eligible when its start lies in
/// [s + min_len, h]. Its length and midpoint are measured on the part before
/// h, so the boundary never passes h. The longest eligible pause wins (ties go
/// to the earliest); with none the boundary is h. Scanning stops once less
/// than max_len of audio remains, and that tail is the last segment.
///
/// With force_split, the first pause starting in [s, h) whose part before h
/// lasts at least `juncture` takes precedence and splits at its midpoint; this
/// also applies inside the tail.
std::vector<Segment> segment_hybrid(std::span<const Pause> pauses, Micros total,
                                    const HybridParams& params);

/// Same as segment_hybrid with force_split enabled.
std::vector<Segment> segment_hybrid_force(std::span<const Pause> pauses, Micros total,
                                          HybridParams params);

enum class StrategyKind { kFixed, kVad, kSrpol, kHybrid, kHybridForce };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);
bool is_streamable(StrategyKind kind);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::kHybrid;
  FixedParams fixed;
  SrpolParams srpol;
  HybridParams hybrid;
  Micros min_pause{0};  // zero means one frame of the track
};

/// Runs the configured strategy over a label track. Every strategy shares the
/// track's frame-aligned timeline [0, track.duration()).
std::vector<Segment> segment_track(const FrameLabelTrack& track, const StrategyConfig& config);

}  // namespace pauseseg
