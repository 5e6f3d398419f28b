#pragma once

#include <vector>

#include "pauseseg/audio_io.hpp"
#include "pauseseg/segmenters.hpp"
#include "pauseseg/vad.hpp"

namespace pauseseg {

struct PipelineConfig {
  StrategyConfig strategy;
  VadConfig vad;
  bool streaming = false;

  /// Rejects combinations no run can satisfy, such as streaming a strategy
  /// that needs the whole recording.
  void validate() const;
};

struct Segmentation {
  std::vector<Segment> segments;
  Micros total{0};  // frame-aligned timeline length
};

/// Frames the clip, labels it and applies the configured strategy. In
/// streaming mode frames go through StreamingSegmenter one at a time.
Segmentation segment_clip(const AudioClip& clip, const PipelineConfig& config);

}  // namespace pauseseg
