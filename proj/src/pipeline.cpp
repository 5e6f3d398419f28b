#include "pauseseg/pipeline.hpp"

#include <stdexcept>

#include "pauseseg/streaming.hpp"

namespace pauseseg {

void PipelineConfig::validate() const {
  vad.validate();
  switch (strategy.kind) {
    case StrategyKind::kFixed: strategy.fixed.validate(); break;
    case StrategyKind::kSrpol: strategy.srpol.validate(); break;
    case StrategyKind::kHybrid:
    case StrategyKind::kHybridForce: strategy.hybrid.validate(); break;
    case StrategyKind::kVad: break;
  }
  if (strategy.min_pause > kZero && strategy.min_pause < from_millis(vad.frame_ms)) {
    throw std::invalid_argument("min pause must be at least one frame");
  }
  if (!streaming) return;
  if (strategy.kind == StrategyKind::kSrpol) {
    throw std::invalid_argument("strategy requires full audio");
  }
  if (!is_streamable(strategy.kind)) {
    throw std::invalid_argument("streaming is only available for hybrid strategies");
  }
  if (strategy.min_pause > from_millis(vad.frame_ms)) {
    throw std::invalid_argument("streaming counts every non-speech run as a pause; min pause must be one frame");
  }
}

Segmentation segment_clip(const AudioClip& clip, const PipelineConfig& config) {
  config.validate();
  if (!config.streaming) {
    const FrameLabelTrack track = classify(clip, config.vad);
    return Segmentation{segment_track(track, config.strategy), track.duration()};
  }

  HybridParams params = config.strategy.hybrid;
  params.force_split = config.strategy.kind == StrategyKind::kHybridForce;
  StreamingSegmenter stream(params, config.vad);
  Segmentation result;
  FrameReader reader(clip, config.vad.frame_ms);
  while (auto frame = reader.next()) {
    for (const Segment& seg : stream.push_frame(std::move(*frame))) result.segments.push_back(seg);
  }
  for (const Segment& seg : stream.flush()) result.segments.push_back(seg);
  result.total = stream.stream_time();
  return result;
}

}  // namespace pauseseg
