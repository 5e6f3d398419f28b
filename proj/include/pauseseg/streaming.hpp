#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "pauseseg/audio_io.hpp"
#include "pauseseg/segmenters.hpp"
#include "pauseseg/vad.hpp"

namespace pauseseg {

/// Incremental hybrid segmentation over a live frame stream.
///
/// Each pushed frame is labelled by an internal StreamingVad and fed to the
/// pause bookkeeping. A segment is emitted as soon as its end is fixed:
///  - a window boundary when the stream reaches s + max_len, since no later
///    audio can change which eligible pause is longest;
///  - with force_split, a juncture boundary as soon as the qualifying pause
///    closes (or the horizon cuts it), which is usually well before s + max_len.
///
/// Every non-speech run is treated as a pause (a one-frame minimum). Under that
/// rule the concatenated output of push_*() and flush() equals
/// segment_hybrid(detect_pauses(labels, one frame), labels duration, params).
///
/// One instance per stream, single owner. It may be moved between threads.
class StreamingSegmenter {
 public:
  StreamingSegmenter(HybridParams params, VadConfig vad);

  /// Frames must arrive with consecutive indices starting at 0.
  std::vector<Segment> push_frame(Frame frame);

  /// Entry point for callers that run their own VAD.
  std::vector<Segment> push_label(Label label);

  /// Ends the stream and emits whatever remains. No pushes are accepted after.
  std::vector<Segment> flush();

  Micros stream_time() const { return pushed_end_; }
  Micros segment_start() const { return start_; }
  bool finished() const { return finished_; }
  std::size_t frames_pushed() const { return next_index_; }

  /// Frames overlapping the not-yet-emitted audio [segment_start, stream_time).
  std::size_t buffered_frames() const;
  Micros buffered_duration() const { return frame_ * static_cast<std::int64_t>(buffered_frames()); }
  /// Audio of the frames counted by buffered_frames(), only populated by push_frame.
  const std::deque<Frame>& buffered_audio() const { return audio_; }

  const HybridParams& params() const { return params_; }
  Micros frame_duration() const { return frame_; }

  /// Versioned binary snapshot of the whole state; restore() resumes from it.
  std::vector<std::byte> checkpoint() const;
  static StreamingSegmenter restore(std::span<const std::byte> blob);

 private:
  struct OpenRun {
    Micros start;
    std::size_t first_frame;
  };

  std::vector<Segment> advance(Label label);
  void emit(Micros boundary, std::vector<Segment>& out);
  void drain(std::vector<Segment>& out);
  void trim_audio();

  HybridParams params_;
  StreamingVad vad_;
  Micros frame_;
  Micros start_{0};
  Micros pushed_end_{0};
  std::size_t next_index_ = 0;
  bool finished_ = false;
  std::optional<OpenRun> open_;
  std::vector<Pause> closed_;  // closed pauses starting at or after start_
  std::deque<Frame> audio_;
};

}  // namespace pauseseg
