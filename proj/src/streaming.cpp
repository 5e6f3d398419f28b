#include "pauseseg/streaming.hpp"

#include <algorithm>
#include <stdexcept>

#include "serial.hpp"

namespace pauseseg {

namespace {

constexpr std::uint32_t kCheckpointVersion = 1;

Micros midpoint(Micros start, Micros end) { return start + (end - start) / 2; }

}  // namespace

StreamingSegmenter::StreamingSegmenter(HybridParams params, VadConfig vad)
    : params_(params), vad_(vad), frame_(from_millis(vad.frame_ms)) {
  params_.validate();
}

std::vector<Segment> StreamingSegmenter::push_frame(Frame frame) {
  if (finished_) throw std::logic_error("push after flush");
  if (frame.index != next_index_) {
    throw std::invalid_argument("out-of-order frame: expected index " +
                                std::to_string(next_index_) + ", got " +
                                std::to_string(frame.index));
  }
  const Label label = vad_.push(frame);
  audio_.push_back(std::move(frame));
  return advance(label);
}

std::vector<Segment> StreamingSegmenter::push_label(Label label) {
  if (finished_) throw std::logic_error("push after flush");
  return advance(label);
}

std::vector<Segment> StreamingSegmenter::advance(Label label) {
  const Micros t = pushed_end_;
  if (label == Label::kNonSpeech) {
    if (!open_) open_ = OpenRun{t, next_index_};
  } else if (open_) {
    if (open_->start >= start_) {
      closed_.push_back(Pause{open_->start, t - open_->start, open_->first_frame, next_index_ - 1});
    }
    open_.reset();
  }
  pushed_end_ += frame_;
  ++next_index_;

  std::vector<Segment> out;
  drain(out);
  return out;
}

std::vector<Segment> StreamingSegmenter::flush() {
  std::vector<Segment> out;
  if (finished_) return out;
  if (open_) {
    if (open_->start >= start_) {
      closed_.push_back(Pause{open_->start, pushed_end_ - open_->start, open_->first_frame,
                              next_index_ - 1});
    }
    open_.reset();
  }
  finished_ = true;
  drain(out);
  if (start_ < pushed_end_) emit(pushed_end_, out);
  return out;
}

void StreamingSegmenter::drain(std::vector<Segment>& out) {
  for (;;) {
    const Micros horizon = start_ + params_.max_len;

    if (params_.force_split) {
      bool emitted = false;
      for (const Pause& p : closed_) {
        if (p.start >= horizon) break;
        const Micros end = std::min(p.end(), horizon);
        if (end - p.start >= params_.juncture) {
          emit(midpoint(p.start, end), out);
          emitted = true;
          break;
        }
      }
      if (emitted) continue;

      if (open_ && open_->start >= start_ && open_->start < horizon &&
          std::min(pushed_end_, horizon) - open_->start >= params_.juncture) {
        // Qualifies already; its midpoint is fixed once it ends or hits the horizon.
        if (pushed_end_ < horizon) return;
        emit(midpoint(open_->start, horizon), out);
        continue;
      }
    }

    if (pushed_end_ < horizon) return;

    Micros boundary = horizon;
    Micros longest{-1};
    auto consider = [&](Micros start, Micros end) {
      if (start - start_ < params_.min_len || start > horizon) return;
      end = std::min(end, horizon);
      if (end - start > longest) {
        longest = end - start;
        boundary = midpoint(start, end);
      }
    };
    for (const Pause& p : closed_) consider(p.start, p.end());
    if (open_ && open_->start >= start_) consider(open_->start, horizon);
    emit(boundary, out);
  }
}

void StreamingSegmenter::emit(Micros boundary, std::vector<Segment>& out) {
  out.push_back(Segment{start_, boundary, true});
  start_ = boundary;
  const auto stale = std::find_if(closed_.begin(), closed_.end(),
                                  [&](const Pause& p) { return p.start >= start_; });
  closed_.erase(closed_.begin(), stale);
  trim_audio();
}

void StreamingSegmenter::trim_audio() {
  while (!audio_.empty() && audio_.front().end() <= start_) audio_.pop_front();
}

std::size_t StreamingSegmenter::buffered_frames() const {
  if (pushed_end_ <= start_) return 0;
  return next_index_ - static_cast<std::size_t>(start_ / frame_);
}

std::vector<std::byte> StreamingSegmenter::checkpoint() const {
  using detail::put;
  std::vector<std::byte> out;
  put(out, kCheckpointVersion);
  put(out, params_.min_len.count());
  put(out, params_.max_len.count());
  put(out, params_.force_split);
  put(out, params_.juncture.count());
  vad_.serialize(out);
  put(out, start_.count());
  put(out, pushed_end_.count());
  put(out, static_cast<std::uint64_t>(next_index_));
  put(out, finished_);
  put(out, open_.has_value());
  if (open_) {
    put(out, open_->start.count());
    put(out, static_cast<std::uint64_t>(open_->first_frame));
  }
  put(out, static_cast<std::uint64_t>(closed_.size()));
  for (const Pause& p : closed_) {
    put(out, p.start.count());
    put(out, p.duration.count());
    put(out, static_cast<std::uint64_t>(p.first_frame));
    put(out, static_cast<std::uint64_t>(p.last_frame));
  }
  put(out, static_cast<std::uint64_t>(audio_.size()));
  for (const Frame& f : audio_) {
    put(out, static_cast<std::uint64_t>(f.index));
    put(out, f.frame_ms);
    put(out, f.final_padded);
    put(out, static_cast<std::uint64_t>(f.valid_samples));
    put(out, static_cast<std::uint64_t>(f.samples.size()));
    for (std::int16_t s : f.samples) put(out, s);
  }
  return out;
}

StreamingSegmenter StreamingSegmenter::restore(std::span<const std::byte> blob) {
  using detail::take;
  if (take<std::uint32_t>(blob) != kCheckpointVersion) {
    throw std::runtime_error("unsupported stream checkpoint version");
  }
  HybridParams params;
  params.min_len = Micros{take<std::int64_t>(blob)};
  params.max_len = Micros{take<std::int64_t>(blob)};
  params.force_split = take<bool>(blob);
  params.juncture = Micros{take<std::int64_t>(blob)};
  StreamingVad vad = StreamingVad::deserialize(blob);

  StreamingSegmenter seg(params, vad.config());
  seg.vad_ = std::move(vad);
  seg.start_ = Micros{take<std::int64_t>(blob)};
  seg.pushed_end_ = Micros{take<std::int64_t>(blob)};
  seg.next_index_ = take<std::uint64_t>(blob);
  seg.finished_ = take<bool>(blob);
  if (take<bool>(blob)) {
    const Micros start{take<std::int64_t>(blob)};
    seg.open_ = OpenRun{start, take<std::uint64_t>(blob)};
  }
  const auto n_closed = take<std::uint64_t>(blob);
  for (std::uint64_t i = 0; i < n_closed; ++i) {
    Pause p;
    p.start = Micros{take<std::int64_t>(blob)};
    p.duration = Micros{take<std::int64_t>(blob)};
    p.first_frame = take<std::uint64_t>(blob);
    p.last_frame = take<std::uint64_t>(blob);
    seg.closed_.push_back(p);
  }
  const auto n_frames = take<std::uint64_t>(blob);
  for (std::uint64_t i = 0; i < n_frames; ++i) {
    Frame f;
    f.index = take<std::uint64_t>(blob);
    f.frame_ms = take<int>(blob);
    f.final_padded = take<bool>(blob);
    f.valid_samples = take<std::uint64_t>(blob);
    f.samples.resize(take<std::uint64_t>(blob));
    for (auto& s : f.samples) s = take<std::int16_t>(blob);
    seg.audio_.push_back(std::move(f));
  }
  if (!blob.empty()) throw std::runtime_error("trailing bytes in stream checkpoint");
  return seg;
}

}  // namespace pauseseg
