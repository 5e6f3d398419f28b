#include <gtest/gtest.h>

#include <random>

#include "pauseseg/streaming.hpp"
#include "support/synth.hpp"

using namespace pauseseg;

namespace {

Micros sec(double s) { return from_seconds(s); }

Segment seg(double a, double b) { return Segment{sec(a), sec(b), true}; }

void push_n(StreamingSegmenter& s, Label label, std::size_t n, std::vector<Segment>& out) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto emitted = s.push_label(label);
    out.insert(out.end(), emitted.begin(), emitted.end());
  }
}

std::vector<Segment> batch(const FrameLabelTrack& track, const HybridParams& params) {
  return segment_hybrid(detect_pauses(track, track.frame_duration()), track.duration(), params);
}

std::vector<Segment> stream(const FrameLabelTrack& track, const HybridParams& params) {
  StreamingSegmenter s(params, VadConfig{.frame_ms = track.frame_ms});
  std::vector<Segment> out;
  for (Label l : track.labels) {
    const auto emitted = s.push_label(l);
    out.insert(out.end(), emitted.begin(), emitted.end());
  }
  const auto tail = s.flush();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

FrameLabelTrack forty_second_example() {
  // Pauses 0.3 s at 5.0, 0.4 s at 18.0 and 0.6 s at 19.0 on a 20 ms grid.
  std::string labels(2000, 'S');
  auto quiet = [&](double at, double len) {
    labels.replace(static_cast<std::size_t>(at * 50), static_cast<std::size_t>(len * 50),
                   static_cast<std::size_t>(len * 50), 'N');
  };
  quiet(5.0, 0.3);
  quiet(18.0, 0.4);
  quiet(19.0, 0.6);
  return FrameLabelTrack::from_string(labels, 20);
}

}  // namespace

TEST(Streaming, HalfSecondEmitsNothing) {
  StreamingSegmenter s(HybridParams{}, VadConfig{});
  std::vector<Segment> out;
  push_n(s, Label::kSpeech, 25, out);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(s.stream_time(), sec(0.5));
}

TEST(Streaming, EmitsOnTheFrameReachingMaxLen) {
  StreamingSegmenter s(HybridParams{}, VadConfig{});
  std::vector<Segment> out;
  push_n(s, Label::kSpeech, 999, out);
  EXPECT_TRUE(out.empty());
  push_n(s, Label::kSpeech, 1, out);
  EXPECT_EQ(out, (std::vector{seg(0, 20)}));
  EXPECT_EQ(s.buffered_frames(), 0u);
}

TEST(Streaming, FlushAfterFiveSeconds) {
  StreamingSegmenter s(HybridParams{}, VadConfig{});
  std::vector<Segment> out;
  push_n(s, Label::kSpeech, 250, out);
  EXPECT_EQ(s.flush(), (std::vector{seg(0, 5)}));
  EXPECT_TRUE(s.finished());
  EXPECT_TRUE(s.flush().empty());
  EXPECT_THROW(s.push_label(Label::kSpeech), std::logic_error);
}

TEST(Streaming, FlushAfterOneEmission) {
  StreamingSegmenter s(HybridParams{}, VadConfig{});
  std::vector<Segment> out;
  push_n(s, Label::kSpeech, 1000, out);
  ASSERT_EQ(out.size(), 1u);
  push_n(s, Label::kSpeech, 50, out);
  EXPECT_EQ(out.size(), 1u);
  EXPECT_EQ(s.flush(), (std::vector{seg(20, 21)}));
}

TEST(Streaming, EmptyStreamFlushesNothing) {
  StreamingSegmenter s(HybridParams{}, VadConfig{});
  EXPECT_TRUE(s.flush().empty());
}

TEST(Streaming, FortySecondExampleMatchesBatch) {
  const auto track = forty_second_example();
  const auto expected = std::vector{seg(0, 19.3), seg(19.3, 39.3), seg(39.3, 40)};
  EXPECT_EQ(batch(track, HybridParams{}), expected);
  EXPECT_EQ(stream(track, HybridParams{}), expected);
}

TEST(Streaming, ForcedBoundaryEmitsWhenPauseCloses) {
  HybridParams params;
  params.force_split = true;
  StreamingSegmenter s(params, VadConfig{});
  std::vector<Segment> out;
  push_n(s, Label::kSpeech, 500, out);     // 10 s
  push_n(s, Label::kNonSpeech, 30, out);   // 0.6 s
  EXPECT_TRUE(out.empty());
  push_n(s, Label::kSpeech, 1, out);
  EXPECT_EQ(out, (std::vector{seg(0, 10.3)}));
}

TEST(Streaming, RejectsOutOfOrderFrames) {
  AudioClip clip;
  synth::append_silence(clip, 0.1);
  auto fs = frames(clip, 20);
  StreamingSegmenter s(HybridParams{}, VadConfig{});
  s.push_frame(fs[0]);
  EXPECT_THROW(s.push_frame(fs[2]), std::invalid_argument);
}

TEST(Streaming, RandomLabelStreamsMatchBatch) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto track = synth::random_track(rng, 0.01, 150.0);
    HybridParams params;
    params.force_split = trial % 2 == 1;
    ASSERT_EQ(stream(track, params), batch(track, params)) << "trial " << trial;
  }
}

TEST(Streaming, AudioFramesMatchBatchAndStayBounded) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 6; ++trial) {
    const AudioClip clip = synth::random_clip(rng, 70.0);
    const VadConfig vad{.aggressiveness = trial % 4, .frame_ms = 10 * (1 + trial % 3)};
    HybridParams params;
    params.force_split = trial % 2 == 0;

    StreamingSegmenter s(params, vad);
    const Micros bound = params.max_len + from_millis(vad.frame_ms);
    std::vector<Segment> out;
    for (auto& f : frames(clip, vad.frame_ms)) {
      const auto emitted = s.push_frame(std::move(f));
      out.insert(out.end(), emitted.begin(), emitted.end());
      ASSERT_LE(s.buffered_duration(), bound);
      ASSERT_EQ(s.buffered_audio().size(), s.buffered_frames());
    }
    const auto tail = s.flush();
    out.insert(out.end(), tail.begin(), tail.end());
    EXPECT_EQ(out, batch(classify(clip, vad), params));
  }
}

TEST(Streaming, CheckpointRestoreResumesExactly) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto track = synth::random_track(rng, 1.0, 90.0);
    HybridParams params;
    params.force_split = trial % 2 == 0;
    const auto expected = stream(track, params);

    const std::size_t cut = std::uniform_int_distribution<std::size_t>(0, track.labels.size())(rng);
    StreamingSegmenter first(params, VadConfig{.frame_ms = track.frame_ms});
    std::vector<Segment> out;
    for (std::size_t i = 0; i < cut; ++i) {
      const auto e = first.push_label(track.labels[i]);
      out.insert(out.end(), e.begin(), e.end());
    }
    const auto blob = first.checkpoint();
    StreamingSegmenter second = StreamingSegmenter::restore(blob);
    EXPECT_EQ(second.frames_pushed(), cut);
    for (std::size_t i = cut; i < track.labels.size(); ++i) {
      const auto e = second.push_label(track.labels[i]);
      out.insert(out.end(), e.begin(), e.end());
    }
    const auto tail = second.flush();
    out.insert(out.end(), tail.begin(), tail.end());
    ASSERT_EQ(out, expected);
  }
}

TEST(Streaming, CorruptCheckpointIsRejected) {
  StreamingSegmenter s(HybridParams{}, VadConfig{});
  auto blob = s.checkpoint();
  auto truncated = blob;
  truncated.resize(truncated.size() / 2);
  EXPECT_THROW(StreamingSegmenter::restore(truncated), std::runtime_error);
  blob[0] = std::byte{0x7F};
  EXPECT_THROW(StreamingSegmenter::restore(blob), std::runtime_error);
}
