#include <gtest/gtest.h>

#include <random>

#include "pauseseg/segmenters.hpp"
#include "support/oracles.hpp"
#include "support/synth.hpp"

using namespace pauseseg;

namespace {

Micros sec(double s) { return from_seconds(s); }

Segment seg(double a, double b, bool kept = true) { return Segment{sec(a), sec(b), kept}; }

Pause pause_at(double start, double len) { return Pause{sec(start), sec(len), 0, 0}; }

void expect_tiles(const std::vector<Segment>& segs, Micros total) {
  if (total == Micros{0}) {
    EXPECT_TRUE(segs.empty());
    return;
  }
  ASSERT_FALSE(segs.empty());
  EXPECT_EQ(segs.front().start, Micros{0});
  EXPECT_EQ(segs.back().end, total);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    EXPECT_LT(segs[i].start, segs[i].end);
    if (i) {

      EXPECT_EQ(segs[i - 1].end, segs[i].start);
    }
  }
}

}  // namespace

TEST(Fixed, Examples) {
  EXPECT_EQ(segment_fixed(sec(10), sec(4)), (std::vector{seg(0, 4), seg(4, 8), seg(8, 10)}));
  EXPECT_EQ(segment_fixed(sec(3), sec(20)), (std::vector{seg(0, 3)}));
  EXPECT_EQ(segment_fixed(sec(60), sec(20)), (std::vector{seg(0, 20), seg(20, 40), seg(40, 60)}));
  EXPECT_TRUE(segment_fixed(Micros{0}, sec(20)).empty());
  EXPECT_THROW(segment_fixed(sec(10), Micros{0}), std::invalid_argument);
}

TEST(VadMerge, Examples) {
  const auto all = FrameLabelTrack::from_string("SSSS", 20);
  EXPECT_EQ(segment_vad_merge(all), (std::vector{seg(0, 0.08)}));
  const auto snns = FrameLabelTrack::from_string("SNNS", 20);
  EXPECT_EQ(segment_vad_merge(snns), (std::vector{seg(0, 0.02), seg(0.02, 0.06, false), seg(0.06, 0.08)}));
}

TEST(VadMerge, MatchesRunLengthEncoding) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto track = synth::runs_track(rng, 500, 20, synth::RunShape{1, 20, 1, 20});
    EXPECT_EQ(segment_vad_merge(track), oracle::vad_merge(track.labels, 20));
  }
}

TEST(Srpol, SplitsAtLongestPause) {
  const std::vector<Pause> pauses = {pause_at(12.0, 0.5), pause_at(22.0, 0.3)};
  const auto got = segment_srpol(seg(0, 30), pauses, SrpolParams{sec(20)});
  EXPECT_EQ(got, (std::vector{seg(0, 12.25), seg(12.25, 30)}));
  EXPECT_EQ(got, oracle::srpol(sec(30), pauses, sec(20)));
}

TEST(Srpol, ShortSpanIsKept) {
  const std::vector<Pause> pauses = {pause_at(3.0, 1.0), pause_at(9.0, 2.0)};
  EXPECT_EQ(segment_srpol(seg(0, 15), pauses, SrpolParams{sec(20)}), (std::vector{seg(0, 15)}));
}

TEST(Srpol, NoPausesCanExceedMaxLen) {
  EXPECT_EQ(segment_srpol(seg(0, 50), {}, SrpolParams{sec(20)}), (std::vector{seg(0, 50)}));
}

TEST(Srpol, MatchesRecursiveOracle) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const Micros frame = from_millis(20);
    const Micros total = frame * std::uniform_int_distribution<std::int64_t>(1, 15000)(rng);
    const auto pauses = synth::random_pauses(rng, total, frame);
    const auto got = segment_srpol(Segment{Micros{0}, total, true}, pauses, SrpolParams{sec(20)});
    ASSERT_EQ(got, oracle::srpol(total, pauses, sec(20)));
    expect_tiles(got, total);
  }
}

TEST(Hybrid, WindowExample) {
  const std::vector<Pause> pauses = {pause_at(5.0, 0.3), pause_at(18.0, 0.4), pause_at(19.0, 0.6)};
  const HybridParams params{sec(17), sec(20)};
  const auto got = segment_hybrid(pauses, sec(40), params);
  EXPECT_EQ(got, (std::vector{seg(0, 19.3), seg(19.3, 39.3), seg(39.3, 40)}));
  EXPECT_EQ(got, oracle::hybrid(pauses, sec(40), sec(17), sec(20), std::nullopt));
}

TEST(Hybrid, ShortAudioIsOneSegment) {
  const std::vector<Pause> pauses = {pause_at(2.0, 1.0), pause_at(6.0, 0.6)};
  EXPECT_EQ(segment_hybrid(pauses, sec(10), HybridParams{}), (std::vector{seg(0, 10)}));
}

TEST(Hybrid, NoPausesDegeneratesToFixed) {
  EXPECT_EQ(segment_hybrid({}, sec(40), HybridParams{}), (std::vector{seg(0, 20), seg(20, 40)}));
}

TEST(Hybrid, TiesGoToEarliest) {
  const std::vector<Pause> pauses = {pause_at(17.5, 0.4), pause_at(18.5, 0.4)};
  EXPECT_EQ(segment_hybrid(pauses, sec(30), HybridParams{})[0].end, sec(17.7));
}

TEST(Hybrid, PauseCrossingHorizonIsClipped) {
  // Pause [19.5, 23.5): only the 0.5 s before the horizon counts.
  const std::vector<Pause> pauses = {pause_at(17.2, 0.6), pause_at(19.5, 4.0)};
  const auto got = segment_hybrid(pauses, sec(30), HybridParams{});
  EXPECT_EQ(got[0].end, sec(17.5));
}

TEST(HybridForce, JunctureExample) {
  const std::vector<Pause> pauses = {pause_at(10.0, 0.6)};
  const auto got = segment_hybrid_force(pauses, sec(40), HybridParams{});
  EXPECT_EQ(got, (std::vector{seg(0, 10.3), seg(10.3, 30.3), seg(30.3, 40)}));
  EXPECT_EQ(got, oracle::hybrid(pauses, sec(40), sec(17), sec(20), sec(0.55)));
}

TEST(HybridForce, ShortPauseIsNotForced) {
  const std::vector<Pause> pauses = {pause_at(10.0, 0.5)};
  EXPECT_EQ(segment_hybrid_force(pauses, sec(40), HybridParams{}), (std::vector{seg(0, 20), seg(20, 40)}));
}

TEST(HybridForce, NoPausesMatchesHybrid) {
  for (double total : {0.0, 5.0, 40.0, 123.4}) {
    EXPECT_EQ(segment_hybrid_force({}, sec(total), HybridParams{}), segment_hybrid({}, sec(total), HybridParams{}));
  }
}

TEST(HybridForce, PauseAtTimeZero) {
  const std::vector<Pause> pauses = {pause_at(0.0, 0.55)};
  const auto got = segment_hybrid_force(pauses, sec(5), HybridParams{});
  EXPECT_EQ(got, (std::vector{seg(0, 0.275), seg(0.275, 5)}));
}

TEST(HybridParams, Validation) {
  EXPECT_THROW((HybridParams{sec(21), sec(20)}).validate(), std::invalid_argument);
  EXPECT_THROW((HybridParams{sec(0), sec(0)}).validate(), std::invalid_argument);
  EXPECT_THROW((HybridParams{sec(17), sec(20), true, Micros{0}}).validate(), std::invalid_argument);
  EXPECT_THROW((HybridParams{sec(0), sec(20)}).validate(), std::invalid_argument);
  EXPECT_NO_THROW((HybridParams{sec(20), sec(20)}).validate());
}

TEST(Hybrid, MatchesOracleAndBounds) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Micros frame = from_millis(10 * std::uniform_int_distribution<int>(1, 3)(rng));
    const Micros total = frame * std::uniform_int_distribution<std::int64_t>(0, 20000)(rng);
    const auto pauses = synth::random_pauses(rng, total, frame);
    HybridParams params;
    params.max_len = frame * std::uniform_int_distribution<std::int64_t>(50, 2000)(rng);
    params.min_len = frame * std::uniform_int_distribution<std::int64_t>(1, params.max_len / frame)(rng);
    params.juncture = frame * std::uniform_int_distribution<std::int64_t>(1, 60)(rng);

    const auto plain = segment_hybrid(pauses, total, params);
    const auto forced = segment_hybrid_force(pauses, total, params);
    ASSERT_EQ(plain, oracle::hybrid(pauses, total, params.min_len, params.max_len, std::nullopt));
    ASSERT_EQ(forced, oracle::hybrid(pauses, total, params.min_len, params.max_len, params.juncture));
    expect_tiles(plain, total);
    expect_tiles(forced, total);
    for (const auto& s : plain) EXPECT_LE(s.duration(), params.max_len);
    for (const auto& s : forced) EXPECT_LE(s.duration(), params.max_len);
  }
}

TEST(Strategy, NamesRoundTrip) {
  for (auto kind : {StrategyKind::kFixed, StrategyKind::kVad, StrategyKind::kSrpol, StrategyKind::kHybrid,
                    StrategyKind::kHybridForce}) {
    EXPECT_EQ(parse_strategy(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_strategy("nope"), std::invalid_argument);
  EXPECT_TRUE(is_streamable(StrategyKind::kHybrid));
  EXPECT_TRUE(is_streamable(StrategyKind::kHybridForce));
  EXPECT_FALSE(is_streamable(StrategyKind::kSrpol));
}

TEST(Strategy, EveryStrategyTilesTheTrack) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto track = synth::random_track(rng, 0.01, 120.0);
    for (auto kind : {StrategyKind::kFixed, StrategyKind::kVad, StrategyKind::kSrpol, StrategyKind::kHybrid,
                      StrategyKind::kHybridForce}) {
      StrategyConfig config;
      config.kind = kind;
      expect_tiles(segment_track(track, config), track.duration());
    }
  }
}
