#include "pauseseg/segmenters.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace pauseseg {

namespace {

Micros midpoint(Micros start, Micros end) { return start + (end - start) / 2; }

// Part of a pause that lies before the horizon.
Micros clipped_end(const Pause& p, Micros horizon) { return std::min(p.end(), horizon); }

}  // namespace

void FixedParams::validate() const {
  if (length <= kZero) throw std::invalid_argument("fixed length must be positive");
}

void SrpolParams::validate() const {
  if (max_len <= kZero) throw std::invalid_argument("srpol max_len must be positive");
}

void HybridParams::validate() const {
  if (min_len <= kZero || min_len > max_len) {
    throw std::invalid_argument("hybrid lengths must satisfy 0 < min_len <= max_len");
  }
  if (force_split && juncture <= kZero) {
    throw std::invalid_argument("juncture must be positive");
  }
}

std::vector<Segment> segment_fixed(Micros total, Micros length) {
  FixedParams{length}.validate();
  if (total < kZero) throw std::invalid_argument("total duration must be non-negative");
  std::vector<Segment> out;
  for (Micros s = kZero; s < total; s += length) {
    out.push_back(Segment{s, std::min(s + length, total), true});
  }
  return out;
}

std::vector<Segment> segment_vad_merge(const FrameLabelTrack& track) {
  std::vector<Segment> out;
  const Micros frame = track.frame_duration();
  const std::size_t n = track.labels.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && track.labels[j] == track.labels[i]) ++j;
    out.push_back(Segment{frame * static_cast<std::int64_t>(i),
                          frame * static_cast<std::int64_t>(j),
                          track.labels[i] == Label::kSpeech});
    i = j;
  }
  return out;
}

std::vector<Segment> segment_srpol(const Segment& span, std::span<const Pause> pauses,
                                   const SrpolParams& params) {
  params.validate();
  if (span.end <= span.start) return {};

  struct Piece {
    Micros start, end;
    std::size_t lo, hi;  // pauses whose midpoint lies strictly inside
  };

  auto mid_of = [&](std::size_t k) { return pauses[k].start + pauses[k].duration / 2; };

  // Pauses are disjoint and sorted, so their midpoints are sorted as well.
  std::size_t lo = 0;
  while (lo < pauses.size() && mid_of(lo) <= span.start) ++lo;
  std::size_t hi = lo;
  while (hi < pauses.size() && mid_of(hi) < span.end) ++hi;

  std::vector<Segment> out;
  std::vector<Piece> stack{{span.start, span.end, lo, hi}};
  while (!stack.empty()) {
    const Piece piece = stack.back();
    stack.pop_back();
    if (piece.end - piece.start < params.max_len || piece.lo == piece.hi) {
      out.push_back(Segment{piece.start, piece.end, true});
      continue;
    }
    std::size_t best = piece.lo;
    for (std::size_t k = piece.lo + 1; k < piece.hi; ++k) {
      if (pauses[k].duration > pauses[best].duration) best = k;
    }
    const Micros cut = mid_of(best);
    // Right half goes first so the left half is emitted first.
    stack.push_back(Piece{cut, piece.end, best + 1, piece.hi});
    stack.push_back(Piece{piece.start, cut, piece.lo, best});
  }
  return out;
}

std::vector<Segment> segment_hybrid(std::span<const Pause> pauses, Micros total,
                                    const HybridParams& params) {
  params.validate();
  std::vector<Segment> out;
  std::size_t first = 0;  // first pause starting at or after s
  Micros s = kZero;
  while (s < total) {
    while (first < pauses.size() && pauses[first].start < s) ++first;
    const Micros horizon = s + params.max_len;

    if (params.force_split) {
      std::optional<Micros> forced;
      for (std::size_t k = first; k < pauses.size() && pauses[k].start < horizon; ++k) {
        const Micros end = clipped_end(pauses[k], horizon);
        if (end - pauses[k].start >= params.juncture) {
          forced = midpoint(pauses[k].start, end);
          break;
        }
      }
      if (forced) {
        out.push_back(Segment{s, *forced, true});
        s = *forced;
        continue;
      }
    }

    if (horizon > total) break;

    Micros boundary = horizon;
    Micros longest{-1};
    for (std::size_t k = first; k < pauses.size() && pauses[k].start <= horizon; ++k) {
      if (pauses[k].start - s < params.min_len) continue;
      const Micros end = clipped_end(pauses[k], horizon);
      if (end - pauses[k].start > longest) {
        longest = end - pauses[k].start;
        boundary = midpoint(pauses[k].start, end);
      }
    }
    out.push_back(Segment{s, boundary, true});
    s = boundary;
  }
  if (s < total) out.push_back(Segment{s, total, true});
  return out;
}

std::vector<Segment> segment_hybrid_force(std::span<const Pause> pauses, Micros total,
                                          HybridParams params) {
  params.force_split = true;
  return segment_hybrid(pauses, total, params);
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kFixed: return "fixed";
    case StrategyKind::kVad: return "vad";
    case StrategyKind::kSrpol: return "srpol";
    case StrategyKind::kHybrid: return "hybrid";
    case StrategyKind::kHybridForce: return "hybrid-force";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view name) {
  for (auto kind : {StrategyKind::kFixed, StrategyKind::kVad, StrategyKind::kSrpol,
                    StrategyKind::kHybrid, StrategyKind::kHybridForce}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

bool is_streamable(StrategyKind kind) {
  return kind == StrategyKind::kHybrid || kind == StrategyKind::kHybridForce;
}

std::vector<Segment> segment_track(const FrameLabelTrack& track, const StrategyConfig& config) {
  const Micros total = track.duration();
  const Micros min_pause = config.min_pause > kZero ? config.min_pause : track.frame_duration();
  switch (config.kind) {
    case StrategyKind::kFixed:
      return segment_fixed(total, config.fixed.length);
    case StrategyKind::kVad:
      return segment_vad_merge(track);
    case StrategyKind::kSrpol: {
      const auto pauses = detect_pauses(track, min_pause);
      return segment_srpol(Segment{kZero, total, true}, pauses, config.srpol);
    }
    case StrategyKind::kHybrid: {
      const auto pauses = detect_pauses(track, min_pause);
      HybridParams params = config.hybrid;
      params.force_split = false;
      return segment_hybrid(pauses, total, params);
    }
    case StrategyKind::kHybridForce: {
      const auto pauses = detect_pauses(track, min_pause);
      return segment_hybrid_force(pauses, total, config.hybrid);
    }
  }
  throw std::logic_error("unhandled strategy");
}

}  // namespace pauseseg
