#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pauseseg/segmenters.hpp"
#include "pauseseg/time.hpp"

namespace pauseseg {

/// Summary of a segmentation: share of discarded audio and kept-segment
/// length statistics. Length fields are absent when nothing was kept.
struct SegStats {
  double pct_filtered = 0.0;
  std::size_t num_segments = 0;
  std::optional<double> max_len;
  std::optional<double> min_len;
  std::optional<double> avg_len;
};

struct BoundaryScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double tolerance = 0.0;
  std::size_t hits = 0;
  std::size_t hyp_boundaries = 0;
  std::size_t ref_boundaries = 0;
};

/// Filtered audio is everything in [0, total) not covered by a kept segment,
/// so gaps count the same as explicit kept == false segments.
SegStats compute_stats(std::span<const Segment> segments, Micros total);

/// Inserts kept == false segments into the gaps of a sorted segmentation so
/// that it tiles [0, total).
std::vector<Segment> fill_gaps(std::span<const Segment> segments, Micros total);

/// Internal boundaries of a tiling: every segment edge except 0 and total.
std::vector<Micros> internal_boundaries(std::span<const Segment> segments, Micros total);

/// Precision, recall and F1 from match counts. An empty side scores 1 (no
/// boundary to miss or to get wrong).
BoundaryScore score_from_counts(std::size_t hits, std::size_t hyp_boundaries,
                                std::size_t ref_boundaries, Micros tolerance);

/// Greedy one-to-one matching of boundaries in time order.
BoundaryScore boundary_prf(std::span<const Micros> hypothesis, std::span<const Micros> reference,
                           Micros tolerance);

BoundaryScore boundary_prf(std::span<const Segment> hypothesis, std::span<const Segment> reference,
                           Micros total, Micros tolerance);

/// Bin k counts kept segments with duration in [k*w, (k+1)*w).
std::vector<std::size_t> length_histogram(std::span<const Segment> segments, Micros bin_width);

/// Aligned text table using the row labels "% filtered", "Num segm.",
/// "Max len (s)", "Min len (s)", "Avg len (s)", values to two decimals.
std::string format_stats_table(const SegStats& stats);
std::string format_stats_json(const SegStats& stats);

std::string format_score(const BoundaryScore& score);
std::string format_score_json(const BoundaryScore& score);

}  // namespace pauseseg
