#include "pauseseg/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pauseseg {

namespace {

std::string two_decimals(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string with_thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

BoundaryScore score_from_counts(std::size_t hits, std::size_t hyp_boundaries,
                                std::size_t ref_boundaries, Micros tolerance) {
  BoundaryScore score;
  score.tolerance = to_seconds(tolerance);
  score.hits = hits;
  score.hyp_boundaries = hyp_boundaries;
  score.ref_boundaries = ref_boundaries;
  score.precision = ratio(hits, hyp_boundaries);
  score.recall = ratio(hits, ref_boundaries);
  const double sum = score.precision + score.recall;
  score.f1 = sum == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / sum;
  return score;
}

SegStats compute_stats(std::span<const Segment> segments, Micros total) {
  SegStats stats;
  Micros kept_sum{0};
  Micros longest{0};
  Micros shortest = Micros::max();
  for (const Segment& seg : segments) {
    if (!seg.kept) continue;
    ++stats.num_segments;
    kept_sum += seg.duration();
    longest = std::max(longest, seg.duration());
    shortest = std::min(shortest, seg.duration());
  }
  if (total > kZero) {
    const double filtered = to_seconds(total - kept_sum) / to_seconds(total) * 100.0;
    stats.pct_filtered = std::clamp(filtered, 0.0, 100.0);
  }
  if (stats.num_segments > 0) {
    stats.max_len = to_seconds(longest);
    stats.min_len = to_seconds(shortest);
    stats.avg_len = to_seconds(kept_sum) / static_cast<double>(stats.num_segments);
  }
  return stats;
}

std::vector<Segment> fill_gaps(std::span<const Segment> segments, Micros total) {
  std::vector<Segment> out;
  Micros cursor{0};
  for (const Segment& seg : segments) {
    if (seg.start < cursor) throw std::invalid_argument("segments overlap or are unsorted");
    if (seg.start > cursor) out.push_back(Segment{cursor, seg.start, false});
    out.push_back(seg);
    cursor = seg.end;
  }
  if (cursor < total) out.push_back(Segment{cursor, total, false});
  return out;
}

std::vector<Micros> internal_boundaries(std::span<const Segment> segments, Micros total) {
  std::vector<Micros> out;
  for (const Segment& seg : segments) {
    if (seg.start > kZero && seg.start < total) out.push_back(seg.start);
  }
  return out;
}

BoundaryScore boundary_prf(std::span<const Micros> hypothesis, std::span<const Micros> reference,
                           Micros tolerance) {
  std::size_t hits = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < hypothesis.size() && j < reference.size()) {
    const Micros h = hypothesis[i];
    const Micros r = reference[j];
    if (std::chrono::abs(h - r) <= tolerance) {
      ++hits;
      ++i;
      ++j;
    } else if (h < r) {
      ++i;
    } else {
      ++j;
    }
  }

  return score_from_counts(hits, hypothesis.size(), reference.size(), tolerance);
}

BoundaryScore boundary_prf(std::span<const Segment> hypothesis, std::span<const Segment> reference,
                           Micros total, Micros tolerance) {
  const auto hyp = internal_boundaries(fill_gaps(hypothesis, total), total);
  const auto ref = internal_boundaries(fill_gaps(reference, total), total);
  return boundary_prf(hyp, ref, tolerance);
}

std::vector<std::size_t> length_histogram(std::span<const Segment> segments, Micros bin_width) {
  if (bin_width <= kZero) throw std::invalid_argument("bin width must be positive");
  std::vector<std::size_t> bins;
  for (const Segment& seg : segments) {
    if (!seg.kept) continue;
    const auto k = static_cast<std::size_t>(seg.duration() / bin_width);
    if (bins.size() <= k) bins.resize(k + 1, 0);
    ++bins[k];
  }
  return bins;
}

std::string format_stats_table(const SegStats& stats) {
  auto opt = [](const std::optional<double>& v) { return v ? two_decimals(*v) : std::string("-"); };
  const std::pair<const char*, std::string> rows[] = {
      {"% filtered", two_decimals(stats.pct_filtered)},
      {"Num segm.", with_thousands(stats.num_segments)},
      {"Max len (s)", opt(stats.max_len)},
      {"Min len (s)", opt(stats.min_len)},
      {"Avg len (s)", opt(stats.avg_len)},
  };
  std::string out;
  for (const auto& [label, value] : rows) {
    char line[96];
    std::snprintf(line, sizeof line, "%-12s %10s\n", label, value.c_str());
    out += line;
  }
  return out;
}

std::string format_stats_json(const SegStats& stats) {
  // Rounded the same way as the table so both views agree.
  auto rounded = [](double v) { return std::stod(two_decimals(v)); };
  nlohmann::ordered_json j;
  j["pct_filtered"] = rounded(stats.pct_filtered);
  j["num_segments"] = stats.num_segments;
  for (auto [key, value] : {std::pair{"max_len", stats.max_len}, std::pair{"min_len", stats.min_len},
                            std::pair{"avg_len", stats.avg_len}}) {
    j[key] = value ? nlohmann::ordered_json(rounded(*value)) : nlohmann::ordered_json(nullptr);
  }
  return j.dump() + "\n";
}

std::string format_score(const BoundaryScore& score) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "Precision    %.4f\nRecall       %.4f\nF1           %.4f\n"
                "Tolerance(s) %.3f\nHits         %zu (hyp %zu, ref %zu)\n",
                score.precision, score.recall, score.f1, score.tolerance, score.hits,
                score.hyp_boundaries, score.ref_boundaries);
  return buf;
}

std::string format_score_json(const BoundaryScore& score) {
  nlohmann::ordered_json j;
  j["precision"] = score.precision;
  j["recall"] = score.recall;
  j["f1"] = score.f1;
  j["tolerance"] = score.tolerance;
  j["hits"] = score.hits;
  j["hyp_boundaries"] = score.hyp_boundaries;
  j["ref_boundaries"] = score.ref_boundaries;
  return j.dump() + "\n";
}

}  // namespace pauseseg
