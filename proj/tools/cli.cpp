#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <unistd.h>

#include "pauseseg/audio_io.hpp"
#include "pauseseg/manifest.hpp"
#include "pauseseg/metrics.hpp"
#include "pauseseg/pipeline.hpp"

namespace pauseseg::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kEnvPrefix = "PAUSESEG_";

struct SegmentOptions {
  std::vector<std::string> inputs;
  std::string strategy = "hybrid";
  double length = 20.0;
  double min_len = 17.0;
  double max_len = 20.0;
  int juncture_ms = 550;
  int aggressiveness = 2;
  int frame_ms = 20;
  int min_pause_ms = 0;
  std::uint32_t raw_rate = 0;
  std::string output;
  std::string format = "yaml";
  bool emit_dropped = false;
  bool streaming = false;
  unsigned jobs = 0;
};

struct StatsOptions {
  std::string manifest;
  std::optional<double> total;
  bool json = false;
};

struct CompareOptions {
  std::string hypothesis;
  std::string reference;
  double tolerance = 0.5;
  bool json = false;
};

std::string env_name(std::string flag) {
  std::string out = kEnvPrefix;
  for (char c : flag) out.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(c)));
  return out;
}

template <typename T>
CLI::Option* add_opt(CLI::App* app, const std::string& name, T& value, const std::string& help) {
  const std::string long_name = name.substr(0, name.find(','));
  return app->add_option("--" + name, value, help)->envname(env_name(long_name))->capture_default_str();
}

std::string fmt_number(double v) { return format_seconds(from_seconds(v)); }

PipelineConfig to_pipeline(const SegmentOptions& o) {
  PipelineConfig c;
  c.strategy.kind = parse_strategy(o.strategy);
  c.strategy.fixed.length = from_seconds(o.length);
  c.strategy.srpol.max_len = from_seconds(o.max_len);
  c.strategy.hybrid.min_len = from_seconds(o.min_len);
  c.strategy.hybrid.max_len = from_seconds(o.max_len);
  c.strategy.hybrid.juncture = from_millis(o.juncture_ms);
  c.strategy.hybrid.force_split = c.strategy.kind == StrategyKind::kHybridForce;
  c.strategy.min_pause = from_millis(o.min_pause_ms);
  c.vad.aggressiveness = o.aggressiveness;
  c.vad.frame_ms = o.frame_ms;
  c.streaming = o.streaming;
  return c;
}

std::vector<std::pair<std::string, std::string>> echo_config(const SegmentOptions& o) {
  return {
      {"strategy", o.strategy},
      {"length", fmt_number(o.length)},
      {"min-len", fmt_number(o.min_len)},
      {"max-len", fmt_number(o.max_len)},
      {"juncture-ms", std::to_string(o.juncture_ms)},
      {"aggressiveness", std::to_string(o.aggressiveness)},
      {"frame-ms", std::to_string(o.frame_ms)},
      {"min-pause-ms", std::to_string(o.min_pause_ms)},
      {"raw-rate", std::to_string(o.raw_rate)},
      {"streaming", o.streaming ? "true" : "false"},
  };
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing to standard output");
    return;
  }
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + tmp.string());
    file << content;
    file.close();
    if (!file) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + target.string());
  }
}

int cmd_segment(const SegmentOptions& o, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  ManifestFormat format;
  try {
    config = to_pipeline(o);
    config.validate();
    if (o.format == "yaml") {
      format = ManifestFormat::kYaml;
    } else if (o.format == "jsonl") {
      format = ManifestFormat::kJsonLines;
    } else {
      throw std::invalid_argument("unknown format '" + o.format + "'");
    }
  } catch (const std::exception& e) {
    err << "pauseseg segment: " << e.what() << "\n";
    return 2;
  }

  const std::optional<std::uint32_t> raw_rate =
      o.raw_rate ? std::optional<std::uint32_t>(o.raw_rate) : std::nullopt;
  auto run_one = [&](const std::string& input) {
    return segment_clip(read_audio_file(input, raw_rate), config);
  };

  // One task per file, bounded by --jobs; results are kept in input order.
  const unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::vector<Segmentation> results(o.inputs.size());
  for (std::size_t begin = 0; begin < o.inputs.size(); begin += jobs) {
    const std::size_t end = std::min(o.inputs.size(), begin + jobs);
    std::vector<std::future<Segmentation>> pending;
    for (std::size_t i = begin; i < end; ++i) {
      pending.push_back(std::async(std::launch::async, run_one, o.inputs[i]));
    }
    for (std::size_t i = begin; i < end; ++i) {
      try {
        results[i] = pending[i - begin].get();
      } catch (const std::exception& e) {
        err << "pauseseg segment: " << o.inputs[i] << ": " << e.what() << "\n";
        for (std::size_t k = i + 1; k < end; ++k) pending[k - begin].wait();
        return 1;
      }
    }
  }

  Manifest manifest;
  manifest.config = echo_config(o);
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    const std::string wav = fs::path(o.inputs[i]).filename().string();
    manifest.audio.push_back(AudioInfo{wav, results[i].total});
    append_segments(manifest, wav, results[i].segments);
  }

  try {
    write_output(o.output, write_manifest(manifest, format, o.emit_dropped), out);
  } catch (const std::exception& e) {
    err << "pauseseg segment: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_stats(const StatsOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const Manifest manifest = read_manifest(o.manifest);
    std::vector<Segment> segments;
    Micros total{0};
    for (const std::string& wav : manifest.wavs()) {
      const auto segs = manifest.segments_for(wav);
      segments.insert(segments.end(), segs.begin(), segs.end());
      total += manifest.duration_of(wav);
    }
    if (o.total) {
      if (*o.total < 0) throw std::invalid_argument("--total must be non-negative");
      total = from_seconds(*o.total);
    }
    const SegStats stats = compute_stats(segments, total);
    out << (o.json ? format_stats_json(stats) : format_stats_table(stats));
    out.flush();
    return out ? 0 : 1;
  } catch (const std::exception& e) {
    err << "pauseseg stats: " << o.manifest << ": " << e.what() << "\n";
    return 1;
  }
}

Micros frame_tolerance(const Manifest& a, const Manifest& b) {
  int frame_ms = 0;
  for (const Manifest* m : {&a, &b}) {
    if (auto v = m->config_value("frame-ms")) frame_ms = std::max(frame_ms, std::stoi(*v));
  }
  return from_millis(frame_ms ? frame_ms : 30);
}

int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.tolerance < 0) throw std::invalid_argument("--tolerance must be non-negative");
    const Manifest hyp = read_manifest(o.hypothesis);
    const Manifest ref = read_manifest(o.reference);
    const Micros slack = frame_tolerance(hyp, ref);

    std::vector<std::string> wavs = hyp.wavs();
    for (const auto& w : ref.wavs()) {
      if (std::find(wavs.begin(), wavs.end(), w) == wavs.end()) wavs.push_back(w);
    }

    std::size_t hits = 0, hyp_count = 0, ref_count = 0;
    for (const std::string& wav : wavs) {
      const Micros hyp_total = hyp.duration_of(wav);
      const Micros ref_total = ref.duration_of(wav);
      if (std::chrono::abs(hyp_total - ref_total) > slack) {
        err << "pauseseg compare: duration mismatch for " << wav << ": "
            << format_seconds(hyp_total) << " s vs " << format_seconds(ref_total) << " s\n";
        return 1;
      }
      const auto h = internal_boundaries(fill_gaps(hyp.segments_for(wav), hyp_total), hyp_total);
      const auto r = internal_boundaries(fill_gaps(ref.segments_for(wav), ref_total), ref_total);
      const BoundaryScore s = boundary_prf(h, r, from_seconds(o.tolerance));
      hits += s.hits;
      hyp_count += s.hyp_boundaries;
      ref_count += s.ref_boundaries;
    }
    // Counts are pooled over files before scoring.
    const BoundaryScore score =
        score_from_counts(hits, hyp_count, ref_count, from_seconds(o.tolerance));

    out << (o.json ? format_score_json(score) : format_score(score));
    out.flush();
    return out ? 0 : 1;
  } catch (const std::exception& e) {
    err << "pauseseg compare: " << e.what() << "\n";
    return 1;
  }
}

void add_segment_options(CLI::App* segment, SegmentOptions& seg) {
  segment->add_option("inputs", seg.inputs, "WAV (or raw PCM16 with --raw-rate) files")
      ->required()
      ->check(CLI::ExistingFile);
  add_opt(segment, "strategy", seg.strategy, "fixed | vad | srpol | hybrid | hybrid-force")
      ->check(CLI::IsMember({"fixed", "vad", "srpol", "hybrid", "hybrid-force"}));
  add_opt(segment, "length", seg.length, "Segment length in seconds (fixed)");
  add_opt(segment, "min-len", seg.min_len, "Minimum segment length in seconds (hybrid)");
  add_opt(segment, "max-len", seg.max_len, "Maximum segment length in seconds (hybrid, srpol)");
  add_opt(segment, "juncture-ms", seg.juncture_ms, "Forced-split pause length (hybrid-force)");
  add_opt(segment, "aggressiveness", seg.aggressiveness, "VAD mode 0-3")->check(CLI::Range(0, 3));
  add_opt(segment, "frame-ms", seg.frame_ms, "VAD frame size")->check(CLI::IsMember({10, 20, 30}));
  add_opt(segment, "min-pause-ms", seg.min_pause_ms, "Shortest pause considered (0 = one frame)")
      ->check(CLI::NonNegativeNumber);
  add_opt(segment, "raw-rate", seg.raw_rate, "Treat inputs as raw PCM16 at this rate (0 = WAV)");
  add_opt(segment, "output,-o", seg.output, "Output manifest path (default: stdout)");
  add_opt(segment, "format", seg.format, "yaml | jsonl")->check(CLI::IsMember({"yaml", "jsonl"}));
  add_opt(segment, "jobs", seg.jobs, "Files processed in parallel (0 = hardware threads)");
  segment->add_flag("--emit-dropped", seg.emit_dropped, "Include discarded non-speech as dropped entries")
      ->envname(env_name("emit-dropped"));
  segment->add_flag("--streaming", seg.streaming, "Segment incrementally, frame by frame")
      ->envname(env_name("streaming"));
}

constexpr const char* kSegmentHelp = "Segment audio files and write a manifest";

// Config files are only read by a top-level CLI11 app, so `segment` is parsed
// as one. Precedence: command line, then --config file, then PAUSESEG_* env.
int run_segment(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  SegmentOptions seg;
  CLI::App app{kSegmentHelp, "pauseseg segment"};
  app.set_config("--config", "", "TOML-style key=value file with option defaults");
  add_segment_options(&app, seg);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  rev.resize(rev.size() - 2);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  return cmd_segment(seg, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() >= 2 && args[1] == "segment") return run_segment(args, out, err);

  CLI::App app{"Pause-aware audio segmentation for speech translation"};
  app.name(args.empty() ? "pauseseg" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.set_version_flag("--version", "pauseseg 0.1.0");

  // Listed for --help; actual parsing happens in run_segment.
  SegmentOptions unused;
  auto* segment = app.add_subcommand("segment", kSegmentHelp);
  add_segment_options(segment, unused);

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Print segmentation statistics for a manifest");
  stats_cmd->add_option("manifest", stats.manifest, "Manifest file")->required();
  stats_cmd->add_option("--total", stats.total, "Total audio duration in seconds");
  stats_cmd->add_flag("--json", stats.json, "Print JSON instead of a table");

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Score hypothesis boundaries against a reference");
  compare->add_option("hypothesis", cmp.hypothesis, "Hypothesis manifest")->required();
  compare->add_option("reference", cmp.reference, "Reference manifest")->required();
  compare->add_option("--tolerance", cmp.tolerance, "Match tolerance in seconds")->capture_default_str();
  compare->add_flag("--json", cmp.json, "Print JSON instead of text");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (*stats_cmd) return cmd_stats(stats, out, err);
  return cmd_compare(cmp, out, err);
}

}  // namespace pauseseg::cli
