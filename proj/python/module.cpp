#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "pauseseg/audio_io.hpp"
#include "pauseseg/manifest.hpp"
#include "pauseseg/metrics.hpp"
#include "pauseseg/pipeline.hpp"
#include "pauseseg/streaming.hpp"

namespace py = pybind11;
using namespace pauseseg;

namespace {

using Samples = py::array_t<std::int16_t, py::array::c_style | py::array::forcecast>;

AudioClip to_clip(const Samples& samples, std::uint32_t sample_rate) {
  if (samples.ndim() != 1) throw std::invalid_argument("samples must be one-dimensional");
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.assign(samples.data(), samples.data() + samples.size());
  return clip;
}

Samples to_array(const std::vector<std::int16_t>& samples) {
  Samples out(static_cast<py::ssize_t>(samples.size()));
  if (!samples.empty()) std::memcpy(out.mutable_data(), samples.data(), samples.size() * sizeof(std::int16_t));
  return out;
}

HybridParams hybrid_params(double min_len, double max_len, bool force_split, double juncture) {
  HybridParams p{from_seconds(min_len), from_seconds(max_len), force_split, from_seconds(juncture)};
  p.validate();
  return p;
}

std::vector<Pause> to_pauses(const std::vector<std::pair<double, double>>& pauses) {
  std::vector<Pause> out;
  for (const auto& [start, duration] : pauses) out.push_back(Pause{from_seconds(start), from_seconds(duration), 0, 0});
  return out;
}

py::dict stats_dict(const SegStats& s) {
  py::dict d;
  d["pct_filtered"] = s.pct_filtered;
  d["num_segments"] = s.num_segments;
  d["max_len"] = s.max_len;
  d["min_len"] = s.min_len;
  d["avg_len"] = s.avg_len;
  return d;
}

py::dict score_dict(const BoundaryScore& s) {
  py::dict d;
  d["precision"] = s.precision;
  d["recall"] = s.recall;
  d["f1"] = s.f1;
  d["tolerance"] = s.tolerance;
  d["hits"] = s.hits;
  d["hyp_boundaries"] = s.hyp_boundaries;
  d["ref_boundaries"] = s.ref_boundaries;
  return d;
}

/// Python-side wrapper that numbers frames itself.
class PyStream {
 public:
  PyStream(StreamingSegmenter stream, std::uint32_t sample_rate)
      : stream_(std::move(stream)),
        frame_ms_(static_cast<int>(stream_.frame_duration().count() / 1000)),
        frame_len_(samples_per_frame(sample_rate, frame_ms_)) {}

  std::vector<Segment> push_frame(const Samples& samples) {
    if (static_cast<std::size_t>(samples.size()) != frame_len_) {
      throw std::invalid_argument("frame must hold exactly " + std::to_string(frame_len_) + " samples");
    }
    Frame f;
    f.samples.assign(samples.data(), samples.data() + samples.size());
    f.index = stream_.frames_pushed();
    f.frame_ms = frame_ms_;
    f.valid_samples = f.samples.size();
    return stream_.push_frame(std::move(f));
  }

  StreamingSegmenter& get() { return stream_; }

 private:
  StreamingSegmenter stream_;
  int frame_ms_;
  std::size_t frame_len_;
};

}  // namespace

PYBIND11_MODULE(_pauseseg, m) {
  m.doc() = "Pause-aware audio segmentation";

  py::register_exception<AudioError>(m, "AudioError", PyExc_ValueError);

  py::class_<Segment>(m, "Segment")
      .def(py::init([](double start, double end, bool kept) {
             return Segment{from_seconds(start), from_seconds(end), kept};
           }),
           py::arg("start"), py::arg("end"), py::arg("kept") = true)
      .def_property_readonly("start", [](const Segment& s) { return to_seconds(s.start); })
      .def_property_readonly("end", [](const Segment& s) { return to_seconds(s.end); })
      .def_property_readonly("duration", [](const Segment& s) { return to_seconds(s.duration()); })
      .def_readonly("kept", &Segment::kept)
      .def(py::self == py::self)
      .def("__repr__", [](const Segment& s) {
        return "Segment(" + format_seconds(s.start) + ", " + format_seconds(s.end) + (s.kept ? "" : ", dropped") + ")";
      });

  m.def(
      "read_audio",
      [](const std::string& path, std::optional<std::uint32_t> raw_rate) {
        const AudioClip clip = read_audio_file(path, raw_rate);
        return py::make_tuple(to_array(clip.samples), clip.sample_rate);
      },
      py::arg("path"), py::arg("raw_rate") = std::nullopt,
      "Decode a mono PCM16 WAV (or raw PCM16 with raw_rate). Returns (samples, sample_rate).");

  m.def(
      "encode_wav",
      [](const Samples& samples, std::uint32_t sample_rate) {
        const auto bytes = encode_wav(to_clip(samples, sample_rate));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("samples"), py::arg("sample_rate") = 16000);

  m.def(
      "classify",
      [](const Samples& samples, std::uint32_t sample_rate, int aggressiveness, int frame_ms) {
        return classify(to_clip(samples, sample_rate),
                        VadConfig{.aggressiveness = aggressiveness, .frame_ms = frame_ms})
            .to_string();
      },
      py::arg("samples"), py::arg("sample_rate") = 16000, py::arg("aggressiveness") = 2,
      py::arg("frame_ms") = 20, "Per-frame labels as a string of 'S' (speech) and 'N' (non-speech).");

  m.def(
      "detect_pauses",
      [](const std::string& labels, int frame_ms, std::optional<double> min_pause) {
        const auto track = FrameLabelTrack::from_string(labels, frame_ms);
        const Micros min = min_pause ? from_seconds(*min_pause) : track.frame_duration();
        std::vector<std::pair<double, double>> out;
        for (const Pause& p : detect_pauses(track, min)) out.emplace_back(to_seconds(p.start), to_seconds(p.duration));
        return out;
      },
      py::arg("labels"), py::arg("frame_ms") = 20, py::arg("min_pause") = std::nullopt,
      "Maximal non-speech runs as (start, duration) pairs in seconds.");

  m.def(
      "segment_fixed", [](double total, double length) { return segment_fixed(from_seconds(total), from_seconds(length)); },
      py::arg("total"), py::arg("length") = 20.0);

  m.def(
      "segment_srpol",
      [](double total, const std::vector<std::pair<double, double>>& pauses, double max_len) {
        return segment_srpol(Segment{kZero, from_seconds(total), true}, to_pauses(pauses),
                             SrpolParams{from_seconds(max_len)});
      },
      py::arg("total"), py::arg("pauses"), py::arg("max_len") = 20.0);

  m.def(
      "segment_hybrid",
      [](double total, const std::vector<std::pair<double, double>>& pauses, double min_len, double max_len,
         bool force_split, double juncture) {
        return segment_hybrid(to_pauses(pauses), from_seconds(total),
                              hybrid_params(min_len, max_len, force_split, juncture));
      },
      py::arg("total"), py::arg("pauses"), py::arg("min_len") = 17.0, py::arg("max_len") = 20.0,
      py::arg("force_split") = false, py::arg("juncture") = 0.55);

  m.def(
      "segment",
      [](const Samples& samples, std::uint32_t sample_rate, const std::string& strategy, double length,
         double min_len, double max_len, double juncture, int aggressiveness, int frame_ms, double min_pause,
         bool streaming) {
        PipelineConfig c;
        c.strategy.kind = parse_strategy(strategy);
        c.strategy.fixed.length = from_seconds(length);
        c.strategy.srpol.max_len = from_seconds(max_len);
        c.strategy.hybrid = HybridParams{from_seconds(min_len), from_seconds(max_len),
                                         c.strategy.kind == StrategyKind::kHybridForce, from_seconds(juncture)};
        c.strategy.min_pause = from_seconds(min_pause);
        c.vad = VadConfig{.aggressiveness = aggressiveness, .frame_ms = frame_ms};
        c.streaming = streaming;
        const Segmentation result = [&] {
          const AudioClip clip = to_clip(samples, sample_rate);
          py::gil_scoped_release release;
          return segment_clip(clip, c);
        }();
        return py::make_tuple(result.segments, to_seconds(result.total));
      },
      py::arg("samples"), py::arg("sample_rate") = 16000, py::arg("strategy") = "hybrid", py::arg("length") = 20.0,
      py::arg("min_len") = 17.0, py::arg("max_len") = 20.0, py::arg("juncture") = 0.55,
      py::arg("aggressiveness") = 2, py::arg("frame_ms") = 20, py::arg("min_pause") = 0.0,
      py::arg("streaming") = false,
      "Label and segment a clip. Returns (segments, total_seconds) where total is frame-aligned.");

  m.def(
      "compute_stats",
      [](const std::vector<Segment>& segments, double total) { return stats_dict(compute_stats(segments, from_seconds(total))); },
      py::arg("segments"), py::arg("total"));

  m.def(
      "format_stats_table",
      [](const std::vector<Segment>& segments, double total) {
        return format_stats_table(compute_stats(segments, from_seconds(total)));
      },
      py::arg("segments"), py::arg("total"));

  m.def(
      "boundary_prf",
      [](const std::vector<Segment>& hyp, const std::vector<Segment>& ref, double total, double tolerance) {
        return score_dict(boundary_prf(hyp, ref, from_seconds(total), from_seconds(tolerance)));
      },
      py::arg("hypothesis"), py::arg("reference"), py::arg("total"), py::arg("tolerance") = 0.5);

  m.def(
      "write_manifest",
      [](const std::string& wav, const std::vector<Segment>& segments, double total, const std::string& format,
         bool emit_dropped) {
        Manifest manifest;
        manifest.audio.push_back(AudioInfo{wav, from_seconds(total)});
        append_segments(manifest, wav, segments);
        const auto fmt = format == "jsonl" ? ManifestFormat::kJsonLines : ManifestFormat::kYaml;
        if (format != "jsonl" && format != "yaml") throw std::invalid_argument("format must be 'yaml' or 'jsonl'");
        return write_manifest(manifest, fmt, emit_dropped);
      },
      py::arg("wav"), py::arg("segments"), py::arg("total"), py::arg("format") = "yaml",
      py::arg("emit_dropped") = false);

  m.def(
      "read_manifest",
      [](const std::string& text) {
        const Manifest manifest = parse_manifest(text);
        py::dict out;
        for (const std::string& wav : manifest.wavs()) {
          out[py::str(wav)] = py::make_tuple(manifest.segments_for(wav), to_seconds(manifest.duration_of(wav)));
        }
        return out;
      },
      py::arg("text"), "Parse manifest text into {wav: (segments, duration)}.");

  py::class_<PyStream>(m, "StreamingSegmenter")
      .def(py::init([](double min_len, double max_len, bool force_split, double juncture, int aggressiveness,
                       int frame_ms, std::uint32_t sample_rate) {
             return PyStream(StreamingSegmenter(hybrid_params(min_len, max_len, force_split, juncture),
                                                VadConfig{.aggressiveness = aggressiveness, .frame_ms = frame_ms}),
                             sample_rate);
           }),
           py::arg("min_len") = 17.0,
           py::arg("max_len") = 20.0, py::arg("force_split") = false, py::arg("juncture") = 0.55,
           py::arg("aggressiveness") = 2, py::arg("frame_ms") = 20, py::arg("sample_rate") = 16000)
      .def("push_frame", &PyStream::push_frame, py::arg("samples"))
      .def(
          "push_label",
          [](PyStream& s, const std::string& label) {
            if (label != "S" && label != "N") throw std::invalid_argument("label must be 'S' or 'N'");
            return s.get().push_label(label == "S" ? Label::kSpeech : Label::kNonSpeech);
          },
          py::arg("label"))
      .def("flush", [](PyStream& s) { return s.get().flush(); })
      .def_property_readonly("stream_time", [](PyStream& s) { return to_seconds(s.get().stream_time()); })
      .def_property_readonly("buffered_duration", [](PyStream& s) { return to_seconds(s.get().buffered_duration()); })
      .def_property_readonly("finished", [](PyStream& s) { return s.get().finished(); })
      .def("checkpoint",
           [](PyStream& s) {
             const auto blob = s.get().checkpoint();
             return py::bytes(reinterpret_cast<const char*>(blob.data()), blob.size());
           })
      .def_static(
          "restore",
          [](const py::bytes& blob, std::uint32_t sample_rate) {
            const std::string raw = blob;
            return PyStream(StreamingSegmenter::restore(
                                std::span(reinterpret_cast<const std::byte*>(raw.data()), raw.size())),
                            sample_rate);
          },
          py::arg("blob"), py::arg("sample_rate") = 16000);
}
