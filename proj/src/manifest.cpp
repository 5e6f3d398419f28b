#include "pauseseg/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

namespace pauseseg {

namespace {

constexpr std::string_view kYamlMagic = "# pauseseg manifest v1";
constexpr std::string_view kConfigPrefix = "# config: ";
constexpr std::string_view kAudioPrefix = "# audio: ";

bool plain_scalar(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '/' ||
           c == '-';
  });
}

std::string yaml_scalar(std::string_view s) {
  if (plain_scalar(s) && s != "null") return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Micros seconds_field(const YAML::Node& node, const char* key) {
  if (!node[key]) throw std::runtime_error(std::string("manifest entry missing '") + key + "'");
  const double v = node[key].as<double>();
  if (v < 0) throw std::runtime_error(std::string("negative '") + key + "' in manifest");
  return from_seconds(v);
}

Micros seconds_field(const nlohmann::ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw std::runtime_error(std::string("manifest entry missing numeric '") + key + "'");
  }
  const double v = j[key].get<double>();
  if (v < 0) throw std::runtime_error(std::string("negative '") + key + "' in manifest");
  return from_seconds(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Manifest parse_yaml(std::string_view text) {
  Manifest m;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    std::string_view view(line);
    if (view.starts_with(kConfigPrefix)) {
      const YAML::Node node = YAML::Load(std::string(view.substr(kConfigPrefix.size())));
      for (const auto& kv : node) {
        m.config.emplace_back(kv.first.as<std::string>(), kv.second.as<std::string>());
      }
    } else if (view.starts_with(kAudioPrefix)) {
      const YAML::Node node = YAML::Load(std::string(view.substr(kAudioPrefix.size())));
      m.audio.push_back(AudioInfo{node["wav"].as<std::string>(), seconds_field(node, "duration")});
    }
  }

  const YAML::Node root = YAML::Load(std::string(text));
  if (root.IsNull()) return m;
  if (!root.IsSequence()) throw std::runtime_error("manifest is not a YAML list");
  for (const auto& node : root) {
    if (!node.IsMap()) throw std::runtime_error("manifest entry is not a mapping");
    ManifestEntry e;
    if (!node["wav"]) throw std::runtime_error("manifest entry missing 'wav'");
    e.wav = node["wav"].as<std::string>();
    e.offset = seconds_field(node, "offset");
    e.duration = seconds_field(node, "duration");
    e.dropped = node["dropped"] && node["dropped"].as<bool>();
    m.entries.push_back(std::move(e));
  }
  return m;
}

Manifest parse_jsonl(std::string_view text) {
  Manifest m;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    if (trim(line).empty()) continue;
    // ordered_json keeps the config keys in the order they were written.
    const auto j = nlohmann::ordered_json::parse(line);
    if (!j.is_object()) throw std::runtime_error("manifest line is not a JSON object");
    if (j.contains("manifest")) {
      const auto config = j.value("config", nlohmann::ordered_json::object());
      const auto audio = j.value("audio", nlohmann::ordered_json::array());
      for (const auto& [k, v] : config.items()) {
        m.config.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
      }
      for (const auto& a : audio) {
        m.audio.push_back(AudioInfo{a.at("wav").get<std::string>(), seconds_field(a, "duration")});
      }
      continue;
    }
    ManifestEntry e;
    e.wav = j.at("wav").get<std::string>();
    e.offset = seconds_field(j, "offset");
    e.duration = seconds_field(j, "duration");
    e.dropped = j.value("dropped", false);
    m.entries.push_back(std::move(e));
  }
  return m;
}

}  // namespace

std::optional<std::string> Manifest::config_value(std::string_view key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::optional<Micros> Manifest::audio_duration(std::string_view wav) const {
  for (const auto& a : audio) {
    if (a.wav == wav) return a.duration;
  }
  return std::nullopt;
}

std::vector<std::string> Manifest::wavs() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& w) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  };
  for (const auto& a : audio) add(a.wav);
  for (const auto& e : entries) add(e.wav);
  return out;
}

std::vector<Segment> Manifest::segments_for(std::string_view wav) const {
  std::vector<Segment> out;
  for (const auto& e : entries) {
    if (e.wav == wav) out.push_back(Segment{e.offset, e.offset + e.duration, !e.dropped});
  }
  std::sort(out.begin(), out.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
  return out;
}

Micros Manifest::duration_of(std::string_view wav) const {
  if (auto d = audio_duration(wav)) return *d;
  Micros end{0};
  for (const auto& e : entries) {
    if (e.wav == wav) end = std::max(end, e.offset + e.duration);
  }
  return end;
}

std::string format_seconds(Micros t) {
  const auto us = t.count();
  const auto mag = us < 0 ? -us : us;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", us < 0 ? "-" : "",
                static_cast<long long>(mag / 1'000'000), static_cast<long long>(mag % 1'000'000));
  return buf;
}

void append_segments(Manifest& manifest, const std::string& wav, std::span<const Segment> segments) {
  for (const Segment& seg : segments) {
    manifest.entries.push_back(ManifestEntry{wav, seg.start, seg.duration(), !seg.kept});
  }
}

std::string write_manifest(const Manifest& manifest, ManifestFormat format, bool emit_dropped) {
  std::string out;
  if (format == ManifestFormat::kYaml) {
    out += kYamlMagic;
    out += '\n';
    if (!manifest.config.empty()) {
      out += kConfigPrefix;
      out += '{';
      for (std::size_t i = 0; i < manifest.config.size(); ++i) {
        if (i) out += ", ";
        out += manifest.config[i].first + ": " + yaml_scalar(manifest.config[i].second);
      }
      out += "}\n";
    }
    for (const auto& a : manifest.audio) {
      out += std::string(kAudioPrefix) + "{wav: " + yaml_scalar(a.wav) +
             ", duration: " + format_seconds(a.duration) + "}\n";
    }
    for (const auto& e : manifest.entries) {
      if (e.dropped && !emit_dropped) continue;
      out += "- {wav: " + yaml_scalar(e.wav) + ", offset: " + format_seconds(e.offset) +
             ", duration: " + format_seconds(e.duration);
      if (e.dropped) out += ", dropped: true";
      out += "}\n";
    }
    return out;
  }

  auto quoted = [](const std::string& s) { return nlohmann::json(s).dump(); };
  out += R"({"manifest":"pauseseg","version":1,"config":{)";
  for (std::size_t i = 0; i < manifest.config.size(); ++i) {
    if (i) out += ',';
    out += quoted(manifest.config[i].first) + ':' + quoted(manifest.config[i].second);
  }
  out += R"(},"audio":[)";
  for (std::size_t i = 0; i < manifest.audio.size(); ++i) {
    if (i) out += ',';
    out += R"({"wav":)" + quoted(manifest.audio[i].wav) +
           R"(,"duration":)" + format_seconds(manifest.audio[i].duration) + '}';
  }
  out += "]}\n";
  for (const auto& e : manifest.entries) {
    if (e.dropped && !emit_dropped) continue;
    out += R"({"wav":)" + quoted(e.wav) + R"(,"offset":)" + format_seconds(e.offset) +
           R"(,"duration":)" + format_seconds(e.duration);
    if (e.dropped) out += R"(,"dropped":true)";
    out += "}\n";
  }
  return out;
}

Manifest parse_manifest(std::string_view text) {
  const std::string_view body = trim(text);
  try {
    if (!body.empty() && body.front() == '{') return parse_jsonl(text);
    return parse_yaml(text);
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("malformed YAML manifest: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON-lines manifest: ") + e.what());
  }
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

}  // namespace pauseseg
