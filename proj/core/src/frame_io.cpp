#include "waternet/frame_io.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

#include <json.hpp>

#include "waternet/error.hpp"

namespace waternet {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const auto begin = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > begin) out.push_back(s.substr(begin, i - begin));
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

bool looks_like_box_line(std::string_view line) {
  const auto fields = split_ws(line);
  if (fields.size() != 3 && fields.size() != 9) return false;
  for (auto f : fields) {
    if (!to_double(f)) return false;
  }
  return true;
}

Vec3 parse_box_line(std::string_view line, std::size_t lineno) {
  const auto fields = split_ws(line);
  if (fields.size() == 9) {
    throw ParseError(lineno, "triclinic box (9 components) is not supported; "
                             "only rectangular boxes are accepted");
  }
  if (fields.size() != 3) {
    throw ParseError(lineno, "box line must hold 3 lengths, found " +
                                 std::to_string(fields.size()) + " fields");
  }
  Vec3 box{};
  for (std::size_t a = 0; a < 3; ++a) {
    const auto v = to_double(fields[a]);
    if (!v) throw ParseError(lineno, "non-numeric box length '" + std::string(fields[a]) + "'");
    if (*v <= 0.0) throw ParseError(lineno, "non-positive box length");
    box[a] = *v;
  }
  return box;
}

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(0, std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(0, std::string(what) + " must be finite");
  return v;
}

Vec3 vec3_at(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(0, std::string(what) + " must be an array of 3 numbers");
  }
  return {number_at(j[0], what), number_at(j[1], what), number_at(j[2], what)};
}

Frame frame_from_json(const json& j) {
  if (!j.is_object()) throw ParseError(0, "frame must be a JSON object");
  if (!j.contains("box")) throw ParseError(0, "missing key \"box\"");
  if (!j.contains("positions")) throw ParseError(0, "missing key \"positions\"");

  Frame frame;
  frame.box = vec3_at(j.at("box"), "box");
  for (double L : frame.box) {
    if (L <= 0.0) throw ParseError(0, "non-positive box");
  }

  const auto& pos = j.at("positions");
  if (!pos.is_array()) throw ParseError(0, "\"positions\" must be an array");
  frame.positions.reserve(pos.size());
  for (const auto& p : pos) frame.positions.push_back(vec3_at(p, "position"));

  if (j.contains("labels")) {
    const auto& labels = j.at("labels");
    if (!labels.is_array() || labels.size() != pos.size()) {
      throw ParseError(0, "\"labels\" must be an array with one string per position");
    }
    for (const auto& l : labels) {
      if (!l.is_string()) throw ParseError(0, "labels must be strings");
      frame.labels.push_back(l.get<std::string>());
    }
  } else {
    frame.labels.assign(pos.size(), "OW");
  }
  if (j.contains("source_id") && j.at("source_id").is_string()) {
    frame.source_id = j.at("source_id").get<std::string>();
  }
  frame.particle_index.resize(frame.positions.size());
  std::iota(frame.particle_index.begin(), frame.particle_index.end(), std::size_t{0});
  return frame;
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

void Frame::validate() const {
  for (double L : box) {
    if (!(L > 0.0) || !std::isfinite(L)) throw ParseError(0, "non-positive box");
  }
  if (labels.size() != positions.size()) {
    throw ParseError(0, "labels and positions differ in length");
  }
  if (!particle_index.empty() && particle_index.size() != positions.size()) {
    throw ParseError(0, "particle_index and positions differ in length");
  }
  for (const auto& p : positions) {
    for (double x : p) {
      if (!std::isfinite(x)) throw ParseError(0, "non-finite coordinate");
    }
  }
}

Frame parse_gro(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 2) throw ParseError(lines.size() + 1, "missing atom count line");

  const auto count_field = trim(lines[1]);
  long long declared = -1;
  {
    const auto [ptr, ec] =
        std::from_chars(count_field.data(), count_field.data() + count_field.size(), declared);
    if (count_field.empty() || ec != std::errc{} ||
        ptr != count_field.data() + count_field.size() || declared < 0) {
      throw ParseError(2, "malformed atom count '" + std::string(count_field) + "'");
    }
  }
  const auto n = static_cast<std::size_t>(declared);

  if (lines.size() < n + 3) {
    // Either atoms or the box line are missing.
    const bool has_box = lines.size() > 2 && looks_like_box_line(lines.back());
    const std::size_t atoms_present = lines.size() - 2 - (has_box ? 1 : 0);
    if (atoms_present >= n) throw ParseError(n + 3, "missing box line");
    throw ParseError(3 + atoms_present, "expected " + std::to_string(n) +
                                            " atom lines, found " +
                                            std::to_string(atoms_present));
  }

  Frame frame;
  frame.source_id = std::string(trim(lines[0]));
  frame.positions.reserve(n);
  frame.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lineno = 3 + i;
    const auto line = lines[2 + i];
    if (line.size() < 44) throw ParseError(lineno, "atom line shorter than 44 columns");
    Vec3 p{};
    for (std::size_t a = 0; a < 3; ++a) {
      const auto field = line.substr(20 + 8 * a, 8);
      const auto v = to_double(field);
      if (!v) {
        throw ParseError(lineno, "non-numeric coordinate '" + std::string(trim(field)) + "'");
      }
      p[a] = *v;
    }
    frame.positions.push_back(p);
    frame.labels.emplace_back(trim(line.substr(10, 5)));
  }

  const std::size_t box_lineno = n + 3;
  if (lines.size() > n + 3) {
    throw ParseError(box_lineno + 1, "unexpected content after box line");
  }
  frame.box = parse_box_line(lines[n + 2], box_lineno);
  frame.particle_index.resize(n);
  std::iota(frame.particle_index.begin(), frame.particle_index.end(), std::size_t{0});
  return frame;
}

Frame parse_frame_json(std::string_view text) { return frame_from_json(parse_json_text(text)); }

std::vector<Frame> parse_frame_json_list(std::string_view text) {
  const auto j = parse_json_text(text);
  std::vector<Frame> frames;
  if (j.is_array()) {
    frames.reserve(j.size());
    for (const auto& item : j) frames.push_back(frame_from_json(item));
  } else {
    frames.push_back(frame_from_json(j));
  }
  return frames;
}

std::string to_frame_json(const Frame& frame) {
  json j;
  j["box"] = frame.box;
  j["positions"] = frame.positions;
  j["labels"] = frame.labels;
  if (!frame.source_id.empty()) j["source_id"] = frame.source_id;
  return j.dump();
}

Frame select_species(const Frame& frame, std::string_view name) {
  Frame out;
  out.box = frame.box;
  out.source_id = frame.source_id;
  for (std::size_t i = 0; i < frame.positions.size(); ++i) {
    if (frame.labels[i] != name) continue;
    out.positions.push_back(frame.positions[i]);
    out.labels.push_back(frame.labels[i]);
    out.particle_index.push_back(frame.particle_index.empty() ? i : frame.particle_index[i]);
  }
  return out;
}

}  // namespace waternet
