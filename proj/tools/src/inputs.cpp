#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "waternet/error.hpp"
#include "waternet/frame_io.hpp"
#include "waternet/parallel.hpp"
#include "waternet_app/app.hpp"

namespace waternet::app {

namespace fs = std::filesystem;

InputFormat parse_input_format(std::string_view name) {
  if (name == "auto") return InputFormat::automatic;
  if (name == "gro") return InputFormat::gro;
  if (name == "json") return InputFormat::json;
  if (name == "edgelist") return InputFormat::edgelist;
  throw ConfigError("unknown input format '" + std::string(name) + "' (expected gro, json, edgelist or auto)");
}

void RunConfig::validate() const {
  if (inputs.empty()) throw ConfigError("at least one --input is required");
  if (!(cutoff.r_cut > 0.0) || !std::isfinite(cutoff.r_cut)) throw ConfigError("cutoff must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
  if (bins == 0) throw ConfigError("bins must be positive");
  if (alpha.mode == KatzPolicy::Mode::fixed_alpha && !(alpha.alpha > 0.0))
    throw ConfigError("alpha must be positive");
  if (alpha.mode == KatzPolicy::Mode::automatic && !(alpha.gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (species.empty()) throw ConfigError("species must not be empty");
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

MolecularGraph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t declared = 0;
  bool have_declared = false;
  std::size_t order = 0;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::string_view> tok;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const auto start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tok.push_back(line.substr(start, i - start));
    }
    if (tok.empty()) continue;

    auto number = [&](std::string_view t) {
      std::uint64_t v = 0;
      const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc{} || p != t.data() + t.size() || v > 0xfffffffeULL)
        throw ParseError(lineno, "expected a node id, got '" + std::string(t) + "'");
      return static_cast<std::size_t>(v);
    };
    if (tok[0] == "nodes") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'nodes N'");
      if (have_declared) throw ParseError(lineno, "duplicate 'nodes' directive");
      declared = number(tok[1]);
      have_declared = true;
      continue;
    }
    if (tok.size() != 2) throw ParseError(lineno, "expected two node ids");
    const auto u = number(tok[0]);
    const auto v = number(tok[1]);
    if (u == v) throw ParseError(lineno, "self-loop on node " + std::to_string(u));
    order = std::max(order, std::max(u, v) + 1);
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  if (have_declared) {
    if (order > declared) throw ParseError(0, "edge endpoint exceeds the declared node count");
    order = declared;
  }
  return MolecularGraph::from_edges(order, std::move(edges));
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ParseError(0, "read error");
  return ss.str();
}

InputFormat resolve_format(InputFormat requested, const fs::path& path) {
  if (requested != InputFormat::automatic) return requested;
  const auto ext = path.extension().string();
  if (ext == ".gro") return InputFormat::gro;
  if (ext == ".json") return InputFormat::json;
  return InputFormat::edgelist;
}

std::vector<fs::path> list_files(const RunConfig& config) {
  std::vector<fs::path> files;
  for (const auto& in : config.inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<fs::path> here;
      for (const auto& entry : fs::directory_iterator(in, ec))
        if (entry.is_regular_file()) here.push_back(entry.path());
      if (ec) throw ConfigError("cannot list directory " + in.string() + ": " + ec.message());
      std::sort(here.begin(), here.end());
      files.insert(files.end(), here.begin(), here.end());
    } else {
      // Missing files are reported per file, like malformed ones.
      files.push_back(in);
    }
  }
  return files;
}

MolecularGraph frame_graph(const Frame& frame, const RunConfig& config) {
  return build_graph(select_species(frame, config.species), config.cutoff);
}

}  // namespace

LoadResult load_sources(const RunConfig& config) {
  const auto files = list_files(config);
  if (files.empty()) throw ConfigError("no frames");

  struct PerFile {
    std::vector<Source> sources;
    std::string error;
  };
  std::vector<PerFile> parsed(files.size());
  parallel_for(files.size(), config.threads, [&](std::size_t i) {
    const auto& path = files[i];
    auto& slot = parsed[i];
    try {
      const auto text = read_file(path);
      switch (resolve_format(config.format, path)) {
        case InputFormat::gro: {
          auto frame = parse_gro(text);
          slot.sources.push_back({path.string(), frame_graph(frame, config)});
          break;
        }
        case InputFormat::json: {
          const auto frames = parse_frame_json_list(text);
          for (std::size_t k = 0; k < frames.size(); ++k) {
            auto id = frames.size() == 1 ? path.string() : path.string() + "#" + std::to_string(k);
            slot.sources.push_back({std::move(id), frame_graph(frames[k], config)});
          }
          break;
        }
        default:
          slot.sources.push_back({path.string(), parse_edge_list(text)});
      }
    } catch (const ConfigError&) {
      // A cutoff that breaks the minimum-image rule is a run-level error.
      throw;
    } catch (const std::exception& e) {
      slot.sources.clear();
      slot.error = path.string() + ": " + e.what();
    }
  });

  LoadResult out;
  for (auto& p : parsed) {
    if (!p.error.empty()) out.errors.push_back(std::move(p.error));
    for (auto& s : p.sources) out.sources.push_back(std::move(s));
  }
  return out;
}

}  // namespace waternet::app
