#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "waternet/error.hpp"
#include "waternet/global_metrics.hpp"
#include "waternet/parallel.hpp"
#include "waternet/paths.hpp"
#include "waternet/spectral.hpp"
#include "waternet_app/app.hpp"

namespace waternet::app {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

CentralityVector compute_measure(const MolecularGraph& g, Measure m, double alpha, double beta) {
  switch (m) {
    case Measure::degree: return degree_centrality(g);
    case Measure::closeness: return closeness(g);
    case Measure::betweenness: return betweenness(g);
    case Measure::katz: return katz(g, alpha);
    case Measure::eigenvector: return eigenvector_centrality(g);
    case Measure::subgraph: return subgraph_centrality(g, beta);
    case Measure::total_communicability: return total_communicability(g, beta);
  }
  throw InternalError("unhandled measure");
}

namespace {

template <class R>
struct Slot {
  std::optional<R> value;
  std::string error;
};

// Runs fn on every source, one frame per worker, keeping results in input
// order. Library errors become per-frame failures; configuration errors abort.
template <class R, class Fn>
std::vector<Slot<R>> map_sources(const std::vector<Source>& sources, std::size_t threads, Fn fn) {
  std::vector<Slot<R>> out(sources.size());
  parallel_for(sources.size(), threads, [&](std::size_t i) {
    try {
      out[i].value.emplace(fn(sources[i]));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      out[i].error = sources[i].id + ": " + e.what();
    }
  });
  return out;
}

double round12(double x) { return std::stod(format_number(x)); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string optional_number(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

class Output {
 public:
  Output(const RunConfig& config, const std::string& name, std::ostream& fallback) {
    if (!config.out) {
      stream_ = &fallback;
      return;
    }
    ensure_dir(*config.out);
    path_ = *config.out / name;
    file_ = std::make_unique<std::ofstream>(path_);
    if (!*file_) throw ConfigError("cannot write " + path_.string());
    stream_ = file_.get();
  }

  std::ostream& operator*() { return *stream_; }

  static void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  }

 private:
  fs::path path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void write_file(const fs::path& path, const std::string& text) {
  Output::ensure_dir(path.parent_path());
  std::ofstream f(path);
  f << text;
  if (!f) throw ConfigError("cannot write " + path.string());
}

int finish(std::vector<std::string> errors, std::ostream& err) {
  for (const auto& e : errors) err << "error: " << e << '\n';
  return static_cast<int>(errors.empty() ? ExitCode::ok : ExitCode::partial);
}

template <class R>
void collect_errors(const std::vector<Slot<R>>& slots, std::vector<std::string>& errors) {
  for (const auto& s : slots)
    if (!s.error.empty()) errors.push_back(s.error);
}

bool wants(const RunConfig& config, Measure m) {
  return std::find(config.measures.begin(), config.measures.end(), m) != config.measures.end();
}

// Automatic alpha takes a first pass over all frames for rho(A).
double resolve_katz_alpha(const RunConfig& config, const std::vector<Source>& sources) {
  if (config.alpha.mode == KatzPolicy::Mode::fixed_alpha) return config.alpha.alpha;
  std::vector<double> radii(sources.size(), 0.0);
  parallel_for(sources.size(), config.threads,
               [&](std::size_t i) { radii[i] = spectral_radius(sources[i].graph); });
  return resolve_alpha(config.alpha, radii);
}

std::string file_stem(std::size_t index, const std::string& id) {
  std::string name = fs::path(id).filename().string();
  for (auto& c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')) c = '_';
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%04zu_", index);
  return prefix + name;
}

json params_json(const CentralityParams& p) {
  json j = json::object();
  if (p.alpha) j["alpha"] = round12(*p.alpha);
  if (p.beta) j["beta"] = round12(*p.beta);
  j["normalized_by_edges"] = p.normalized_by_edges;
  return j;
}

LoadResult load_nonempty(const RunConfig& config, std::vector<std::string>& errors) {
  config.validate();
  auto loaded = load_sources(config);
  errors = std::move(loaded.errors);
  return loaded;
}

}  // namespace

int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<std::string> errors;
  const auto loaded = load_nonempty(config, errors);
  struct Row {
    std::size_t n, m;
    double density, beta;
  };
  const auto rows = map_sources<Row>(loaded.sources, config.threads, [](const Source& s) {
    return Row{s.graph.order(), s.graph.edge_count(), density(s.graph), beta_index(s.graph)};
  });
  Output o(config, "graphs.csv", out);
  *o << "source_id,N,m,density,beta_index\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].value) continue;
    const auto& r = *rows[i].value;
    *o << csv_field(loaded.sources[i].id) << ',' << r.n << ',' << r.m << ',' << format_number(r.density) << ','
       << format_number(r.beta) << '\n';
  }
  collect_errors(rows, errors);
  return finish(std::move(errors), err);
}

int cmd_centrality(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.out) throw ConfigError("centrality needs --out");
  if (config.measures.empty()) throw ConfigError("no measures requested");
  std::vector<std::string> errors;
  const auto loaded = load_nonempty(config, errors);
  const auto& sources = loaded.sources;
  if (sources.empty()) return finish(std::move(errors), err);

  const double alpha = wants(config, Measure::katz) ? resolve_katz_alpha(config, sources) : 0.0;

  json summary;
  summary["frames"] = json::array();
  for (const auto& s : sources) summary["frames"].push_back(s.id);
  summary["measures"] = json::array();

  for (const Measure m : config.measures) {
    const auto name = std::string(measure_name(m));
    auto vectors = map_sources<CentralityVector>(sources, config.threads, [&](const Source& s) {
      auto v = compute_measure(s.graph, m, alpha, config.beta);
      return config.normalize_by_edges ? normalize_by_edges(std::move(v)) : v;
    });
    collect_errors(vectors, errors);

    std::vector<CentralityVector> ok;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (!vectors[i].value) continue;
      const auto& v = *vectors[i].value;
      std::ostringstream csv;
      csv << "node_id,score\n";
      for (std::size_t k = 0; k < v.scores.size(); ++k) csv << k << ',' << format_number(v.scores[k]) << '\n';
      write_file(*config.out / name / (file_stem(i, sources[i].id) + ".csv"), csv.str());
      ok.push_back(v);
    }

    json entry;
    entry["measure"] = name;
    entry["frames"] = ok.size();
    if (!ok.empty()) {
      // Eigenvector pooling would reject mixed per-component flags; those
      // only describe how each frame was solved.
      for (auto& v : ok) v.params.per_component = false;
      const auto h = pool_distribution(ok, config.bins);
      write_file(*config.out / (name + "_histogram.json"), histogram_to_json(h));
      entry["params"] = params_json(h.params);
      entry["histogram"] = name + "_histogram.json";
    }
    summary["measures"].push_back(entry);
  }
  write_file(*config.out / "centrality.json", summary.dump(2) + "\n");
  out << "wrote " << config.measures.size() << " measure(s) for " << sources.size() << " frame(s) to "
      << config.out->string() << '\n';
  return finish(std::move(errors), err);
}

int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<std::string> errors;
  const auto loaded = load_nonempty(config, errors);
  static const char* const columns[] = {"aspl", "diameter", "algebraic_connectivity", "density", "bipartivity",
                                        "energy", "lambda_min", "lambda_max", "S3", "S4", "S5", "P2_over_P1",
                                        "P3_over_P2", "C", "C_bar", "r"};
  constexpr std::size_t ncol = std::size(columns);
  using Row = std::array<std::optional<double>, ncol>;

  const auto rows = map_sources<Row>(loaded.sources, config.threads, [](const Source& s) {
    const auto& g = s.graph;
    const auto ds = distance_summary(g, false);
    const auto ss = spectral_summary(g, 5);
    const auto gm = global_metrics(g);
    auto ratio = [](std::int64_t a, std::int64_t b) -> std::optional<double> {
      if (b == 0) return std::nullopt;
      return static_cast<double>(a) / static_cast<double>(b);
    };
    return Row{ds.aspl,
               static_cast<double>(ds.diameter),
               ss.algebraic_connectivity,
               density(g),
               ss.bipartivity,
               ss.energy,
               ss.lambda_min,
               ss.lambda_max,
               static_cast<double>(gm.cycles.s3),
               static_cast<double>(gm.cycles.s4),
               static_cast<double>(gm.cycles.s5),
               ratio(gm.fragments.p2, gm.fragments.p1),
               ratio(gm.fragments.p3, gm.fragments.p2),
               gm.transitivity,
               gm.mean_clustering,
               gm.assortativity.value};
  });

  Output o(config, "metrics.csv", out);
  *o << "source_id";
  for (const char* c : columns) *o << ',' << c;
  *o << '\n';
  std::array<double, ncol> sum{};
  std::array<std::size_t, ncol> count{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].value) continue;
    *o << csv_field(loaded.sources[i].id);
    for (std::size_t c = 0; c < ncol; ++c) {
      const auto& x = (*rows[i].value)[c];
      *o << ',' << optional_number(x);
      if (x) {
        sum[c] += *x;
        ++count[c];
      }
    }
    *o << '\n';
  }
  *o << "mean";
  for (std::size_t c = 0; c < ncol; ++c)
    *o << ',' << (count[c] ? format_number(sum[c] / static_cast<double>(count[c])) : std::string());
  *o << '\n';
  collect_errors(rows, errors);
  return finish(std::move(errors), err);
}

int cmd_classify(const RunConfig& config, const fs::path& low_ref, const fs::path& high_ref, std::ostream& out,
                 std::ostream& err) {
  auto read_ref = [](const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot read reference histogram " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      return histogram_from_json(ss.str());
    } catch (const ParseError& e) {
      throw ConfigError("reference histogram " + p.string() + ": " + e.what());
    }
  };
  const auto low = read_ref(low_ref);
  const auto high = read_ref(high_ref);
  if (low.measure != high.measure || low.params != high.params)
    throw ConfigError("reference histograms describe different measures or parameters");
  const Measure measure = low.measure.value_or(config.measures.empty() ? Measure::total_communicability
                                                                       : config.measures.front());
  const double x_star = crossing_point(low, high);

  std::vector<std::string> errors;
  const auto loaded = load_nonempty(config, errors);
  const auto& sources = loaded.sources;

  // Scores are recomputed with the parameters the references were built with.
  const double beta = low.params.beta.value_or(config.beta);
  double alpha = 0.0;
  if (measure == Measure::katz)
    alpha = low.params.alpha ? *low.params.alpha : resolve_katz_alpha(config, sources);
  const bool per_edge = low.params.normalized_by_edges;
  const auto vectors = map_sources<CentralityVector>(sources, config.threads, [&](const Source& s) {
    auto v = compute_measure(s.graph, measure, alpha, beta);
    return per_edge ? normalize_by_edges(std::move(v)) : v;
  });
  collect_errors(vectors, errors);

  std::vector<CentralityVector> ok;
  std::vector<std::size_t> which;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!vectors[i].value) continue;
    ok.push_back(*vectors[i].value);
    which.push_back(i);
  }
  const auto report = classify(ok, x_star);

  json j;
  j["x_star"] = round12(x_star);
  j["measure"] = std::string(measure_name(measure));
  j["params"] = params_json(ok.empty() ? low.params : ok.front().params);
  j["ldl_count"] = report.ldl_count;
  j["total"] = report.total;
  j["ldl_fraction"] = round12(report.ldl_fraction);
  j["frames"] = json::array();
  std::ostringstream labels;
  labels << "source_id,node_id,score,label\n";
  for (std::size_t f = 0; f < ok.size(); ++f) {
    const auto& id = sources[which[f]].id;
    std::size_t ldl = 0;
    for (std::size_t k = 0; k < ok[f].scores.size(); ++k) {
      const bool is_ldl = report.labels[f][k] == PhaseLabel::LDL;
      ldl += is_ldl ? 1 : 0;
      labels << csv_field(id) << ',' << k << ',' << format_number(ok[f].scores[k]) << ','
             << (is_ldl ? "LDL" : "HDL") << '\n';
    }
    const auto n = ok[f].scores.size();
    j["frames"].push_back({{"source_id", id},
                           {"ldl_count", ldl},
                           {"total", n},
                           {"ldl_fraction", n ? round12(static_cast<double>(ldl) / static_cast<double>(n)) : 0.0}});
  }
  if (config.out) {
    write_file(*config.out / "phase_report.json", j.dump(2) + "\n");
    write_file(*config.out / "labels.csv", labels.str());
    out << "x_star " << format_number(x_star) << ", LDL fraction " << format_number(report.ldl_fraction) << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
  return finish(std::move(errors), err);
}

int cmd_patches(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.measures.empty()) throw ConfigError("no measures requested");
  std::vector<std::string> errors;
  const auto loaded = load_nonempty(config, errors);
  const auto& sources = loaded.sources;
  const Measure measure = config.measures.front();
  const double alpha = measure == Measure::katz ? resolve_katz_alpha(config, sources) : 0.0;

  const auto results = map_sources<PatchResult>(sources, config.threads, [&](const Source& s) {
    auto v = compute_measure(s.graph, measure, alpha, config.beta);
    if (config.normalize_by_edges) v = normalize_by_edges(std::move(v));
    return patches(s.graph, v.scores, config.threshold);
  });
  collect_errors(results, errors);

  Output o(config, "patches.csv", out);
  *o << "source_id,patch,size,internal_density,external_density,mean_score,nodes\n";
  std::ostringstream summary;
  summary << "source_id,threshold,patches,singletons,largest\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].value) continue;
    const auto& r = *results[i].value;
    const auto id = csv_field(sources[i].id);
    for (std::size_t p = 0; p < r.patches.size(); ++p) {
      const auto& pt = r.patches[p];
      *o << id << ',' << p << ',' << pt.size << ',' << format_number(pt.internal_density) << ','
         << format_number(pt.external_density) << ',' << format_number(pt.mean_score) << ',';
      for (std::size_t k = 0; k < pt.nodes.size(); ++k) *o << (k ? " " : "") << pt.nodes[k];
      *o << '\n';
    }
    summary << id << ',' << format_number(r.threshold) << ',' << r.patches.size() << ',' << r.singletons.size()
            << ',' << (r.patches.empty() ? 0 : r.patches.front().size) << '\n';
  }
  if (config.out) write_file(*config.out / "patch_summary.csv", summary.str());
  return finish(std::move(errors), err);
}

TimingReport time_measures(const RunConfig& config, const std::vector<Source>& sources) {
  if (config.measures.empty()) throw ConfigError("no measures requested");
  if (sources.empty()) throw ConfigError("no frames");
  using clock = std::chrono::steady_clock;
  const double alpha = wants(config, Measure::katz) ? resolve_katz_alpha(config, sources) : 0.0;

  TimingReport report;
  report.frames = sources.size();
  for (const auto& s : sources) {
    report.mean_order += static_cast<double>(s.graph.order());
    report.mean_edges += static_cast<double>(s.graph.edge_count());
  }
  report.mean_order /= static_cast<double>(sources.size());
  report.mean_edges /= static_cast<double>(sources.size());

  for (const Measure m : config.measures) {
    MeasureTiming t{m, 0.0, std::numeric_limits<double>::infinity(), 0.0};
    for (const auto& s : sources) {
      const auto start = clock::now();
      const auto v = compute_measure(s.graph, m, alpha, config.beta);
      const double secs = std::chrono::duration<double>(clock::now() - start).count();
      if (v.scores.size() != s.graph.order()) throw InternalError("score vector size mismatch");
      t.mean += secs;
      t.min = std::min(t.min, secs);
      t.max = std::max(t.max, secs);
    }
    t.mean /= static_cast<double>(sources.size());
    report.measures.push_back(t);
  }
  return report;
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.measures.empty()) throw ConfigError("no measures requested");
  std::vector<std::string> errors;
  const auto loaded = load_nonempty(config, errors);
  if (loaded.sources.empty()) return finish(std::move(errors), err);
  // Timing is always single threaded, whatever --threads says.
  const auto report = time_measures(config, loaded.sources);

  json j;
  j["frames"] = report.frames;
  j["mean_nodes"] = round12(report.mean_order);
  j["mean_edges"] = round12(report.mean_edges);
  j["measures"] = json::array();
  for (const auto& t : report.measures) {
    j["measures"].push_back({{"measure", std::string(measure_name(t.measure))},
                             {"mean_s", round12(t.mean)},
                             {"min_s", round12(t.min)},
                             {"max_s", round12(t.max)}});
  }
  Output o(config, "timing.json", out);
  *o << j.dump(2) << '\n';
  return finish(std::move(errors), err);
}

}  // namespace waternet::app
