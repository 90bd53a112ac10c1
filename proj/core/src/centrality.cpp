#include "waternet/centrality.hpp"

#include <string>

#include "waternet/error.hpp"

namespace waternet {

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::degree: return "degree";
    case Measure::closeness: return "cl";
    case Measure::betweenness: return "bc";
    case Measure::katz: return "katz";
    case Measure::eigenvector: return "ec";
    case Measure::subgraph: return "sub";
    case Measure::total_communicability: return "tc";
  }
  throw InternalError("unhandled measure");
}

Measure parse_measure(std::string_view name) {
  if (name == "degree" || name == "dc") return Measure::degree;
  if (name == "cl" || name == "closeness") return Measure::closeness;
  if (name == "bc" || name == "betweenness") return Measure::betweenness;
  if (name == "katz" || name == "kc") return Measure::katz;
  if (name == "ec" || name == "eigenvector") return Measure::eigenvector;
  if (name == "sub" || name == "subgraph") return Measure::subgraph;
  if (name == "tc" || name == "total_communicability") return Measure::total_communicability;
  throw ConfigError("unknown measure '" + std::string(name) + "'");
}

CentralityVector normalize_by_edges(CentralityVector v) {
  if (v.params.normalized_by_edges) throw ParameterError("scores are already normalised by edges");
  if (v.edge_count == 0) throw ParameterError("cannot normalise by edges: graph has no edges");
  const double m = static_cast<double>(v.edge_count);
  for (auto& s : v.scores) s /= m;
  v.params.normalized_by_edges = true;
  return v;
}

CentralityVector degree_centrality(const MolecularGraph& g) {
  CentralityVector v;
  v.measure = Measure::degree;
  v.edge_count = g.edge_count();
  v.scores.resize(g.order());
  for (NodeId i = 0; i < g.order(); ++i) v.scores[i] = static_cast<double>(g.degree(i));
  return v;
}

}  // namespace waternet
