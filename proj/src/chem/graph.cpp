#include "molens/chem/graph.hpp"

#include "molens/error.hpp"

namespace molens::chem {

MolecularGraph build_graph(const MoleculeRecord& record, double cutoff) {
  if (!(cutoff > 0.0)) throw ConfigError("build_graph: cutoff must be > 0");
  const int n = record.atom_count();
  MolecularGraph graph;
  graph.elements.resize(n);
  for (int i = 0; i < n; ++i)
    graph.elements[i] = record.elements[static_cast<std::size_t>(i)];

  std::vector<double> dists;
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (v == w) continue;
      const double d = (record.positions[static_cast<std::size_t>(v)] -
                        record.positions[static_cast<std::size_t>(w)])
                           .norm();
      if (d <= cutoff) {
        graph.edge_dst.push_back(v);
        graph.edge_src.push_back(w);
        dists.push_back(d);
      }
    }
  }
  graph.edge_dist =
      Eigen::Map<const Eigen::VectorXd>(dists.data(), static_cast<long>(dists.size()));
  return graph;
}

}  // namespace molens::chem
