#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "molens/chem/molecule.hpp"

namespace molens::chem {

// Cutoff graph: directed edges for every ordered atom pair within the cutoff
// radius, edge feature = interatomic distance. Isolated atoms are kept.
struct MolecularGraph {
  Eigen::VectorXi elements;     // atomic numbers per node
  std::vector<int> edge_src;    // message source w of edge (v, w)
  std::vector<int> edge_dst;    // message destination v
  Eigen::VectorXd edge_dist;    // Angstrom, aligned with edge arrays
  double target = std::numeric_limits<double>::quiet_NaN();  // y (eV)

  int atom_count() const { return static_cast<int>(elements.size()); }
  int edge_count() const { return static_cast<int>(edge_src.size()); }
};

MolecularGraph build_graph(const MoleculeRecord& record, double cutoff);

}  // namespace molens::chem
