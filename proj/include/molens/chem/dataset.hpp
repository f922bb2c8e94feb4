#pragma once

#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "molens/chem/graph.hpp"
#include "molens/chem/molecule.hpp"

namespace molens::chem {

// Immutable-after-load container of records with precomputed regression
// targets (eV). Target is NaN when energetics were unavailable at ingest.
struct Dataset {
  std::vector<MoleculeRecord> records;
  std::vector<double> targets;
  std::string target_name;  // "U0" or "E"

  std::size_t size() const { return records.size(); }
  std::vector<std::string> ids() const;
};

// Line-delimited cache: a JSON header line with a version tag followed by one
// JSON object per molecule.
void save_cache(const std::string& path, const Dataset& dataset);
Dataset load_cache(const std::string& path);

// Sidecar structure keys, one "id<TAB>key" per line.
std::map<std::string, std::string> load_key_file(const std::string& path);

// Reference-energy table parsed from a flat key-value file with
// "<target>.<symbol> = <eV>" entries. Throws ConfigError when the requested
// target has no entries.
ReferenceEnergies load_reference_energies(const std::string& path,
                                          const std::string& target);

// Graphs plus id lookup, ready for training and prediction.
struct GraphDataset {
  std::vector<std::string> ids;
  std::vector<MolecularGraph> graphs;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return graphs.size(); }
  const MolecularGraph& by_id(const std::string& id) const;
  std::vector<const MolecularGraph*> select(
      const std::vector<std::string>& subset_ids) const;
};

GraphDataset build_graphs(const Dataset& dataset, double cutoff);

}  // namespace molens::chem
