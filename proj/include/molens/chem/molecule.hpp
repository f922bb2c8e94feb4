#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace molens::chem {

// Parsed molecular structure with optional energetics and provenance key.
struct MoleculeRecord {
  std::string id;
  std::vector<int> elements;               // atomic numbers, one per atom
  std::vector<Eigen::Vector3d> positions;  // Angstrom
  std::optional<double> total_energy;      // eV, as stored in the source file
  std::optional<double> zpe;               // eV
  std::optional<std::string> structure_key;

  int atom_count() const { return static_cast<int>(elements.size()); }
};

// Symbol <-> atomic number lookups over the periodic table (Z = 1..103).
// Unknown symbols return 0; unknown numbers return an empty string.
int element_number(const std::string& symbol);
const std::string& element_symbol(int z);

// Checks structural invariants and membership in the supported element set.
// Throws DataError on violation.
void validate_record(const MoleculeRecord& record,
                     const std::vector<int>& supported_elements);

// Per-element reference energies for one target property (eV).
using ReferenceEnergies = std::map<int, double>;

// total_energy (minus zpe when subtract_zpe) minus the sum of per-atom
// reference energies. Throws ConfigError when a reference or required field
// is missing.
double atomisation_energy(const MoleculeRecord& record,
                          const ReferenceEnergies& refs, bool subtract_zpe);

}  // namespace molens::chem
