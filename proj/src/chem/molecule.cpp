#include "molens/chem/molecule.hpp"

#include <array>
#include <sstream>
#include <unordered_map>

#include "molens/error.hpp"

namespace molens::chem {

namespace {

constexpr int kMaxZ = 103;

const std::array<const char*, kMaxZ + 1>& symbol_table() {
  static const std::array<const char*, kMaxZ + 1> table = {
      "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
      "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
      "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
      "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
      "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
      "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
      "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
      "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
      "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr"};
  return table;
}

const std::unordered_map<std::string, int>& number_table() {
  static const std::unordered_map<std::string, int> table = [] {
    std::unordered_map<std::string, int> m;
    for (int z = 1; z <= kMaxZ; ++z) m.emplace(symbol_table()[z], z);
    return m;
  }();
  return table;
}

}  // namespace

int element_number(const std::string& symbol) {
  const auto it = number_table().find(symbol);
  return it == number_table().end() ? 0 : it->second;
}

const std::string& element_symbol(int z) {
  static const std::string empty;
  static const std::vector<std::string> cache = [] {
    std::vector<std::string> v;
    for (const char* s : symbol_table()) v.emplace_back(s);
    return v;
  }();
  if (z < 1 || z > kMaxZ) return empty;
  return cache[static_cast<std::size_t>(z)];
}

void validate_record(const MoleculeRecord& record,
                     const std::vector<int>& supported_elements) {
  if (record.elements.empty())
    throw DataError("record '" + record.id + "': no atoms");
  if (record.elements.size() != record.positions.size())
    throw DataError("record '" + record.id +
                    "': element/position count mismatch");
  for (int z : record.elements) {
    bool ok = false;
    for (int s : supported_elements) ok = ok || (s == z);
    if (!ok) {
      std::ostringstream msg;
      msg << "record '" << record.id << "': element Z=" << z
          << " outside supported set";
      throw DataError(msg.str());
    }
  }
}

double atomisation_energy(const MoleculeRecord& record,
                          const ReferenceEnergies& refs, bool subtract_zpe) {
  if (!record.total_energy)
    throw ConfigError("record '" + record.id + "': total energy missing");
  double total = *record.total_energy;
  if (subtract_zpe) {
    if (!record.zpe)
      throw ConfigError("record '" + record.id + "': zpe missing");
    total -= *record.zpe;
  }
  double ref_sum = 0.0;
  for (int z : record.elements) {
    const auto it = refs.find(z);
    if (it == refs.end())
      throw ConfigError("no reference energy for element " +
                        element_symbol(z) + " (Z=" + std::to_string(z) + ")");
    ref_sum += it->second;
  }
  return total - ref_sum;
}

}  // namespace molens::chem
