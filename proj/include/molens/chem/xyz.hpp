#pragma once

#include <string>
#include <vector>

#include "molens/chem/molecule.hpp"

namespace molens::chem {

// Parses a single extended-XYZ frame: atom count line, property line with
// whitespace-separated key=value tokens (recognized: id, energy, zpe, key;
// others ignored), then one "Symbol x y z" line per atom. Extra columns on
// atom lines are ignored. Throws DataError naming the offending line.
MoleculeRecord parse_xyz(const std::string& text);

// Parses concatenated frames from one string. line_offset shifts reported
// line numbers when the text is a slice of a larger file.
std::vector<MoleculeRecord> parse_xyz_frames(const std::string& text);

// Reads a .xyz file (possibly multi-frame) or every *.xyz file in a
// directory, sorted by filename. Records without an id= token take the file
// stem (plus a frame suffix for multi-frame files).
std::vector<MoleculeRecord> read_xyz_path(const std::string& path);

std::string format_xyz(const MoleculeRecord& record);

}  // namespace molens::chem
