#include "molens/chem/xyz.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "molens/error.hpp"

namespace molens::chem {

namespace {

namespace fs = std::filesystem;

struct LineReader {
  const std::string& text;
  std::size_t pos = 0;
  int line_no = 0;  // 1-based number of the last line returned

  bool next(std::string& out) {
    if (pos >= text.size()) return false;
    const std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) {
      out = text.substr(pos);
      pos = text.size();
    } else {
      out = text.substr(pos, end - pos);
      pos = end + 1;
    }
    if (!out.empty() && out.back() == '\r') out.pop_back();
    ++line_no;
    return true;
  }
};

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, int line_no, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw DataError(std::string("xyz line ") + std::to_string(line_no) +
                    ": non-numeric " + what + " '" + tok + "'");
  }
  return v;
}

// Strips surrounding quotes from property values.
std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

void parse_property_line(const std::string& line, int line_no,
                         MoleculeRecord& record) {
  for (const std::string& tok : split_ws(line)) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) continue;
    const std::string key = tok.substr(0, eq);
    const std::string value = unquote(tok.substr(eq + 1));
    if (key == "id") {
      record.id = value;
    } else if (key == "energy") {
      record.total_energy = parse_double(value, line_no, "energy value");
    } else if (key == "zpe") {
      record.zpe = parse_double(value, line_no, "zpe value");
    } else if (key == "key") {
      record.structure_key = value;
    }
  }
}

// Parses one frame starting at the reader position; returns false at EOF
// (after skipping blank lines).
bool parse_frame(LineReader& reader, MoleculeRecord& record) {
  std::string line;
  do {
    if (!reader.next(line)) return false;
  } while (is_blank(line));

  const int count_line = reader.line_no;
  int natoms = 0;
  {
    const auto toks = split_ws(line);
    if (toks.size() != 1)
      throw DataError("xyz line " + std::to_string(count_line) +
                      ": malformed atom count line '" + line + "'");
    const auto& tok = toks[0];
    const auto res =
        std::from_chars(tok.data(), tok.data() + tok.size(), natoms);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() ||
        natoms < 1)
      throw DataError("xyz line " + std::to_string(count_line) +
                      ": malformed atom count '" + tok + "'");
  }

  if (!reader.next(line))
    throw DataError("xyz line " + std::to_string(count_line + 1) +
                    ": missing property line");
  record = MoleculeRecord{};
  parse_property_line(line, reader.line_no, record);

  for (int i = 0; i < natoms; ++i) {
    const int expected_line = reader.line_no + 1;
    if (!reader.next(line) || is_blank(line))
      throw DataError("xyz line " + std::to_string(expected_line) +
                      ": expected atom " + std::to_string(i + 1) + " of " +
                      std::to_string(natoms) + ", found end of frame");
    const auto toks = split_ws(line);
    if (toks.size() < 4)
      throw DataError("xyz line " + std::to_string(reader.line_no) +
                      ": expected 'Symbol x y z'");
    const int z = element_number(toks[0]);
    if (z == 0)
      throw DataError("xyz line " + std::to_string(reader.line_no) +
                      ": unknown element symbol '" + toks[0] + "'");
    record.elements.push_back(z);
    record.positions.emplace_back(
        parse_double(toks[1], reader.line_no, "coordinate"),
        parse_double(toks[2], reader.line_no, "coordinate"),
        parse_double(toks[3], reader.line_no, "coordinate"));
  }
  return true;
}

}  // namespace

MoleculeRecord parse_xyz(const std::string& text) {
  LineReader reader{text};
  MoleculeRecord record;
  if (!parse_frame(reader, record)) throw DataError("xyz: empty input");
  return record;
}

std::vector<MoleculeRecord> parse_xyz_frames(const std::string& text) {
  LineReader reader{text};
  std::vector<MoleculeRecord> out;
  MoleculeRecord record;
  while (parse_frame(reader, record)) out.push_back(std::move(record));
  return out;
}

std::vector<MoleculeRecord> read_xyz_path(const std::string& path) {
  const fs::path p(path);
  std::vector<fs::path> files;
  if (fs::is_directory(p)) {
    for (const auto& entry : fs::directory_iterator(p))
      if (entry.is_regular_file() && entry.path().extension() == ".xyz")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw DataError("no .xyz files in directory '" + path + "'");
  } else if (fs::is_regular_file(p)) {
    files.push_back(p);
  } else {
    throw DataError("xyz path '" + path + "' does not exist");
  }

  std::vector<MoleculeRecord> out;
  for (const auto& file : files) {
    std::ifstream in(file);
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<MoleculeRecord> frames;
    try {
      frames = parse_xyz_frames(buf.str());
    } catch (const DataError& e) {
      throw DataError(file.string() + ": " + e.what());
    }
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (frames[i].id.empty()) {
        frames[i].id = file.stem().string();
        if (frames.size() > 1) frames[i].id += "#" + std::to_string(i);
      }
      out.push_back(std::move(frames[i]));
    }
  }
  return out;
}

std::string format_xyz(const MoleculeRecord& record) {
  std::ostringstream os;
  os.precision(12);
  os << record.atom_count() << "\n";
  os << "id=" << record.id;
  if (record.total_energy) os << " energy=" << *record.total_energy;
  if (record.zpe) os << " zpe=" << *record.zpe;
  if (record.structure_key) os << " key=" << *record.structure_key;
  os << "\n";
  for (int i = 0; i < record.atom_count(); ++i) {
    const auto& r = record.positions[static_cast<std::size_t>(i)];
    os << element_symbol(record.elements[static_cast<std::size_t>(i)]) << " "
       << r.x() << " " << r.y() << " " << r.z() << "\n";
  }
  return os.str();
}

}  // namespace molens::chem
