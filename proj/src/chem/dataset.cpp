#include "molens/chem/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "molens/error.hpp"
#include "molens/io/kvconfig.hpp"

namespace molens::chem {

namespace {
constexpr int kCacheVersion = 1;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.id);
  return out;
}

void save_cache(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write cache '" + path + "'");
  nlohmann::ordered_json header;
  header["format"] = "molens-cache";
  header["version"] = kCacheVersion;
  header["count"] = dataset.size();
  header["target"] = dataset.target_name;
  out << header.dump() << "\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& r = dataset.records[i];
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["elements"] = r.elements;
    auto& pos = j["positions"] = nlohmann::ordered_json::array();
    for (const auto& p : r.positions)
      pos.push_back({p.x(), p.y(), p.z()});
    if (r.total_energy) j["energy"] = *r.total_energy;
    if (r.zpe) j["zpe"] = *r.zpe;
    if (r.structure_key) j["key"] = *r.structure_key;
    if (std::isfinite(dataset.targets[i])) j["target"] = dataset.targets[i];
    out << j.dump() << "\n";
  }
}

Dataset load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read cache '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("cache '" + path + "' is empty");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("cache header: " + std::string(e.what()));
  }
  if (header.value("format", "") != "molens-cache")
    throw DataError("cache '" + path + "': unexpected format tag");
  if (header.value("version", -1) != kCacheVersion)
    throw DataError("cache '" + path + "': unsupported version " +
                    std::to_string(header.value("version", -1)));

  Dataset dataset;
  dataset.target_name = header.value("target", "");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("cache line " + std::to_string(line_no) + ": " +
                      e.what());
    }
    MoleculeRecord r;
    r.id = j.at("id").get<std::string>();
    r.elements = j.at("elements").get<std::vector<int>>();
    for (const auto& p : j.at("positions"))
      r.positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(),
                               p.at(2).get<double>());
    if (j.contains("energy")) r.total_energy = j["energy"].get<double>();
    if (j.contains("zpe")) r.zpe = j["zpe"].get<double>();
    if (j.contains("key")) r.structure_key = j["key"].get<std::string>();
    dataset.records.push_back(std::move(r));
    dataset.targets.push_back(
        j.contains("target") ? j["target"].get<double>()
                             : std::numeric_limits<double>::quiet_NaN());
  }
  const std::size_t expected = header.value("count", dataset.size());
  if (expected != dataset.size())
    throw DataError("cache '" + path + "': header count " +
                    std::to_string(expected) + " != " +
                    std::to_string(dataset.size()) + " rows");
  return dataset;
}

std::map<std::string, std::string> load_key_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read key file '" + path + "'");
  std::map<std::string, std::string> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw DataError("key file '" + path + "' line " +
                      std::to_string(line_no) + ": expected 'id<TAB>key'");
    keys[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return keys;
}

ReferenceEnergies load_reference_energies(const std::string& path,
                                          const std::string& target) {
  const io::KvConfig kv = io::KvConfig::load(path);
  ReferenceEnergies refs;
  const std::string prefix = target + ".";
  for (const auto& [key, value] : kv.entries()) {
    if (key.rfind(prefix, 0) != 0) continue;
    const std::string symbol = key.substr(prefix.size());
    const int z = element_number(symbol);
    if (z == 0)
      throw ConfigError("reference energies '" + path +
                        "': unknown element symbol '" + symbol + "'");
    refs[z] = io::parse_double_value(value, key);
  }
  if (refs.empty())
    throw ConfigError("reference energies '" + path +
                      "': no entries for target '" + target + "'");
  return refs;
}

const MolecularGraph& GraphDataset::by_id(const std::string& id) const {
  const auto it = index.find(id);
  if (it == index.end()) throw DataError("unknown molecule id '" + id + "'");
  return graphs[it->second];
}

std::vector<const MolecularGraph*> GraphDataset::select(
    const std::vector<std::string>& subset_ids) const {
  std::vector<const MolecularGraph*> out;
  out.reserve(subset_ids.size());
  for (const auto& id : subset_ids) out.push_back(&by_id(id));
  return out;
}

GraphDataset build_graphs(const Dataset& dataset, double cutoff) {
  GraphDataset out;
  out.ids = dataset.ids();
  out.graphs.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    MolecularGraph g = build_graph(dataset.records[i], cutoff);
    g.target = dataset.targets[i];
    out.graphs.push_back(std::move(g));
    out.index.emplace(out.ids[i], i);
  }
  return out;
}

}  // namespace molens::chem
