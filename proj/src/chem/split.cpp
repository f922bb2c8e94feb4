#include "molens/chem/split.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "molens/error.hpp"
#include "molens/rng.hpp"

namespace molens::chem {

SplitSpec random_split(const std::vector<std::string>& ids,
                       std::size_t n_train, std::size_t n_val,
                       std::uint64_t seed) {
  if (n_train + n_val > ids.size()) {
    std::ostringstream msg;
    msg << "random_split: n_train + n_val = " << (n_train + n_val)
        << " exceeds dataset size " << ids.size();
    throw ConfigError(msg.str());
  }
  std::vector<std::string> order(ids);
  std::sort(order.begin(), order.end());
  rng::Generator gen(seed);
  gen.shuffle(order);

  SplitSpec split;
  split.seed = seed;
  split.train_ids.assign(order.begin(),
                         order.begin() + static_cast<long>(n_train));
  split.val_ids.assign(order.begin() + static_cast<long>(n_train),
                       order.begin() + static_cast<long>(n_train + n_val));
  split.test_ids.assign(order.begin() + static_cast<long>(n_train + n_val),
                        order.end());
  return split;
}

namespace {

void require_keys(const std::vector<std::string>& ids,
                  const std::map<std::string, std::string>& keys,
                  const char* label) {
  std::vector<std::string> missing;
  for (const auto& id : ids)
    if (keys.find(id) == keys.end()) missing.push_back(id);
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "overlap_split: missing structure key in " << label << " for "
        << missing.size() << " ids:";
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i)
      msg << " " << missing[i];
    if (missing.size() > 10) msg << " ...";
    throw DataError(msg.str());
  }
}

}  // namespace

OverlapSplit overlap_split(const std::vector<std::string>& ids_a,
                           const std::map<std::string, std::string>& keys_a,
                           const std::vector<std::string>& ids_b,
                           const std::map<std::string, std::string>& keys_b) {
  require_keys(ids_a, keys_a, "dataset A");
  require_keys(ids_b, keys_b, "dataset B");

  std::set<std::string> key_set_a;
  for (const auto& id : ids_a) key_set_a.insert(keys_a.at(id));
  std::set<std::string> key_set_b;
  for (const auto& id : ids_b) key_set_b.insert(keys_b.at(id));

  OverlapSplit out;
  for (const auto& id : ids_a) {
    if (key_set_b.count(keys_a.at(id)))
      out.shared_a.push_back(id);
    else
      out.exclusive_a.push_back(id);
  }
  for (const auto& id : ids_b) {
    if (key_set_a.count(keys_b.at(id)))
      out.shared_b.push_back(id);
    else
      out.exclusive_b.push_back(id);
  }
  return out;
}

std::string split_to_json(const SplitSpec& split) {
  nlohmann::ordered_json j;
  j["format"] = "molens-split";
  j["version"] = 1;
  j["seed"] = split.seed;
  j["train"] = split.train_ids;
  j["val"] = split.val_ids;
  j["test"] = split.test_ids;
  return j.dump(2) + "\n";
}

SplitSpec split_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("split json: ") + e.what());
  }
  if (j.value("format", "") != "molens-split")
    throw DataError("split json: unexpected format tag");
  SplitSpec split;
  split.seed = j.value("seed", std::uint64_t{0});
  split.train_ids = j.at("train").get<std::vector<std::string>>();
  split.val_ids = j.at("val").get<std::vector<std::string>>();
  split.test_ids = j.at("test").get<std::vector<std::string>>();
  return split;
}

void save_split(const std::string& path, const SplitSpec& split) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write split file '" + path + "'");
  out << split_to_json(split);
}

SplitSpec load_split(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read split file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return split_from_json(buf.str());
}

}  // namespace molens::chem
