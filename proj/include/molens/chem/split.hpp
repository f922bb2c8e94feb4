#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace molens::chem {

struct SplitSpec {
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
  std::vector<std::string> test_ids;
  std::uint64_t seed = 0;
};

// Deterministic split: ids are sorted, then shuffled with a seeded
// Fisher-Yates; first n_train go to train, next n_val to val, remainder to
// test. Throws ConfigError when n_train + n_val exceeds the dataset.
SplitSpec random_split(const std::vector<std::string>& ids,
                       std::size_t n_train, std::size_t n_val,
                       std::uint64_t seed);

struct OverlapSplit {
  std::vector<std::string> exclusive_a;
  std::vector<std::string> shared_a;
  std::vector<std::string> exclusive_b;
  std::vector<std::string> shared_b;
};

// Partitions each dataset by whether its structure key occurs in the other
// dataset's key set. Duplicate keys make |shared_a| and |shared_b| differ.
// Throws DataError listing ids that lack a key.
OverlapSplit overlap_split(const std::vector<std::string>& ids_a,
                           const std::map<std::string, std::string>& keys_a,
                           const std::vector<std::string>& ids_b,
                           const std::map<std::string, std::string>& keys_b);

std::string split_to_json(const SplitSpec& split);
SplitSpec split_from_json(const std::string& text);
void save_split(const std::string& path, const SplitSpec& split);
SplitSpec load_split(const std::string& path);

}  // namespace molens::chem
