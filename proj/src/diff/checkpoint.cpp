#include "molens/diff/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "molens/error.hpp"

namespace molens::diff {

namespace {

constexpr int kCheckpointVersion = 1;

nlohmann::ordered_json net_to_json_obj(const NetConfig& c) {
  nlohmann::ordered_json j;
  j["embedding_dim"] = c.embedding_dim;
  j["interaction_steps"] = c.interaction_steps;
  j["rbf_count"] = c.rbf_count;
  j["cutoff"] = c.cutoff;
  j["min_variance"] = c.min_variance;
  j["hidden_dims"] = c.hidden_dims;
  j["elements"] = c.elements;
  j["seed"] = c.seed;
  return j;
}

NetConfig net_from_json_obj(const nlohmann::json& j) {
  NetConfig c;
  c.embedding_dim = j.at("embedding_dim").get<int>();
  c.interaction_steps = j.at("interaction_steps").get<int>();
  c.rbf_count = j.at("rbf_count").get<int>();
  c.cutoff = j.at("cutoff").get<double>();
  c.min_variance = j.at("min_variance").get<double>();
  c.hidden_dims = j.at("hidden_dims").get<std::vector<int>>();
  c.elements = j.at("elements").get<std::vector<int>>();
  c.seed = j.value("seed", 0);
  c.validate();
  return c;
}

nlohmann::ordered_json scaler_to_json_obj(const TargetScaler& s) {
  nlohmann::ordered_json j;
  j["mode"] = TargetScaler::mode_name(s.mode);
  j["mean"] = s.mean;
  j["stddev"] = s.stddev;
  return j;
}

TargetScaler scaler_from_json_obj(const nlohmann::json& j) {
  TargetScaler s;
  s.mode = TargetScaler::parse_mode(j.at("mode").get<std::string>());
  s.mean = j.at("mean").get<double>();
  s.stddev = j.at("stddev").get<double>();
  return s;
}

}  // namespace

std::string net_config_to_json(const NetConfig& config) {
  return net_to_json_obj(config).dump(2);
}

NetConfig net_config_from_json(const std::string& text) {
  try {
    return net_from_json_obj(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("net config json: ") + e.what());
  }
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  if (ckpt.params.data.size() != ckpt.params.layout.total)
    throw ConfigError("save_checkpoint: parameter/layout size mismatch");
  nlohmann::ordered_json j;
  j["format"] = "molens-checkpoint";
  j["version"] = kCheckpointVersion;
  j["net"] = net_to_json_obj(ckpt.net);
  j["scaler"] = scaler_to_json_obj(ckpt.scaler);
  auto& layout = j["layout"] = nlohmann::ordered_json::array();
  for (const auto& e : ckpt.params.layout.entries)
    layout.push_back({{"name", e.name},
                      {"rows", e.rows},
                      {"cols", e.cols},
                      {"offset", e.offset}});
  j["params"] = std::vector<double>(
      ckpt.params.data.data(), ckpt.params.data.data() + ckpt.params.data.size());
  j["state"] = {{"step", ckpt.step}, {"best_val_nll", ckpt.best_val_nll}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint '" + path + "'");
  out << j.dump() << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read checkpoint '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw DataError("checkpoint '" + path + "': " + e.what());
  }
  if (j.value("format", "") != "molens-checkpoint")
    throw DataError("checkpoint '" + path + "': unexpected format tag");
  if (j.value("version", -1) != kCheckpointVersion)
    throw DataError("checkpoint '" + path + "': unsupported version");

  Checkpoint ckpt;
  ckpt.net = net_from_json_obj(j.at("net"));
  ckpt.scaler = scaler_from_json_obj(j.at("scaler"));
  for (const auto& e : j.at("layout")) {
    ParamLayout::Entry entry;
    entry.name = e.at("name").get<std::string>();
    entry.rows = e.at("rows").get<long>();
    entry.cols = e.at("cols").get<long>();
    entry.offset = e.at("offset").get<long>();
    ckpt.params.layout.total += entry.rows * entry.cols;
    ckpt.params.layout.entries.push_back(std::move(entry));
  }
  const auto values = j.at("params").get<std::vector<double>>();
  if (static_cast<long>(values.size()) != ckpt.params.layout.total)
    throw DataError("checkpoint '" + path + "': parameter count mismatch");
  ckpt.params.data =
      Eigen::Map<const Eigen::VectorXd>(values.data(),
                                        static_cast<long>(values.size()));
  if (!ckpt.params.data.allFinite())
    throw DataError("checkpoint '" + path + "': non-finite parameters");
  // The stored layout must match the one implied by the config.
  const ParamLayout expected = make_layout(ckpt.net);
  if (expected.total != ckpt.params.layout.total)
    throw ConfigError("checkpoint '" + path +
                      "': layout does not match net config");
  ckpt.step = j.at("state").value("step", 0L);
  ckpt.best_val_nll = j.at("state").value(
      "best_val_nll", std::numeric_limits<double>::quiet_NaN());
  return ckpt;
}

}  // namespace molens::diff
