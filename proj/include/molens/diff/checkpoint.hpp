#pragma once

#include <string>

#include "molens/diff/net.hpp"
#include "molens/diff/scaler.hpp"

namespace molens::diff {

// Versioned model snapshot: layout descriptor, flat parameters, NetConfig,
// target scaler, and training-state counters. JSON on disk; doubles are
// written with shortest round-trip formatting, so save/load is bit-exact.
struct Checkpoint {
  ParamVector params;
  NetConfig net;
  TargetScaler scaler;
  long step = 0;
  double best_val_nll = std::numeric_limits<double>::quiet_NaN();
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

std::string net_config_to_json(const NetConfig& config);
NetConfig net_config_from_json(const std::string& text);

}  // namespace molens::diff
