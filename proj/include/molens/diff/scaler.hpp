#pragma once

#include <string>
#include <vector>

namespace molens::diff {

// Target standardization fitted on the training split. Models predict in
// standardized units; predictions are mapped back before reporting. In
// per_atom mode the standardized quantity is the target divided by the atom
// count, which suits size-extensive energies.
struct TargetScaler {
  enum class Mode { none, global, per_atom };
  Mode mode = Mode::global;
  double mean = 0.0;
  double stddev = 1.0;

  static Mode parse_mode(const std::string& name);
  static std::string mode_name(Mode mode);

  static TargetScaler fit(const std::vector<double>& targets,
                          const std::vector<int>& atom_counts, Mode mode);

  double to_model(double y, int atom_count) const;
  double mean_to_physical(double model_mean, int atom_count) const;
  double variance_to_physical(double model_variance, int atom_count) const;
};

}  // namespace molens::diff
