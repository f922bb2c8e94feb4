#include "molens/diff/scaler.hpp"

#include <cmath>

#include "molens/error.hpp"

namespace molens::diff {

TargetScaler::Mode TargetScaler::parse_mode(const std::string& name) {
  if (name == "none") return Mode::none;
  if (name == "global") return Mode::global;
  if (name == "per_atom") return Mode::per_atom;
  throw ConfigError("unknown standardization mode '" + name +
                    "' (expected none|global|per_atom)");
}

std::string TargetScaler::mode_name(Mode mode) {
  switch (mode) {
    case Mode::none: return "none";
    case Mode::global: return "global";
    case Mode::per_atom: return "per_atom";
  }
  return "none";
}

TargetScaler TargetScaler::fit(const std::vector<double>& targets,
                               const std::vector<int>& atom_counts,
                               Mode mode) {
  TargetScaler scaler;
  scaler.mode = mode;
  if (mode == Mode::none || targets.empty()) return scaler;
  if (mode == Mode::per_atom && atom_counts.size() != targets.size())
    throw ConfigError("TargetScaler::fit: atom counts missing");

  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double u = mode == Mode::per_atom
                         ? targets[i] / static_cast<double>(atom_counts[i])
                         : targets[i];
    sum += u;
  }
  scaler.mean = sum / static_cast<double>(targets.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double u = mode == Mode::per_atom
                         ? targets[i] / static_cast<double>(atom_counts[i])
                         : targets[i];
    ss += (u - scaler.mean) * (u - scaler.mean);
  }
  scaler.stddev = std::sqrt(ss / static_cast<double>(targets.size()));
  if (!(scaler.stddev > 1e-12)) scaler.stddev = 1.0;  // constant targets
  return scaler;
}

double TargetScaler::to_model(double y, int atom_count) const {
  switch (mode) {
    case Mode::none: return y;
    case Mode::global: return (y - mean) / stddev;
    case Mode::per_atom:
      return (y / static_cast<double>(atom_count) - mean) / stddev;
  }
  return y;
}

double TargetScaler::mean_to_physical(double model_mean,
                                      int atom_count) const {
  switch (mode) {
    case Mode::none: return model_mean;
    case Mode::global: return model_mean * stddev + mean;
    case Mode::per_atom:
      return (model_mean * stddev + mean) * static_cast<double>(atom_count);
  }
  return model_mean;
}

double TargetScaler::variance_to_physical(double model_variance,
                                          int atom_count) const {
  switch (mode) {
    case Mode::none: return model_variance;
    case Mode::global: return model_variance * stddev * stddev;
    case Mode::per_atom: {
      const double s = stddev * static_cast<double>(atom_count);
      return model_variance * s * s;
    }
  }
  return model_variance;
}

}  // namespace molens::diff
