#include "molens/diff/rbf.hpp"

#include <cmath>

#include "molens/error.hpp"

namespace molens::diff {

Eigen::VectorXd expand_rbf(double distance, int rbf_count, double cutoff) {
  if (rbf_count < 1) throw ConfigError("expand_rbf: rbf_count must be >= 1");
  if (!(cutoff > 0.0)) throw ConfigError("expand_rbf: cutoff must be > 0");
  const double spacing =
      rbf_count > 1 ? cutoff / static_cast<double>(rbf_count - 1) : cutoff;
  const double gamma = 1.0 / (2.0 * spacing * spacing);
  Eigen::VectorXd out(rbf_count);
  for (int k = 0; k < rbf_count; ++k) {
    const double center = rbf_count > 1 ? spacing * k : 0.0;
    const double delta = distance - center;
    out[k] = std::exp(-gamma * delta * delta);
  }
  return out;
}

Eigen::MatrixXd expand_rbf_matrix(const Eigen::VectorXd& distances,
                                  int rbf_count, double cutoff) {
  Eigen::MatrixXd out(rbf_count, distances.size());
  for (long e = 0; e < distances.size(); ++e)
    out.col(e) = expand_rbf(distances[e], rbf_count, cutoff);
  return out;
}

}  // namespace molens::diff
