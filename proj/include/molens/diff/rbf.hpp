#pragma once

#include <Eigen/Dense>

namespace molens::diff {

// Gaussian radial basis with centers uniform on [0, cutoff] and width equal
// to the center spacing. Values lie in (0, 1]; a distance on a center gives
// exactly 1 in that component.
Eigen::VectorXd expand_rbf(double distance, int rbf_count, double cutoff);

// One column per edge distance.
Eigen::MatrixXd expand_rbf_matrix(const Eigen::VectorXd& distances,
                                  int rbf_count, double cutoff);

}  // namespace molens::diff
