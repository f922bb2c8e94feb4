#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "molens/chem/graph.hpp"
#include "molens/diff/net.hpp"

namespace molens::train {

// Gaussian negative log likelihood of one point:
//   1/2 [ (y - mu)^2 / var + ln var + ln 2pi ].
// The ln 2pi constant is always part of reported metrics; the training
// objective may drop it (it has zero gradient). Throws NumericError for
// var <= 0.
double nll_point(double y, double mu, double var, bool include_ln2pi = true);

struct TrainConfig;

// MSE->NLL interpolation weight: 1 during warmup, linear down to 0 across
// interp_steps, 0 afterwards.
double lambda_schedule(long step, const TrainConfig& config);

struct Batch {
  std::vector<const chem::MolecularGraph*> graphs;  // targets in graph.target
  std::vector<std::string> ids;                     // aligned, for diagnostics
};

// Mean over the batch of lambda * (y - mu)^2 + (1 - lambda) * nll_point.
// Targets are used exactly as stored on the graphs.
double batch_loss(const diff::ParamVector& params, const Batch& batch,
                  double lambda, const diff::NetConfig& config,
                  bool include_ln2pi = true);

// Same quantity plus its reverse-mode gradient, from a single shared tape.
struct LossAndGrad {
  double loss;
  Eigen::VectorXd grad;
};
LossAndGrad batch_loss_grad(const diff::ParamVector& params,
                            const Batch& batch, double lambda,
                            const diff::NetConfig& config,
                            bool include_ln2pi = true);

}  // namespace molens::train
