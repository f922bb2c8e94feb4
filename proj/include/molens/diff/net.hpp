#pragma once

// Desk-scale message-passing regressor with a two-headed probabilistic
// output. Per interaction step, each atom receives the sum over neighbors of
// (neighbor embedding ⊙ filter(rbf(distance))) followed by a residual
// two-layer update; the readout is a per-atom MLP trunk with separate final
// linear layers for the mean (summed over atoms) and the variance
// pre-activation (summed, then softplus + minimum variance).

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "molens/chem/graph.hpp"
#include "molens/diff/tape.hpp"

namespace molens::diff {

struct NetConfig {
  int embedding_dim = 64;
  int interaction_steps = 3;
  int rbf_count = 32;
  double cutoff = 5.0;  // Angstrom
  double min_variance = 1e-6;
  std::vector<int> hidden_dims = {64};
  std::vector<int> elements = {1, 6, 7, 8, 9};
  int seed = 0;

  void validate() const;  // throws ConfigError
  int element_index(int z) const;  // throws DataError when unsupported
};

struct ProbPrediction {
  double mean = 0.0;      // eV (model space)
  double variance = 0.0;  // eV^2, >= min_variance
};

// Named tensors mapped onto slices of one flat parameter array.
struct ParamLayout {
  struct Entry {
    std::string name;
    long rows = 0;
    long cols = 0;
    long offset = 0;
  };
  std::vector<Entry> entries;
  long total = 0;

  const Entry& find(const std::string& name) const;
};

struct ParamVector {
  Eigen::VectorXd data;
  ParamLayout layout;

  Eigen::Map<const Eigen::MatrixXd> tensor(const std::string& name) const;
  Eigen::Map<Eigen::MatrixXd> tensor(const std::string& name);
};

ParamLayout make_layout(const NetConfig& config);

// Deterministic in seed: uniform fan-in weight scaling, zero biases, and the
// variance-head bias set so the initial predicted variance is about 1.
ParamVector init_params(const NetConfig& config, std::uint64_t seed);

// Parameter tensors bound as leaves on one tape, shared by every forward
// built on that tape.
struct BoundParams {
  struct Step {
    Var filter_w1, filter_b1, filter_w2, filter_b2;
    Var update_w1, update_b1, update_w2, update_b2;
  };
  Var embedding;
  std::vector<Step> steps;
  std::vector<std::pair<Var, Var>> trunk;  // (W, b) per hidden layer
  Var mean_w, mean_b, var_w, var_b;
  std::vector<Var> all;  // layout order, for gradient collection
};

BoundParams bind_params(Tape& tape, const ParamVector& params,
                        const NetConfig& config);

// Mean and variance nodes for one graph. Throws NumericError naming the
// stage when an intermediate goes non-finite.
struct ForwardNodes {
  Var mean;
  Var variance;
};
ForwardNodes forward_on_tape(Tape& tape, const BoundParams& bound,
                             const chem::MolecularGraph& graph,
                             const NetConfig& config);

ProbPrediction forward(const ParamVector& params,
                       const chem::MolecularGraph& graph,
                       const NetConfig& config);

// Collects d(output)/d(theta) for every parameter after tape.backward().
Eigen::VectorXd collect_gradient(const Tape& tape, const BoundParams& bound,
                                 const ParamLayout& layout);

struct LossWeights {
  double lambda = 0.0;        // MSE weight; 1-lambda goes to the NLL term
  bool include_ln2pi = true;  // constant term of the Gaussian NLL
};

// lambda * (y - mu)^2 + (1 - lambda) * Gaussian NLL, as a scalar node.
Var loss_on_tape(Tape& tape, const ForwardNodes& nodes, double target,
                 const LossWeights& weights);

// Reverse-mode gradient of the interpolated single-instance training loss
// (target taken from graph.target) with respect to every parameter.
Eigen::VectorXd gradient(const ParamVector& params,
                         const chem::MolecularGraph& graph,
                         const NetConfig& config, const LossWeights& weights);

}  // namespace molens::diff
