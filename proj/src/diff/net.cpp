#include "molens/diff/net.hpp"

#include <cmath>

#include "molens/diff/rbf.hpp"
#include "molens/error.hpp"
#include "molens/rng.hpp"

namespace molens::diff {

namespace {

constexpr double kLn2Pi = 1.8378770664093454836;

void check_finite(const Var& v, const char* stage) {
  if (!v.value().allFinite())
    throw NumericError(std::string("forward: non-finite value at ") + stage);
}

}  // namespace

void NetConfig::validate() const {
  if (embedding_dim < 1)
    throw ConfigError("NetConfig: embedding_dim must be >= 1");
  if (interaction_steps < 1)
    throw ConfigError("NetConfig: interaction_steps must be >= 1");
  if (rbf_count < 1) throw ConfigError("NetConfig: rbf_count must be >= 1");
  if (!(cutoff > 0.0)) throw ConfigError("NetConfig: cutoff must be > 0");
  if (!(min_variance > 0.0))
    throw ConfigError("NetConfig: min_variance must be > 0");
  if (hidden_dims.empty())
    throw ConfigError("NetConfig: hidden_dims must not be empty");
  for (int h : hidden_dims)
    if (h < 1) throw ConfigError("NetConfig: hidden dims must be >= 1");
  if (elements.empty())
    throw ConfigError("NetConfig: supported element set is empty");
}

int NetConfig::element_index(int z) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == z) return static_cast<int>(i);
  throw DataError("element Z=" + std::to_string(z) +
                  " outside the model's supported set");
}

const ParamLayout::Entry& ParamLayout::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw ConfigError("parameter tensor '" + name + "' not in layout");
}

Eigen::Map<const Eigen::MatrixXd> ParamVector::tensor(
    const std::string& name) const {
  const auto& e = layout.find(name);
  return {data.data() + e.offset, e.rows, e.cols};
}

Eigen::Map<Eigen::MatrixXd> ParamVector::tensor(const std::string& name) {
  const auto& e = layout.find(name);
  return {data.data() + e.offset, e.rows, e.cols};
}

ParamLayout make_layout(const NetConfig& config) {
  config.validate();
  const long e = config.embedding_dim;
  ParamLayout layout;
  auto push = [&layout](const std::string& name, long rows, long cols) {
    layout.entries.push_back({name, rows, cols, layout.total});
    layout.total += rows * cols;
  };
  push("embedding", e, static_cast<long>(config.elements.size()));
  for (int t = 0; t < config.interaction_steps; ++t) {
    const std::string p = "interaction_" + std::to_string(t) + "/";
    push(p + "filter_w1", e, config.rbf_count);
    push(p + "filter_b1", e, 1);
    push(p + "filter_w2", e, e);
    push(p + "filter_b2", e, 1);
    push(p + "update_w1", e, e);
    push(p + "update_b1", e, 1);
    push(p + "update_w2", e, e);
    push(p + "update_b2", e, 1);
  }
  long prev = e;
  for (std::size_t i = 0; i < config.hidden_dims.size(); ++i) {
    const std::string p = "trunk_" + std::to_string(i) + "/";
    push(p + "w", config.hidden_dims[i], prev);
    push(p + "b", config.hidden_dims[i], 1);
    prev = config.hidden_dims[i];
  }
  push("mean_w", 1, prev);
  push("mean_b", 1, 1);
  push("var_w", 1, prev);
  push("var_b", 1, 1);
  return layout;
}

ParamVector init_params(const NetConfig& config, std::uint64_t seed) {
  ParamVector params;
  params.layout = make_layout(config);
  params.data = Eigen::VectorXd::Zero(params.layout.total);
  rng::Generator gen(seed);

  const auto is_bias_name = [](const std::string& name) {
    return name.ends_with("b1") || name.ends_with("b2") ||
           name.ends_with("_b") || name.ends_with("/b");
  };
  for (const auto& entry : params.layout.entries) {
    auto block = params.data.segment(entry.offset, entry.rows * entry.cols);
    const bool is_bias = is_bias_name(entry.name);
    if (entry.name == "embedding") {
      const double bound = std::sqrt(3.0 / static_cast<double>(entry.rows));
      for (long i = 0; i < block.size(); ++i)
        block[i] = gen.uniform(-bound, bound);
    } else if (is_bias) {
      block.setZero();
    } else {
      // Kaiming-style uniform bound from the fan-in (= tensor columns).
      const double bound = std::sqrt(6.0 / static_cast<double>(entry.cols));
      for (long i = 0; i < block.size(); ++i)
        block[i] = gen.uniform(-bound, bound);
    }
  }
  // softplus(var_b) == 1 at init so the initial predicted variance is ~1 in
  // standardized target units.
  params.tensor("var_b")(0, 0) = std::log(std::exp(1.0) - 1.0);
  return params;
}

BoundParams bind_params(Tape& tape, const ParamVector& params,
                        const NetConfig& config) {
  if (params.data.size() != params.layout.total)
    throw ConfigError("bind_params: parameter vector size mismatch");
  BoundParams bound;
  auto leaf = [&](const std::string& name) {
    Var v = tape.leaf(params.tensor(name));
    bound.all.push_back(v);
    return v;
  };
  bound.embedding = leaf("embedding");
  for (int t = 0; t < config.interaction_steps; ++t) {
    const std::string p = "interaction_" + std::to_string(t) + "/";
    BoundParams::Step step;
    step.filter_w1 = leaf(p + "filter_w1");
    step.filter_b1 = leaf(p + "filter_b1");
    step.filter_w2 = leaf(p + "filter_w2");
    step.filter_b2 = leaf(p + "filter_b2");
    step.update_w1 = leaf(p + "update_w1");
    step.update_b1 = leaf(p + "update_b1");
    step.update_w2 = leaf(p + "update_w2");
    step.update_b2 = leaf(p + "update_b2");
    bound.steps.push_back(step);
  }
  for (std::size_t i = 0; i < config.hidden_dims.size(); ++i) {
    const std::string p = "trunk_" + std::to_string(i) + "/";
    Var w = leaf(p + "w");
    Var b = leaf(p + "b");
    bound.trunk.emplace_back(w, b);
  }
  bound.mean_w = leaf("mean_w");
  bound.mean_b = leaf("mean_b");
  bound.var_w = leaf("var_w");
  bound.var_b = leaf("var_b");
  return bound;
}

ForwardNodes forward_on_tape(Tape& tape, const BoundParams& bound,
                             const chem::MolecularGraph& graph,
                             const NetConfig& config) {
  const int n = graph.atom_count();
  if (n < 1) throw DataError("forward: empty graph");

  std::vector<int> atom_idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    atom_idx[static_cast<std::size_t>(i)] =
        config.element_index(graph.elements[i]);

  Var h = gather_cols(bound.embedding, atom_idx);
  check_finite(h, "embedding");

  const Var rbf = tape.constant(
      expand_rbf_matrix(graph.edge_dist, config.rbf_count, config.cutoff));

  for (std::size_t t = 0; t < bound.steps.size(); ++t) {
    const auto& step = bound.steps[t];
    Var f = shifted_softplus(linear(step.filter_w1, rbf, step.filter_b1));
    f = shifted_softplus(linear(step.filter_w2, f, step.filter_b2));
    Var messages = cwise_mul(gather_cols(h, graph.edge_src), f);
    Var agg = scatter_sum_cols(messages, graph.edge_dst, n);
    Var upd = shifted_softplus(linear(step.update_w1, agg, step.update_b1));
    upd = linear(step.update_w2, upd, step.update_b2);
    h = add(h, upd);
    check_finite(h, ("interaction_" + std::to_string(t)).c_str());
  }

  Var z = h;
  for (const auto& [w, b] : bound.trunk)
    z = shifted_softplus(linear(w, z, b));
  check_finite(z, "readout_trunk");

  ForwardNodes out;
  out.mean = sum(linear(bound.mean_w, z, bound.mean_b));
  Var var_pre = sum(linear(bound.var_w, z, bound.var_b));
  out.variance = add_scalar(softplus(var_pre), config.min_variance);
  check_finite(out.mean, "mean_head");
  check_finite(out.variance, "variance_head");
  return out;
}

ProbPrediction forward(const ParamVector& params,
                       const chem::MolecularGraph& graph,
                       const NetConfig& config) {
  Tape tape;
  const BoundParams bound = bind_params(tape, params, config);
  const ForwardNodes nodes = forward_on_tape(tape, bound, graph, config);
  return {nodes.mean.scalar(), nodes.variance.scalar()};
}

Eigen::VectorXd collect_gradient(const Tape& tape, const BoundParams& bound,
                                 const ParamLayout& layout) {
  if (bound.all.size() != layout.entries.size())
    throw ConfigError("collect_gradient: layout/bound size mismatch");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(layout.total);
  for (std::size_t i = 0; i < layout.entries.size(); ++i) {
    const auto& e = layout.entries[i];
    const Matrix adj = tape.adjoint(bound.all[i]);
    grad.segment(e.offset, e.rows * e.cols) =
        Eigen::Map<const Eigen::VectorXd>(adj.data(), adj.size());
  }
  return grad;
}

Var loss_on_tape(Tape& tape, const ForwardNodes& nodes, double target,
                 const LossWeights& weights) {
  const Var y = tape.scalar(target);
  const Var sq = square(sub(y, nodes.mean));
  Var nll = add(cwise_div(sq, nodes.variance), log(nodes.variance));
  if (weights.include_ln2pi) nll = add_scalar(nll, kLn2Pi);
  nll = scale(nll, 0.5);
  return add(scale(sq, weights.lambda), scale(nll, 1.0 - weights.lambda));
}

Eigen::VectorXd gradient(const ParamVector& params,
                         const chem::MolecularGraph& graph,
                         const NetConfig& config, const LossWeights& weights) {
  if (!std::isfinite(graph.target))
    throw DataError("gradient: graph has no finite target");
  Tape tape;
  const BoundParams bound = bind_params(tape, params, config);
  const ForwardNodes nodes = forward_on_tape(tape, bound, graph, config);
  const Var loss = loss_on_tape(tape, nodes, graph.target, weights);
  tape.backward(loss);
  return collect_gradient(tape, bound, params.layout);
}

}  // namespace molens::diff
