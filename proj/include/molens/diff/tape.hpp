#pragma once

// Reverse-mode automatic differentiation over dense Eigen matrices. A Tape
// records the computation as it is built through the free functions below;
// backward() runs the adjoint pass from a scalar output. Values are
// double-precision matrices; scalars are 1x1.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace molens::diff {

using Matrix = Eigen::MatrixXd;

class Tape;

// Handle to a tape node. Cheap to copy; valid until Tape::clear().
class Var {
public:
  Var() = default;
  const Matrix& value() const;
  double scalar() const;  // requires a 1x1 value
  bool valid() const { return tape_ != nullptr; }
  Tape* tape() const { return tape_; }
  int index() const { return idx_; }

private:
  friend class Tape;
  Var(Tape* tape, int idx) : tape_(tape), idx_(idx) {}
  Tape* tape_ = nullptr;
  int idx_ = -1;
};

class Tape {
public:
  // Nodes without gradient tracking (inputs, fixed tensors).
  Var constant(Matrix value);
  Var scalar(double value) { return constant(Matrix::Constant(1, 1, value)); }

  // Differentiable roots; their adjoints survive backward().
  Var leaf(Matrix value);

  Var node(Matrix value, bool needs_grad, std::function<void(Tape&)> back);
  void set_back(const Var& v, std::function<void(Tape&)> back);

  const Matrix& value(const Var& v) const;
  bool needs_grad(const Var& v) const;

  // Accumulated adjoint; zero matrix if the node never received gradient.
  Matrix adjoint(const Var& v) const;

  // Reverse pass from a scalar output. Clears previous adjoints.
  void backward(const Var& output);

  // Hooks used by backward closures.
  void accumulate(int idx, const Matrix& grad);
  const Matrix& adjoint_ref(int idx) const;
  const Matrix& value_at(int idx) const {
    return nodes_[static_cast<std::size_t>(idx)].value;
  }

  std::size_t size() const { return nodes_.size(); }
  void clear();

private:
  struct Node {
    Matrix value;
    Matrix adj;  // empty until touched by the reverse pass
    bool needs_grad = false;
    std::function<void(Tape&)> back;
  };
  std::vector<Node> nodes_;
};

// ---- expression vocabulary -------------------------------------------------

Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var cwise_mul(const Var& a, const Var& b);
Var cwise_div(const Var& a, const Var& b);
Var matmul(const Var& a, const Var& b);
// W*x with bias broadcast over columns.
Var linear(const Var& w, const Var& x, const Var& b);
Var scale(const Var& a, double c);
Var add_scalar(const Var& a, double c);
Var square(const Var& a);
Var log(const Var& a);
Var softplus(const Var& a);          // log(1 + e^x), numerically stable
Var shifted_softplus(const Var& a);  // log(1 + e^x) - log 2
Var sum(const Var& a);               // all entries -> 1x1
// Column gather / segment-sum, the message-passing primitives.
Var gather_cols(const Var& a, const std::vector<int>& idx);
Var scatter_sum_cols(const Var& a, const std::vector<int>& dst, int out_cols);

inline Var operator+(const Var& a, const Var& b) { return add(a, b); }
inline Var operator-(const Var& a, const Var& b) { return sub(a, b); }
inline Var operator*(double c, const Var& a) { return scale(a, c); }

}  // namespace molens::diff
