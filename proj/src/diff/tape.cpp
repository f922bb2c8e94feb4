#include "molens/diff/tape.hpp"

#include <cmath>

#include "molens/error.hpp"

namespace molens::diff {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw NumericError(std::string(op) + ": shape mismatch (" +
                       std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " vs " +
                       std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()) + ")");
}

void check_same_tape(const Var& a, const Var& b, const char* op) {
  if (a.tape() != b.tape())
    throw NumericError(std::string(op) + ": operands live on different tapes");
}

double stable_softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                  : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace

const Matrix& Var::value() const { return tape_->value(*this); }

double Var::scalar() const {
  const Matrix& v = value();
  if (v.rows() != 1 || v.cols() != 1)
    throw NumericError("Var::scalar: value is not 1x1");
  return v(0, 0);
}

Var Tape::constant(Matrix value) {
  return node(std::move(value), false, nullptr);
}

Var Tape::leaf(Matrix value) { return node(std::move(value), true, nullptr); }

Var Tape::node(Matrix value, bool needs_grad,
               std::function<void(Tape&)> back) {
  nodes_.push_back(
      Node{std::move(value), Matrix(), needs_grad, std::move(back)});
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

void Tape::set_back(const Var& v, std::function<void(Tape&)> back) {
  nodes_[static_cast<std::size_t>(v.index())].back = std::move(back);
}

const Matrix& Tape::value(const Var& v) const {
  return nodes_[static_cast<std::size_t>(v.index())].value;
}

bool Tape::needs_grad(const Var& v) const {
  return nodes_[static_cast<std::size_t>(v.index())].needs_grad;
}

Matrix Tape::adjoint(const Var& v) const {
  const Node& n = nodes_[static_cast<std::size_t>(v.index())];
  if (n.adj.size() == 0) return Matrix::Zero(n.value.rows(), n.value.cols());
  return n.adj;
}

void Tape::accumulate(int idx, const Matrix& grad) {
  Node& n = nodes_[static_cast<std::size_t>(idx)];
  if (!n.needs_grad) return;
  if (n.adj.size() == 0)
    n.adj = grad;
  else
    n.adj += grad;
}

const Matrix& Tape::adjoint_ref(int idx) const {
  return nodes_[static_cast<std::size_t>(idx)].adj;
}

void Tape::backward(const Var& output) {
  if (output.tape() != this)
    throw NumericError("Tape::backward: output from a different tape");
  const Matrix& out = value(output);
  if (out.rows() != 1 || out.cols() != 1)
    throw NumericError("Tape::backward: output must be scalar");
  for (Node& n : nodes_) n.adj.resize(0, 0);
  nodes_[static_cast<std::size_t>(output.index())].adj =
      Matrix::Constant(1, 1, 1.0);
  for (int i = output.index(); i >= 0; --i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.back && n.adj.size() != 0) n.back(*this);
  }
}

void Tape::clear() { nodes_.clear(); }

// ---- op implementations ------------------------------------------------

namespace {

// Pushes the result node and, when gradients are needed, attaches a backward
// closure built by `make_back(out_idx)`.
template <typename MakeBack>
Var emit(Tape& t, Matrix value, bool needs_grad, MakeBack&& make_back) {
  Var out = t.node(std::move(value), needs_grad, nullptr);
  if (needs_grad) t.set_back(out, make_back(out.index()));
  return out;
}

}  // namespace

Var add(const Var& a, const Var& b) {
  check_same_tape(a, b, "add");
  check_same_shape(a.value(), b.value(), "add");
  Tape& t = *a.tape();
  const int ia = a.index(), ib = b.index();
  const bool ng = t.needs_grad(a) || t.needs_grad(b);
  return emit(t, a.value() + b.value(), ng, [ia, ib](int io) {
    return [ia, ib, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      tp.accumulate(ia, g);
      tp.accumulate(ib, g);
    };
  });
}

Var sub(const Var& a, const Var& b) {
  check_same_tape(a, b, "sub");
  check_same_shape(a.value(), b.value(), "sub");
  Tape& t = *a.tape();
  const int ia = a.index(), ib = b.index();
  const bool ng = t.needs_grad(a) || t.needs_grad(b);
  return emit(t, a.value() - b.value(), ng, [ia, ib](int io) {
    return [ia, ib, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      tp.accumulate(ia, g);
      tp.accumulate(ib, -g);
    };
  });
}

Var cwise_mul(const Var& a, const Var& b) {
  check_same_tape(a, b, "cwise_mul");
  check_same_shape(a.value(), b.value(), "cwise_mul");
  Tape& t = *a.tape();
  const int ia = a.index(), ib = b.index();
  const bool ng = t.needs_grad(a) || t.needs_grad(b);
  return emit(t, a.value().cwiseProduct(b.value()), ng, [ia, ib](int io) {
    return [ia, ib, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      tp.accumulate(ia, g.cwiseProduct(tp.value_at(ib)));
      tp.accumulate(ib, g.cwiseProduct(tp.value_at(ia)));
    };
  });
}

Var cwise_div(const Var& a, const Var& b) {
  check_same_tape(a, b, "cwise_div");
  check_same_shape(a.value(), b.value(), "cwise_div");
  Tape& t = *a.tape();
  const int ia = a.index(), ib = b.index();
  const bool ng = t.needs_grad(a) || t.needs_grad(b);
  return emit(t, a.value().cwiseQuotient(b.value()), ng, [ia, ib](int io) {
    return [ia, ib, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      const Matrix& bv = tp.value_at(ib);
      tp.accumulate(ia, g.cwiseQuotient(bv));
      tp.accumulate(ib, -(g.cwiseProduct(tp.value_at(io))).cwiseQuotient(bv));
    };
  });
}

Var matmul(const Var& a, const Var& b) {
  check_same_tape(a, b, "matmul");
  if (a.value().cols() != b.value().rows())
    throw NumericError("matmul: inner dimension mismatch");
  Tape& t = *a.tape();
  const int ia = a.index(), ib = b.index();
  const bool ng = t.needs_grad(a) || t.needs_grad(b);
  return emit(t, a.value() * b.value(), ng, [ia, ib](int io) {
    return [ia, ib, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      tp.accumulate(ia, g * tp.value_at(ib).transpose());
      tp.accumulate(ib, tp.value_at(ia).transpose() * g);
    };
  });
}

Var linear(const Var& w, const Var& x, const Var& b) {
  check_same_tape(w, x, "linear");
  check_same_tape(w, b, "linear");
  const Matrix& wv = w.value();
  const Matrix& xv = x.value();
  const Matrix& bv = b.value();
  if (wv.cols() != xv.rows() || bv.rows() != wv.rows() || bv.cols() != 1)
    throw NumericError("linear: dimension mismatch");
  Tape& t = *w.tape();
  const int iw = w.index(), ix = x.index(), ib = b.index();
  const bool ng = t.needs_grad(w) || t.needs_grad(x) || t.needs_grad(b);
  Matrix value = wv * xv;
  value.colwise() += bv.col(0);
  return emit(t, std::move(value), ng, [iw, ix, ib](int io) {
    return [iw, ix, ib, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      tp.accumulate(iw, g * tp.value_at(ix).transpose());
      tp.accumulate(ix, tp.value_at(iw).transpose() * g);
      tp.accumulate(ib, g.rowwise().sum());
    };
  });
}

Var scale(const Var& a, double c) {
  Tape& t = *a.tape();
  const int ia = a.index();
  return emit(t, c * a.value(), t.needs_grad(a), [ia, c](int io) {
    return [ia, c, io](Tape& tp) {
      tp.accumulate(ia, c * tp.adjoint_ref(io));
    };
  });
}

Var add_scalar(const Var& a, double c) {
  Tape& t = *a.tape();
  const int ia = a.index();
  return emit(t, (a.value().array() + c).matrix(), t.needs_grad(a), [ia](int io) {
    return [ia, io](Tape& tp) { tp.accumulate(ia, tp.adjoint_ref(io)); };
  });
}

Var square(const Var& a) {
  Tape& t = *a.tape();
  const int ia = a.index();
  return emit(t, a.value().array().square().matrix(), t.needs_grad(a), [ia](int io) {
    return [ia, io](Tape& tp) {
      tp.accumulate(
          ia, (2.0 * tp.value_at(ia).array() * tp.adjoint_ref(io).array())
                  .matrix());
    };
  });
}

Var log(const Var& a) {
  Tape& t = *a.tape();
  const int ia = a.index();
  return emit(t, a.value().array().log().matrix(), t.needs_grad(a), [ia](int io) {
    return [ia, io](Tape& tp) {
      tp.accumulate(
          ia,
          (tp.adjoint_ref(io).array() / tp.value_at(ia).array()).matrix());
    };
  });
}

Var softplus(const Var& a) {
  Tape& t = *a.tape();
  const int ia = a.index();
  Matrix value = a.value().unaryExpr([](double x) { return stable_softplus(x); });
  return emit(t, std::move(value), t.needs_grad(a), [ia](int io) {
    return [ia, io](Tape& tp) {
      const Matrix s =
          tp.value_at(ia).unaryExpr([](double x) { return sigmoid(x); });
      tp.accumulate(ia, tp.adjoint_ref(io).cwiseProduct(s));
    };
  });
}

Var shifted_softplus(const Var& a) {
  constexpr double kLn2 = 0.6931471805599453094;
  Tape& t = *a.tape();
  const int ia = a.index();
  Matrix value =
      a.value().unaryExpr([](double x) { return stable_softplus(x) - kLn2; });
  return emit(t, std::move(value), t.needs_grad(a), [ia](int io) {
    return [ia, io](Tape& tp) {
      const Matrix s =
          tp.value_at(ia).unaryExpr([](double x) { return sigmoid(x); });
      tp.accumulate(ia, tp.adjoint_ref(io).cwiseProduct(s));
    };
  });
}

Var sum(const Var& a) {
  Tape& t = *a.tape();
  const int ia = a.index();
  return emit(t, Matrix::Constant(1, 1, a.value().sum()), t.needs_grad(a),
              [ia](int io) {
                return [ia, io](Tape& tp) {
                  const double g = tp.adjoint_ref(io)(0, 0);
                  const Matrix& av = tp.value_at(ia);
                  tp.accumulate(ia,
                                Matrix::Constant(av.rows(), av.cols(), g));
                };
              });
}

Var gather_cols(const Var& a, const std::vector<int>& idx) {
  Tape& t = *a.tape();
  const Matrix& av = a.value();
  Matrix value(av.rows(), static_cast<long>(idx.size()));
  for (std::size_t e = 0; e < idx.size(); ++e)
    value.col(static_cast<long>(e)) = av.col(idx[e]);
  const int ia = a.index();
  return emit(t, std::move(value), t.needs_grad(a), [ia, idx](int io) {
    return [ia, idx, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      Matrix ga = Matrix::Zero(tp.value_at(ia).rows(), tp.value_at(ia).cols());
      for (std::size_t e = 0; e < idx.size(); ++e)
        ga.col(idx[e]) += g.col(static_cast<long>(e));
      tp.accumulate(ia, ga);
    };
  });
}

Var scatter_sum_cols(const Var& a, const std::vector<int>& dst, int out_cols) {
  Tape& t = *a.tape();
  const Matrix& av = a.value();
  if (static_cast<std::size_t>(av.cols()) != dst.size())
    throw NumericError("scatter_sum_cols: column/index count mismatch");
  Matrix value = Matrix::Zero(av.rows(), out_cols);
  for (std::size_t e = 0; e < dst.size(); ++e)
    value.col(dst[e]) += av.col(static_cast<long>(e));
  const int ia = a.index();
  return emit(t, std::move(value), t.needs_grad(a), [ia, dst](int io) {
    return [ia, dst, io](Tape& tp) {
      const Matrix& g = tp.adjoint_ref(io);
      Matrix ga(tp.value_at(ia).rows(), static_cast<long>(dst.size()));
      for (std::size_t e = 0; e < dst.size(); ++e)
        ga.col(static_cast<long>(e)) = g.col(dst[e]);
      tp.accumulate(ia, ga);
    };
  });
}

}  // namespace molens::diff
