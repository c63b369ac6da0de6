#include "metarl/gradcore/ops.hpp"

#include <stdexcept>

namespace metarl::gradcore {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;

NodePtr make(Shape shape, Eigen::ArrayXd values, Op op, std::vector<NodePtr> parents) {
  return std::make_shared<const Node>(std::move(shape), std::move(values), op,
                                      std::move(parents));
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool is_scalar(const NodePtr& n) { return n->rank() == 0; }

// Shape of an elementwise binary result, allowing a rank-0 operand.
Shape binary_shape(const NodePtr& a, const NodePtr& b, const char* what) {
  if (is_scalar(a)) return b->shape();
  if (is_scalar(b)) return a->shape();
  require(same_shape(a->shape(), b->shape()),
          std::string(what) + ": shape mismatch " + shape_str(a->shape()) + " vs " +
              shape_str(b->shape()));
  return a->shape();
}

template <typename F>
NodePtr binary_elementwise(NodePtr a, NodePtr b, Op op, const char* what, F&& f) {
  Shape out_shape = binary_shape(a, b, what);
  Eigen::ArrayXd out;
  if (is_scalar(a) && !is_scalar(b)) {
    out = f(Eigen::ArrayXd::Constant(b->values().size(), a->values()[0]), b->values());
  } else if (is_scalar(b) && !is_scalar(a)) {
    out = f(a->values(), Eigen::ArrayXd::Constant(a->values().size(), b->values()[0]));
  } else {
    out = f(a->values(), b->values());
  }
  return make(std::move(out_shape), std::move(out), op, {std::move(a), std::move(b)});
}

}  // namespace

NodePtr leaf(Shape shape, Eigen::ArrayXd values) {
  return make(std::move(shape), std::move(values), Op::Leaf, {});
}

NodePtr constant(Shape shape, Eigen::ArrayXd values) {
  return make(std::move(shape), std::move(values), Op::Leaf, {});
}

NodePtr scalar_const(double v) {
  Eigen::ArrayXd a(1);
  a[0] = v;
  return constant({}, std::move(a));
}

NodePtr vector_const(const Eigen::VectorXd& v) {
  return constant({static_cast<int>(v.size())}, v.array());
}

NodePtr matrix_const(const Eigen::MatrixXd& m) {
  RowMat rm = m;
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(rm.data(), rm.size());
  return constant({static_cast<int>(m.rows()), static_cast<int>(m.cols())}, std::move(flat));
}

NodePtr zeros_const(Shape shape) {
  Eigen::ArrayXd z = Eigen::ArrayXd::Zero(numel(shape));
  return constant(std::move(shape), std::move(z));
}

NodePtr add(NodePtr a, NodePtr b) {
  return binary_elementwise(std::move(a), std::move(b), Op::Add, "add",
                            [](const auto& x, const auto& y) { return (x + y).eval(); });
}

NodePtr sub(NodePtr a, NodePtr b) {
  return binary_elementwise(std::move(a), std::move(b), Op::Sub, "sub",
                            [](const auto& x, const auto& y) { return (x - y).eval(); });
}

NodePtr mul(NodePtr a, NodePtr b) {
  return binary_elementwise(std::move(a), std::move(b), Op::Mul, "mul",
                            [](const auto& x, const auto& y) { return (x * y).eval(); });
}

NodePtr div(NodePtr a, NodePtr b) {
  return binary_elementwise(std::move(a), std::move(b), Op::Div, "div",
                            [](const auto& x, const auto& y) { return (x / y).eval(); });
}

NodePtr minimum(NodePtr a, NodePtr b) {
  return binary_elementwise(std::move(a), std::move(b), Op::Minimum, "minimum",
                            [](const auto& x, const auto& y) { return x.min(y).eval(); });
}

NodePtr matmul(NodePtr a, NodePtr b) {
  require(a->rank() == 2 && b->rank() == 2, "matmul: operands must be rank 2");
  require(a->cols() == b->rows(), "matmul: inner dims " + shape_str(a->shape()) + " @ " +
                                      shape_str(b->shape()));
  const int m = a->rows(), n = b->cols();
  RowMat c = a->matrix() * b->matrix();
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(c.data(), c.size());
  return make({m, n}, std::move(flat), Op::Matmul, {std::move(a), std::move(b)});
}

NodePtr transpose(NodePtr a) {
  require(a->rank() == 2, "transpose: rank 2 required");
  RowMat t = a->matrix().transpose();
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(t.data(), t.size());
  Shape s{a->cols(), a->rows()};
  return make(std::move(s), std::move(flat), Op::Transpose, {std::move(a)});
}

NodePtr reshape(NodePtr a, Shape shape) {
  require(numel(shape) == a->values().size(),
          "reshape: numel mismatch " + shape_str(a->shape()) + " -> " + shape_str(shape));
  Eigen::ArrayXd v = a->values();
  return make(std::move(shape), std::move(v), Op::Reshape, {std::move(a)});
}

NodePtr tanh(NodePtr a) {
  Eigen::ArrayXd v = a->values().tanh();
  Shape s = a->shape();
  return make(std::move(s), std::move(v), Op::Tanh, {std::move(a)});
}

NodePtr exp(NodePtr a) {
  Eigen::ArrayXd v = a->values().exp();
  Shape s = a->shape();
  return make(std::move(s), std::move(v), Op::Exp, {std::move(a)});
}

NodePtr log(NodePtr a) {
  Eigen::ArrayXd v = a->values().log();
  Shape s = a->shape();
  return make(std::move(s), std::move(v), Op::Log, {std::move(a)});
}

NodePtr square(NodePtr a) {
  Eigen::ArrayXd v = a->values().square();
  Shape s = a->shape();
  return make(std::move(s), std::move(v), Op::Square, {std::move(a)});
}

NodePtr clip(NodePtr a, double lo, double hi) {
  require(lo <= hi, "clip: lo > hi");
  Eigen::ArrayXd v = a->values().max(lo).min(hi);
  Shape s = a->shape();
  auto n = std::make_shared<Node>(std::move(s), std::move(v), Op::Clip,
                                  std::vector<NodePtr>{std::move(a)});
  n->attr_lo = lo;
  n->attr_hi = hi;
  return n;
}

NodePtr sum(NodePtr a) {
  Eigen::ArrayXd v(1);
  v[0] = a->values().sum();
  return make({}, std::move(v), Op::SumAll, {std::move(a)});
}

NodePtr mean(NodePtr a) {
  require(a->values().size() > 0, "mean: empty node");
  Eigen::ArrayXd v(1);
  v[0] = a->values().mean();
  return make({}, std::move(v), Op::MeanAll, {std::move(a)});
}

NodePtr sum_rows(NodePtr a) {
  require(a->rank() == 2, "sum_rows: rank 2 required");
  Eigen::VectorXd r = a->matrix().rowwise().sum();
  const int m = a->rows();
  return make({m}, r.array(), Op::SumRows, {std::move(a)});
}

NodePtr sum_cols(NodePtr a) {
  require(a->rank() == 2, "sum_cols: rank 2 required");
  Eigen::VectorXd c = a->matrix().colwise().sum().transpose();
  const int n = a->cols();
  return make({n}, c.array(), Op::SumCols, {std::move(a)});
}

NodePtr broadcast_rows(NodePtr v, int m) {
  require(v->rank() == 1, "broadcast_rows: rank 1 required");
  require(m >= 1, "broadcast_rows: m >= 1");
  const int n = v->dim(0);
  RowMat out = v->values().matrix().transpose().replicate(m, 1);
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(out.data(), out.size());
  return make({m, n}, std::move(flat), Op::BroadcastRows, {std::move(v)});
}

NodePtr broadcast_cols(NodePtr v, int n) {
  require(v->rank() == 1, "broadcast_cols: rank 1 required");
  require(n >= 1, "broadcast_cols: n >= 1");
  const int m = v->dim(0);
  RowMat out = v->values().matrix().replicate(1, n);
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(out.data(), out.size());
  return make({m, n}, std::move(flat), Op::BroadcastCols, {std::move(v)});
}

NodePtr broadcast_scalar(NodePtr s, Shape shape) {
  require(s->rank() == 0, "broadcast_scalar: scalar required");
  Eigen::ArrayXd v = Eigen::ArrayXd::Constant(numel(shape), s->values()[0]);
  return make(std::move(shape), std::move(v), Op::BroadcastScalar, {std::move(s)});
}

NodePtr concat_vec(NodePtr a, NodePtr b) {
  require(a->rank() == 1 && b->rank() == 1, "concat_vec: rank 1 required");
  Eigen::ArrayXd v(a->values().size() + b->values().size());
  v << a->values(), b->values();
  const int n = static_cast<int>(v.size());
  return make({n}, std::move(v), Op::ConcatVec, {std::move(a), std::move(b)});
}

NodePtr concat_cols(NodePtr a, NodePtr b) {
  require(a->rank() == 2 && b->rank() == 2, "concat_cols: rank 2 required");
  require(a->rows() == b->rows(), "concat_cols: row mismatch");
  const int m = a->rows(), na = a->cols(), nb = b->cols();
  RowMat out(m, na + nb);
  out.leftCols(na) = a->matrix();
  out.rightCols(nb) = b->matrix();
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(out.data(), out.size());
  return make({m, na + nb}, std::move(flat), Op::ConcatCols, {std::move(a), std::move(b)});
}

NodePtr slice_vec(NodePtr a, int offset, int len) {
  require(a->rank() == 1, "slice_vec: rank 1 required");
  require(offset >= 0 && len >= 1 && offset + len <= a->dim(0), "slice_vec: out of range");
  Eigen::ArrayXd v = a->values().segment(offset, len);
  auto n = std::make_shared<Node>(Shape{len}, std::move(v), Op::SliceVec,
                                  std::vector<NodePtr>{std::move(a)});
  n->attr_i0 = offset;
  n->attr_i1 = len;
  return n;
}

NodePtr slice_cols(NodePtr a, int offset, int len) {
  require(a->rank() == 2, "slice_cols: rank 2 required");
  require(offset >= 0 && len >= 1 && offset + len <= a->cols(), "slice_cols: out of range");
  const int m = a->rows();
  RowMat out = a->matrix().middleCols(offset, len);
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(out.data(), out.size());
  auto n = std::make_shared<Node>(Shape{m, len}, std::move(flat), Op::SliceCols,
                                  std::vector<NodePtr>{std::move(a)});
  n->attr_i0 = offset;
  n->attr_i1 = len;
  return n;
}

NodePtr pad_vec(NodePtr a, int offset, int n) {
  require(a->rank() == 1, "pad_vec: rank 1 required");
  require(offset >= 0 && offset + a->dim(0) <= n, "pad_vec: block out of range");
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(n);
  v.segment(offset, a->dim(0)) = a->values();
  auto node = std::make_shared<Node>(Shape{n}, std::move(v), Op::PadVec,
                                     std::vector<NodePtr>{std::move(a)});
  node->attr_i0 = offset;
  return node;
}

NodePtr pad_cols(NodePtr a, int offset, int n) {
  require(a->rank() == 2, "pad_cols: rank 2 required");
  require(offset >= 0 && offset + a->cols() <= n, "pad_cols: block out of range");
  const int m = a->rows();
  RowMat out = RowMat::Zero(m, n);
  out.middleCols(offset, a->cols()) = a->matrix();
  Eigen::ArrayXd flat = Eigen::Map<const Eigen::ArrayXd>(out.data(), out.size());
  auto node = std::make_shared<Node>(Shape{m, n}, std::move(flat), Op::PadCols,
                                     std::vector<NodePtr>{std::move(a)});
  node->attr_i0 = offset;
  return node;
}

NodePtr stop_gradient(NodePtr a) {
  Eigen::ArrayXd v = a->values();
  Shape s = a->shape();
  return make(std::move(s), std::move(v), Op::StopGradient, {std::move(a)});
}

NodePtr magic_box(NodePtr a) {
  Eigen::ArrayXd v = Eigen::ArrayXd::Ones(a->values().size());
  Shape s = a->shape();
  return make(std::move(s), std::move(v), Op::MagicBox, {std::move(a)});
}

}  // namespace metarl::gradcore
