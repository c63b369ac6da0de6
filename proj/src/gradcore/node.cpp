#include "metarl/gradcore/node.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>

namespace metarl::gradcore {

namespace {
std::atomic<uint64_t> g_next_id{1};
}  // namespace

int64_t numel(const Shape& s) {
  int64_t n = 1;
  for (int d : s) n *= d;
  return n;
}

std::string shape_str(const Shape& s) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  os << ']';
  return os.str();
}

bool same_shape(const Shape& a, const Shape& b) { return a == b; }

const char* op_name(Op op) {
  switch (op) {
    case Op::Leaf: return "leaf";
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Matmul: return "matmul";
    case Op::Transpose: return "transpose";
    case Op::Reshape: return "reshape";
    case Op::Tanh: return "tanh";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Square: return "square";
    case Op::SumAll: return "sum";
    case Op::MeanAll: return "mean";
    case Op::SumRows: return "sum_rows";
    case Op::SumCols: return "sum_cols";
    case Op::Clip: return "clip";
    case Op::Minimum: return "minimum";
    case Op::BroadcastRows: return "broadcast_rows";
    case Op::BroadcastCols: return "broadcast_cols";
    case Op::BroadcastScalar: return "broadcast_scalar";
    case Op::ConcatVec: return "concat_vec";
    case Op::ConcatCols: return "concat_cols";
    case Op::SliceVec: return "slice_vec";
    case Op::SliceCols: return "slice_cols";
    case Op::PadVec: return "pad_vec";
    case Op::PadCols: return "pad_cols";
    case Op::StopGradient: return "stop_gradient";
    case Op::MagicBox: return "magic_box";
  }
  return "?";
}

Node::Node(Shape shape, Eigen::ArrayXd values, Op op, std::vector<NodePtr> parents)
    : shape_(std::move(shape)),
      values_(std::move(values)),
      op_(op),
      parents_(std::move(parents)),
      id_(g_next_id.fetch_add(1, std::memory_order_relaxed)) {
  if (values_.size() != numel(shape_)) {
    throw std::invalid_argument(std::string("node ") + op_name(op_) + ": value count " +
                                std::to_string(values_.size()) + " does not match shape " +
                                shape_str(shape_));
  }
  if (shape_.size() > 2) {
    throw std::invalid_argument("node rank > 2 unsupported");
  }
  if (!values_.allFinite()) {
    throw NonFiniteError(std::string("non-finite values in ") + op_name(op_) + " node");
  }
}

double Node::scalar() const {
  if (!shape_.empty()) {
    throw std::invalid_argument("scalar() on node of shape " + shape_str(shape_));
  }
  return values_[0];
}

Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
Node::matrix() const {
  if (rank() != 2) {
    throw std::invalid_argument("matrix() on node of shape " + shape_str(shape_));
  }
  return {values_.data(), shape_[0], shape_[1]};
}

}  // namespace metarl::gradcore
