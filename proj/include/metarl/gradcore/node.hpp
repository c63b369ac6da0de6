#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace metarl::gradcore {

// Shapes are rank 0 (scalar), 1 (vector) or 2 (matrix). Matrix data is
// stored flat in row-major order.
using Shape = std::vector<int>;

int64_t numel(const Shape& s);
std::string shape_str(const Shape& s);
bool same_shape(const Shape& a, const Shape& b);

enum class Op : uint8_t {
  Leaf,
  Add,
  Sub,
  Mul,
  Div,
  Matmul,
  Transpose,
  Reshape,
  Tanh,
  Exp,
  Log,
  Square,
  SumAll,
  MeanAll,
  SumRows,         // [m,n] -> [m], reduce along each row
  SumCols,         // [m,n] -> [n], reduce along each column
  Clip,            // zero gradient outside [lo, hi]
  Minimum,         // elementwise min of two nodes
  BroadcastRows,   // [n] -> [m,n], tile as rows
  BroadcastCols,   // [m] -> [m,n], tile as columns
  BroadcastScalar, // scalar -> any shape
  ConcatVec,       // [a],[b] -> [a+b]
  ConcatCols,      // [m,a],[m,b] -> [m,a+b]
  SliceVec,        // [n] -> [len] starting at offset
  SliceCols,       // [m,n] -> [m,len] starting at column offset
  PadVec,          // [len] -> [n], zeros outside the block (adjoint of SliceVec)
  PadCols,         // [m,len] -> [m,n], zeros outside the block
  StopGradient,
  MagicBox,
};

const char* op_name(Op op);

class Node;
using NodePtr = std::shared_ptr<const Node>;

// One value in the computation graph. Nodes are immutable once built: the
// graph is a persistent record, and backward() never touches forward values.
class Node {
 public:
  Node(Shape shape, Eigen::ArrayXd values, Op op, std::vector<NodePtr> parents);

  const Shape& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  int rows() const { return shape_[0]; }
  int cols() const { return shape_[1]; }
  const Eigen::ArrayXd& values() const { return values_; }
  double scalar() const;
  Op op() const { return op_; }
  const std::vector<NodePtr>& parents() const { return parents_; }
  uint64_t id() const { return id_; }

  // Row-major matrix view of the flat buffer.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
  matrix() const;

  // Op attributes (slice offsets, clip bounds, ...); meaning depends on op.
  double attr_lo = 0.0;
  double attr_hi = 0.0;
  int attr_i0 = 0;
  int attr_i1 = 0;

 private:
  Shape shape_;
  Eigen::ArrayXd values_;
  Op op_;
  std::vector<NodePtr> parents_;
  uint64_t id_;
};

// Thrown when an operation would record a non-finite forward value.
struct NonFiniteError : std::runtime_error {
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace metarl::gradcore
