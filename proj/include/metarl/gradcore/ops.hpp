#pragma once

#include "metarl/gradcore/node.hpp"

namespace metarl::gradcore {

// Leaves and constants. Both are parentless nodes; whether a leaf receives a
// gradient is decided by what backward() is asked to differentiate against.
NodePtr leaf(Shape shape, Eigen::ArrayXd values);
NodePtr constant(Shape shape, Eigen::ArrayXd values);
NodePtr scalar_const(double v);
NodePtr vector_const(const Eigen::VectorXd& v);
NodePtr matrix_const(const Eigen::MatrixXd& m);  // row-major copy
NodePtr zeros_const(Shape shape);

// Elementwise binary ops accept equal shapes, or a rank-0 scalar on either
// side (implicit scalar broadcast).
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);
NodePtr minimum(NodePtr a, NodePtr b);

NodePtr matmul(NodePtr a, NodePtr b);  // [m,k] @ [k,n] -> [m,n]
NodePtr transpose(NodePtr a);
NodePtr reshape(NodePtr a, Shape shape);

NodePtr tanh(NodePtr a);
NodePtr exp(NodePtr a);
NodePtr log(NodePtr a);
NodePtr square(NodePtr a);
NodePtr clip(NodePtr a, double lo, double hi);

NodePtr sum(NodePtr a);        // -> scalar
NodePtr mean(NodePtr a);       // -> scalar
NodePtr sum_rows(NodePtr a);   // [m,n] -> [m]
NodePtr sum_cols(NodePtr a);   // [m,n] -> [n]

NodePtr broadcast_rows(NodePtr v, int m);      // [n] -> [m,n]
NodePtr broadcast_cols(NodePtr v, int n);      // [m] -> [m,n]
NodePtr broadcast_scalar(NodePtr s, Shape shape);

NodePtr concat_vec(NodePtr a, NodePtr b);
NodePtr concat_cols(NodePtr a, NodePtr b);
NodePtr slice_vec(NodePtr a, int offset, int len);
NodePtr slice_cols(NodePtr a, int offset, int len);
NodePtr pad_vec(NodePtr a, int offset, int n);    // place [len] into zeros[n]
NodePtr pad_cols(NodePtr a, int offset, int n);   // place [m,len] into zeros[m,n]

NodePtr stop_gradient(NodePtr a);

// DICE magic box: forward value is exactly 1, gradient behaves as
// exp(x - stop_gradient(x)). Elementwise over any shape; the usual argument
// is a (partial) sum of log-probabilities.
NodePtr magic_box(NodePtr a);

}  // namespace metarl::gradcore
