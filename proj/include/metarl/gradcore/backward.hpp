#pragma once

#include "metarl/gradcore/ops.hpp"
#include "metarl/gradcore/param_set.hpp"

#include <functional>

namespace metarl::gradcore {

// Reverse-mode gradients of a scalar loss. Adjoints are built out of graph
// ops, so with create_graph=true the returned gradients are differentiable
// nodes themselves (needed for gradient-of-gradient). With create_graph=false
// the results are detached constants and the transient adjoint graph is
// dropped. Leaves that the loss does not reach get zero-filled gradients.
GradientVector backward(const NodePtr& loss, const ParamSet& params,
                        bool create_graph = false);

// Gradients against arbitrary nodes (not necessarily leaves).
std::vector<NodePtr> backward_nodes(const NodePtr& loss,
                                    const std::vector<NodePtr>& targets,
                                    bool create_graph = false);

// Central-difference check of backward() against f evaluated at perturbed
// parameters. Returns the max elementwise relative error with denominator
// max(|analytic|, |numeric|, 1e-8). Throws if f produces a non-finite value.
double finite_diff_check(const std::function<NodePtr(const ParamSet&)>& f,
                         const ParamSet& params, double eps);

}  // namespace metarl::gradcore
