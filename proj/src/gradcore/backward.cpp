#include "metarl/gradcore/backward.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace metarl::gradcore {

namespace {

// Every node reachable from root through parent links, ascending id.
std::vector<NodePtr> collect_subgraph(const NodePtr& root) {
  std::vector<NodePtr> out;
  std::unordered_set<const Node*> seen;
  std::vector<NodePtr> stack{root};
  seen.insert(root.get());
  while (!stack.empty()) {
    NodePtr n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (const NodePtr& p : n->parents()) {
      if (seen.insert(p.get()).second) stack.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const NodePtr& a, const NodePtr& b) { return a->id() < b->id(); });
  return out;
}

// Sum over the adjoint when the operand entered an elementwise op as a
// broadcast scalar.
NodePtr reduce_to(NodePtr contrib, const NodePtr& operand) {
  if (operand->rank() == 0 && contrib->rank() != 0) return sum(std::move(contrib));
  return contrib;
}

NodePtr neg(NodePtr x) { return mul(std::move(x), scalar_const(-1.0)); }

Eigen::ArrayXd expanded_values(const NodePtr& n, int64_t size) {
  if (n->rank() == 0) return Eigen::ArrayXd::Constant(size, n->values()[0]);
  return n->values();
}

struct Accumulator {
  std::unordered_map<const Node*, NodePtr> adjoints;

  void push(const NodePtr& target, NodePtr contrib) {
    auto it = adjoints.find(target.get());
    if (it == adjoints.end()) {
      adjoints.emplace(target.get(), std::move(contrib));
    } else {
      it->second = add(it->second, std::move(contrib));
    }
  }
};

void push_parent_contributions(const NodePtr& n, const NodePtr& g, Accumulator& acc,
                               const std::unordered_map<const Node*, bool>& relevant) {
  auto wants = [&](const NodePtr& p) {
    auto it = relevant.find(p.get());
    return it != relevant.end() && it->second;
  };
  const auto& ps = n->parents();
  switch (n->op()) {
    case Op::Leaf:
      return;
    case Op::Add:
      if (wants(ps[0])) acc.push(ps[0], reduce_to(g, ps[0]));
      if (wants(ps[1])) acc.push(ps[1], reduce_to(g, ps[1]));
      return;
    case Op::Sub:
      if (wants(ps[0])) acc.push(ps[0], reduce_to(g, ps[0]));
      if (wants(ps[1])) acc.push(ps[1], reduce_to(neg(g), ps[1]));
      return;
    case Op::Mul:
      if (wants(ps[0])) acc.push(ps[0], reduce_to(mul(g, ps[1]), ps[0]));
      if (wants(ps[1])) acc.push(ps[1], reduce_to(mul(g, ps[0]), ps[1]));
      return;
    case Op::Div:
      if (wants(ps[0])) acc.push(ps[0], reduce_to(div(g, ps[1]), ps[0]));
      if (wants(ps[1])) acc.push(ps[1], reduce_to(neg(div(mul(g, n), ps[1])), ps[1]));
      return;
    case Op::Matmul:
      if (wants(ps[0])) acc.push(ps[0], matmul(g, transpose(ps[1])));
      if (wants(ps[1])) acc.push(ps[1], matmul(transpose(ps[0]), g));
      return;
    case Op::Transpose:
      if (wants(ps[0])) acc.push(ps[0], transpose(g));
      return;
    case Op::Reshape:
      if (wants(ps[0])) acc.push(ps[0], reshape(g, ps[0]->shape()));
      return;
    case Op::Tanh:
      if (wants(ps[0])) acc.push(ps[0], mul(g, sub(scalar_const(1.0), square(n))));
      return;
    case Op::Exp:
      if (wants(ps[0])) acc.push(ps[0], mul(g, n));
      return;
    case Op::Log:
      if (wants(ps[0])) acc.push(ps[0], div(g, ps[0]));
      return;
    case Op::Square:
      if (wants(ps[0])) acc.push(ps[0], mul(g, mul(ps[0], scalar_const(2.0))));
      return;
    case Op::SumAll:
      if (wants(ps[0])) {
        acc.push(ps[0], ps[0]->rank() == 0 ? g : broadcast_scalar(g, ps[0]->shape()));
      }
      return;
    case Op::MeanAll:
      if (wants(ps[0])) {
        NodePtr scaled = mul(g, scalar_const(1.0 / static_cast<double>(ps[0]->values().size())));
        acc.push(ps[0], ps[0]->rank() == 0 ? scaled : broadcast_scalar(scaled, ps[0]->shape()));
      }
      return;
    case Op::SumRows:
      if (wants(ps[0])) acc.push(ps[0], broadcast_cols(g, ps[0]->cols()));
      return;
    case Op::SumCols:
      if (wants(ps[0])) acc.push(ps[0], broadcast_rows(g, ps[0]->rows()));
      return;
    case Op::Clip: {
      if (!wants(ps[0])) return;
      const auto& x = ps[0]->values();
      Eigen::ArrayXd mask =
          ((x >= n->attr_lo) && (x <= n->attr_hi)).cast<double>();
      acc.push(ps[0], mul(g, constant(ps[0]->shape(), std::move(mask))));
      return;
    }
    case Op::Minimum: {
      const int64_t sz = n->values().size();
      Eigen::ArrayXd av = expanded_values(ps[0], sz);
      Eigen::ArrayXd bv = expanded_values(ps[1], sz);
      Eigen::ArrayXd mask_a = (av <= bv).cast<double>();
      if (wants(ps[0])) {
        acc.push(ps[0], reduce_to(mul(g, constant(n->shape(), mask_a)), ps[0]));
      }
      if (wants(ps[1])) {
        Eigen::ArrayXd mask_b = 1.0 - mask_a;
        acc.push(ps[1], reduce_to(mul(g, constant(n->shape(), std::move(mask_b))), ps[1]));
      }
      return;
    }
    case Op::BroadcastRows:
      if (wants(ps[0])) acc.push(ps[0], sum_cols(g));
      return;
    case Op::BroadcastCols:
      if (wants(ps[0])) acc.push(ps[0], sum_rows(g));
      return;
    case Op::BroadcastScalar:
      if (wants(ps[0])) acc.push(ps[0], sum(g));
      return;
    case Op::ConcatVec:
      if (wants(ps[0])) acc.push(ps[0], slice_vec(g, 0, ps[0]->dim(0)));
      if (wants(ps[1])) acc.push(ps[1], slice_vec(g, ps[0]->dim(0), ps[1]->dim(0)));
      return;
    case Op::ConcatCols:
      if (wants(ps[0])) acc.push(ps[0], slice_cols(g, 0, ps[0]->cols()));
      if (wants(ps[1])) acc.push(ps[1], slice_cols(g, ps[0]->cols(), ps[1]->cols()));
      return;
    case Op::SliceVec:
      if (wants(ps[0])) acc.push(ps[0], pad_vec(g, n->attr_i0, ps[0]->dim(0)));
      return;
    case Op::SliceCols:
      if (wants(ps[0])) acc.push(ps[0], pad_cols(g, n->attr_i0, ps[0]->cols()));
      return;
    case Op::PadVec:
      if (wants(ps[0])) acc.push(ps[0], slice_vec(g, n->attr_i0, ps[0]->dim(0)));
      return;
    case Op::PadCols:
      if (wants(ps[0])) acc.push(ps[0], slice_cols(g, n->attr_i0, ps[0]->cols()));
      return;
    case Op::StopGradient:
      return;
    case Op::MagicBox:
      // d magic_box(x)/dx = magic_box(x); the output node keeps the graph
      // dependence alive for higher-order terms while its value stays 1.
      if (wants(ps[0])) acc.push(ps[0], mul(g, n));
      return;
  }
}

}  // namespace

std::vector<NodePtr> backward_nodes(const NodePtr& loss, const std::vector<NodePtr>& targets,
                                    bool create_graph) {
  if (!loss) throw std::invalid_argument("backward: null loss");
  if (loss->rank() != 0) {
    throw std::invalid_argument("backward: loss must be scalar, got " +
                                shape_str(loss->shape()));
  }

  std::vector<NodePtr> graph = collect_subgraph(loss);

  std::unordered_set<const Node*> target_set;
  for (const auto& t : targets) target_set.insert(t.get());

  // A node is relevant when its adjoint can still reach a target through
  // parent links. Stop-gradient nodes pass nothing upstream.
  std::unordered_map<const Node*, bool> relevant;
  relevant.reserve(graph.size());
  for (const NodePtr& n : graph) {
    bool r = target_set.count(n.get()) > 0;
    if (!r && n->op() != Op::StopGradient) {
      for (const NodePtr& p : n->parents()) {
        auto it = relevant.find(p.get());
        if (it != relevant.end() && it->second) {
          r = true;
          break;
        }
      }
    }
    relevant[n.get()] = r;
  }

  Accumulator acc;
  acc.adjoints.emplace(loss.get(), scalar_const(1.0));

  for (auto it = graph.rbegin(); it != graph.rend(); ++it) {
    const NodePtr& n = *it;
    auto adj_it = acc.adjoints.find(n.get());
    if (adj_it == acc.adjoints.end()) continue;
    if (!relevant[n.get()]) continue;
    NodePtr g = adj_it->second;
    push_parent_contributions(n, g, acc, relevant);
    if (!target_set.count(n.get())) acc.adjoints.erase(n.get());
  }

  std::vector<NodePtr> out;
  out.reserve(targets.size());
  for (const NodePtr& t : targets) {
    auto it = acc.adjoints.find(t.get());
    NodePtr gnode = (it != acc.adjoints.end()) ? it->second : zeros_const(t->shape());
    if (!create_graph) gnode = constant(gnode->shape(), gnode->values());
    out.push_back(std::move(gnode));
  }
  return out;
}

GradientVector backward(const NodePtr& loss, const ParamSet& params, bool create_graph) {
  std::vector<NodePtr> targets;
  targets.reserve(params.size());
  for (size_t i = 0; i < params.size(); ++i) targets.push_back(params.entry(i).second);
  std::vector<NodePtr> grads = backward_nodes(loss, targets, create_graph);
  std::vector<std::pair<std::string, NodePtr>> named;
  named.reserve(grads.size());
  for (size_t i = 0; i < params.size(); ++i) {
    named.emplace_back(params.entry(i).first, std::move(grads[i]));
  }
  return GradientVector(std::move(named));
}

}  // namespace metarl::gradcore
