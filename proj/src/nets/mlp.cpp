#include "metarl/nets/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace metarl::nets {

using namespace gradcore;

namespace {

std::vector<std::pair<int, int>> layer_dims(const MlpLayout& layout) {
  std::vector<std::pair<int, int>> dims;
  int in = layout.input_dim;
  for (int h : layout.hidden) {
    dims.emplace_back(in, h);
    in = h;
  }
  dims.emplace_back(in, layout.output_dim);
  return dims;
}

}  // namespace

void add_mlp_params(ParamSet& ps, const std::string& prefix, const MlpLayout& layout,
                    RngStream& rng) {
  const auto dims = layer_dims(layout);
  for (size_t l = 0; l < dims.size(); ++l) {
    const auto [in, out] = dims[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    Eigen::ArrayXd w(static_cast<int64_t>(in) * out);
    for (int64_t i = 0; i < w.size(); ++i) w[i] = bound * (2.0 * rng.next_double() - 1.0);
    ps.add(prefix + ".W" + std::to_string(l), {in, out}, std::move(w));
    ps.add(prefix + ".b" + std::to_string(l), {out}, Eigen::ArrayXd::Zero(out));
  }
}

ParamLookup lookup_from(const ParamSet& ps) {
  return [&ps](const std::string& name) { return ps.node(name); };
}

NodePtr mlp_forward(const ParamLookup& params, const std::string& prefix,
                    const MlpLayout& layout, NodePtr X) {
  if (X->rank() != 2 || X->cols() != layout.input_dim) {
    throw std::invalid_argument("mlp_forward: input shape " + shape_str(X->shape()) +
                                " does not match input_dim " +
                                std::to_string(layout.input_dim));
  }
  const int m = X->rows();
  const auto dims = layer_dims(layout);
  NodePtr h = std::move(X);
  for (size_t l = 0; l < dims.size(); ++l) {
    NodePtr W = params(prefix + ".W" + std::to_string(l));
    NodePtr b = params(prefix + ".b" + std::to_string(l));
    h = add(matmul(h, W), broadcast_rows(b, m));
    if (l + 1 < dims.size()) h = tanh(h);
  }
  return h;
}

NodePtr mlp_forward(const ParamSet& ps, const std::string& prefix, const MlpLayout& layout,
                    NodePtr X) {
  return mlp_forward(lookup_from(ps), prefix, layout, std::move(X));
}

FastMlp::FastMlp(const ParamSet& ps, const std::string& prefix, const MlpLayout& layout) {
  const auto dims = layer_dims(layout);
  for (size_t l = 0; l < dims.size(); ++l) {
    const NodePtr& W = ps.node(prefix + ".W" + std::to_string(l));
    const NodePtr& b = ps.node(prefix + ".b" + std::to_string(l));
    weights_.push_back(W->matrix());
    biases_.push_back(b->values().matrix());
  }
}

Eigen::VectorXd FastMlp::operator()(const Eigen::VectorXd& input) const {
  Eigen::VectorXd h = input;
  for (size_t l = 0; l < weights_.size(); ++l) {
    h = (weights_[l].transpose() * h + biases_[l]).eval();
    if (l + 1 < weights_.size()) h = h.array().tanh().matrix();
  }
  return h;
}

}  // namespace metarl::nets
