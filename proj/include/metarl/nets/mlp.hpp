#pragma once

#include "metarl/common/rng.hpp"
#include "metarl/gradcore/backward.hpp"

#include <functional>
#include <string>
#include <vector>

namespace metarl::nets {

using gradcore::NodePtr;
using gradcore::ParamSet;

// Fully connected net with tanh hidden activations and a linear output.
struct MlpLayout {
  int input_dim = 0;
  std::vector<int> hidden;
  int output_dim = 0;
};

// Registers W0,b0,...,Wk,bk under `prefix.`; weights U(-1,1)/sqrt(fan_in),
// biases zero.
void add_mlp_params(ParamSet& ps, const std::string& prefix, const MlpLayout& layout,
                    RngStream& rng);

// Resolves a parameter name to the node to use in a forward pass. Lets the
// same network run on leaf parameters or on adapted (non-leaf) weights.
using ParamLookup = std::function<NodePtr(const std::string&)>;

ParamLookup lookup_from(const ParamSet& ps);

// Graph forward of a [m, input_dim] node -> [m, output_dim].
NodePtr mlp_forward(const ParamLookup& params, const std::string& prefix,
                    const MlpLayout& layout, NodePtr X);
NodePtr mlp_forward(const ParamSet& ps, const std::string& prefix, const MlpLayout& layout,
                    NodePtr X);

// Value-only forward used in rollouts; snapshots weights at construction.
class FastMlp {
 public:
  FastMlp(const ParamSet& ps, const std::string& prefix, const MlpLayout& layout);
  Eigen::VectorXd operator()(const Eigen::VectorXd& input) const;

 private:
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

}  // namespace metarl::nets
