#pragma once

#include "metarl/nets/mlp.hpp"

namespace metarl::nets {

// Self-supervision network: an MLP body maps (s, a, z) to a representation
// vector and a linear head turns it into the scalar prediction
// M(s,a,z) = w^T body(s,a,z).
struct SupervisionNet {
  std::string prefix;
  int obs_dim = 0;
  int act_dim = 0;
  int z_dim = 0;
  int repr_dim = 0;
  MlpLayout body;
  ParamSet params;  // body weights plus "<prefix>.w" head
};

SupervisionNet make_supervision_net(const std::string& prefix, int obs_dim, int act_dim,
                                    int z_dim, const std::vector<int>& hidden, int repr_dim,
                                    RngStream& rng);

// [m, obs+act+z] input node; z as [z_dim] (broadcast) or [m, z_dim].
NodePtr supervision_input(const SupervisionNet& net, const Eigen::MatrixXd& obs,
                          const Eigen::MatrixXd& actions, NodePtr z);

// Scalar prediction per row: [m].
NodePtr supervision_predict(const SupervisionNet& net, NodePtr X);

// Same forward against an explicit parameter set (e.g. detached copies).
NodePtr supervision_predict_with(const SupervisionNet& net, const ParamSet& params, NodePtr X);

}  // namespace metarl::nets
