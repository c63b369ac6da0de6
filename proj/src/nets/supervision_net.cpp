#include "metarl/nets/supervision_net.hpp"

#include <cmath>
#include <stdexcept>

namespace metarl::nets {

using namespace gradcore;

SupervisionNet make_supervision_net(const std::string& prefix, int obs_dim, int act_dim,
                                    int z_dim, const std::vector<int>& hidden, int repr_dim,
                                    RngStream& rng) {
  SupervisionNet net;
  net.prefix = prefix;
  net.obs_dim = obs_dim;
  net.act_dim = act_dim;
  net.z_dim = z_dim;
  net.repr_dim = repr_dim;
  net.body = MlpLayout{obs_dim + act_dim + z_dim, hidden, repr_dim};
  add_mlp_params(net.params, prefix, net.body, rng);
  const double bound = 1.0 / std::sqrt(static_cast<double>(repr_dim));
  Eigen::ArrayXd w(repr_dim);
  for (int i = 0; i < repr_dim; ++i) w[i] = bound * (2.0 * rng.next_double() - 1.0);
  net.params.add(prefix + ".w", {repr_dim}, std::move(w));
  return net;
}

NodePtr supervision_input(const SupervisionNet& net, const Eigen::MatrixXd& obs,
                          const Eigen::MatrixXd& actions, NodePtr z) {
  if (obs.cols() != net.obs_dim || actions.cols() != net.act_dim ||
      obs.rows() != actions.rows()) {
    throw std::invalid_argument(net.prefix + ": bad observation/action shapes");
  }
  const int m = static_cast<int>(obs.rows());
  Eigen::MatrixXd sa(m, net.obs_dim + net.act_dim);
  sa << obs, actions;
  NodePtr X = matrix_const(sa);
  if (net.z_dim == 0) return X;
  if (!z) throw std::invalid_argument(net.prefix + ": latent required");
  NodePtr zmat;
  if (z->rank() == 1) {
    if (z->dim(0) != net.z_dim) throw std::invalid_argument(net.prefix + ": latent dim mismatch");
    zmat = broadcast_rows(z, m);
  } else if (z->rank() == 2 && z->rows() == m && z->cols() == net.z_dim) {
    zmat = z;
  } else {
    throw std::invalid_argument(net.prefix + ": latent shape " + shape_str(z->shape()));
  }
  return concat_cols(X, zmat);
}

NodePtr supervision_predict(const SupervisionNet& net, NodePtr X) {
  return supervision_predict_with(net, net.params, std::move(X));
}

NodePtr supervision_predict_with(const SupervisionNet& net, const ParamSet& params, NodePtr X) {
  NodePtr repr = mlp_forward(params, net.prefix, net.body, std::move(X));
  NodePtr w = reshape(params.node(net.prefix + ".w"), {net.repr_dim, 1});
  return reshape(matmul(repr, w), {repr->rows()});
}

}  // namespace metarl::nets
