#include "metarl/nets/gaussian_policy.hpp"

#include <cmath>
#include <stdexcept>

namespace metarl::nets {

using namespace gradcore;

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

GaussianPolicy make_gaussian_policy(const std::string& prefix, int obs_dim, int act_dim,
                                    int z_dim, const std::vector<int>& hidden,
                                    RngStream& rng) {
  GaussianPolicy pol;
  pol.prefix = prefix;
  pol.obs_dim = obs_dim;
  pol.act_dim = act_dim;
  pol.z_dim = z_dim;
  pol.layout = MlpLayout{obs_dim + z_dim, hidden, act_dim};
  add_mlp_params(pol.params, prefix, pol.layout, rng);
  pol.params.add(prefix + ".logstd", {act_dim}, Eigen::ArrayXd::Zero(act_dim));
  return pol;
}

NodePtr policy_input(const GaussianPolicy& pol, const Eigen::MatrixXd& obs, NodePtr z) {
  if (obs.cols() != pol.obs_dim) {
    throw std::invalid_argument(pol.prefix + ": observation dim " +
                                std::to_string(obs.cols()) + " != " +
                                std::to_string(pol.obs_dim));
  }
  const int m = static_cast<int>(obs.rows());
  NodePtr X = matrix_const(obs);
  if (pol.z_dim == 0) {
    if (z) throw std::invalid_argument(pol.prefix + ": latent given to unconditioned policy");
    return X;
  }
  if (!z) throw std::invalid_argument(pol.prefix + ": latent required");
  NodePtr zmat;
  if (z->rank() == 1) {
    if (z->dim(0) != pol.z_dim) throw std::invalid_argument(pol.prefix + ": latent dim mismatch");
    zmat = broadcast_rows(z, m);
  } else if (z->rank() == 2 && z->rows() == m && z->cols() == pol.z_dim) {
    zmat = z;
  } else {
    throw std::invalid_argument(pol.prefix + ": latent shape " + shape_str(z->shape()));
  }
  return concat_cols(X, zmat);
}

NodePtr policy_mean(const GaussianPolicy& pol, NodePtr X) {
  return mlp_forward(pol.params, pol.prefix, pol.layout, std::move(X));
}

NodePtr policy_mean_with(const GaussianPolicy& pol, const ParamLookup& params, NodePtr X) {
  return mlp_forward(params, pol.prefix, pol.layout, std::move(X));
}

NodePtr policy_log_prob_with(const GaussianPolicy& pol, const ParamLookup& params, NodePtr X,
                             const Eigen::MatrixXd& actions) {
  if (actions.cols() != pol.act_dim) {
    throw std::invalid_argument(pol.prefix + ": action dim mismatch");
  }
  if (static_cast<int>(actions.rows()) != X->rows()) {
    throw std::invalid_argument(pol.prefix + ": action/observation count mismatch");
  }
  const int m = static_cast<int>(actions.rows());
  const int d = pol.act_dim;

  NodePtr mean_out = policy_mean_with(pol, params, std::move(X));
  NodePtr logstd = clip(params(pol.prefix + ".logstd"), kLogStdLo, kLogStdHi);
  NodePtr inv_std = exp(mul(logstd, scalar_const(-1.0)));

  NodePtr diff = sub(matrix_const(actions), mean_out);
  NodePtr zscore = mul(diff, broadcast_rows(inv_std, m));
  NodePtr quad = mul(sum_rows(square(zscore)), scalar_const(-0.5));
  NodePtr log_norm = add(sum(logstd), scalar_const(0.5 * d * kLog2Pi));
  return sub(quad, broadcast_scalar(log_norm, {m}));
}

NodePtr policy_log_prob(const GaussianPolicy& pol, NodePtr X, const Eigen::MatrixXd& actions) {
  return policy_log_prob_with(pol, lookup_from(pol.params), std::move(X), actions);
}

PolicySampler::PolicySampler(const GaussianPolicy& pol, std::optional<Eigen::VectorXd> z)
    : mlp_(pol.params, pol.prefix, pol.layout),
      obs_dim_(pol.obs_dim),
      act_dim_(pol.act_dim) {
  if (pol.z_dim == 0) {
    if (z && z->size() != 0) {
      throw std::invalid_argument(pol.prefix + ": latent given to unconditioned policy");
    }
    z_ = Eigen::VectorXd();
  } else {
    if (!z || z->size() != pol.z_dim) {
      throw std::invalid_argument(pol.prefix + ": latent of dim " +
                                  std::to_string(pol.z_dim) + " required");
    }
    z_ = *z;
  }
  logstd_ = pol.params.node(pol.prefix + ".logstd")->values().max(kLogStdLo).min(kLogStdHi);
  std_ = logstd_.exp();
}

Eigen::VectorXd PolicySampler::mean(const Eigen::VectorXd& obs) const {
  if (obs.size() != obs_dim_) throw std::invalid_argument("PolicySampler: obs dim mismatch");
  if (z_.size() == 0) return mlp_(obs);
  Eigen::VectorXd input(obs.size() + z_.size());
  input << obs, z_;
  return mlp_(input);
}

std::pair<Eigen::VectorXd, double> PolicySampler::sample(const Eigen::VectorXd& obs,
                                                         RngStream& rng) const {
  const Eigen::VectorXd mu = mean(obs);
  Eigen::VectorXd action(act_dim_);
  double logp = -0.5 * act_dim_ * kLog2Pi - logstd_.sum();
  for (int i = 0; i < act_dim_; ++i) {
    const double eps = rng.next_gaussian();
    action[i] = mu[i] + std_[i] * eps;
    logp -= 0.5 * eps * eps;
  }
  return {std::move(action), logp};
}

double PolicySampler::log_prob(const Eigen::VectorXd& obs, const Eigen::VectorXd& action) const {
  const Eigen::VectorXd mu = mean(obs);
  double logp = -0.5 * act_dim_ * kLog2Pi - logstd_.sum();
  for (int i = 0; i < act_dim_; ++i) {
    const double zs = (action[i] - mu[i]) / std_[i];
    logp -= 0.5 * zs * zs;
  }
  return logp;
}

}  // namespace metarl::nets
