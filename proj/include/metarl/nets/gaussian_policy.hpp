#pragma once

#include "metarl/nets/mlp.hpp"

#include <optional>
#include <utility>

namespace metarl::nets {

// Log-std is clamped to this range wherever it is used; storage is free.
inline constexpr double kLogStdLo = -5.0;
inline constexpr double kLogStdHi = 2.0;

// Diagonal-Gaussian MLP policy with a state-independent learnable log-std.
// With z_dim > 0 the latent is concatenated to the observation.
struct GaussianPolicy {
  std::string prefix;
  int obs_dim = 0;
  int act_dim = 0;
  int z_dim = 0;
  MlpLayout layout;
  ParamSet params;
};

GaussianPolicy make_gaussian_policy(const std::string& prefix, int obs_dim, int act_dim,
                                    int z_dim, const std::vector<int>& hidden,
                                    RngStream& rng);

// [m, obs_dim + z_dim] input node from constant observations and an optional
// latent node (shape [z_dim], broadcast across rows, or [m, z_dim] used as is).
NodePtr policy_input(const GaussianPolicy& pol, const Eigen::MatrixXd& obs, NodePtr z);

NodePtr policy_mean(const GaussianPolicy& pol, NodePtr X);

// Per-row log-density of the given actions under mean(X) and the clamped
// log-std: [m]. Differentiable w.r.t. the policy parameters and any latent
// feeding X.
NodePtr policy_log_prob(const GaussianPolicy& pol, NodePtr X, const Eigen::MatrixXd& actions);

// Same forwards with an explicit parameter source (e.g. MAML-adapted
// weights).
NodePtr policy_mean_with(const GaussianPolicy& pol, const ParamLookup& params, NodePtr X);
NodePtr policy_log_prob_with(const GaussianPolicy& pol, const ParamLookup& params, NodePtr X,
                             const Eigen::MatrixXd& actions);

// Value-only sampler/evaluator for rollouts; snapshots parameters.
class PolicySampler {
 public:
  PolicySampler(const GaussianPolicy& pol, std::optional<Eigen::VectorXd> z);

  Eigen::VectorXd mean(const Eigen::VectorXd& obs) const;
  // a = mean + exp(logstd) * eps, plus the log-density of a. Deterministic
  // given the rng state.
  std::pair<Eigen::VectorXd, double> sample(const Eigen::VectorXd& obs, RngStream& rng) const;
  double log_prob(const Eigen::VectorXd& obs, const Eigen::VectorXd& action) const;

 private:
  FastMlp mlp_;
  Eigen::VectorXd z_;
  Eigen::ArrayXd logstd_;
  Eigen::ArrayXd std_;
  int obs_dim_;
  int act_dim_;
};

}  // namespace metarl::nets
