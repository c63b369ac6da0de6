#pragma once

#include "metarl/envs/rollout.hpp"
#include "metarl/meta/meta_params.hpp"

namespace metarl::meta {

// Result of the single self-supervised inner step. z_prime stays a graph
// node, differentiable w.r.t. beta (and phi when DICE weights were on), so
// outer losses built on it reach those parameters through the update.
struct AdaptedLatent {
  gradcore::NodePtr z_leaf;   // pre-update z (zeros), the inner target
  gradcore::NodePtr z_prime;  // z - alpha * grad_z L
  double inner_loss = 0.0;

  Eigen::VectorXd z_prime_value() const { return z_prime->values().matrix(); }
};

// One gradient step on z of the regression loss
//   L = mean over trajectories of sum_t w_t (M(s_t,a_t,z) - Mbar_t)^2,
// with w_t the causal DICE products of exploration-policy likelihood ratios
// (forward value exactly 1) when dice_weights is on, else w_t = 1. Targets
// Mbar are n_step-truncated reward sums. alpha < 0 throws; alpha = 0 returns
// z' = z exactly.
AdaptedLatent inner_adapt(const MetaParams& params, const envs::TrajectoryBatch& pre,
                          double alpha, bool dice_weights, int n_step);

// Importance-sampled policy-gradient inner step on theta (the VPG-inner
// ablation): theta' = theta + alpha * grad_theta mean_tau [w(tau) R(tau)],
// w(tau) = exp(clip(log P(tau|theta,z=0) - log Q(tau|phi), +-10)). The log of
// the sampling density is rebuilt from phi's leaves, so the adapted
// parameters stay differentiable w.r.t. both theta and phi.
struct AdaptedPolicy {
  std::vector<std::pair<std::string, gradcore::NodePtr>> theta_prime;
  double inner_loss = 0.0;

  gradcore::NodePtr node(const std::string& name) const;
  // Detached value copy, for rollouts with the adapted policy.
  gradcore::ParamSet values() const;
};

AdaptedPolicy inner_adapt_vpg(const MetaParams& params, const envs::TrajectoryBatch& pre,
                              double alpha);

}  // namespace metarl::meta
