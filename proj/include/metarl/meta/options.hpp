#pragma once

#include "metarl/envs/point_env.hpp"

#include <string>
#include <vector>

namespace metarl::meta {

// Which estimator trains the exploration policy.
enum class PhiEstimator { Lvc, VanillaDice, Emaml, EnvReward };
// What the supervision net regresses: N-step returns or per-step rewards.
enum class Supervision { NStep, Reward };
// Inner-loop update: self-supervised regression on z, or the
// importance-sampled policy-gradient step on theta (ablation).
enum class InnerUpdate { SelfSupervised, VpgImportance };

PhiEstimator phi_estimator_from_string(const std::string& s);
Supervision supervision_from_string(const std::string& s);
InnerUpdate inner_update_from_string(const std::string& s);
std::string to_string(PhiEstimator v);
std::string to_string(Supervision v);
std::string to_string(InnerUpdate v);

struct MetaHyper {
  envs::Family family = envs::Family::Corner;
  int horizon = 100;
  int n_step = 15;
  int z_dim = 32;
  double inner_alpha = 0.1;
  double outer_lr = 7e-4;
  double gamma = 0.99;
  double tau_gae = 1.0;
  double clip_eps = 0.2;
  int meta_batch = 20;
  int n_pre_traj = 20;
  int n_post_traj = 20;
  int outer_epochs = 5;
  PhiEstimator phi_estimator = PhiEstimator::Lvc;
  Supervision supervision = Supervision::NStep;
  InnerUpdate inner_update = InnerUpdate::SelfSupervised;
  bool center_post_returns = true;
  std::vector<int> hidden = {64, 64};
  int repr_dim = 32;
  int threads = 1;

  // Reward supervision degenerates to 1-step targets.
  int effective_n_step() const { return supervision == Supervision::Reward ? 1 : n_step; }
};

struct IterationMetrics {
  int iteration = 0;
  double pre_return_mean = 0.0;
  double post_return_mean = 0.0;
  double inner_loss = 0.0;
  double phi_grad_norm = 0.0;
  double theta_grad_norm = 0.0;
};

}  // namespace metarl::meta
