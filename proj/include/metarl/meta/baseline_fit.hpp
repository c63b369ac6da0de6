#pragma once

#include "metarl/envs/rollout.hpp"

#include <vector>

namespace metarl::meta {

// Linear feature baseline: least squares of per-timestep targets on the
// features [s, s*s, t/H, (t/H)^2, (t/H)^3, 1] with a small ridge term. Used
// both for environment-return value fits and for the synthetic exploration
// returns.
struct LinearBaseline {
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(8);
  double predict(const Eigen::Vector2d& s, double t_frac) const;
};

// One target vector (length H) per trajectory. The ridge keeps a degenerate
// design matrix solvable, so this never throws on rank deficiency.
LinearBaseline fit_linear_baseline(const envs::TrajectoryBatch& batch,
                                   const std::vector<Eigen::VectorXd>& targets,
                                   double ridge = 1e-5);

// Value sequence (length H+1, terminal entry zero) for one trajectory.
Eigen::VectorXd baseline_values(const LinearBaseline& b, const envs::Trajectory& traj);

// Environment GAE advantages per trajectory: fits the baseline on discounted
// returns-to-go, then GAE(gamma, tau).
std::vector<Eigen::VectorXd> env_advantages(const envs::TrajectoryBatch& batch, double gamma,
                                            double tau);

}  // namespace metarl::meta
