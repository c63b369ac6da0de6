#pragma once

#include <Eigen/Dense>

namespace metarl::meta {

// Truncated N-step return targets: M_t = sum of rewards t .. min(t+N, H)-1.
// N = 1 degenerates to the per-step reward.
Eigen::VectorXd nstep_targets(const Eigen::VectorXd& rewards, int n);

// Discounted reward-to-go per timestep.
Eigen::VectorXd returns_to_go(const Eigen::VectorXd& rewards, double gamma);

// Generalized advantage estimates from a value sequence of length H+1
// (values[H] is the terminal value, zero for fixed-horizon episodes).
Eigen::VectorXd gae_advantages(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                               double gamma, double tau);

}  // namespace metarl::meta
