#pragma once

#include "metarl/envs/point_env.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace metarl::envs {

// Fixed-horizon rollout; no early termination, so all tensors are rectangular.
// states has H+1 rows (s_0..s_H); row t is the observation for action t.
struct Trajectory {
  Eigen::MatrixXd states;     // [H+1, 2]
  Eigen::MatrixXd actions;    // [H, 2]
  Eigen::VectorXd rewards;    // [H]
  Eigen::VectorXd log_probs;  // [H], sampling-time log-densities
  double discounted_return = 0.0;

  int horizon() const { return static_cast<int>(actions.rows()); }
  double recompute_return(double gamma) const;
};

enum class BatchRole { PreUpdate, PostUpdate };

struct TrajectoryBatch {
  Task task;
  BatchRole role = BatchRole::PreUpdate;
  std::vector<Trajectory> trajectories;

  int size() const { return static_cast<int>(trajectories.size()); }
  double mean_return() const;
  // All (traj, t) observations stacked: [n*H, 2]; same layout for actions.
  Eigen::MatrixXd stacked_states() const;
  Eigen::MatrixXd stacked_actions() const;
  Eigen::VectorXd stacked_log_probs() const;
};

// Maps an observation to (action, log-prob) given a per-trajectory stream.
using ActionSampler =
    std::function<std::pair<Eigen::Vector2d, double>(const Eigen::Vector2d&, RngStream&)>;

// n_traj trajectories from s0 = (0,0). Each trajectory consumes an
// independent child stream of rng, so results do not depend on evaluation
// order.
TrajectoryBatch rollout(const ActionSampler& sampler, const Task& task, int horizon,
                        int n_traj, double gamma, RngStream& rng, BatchRole role);

}  // namespace metarl::envs
