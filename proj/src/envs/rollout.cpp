#include "metarl/envs/rollout.hpp"

#include <stdexcept>

namespace metarl::envs {

double Trajectory::recompute_return(double gamma) const {
  double r = 0.0;
  double g = 1.0;
  for (int t = 0; t < rewards.size(); ++t) {
    r += g * rewards[t];
    g *= gamma;
  }
  return r;
}

double TrajectoryBatch::mean_return() const {
  if (trajectories.empty()) return 0.0;
  double s = 0.0;
  for (const auto& tr : trajectories) s += tr.discounted_return;
  return s / static_cast<double>(trajectories.size());
}

Eigen::MatrixXd TrajectoryBatch::stacked_states() const {
  const int n = size();
  const int h = n ? trajectories[0].horizon() : 0;
  Eigen::MatrixXd out(n * h, 2);
  for (int i = 0; i < n; ++i) out.middleRows(i * h, h) = trajectories[i].states.topRows(h);
  return out;
}

Eigen::MatrixXd TrajectoryBatch::stacked_actions() const {
  const int n = size();
  const int h = n ? trajectories[0].horizon() : 0;
  Eigen::MatrixXd out(n * h, 2);
  for (int i = 0; i < n; ++i) out.middleRows(i * h, h) = trajectories[i].actions;
  return out;
}

Eigen::VectorXd TrajectoryBatch::stacked_log_probs() const {
  const int n = size();
  const int h = n ? trajectories[0].horizon() : 0;
  Eigen::VectorXd out(n * h);
  for (int i = 0; i < n; ++i) out.segment(i * h, h) = trajectories[i].log_probs;
  return out;
}

TrajectoryBatch rollout(const ActionSampler& sampler, const Task& task, int horizon,
                        int n_traj, double gamma, RngStream& rng, BatchRole role) {
  if (horizon < 1) throw std::invalid_argument("rollout: horizon >= 1 required");
  if (n_traj < 1) throw std::invalid_argument("rollout: n_traj >= 1 required");

  TrajectoryBatch batch;
  batch.task = task;
  batch.role = role;
  batch.trajectories.resize(static_cast<size_t>(n_traj));

  for (int i = 0; i < n_traj; ++i) {
    RngStream traj_rng = rng.child(static_cast<uint64_t>(i));
    Trajectory& tr = batch.trajectories[static_cast<size_t>(i)];
    tr.states.resize(horizon + 1, 2);
    tr.actions.resize(horizon, 2);
    tr.rewards.resize(horizon);
    tr.log_probs.resize(horizon);

    Eigen::Vector2d s = Eigen::Vector2d::Zero();
    tr.states.row(0) = s;
    double ret = 0.0;
    double discount = 1.0;
    for (int t = 0; t < horizon; ++t) {
      auto [a, logp] = sampler(s, traj_rng);
      const StepResult sr = env_step(s, a, task);
      tr.actions.row(t) = a;
      tr.rewards[t] = sr.reward;
      tr.log_probs[t] = logp;
      ret += discount * sr.reward;
      discount *= gamma;
      s = sr.next_state;
      tr.states.row(t + 1) = s;
    }
    tr.discounted_return = ret;
  }
  return batch;
}

}  // namespace metarl::envs
