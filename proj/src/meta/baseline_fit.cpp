#include "metarl/meta/baseline_fit.hpp"

#include "metarl/meta/targets.hpp"

#include <stdexcept>

namespace metarl::meta {

namespace {

void fill_features(Eigen::Ref<Eigen::VectorXd> row, const Eigen::Vector2d& s, double t_frac) {
  row[0] = s.x();
  row[1] = s.y();
  row[2] = s.x() * s.x();
  row[3] = s.y() * s.y();
  row[4] = t_frac;
  row[5] = t_frac * t_frac;
  row[6] = t_frac * t_frac * t_frac;
  row[7] = 1.0;
}

}  // namespace

double LinearBaseline::predict(const Eigen::Vector2d& s, double t_frac) const {
  Eigen::VectorXd f(8);
  fill_features(f, s, t_frac);
  return coef.dot(f);
}

LinearBaseline fit_linear_baseline(const envs::TrajectoryBatch& batch,
                                   const std::vector<Eigen::VectorXd>& targets, double ridge) {
  const int n = batch.size();
  if (n == 0 || static_cast<int>(targets.size()) != n) {
    throw std::invalid_argument("fit_linear_baseline: batch/target mismatch");
  }
  const int h = batch.trajectories[0].horizon();
  Eigen::MatrixXd X(n * h, 8);
  Eigen::VectorXd y(n * h);
  for (int i = 0; i < n; ++i) {
    const envs::Trajectory& tr = batch.trajectories[static_cast<size_t>(i)];
    if (targets[static_cast<size_t>(i)].size() != h) {
      throw std::invalid_argument("fit_linear_baseline: target length != horizon");
    }
    for (int t = 0; t < h; ++t) {
      fill_features(X.row(i * h + t), tr.states.row(t),
                    static_cast<double>(t) / static_cast<double>(h));
      y[i * h + t] = targets[static_cast<size_t>(i)][t];
    }
  }
  Eigen::MatrixXd gram = X.transpose() * X;
  gram.diagonal().array() += ridge;
  LinearBaseline b;
  b.coef = gram.ldlt().solve(X.transpose() * y);
  return b;
}

Eigen::VectorXd baseline_values(const LinearBaseline& b, const envs::Trajectory& traj) {
  const int h = traj.horizon();
  Eigen::VectorXd v(h + 1);
  for (int t = 0; t < h; ++t) {
    v[t] = b.predict(traj.states.row(t), static_cast<double>(t) / static_cast<double>(h));
  }
  v[h] = 0.0;
  return v;
}

std::vector<Eigen::VectorXd> env_advantages(const envs::TrajectoryBatch& batch, double gamma,
                                            double tau) {
  std::vector<Eigen::VectorXd> rtg;
  rtg.reserve(static_cast<size_t>(batch.size()));
  for (const auto& tr : batch.trajectories) rtg.push_back(returns_to_go(tr.rewards, gamma));
  const LinearBaseline b = fit_linear_baseline(batch, rtg);
  std::vector<Eigen::VectorXd> adv;
  adv.reserve(static_cast<size_t>(batch.size()));
  for (const auto& tr : batch.trajectories) {
    adv.push_back(gae_advantages(tr.rewards, baseline_values(b, tr), gamma, tau));
  }
  return adv;
}

}  // namespace metarl::meta
