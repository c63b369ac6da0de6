#include "metarl/meta/targets.hpp"

#include <algorithm>
#include <stdexcept>

namespace metarl::meta {

Eigen::VectorXd nstep_targets(const Eigen::VectorXd& rewards, int n) {
  if (n < 1) throw std::invalid_argument("nstep_targets: n >= 1 required");
  const int h = static_cast<int>(rewards.size());
  Eigen::VectorXd out(h);
  for (int t = 0; t < h; ++t) {
    const int end = std::min(t + n, h);
    double s = 0.0;
    for (int k = t; k < end; ++k) s += rewards[k];
    out[t] = s;
  }
  return out;
}

Eigen::VectorXd returns_to_go(const Eigen::VectorXd& rewards, double gamma) {
  const int h = static_cast<int>(rewards.size());
  Eigen::VectorXd out(h);
  double acc = 0.0;
  for (int t = h - 1; t >= 0; --t) {
    acc = rewards[t] + gamma * acc;
    out[t] = acc;
  }
  return out;
}

Eigen::VectorXd gae_advantages(const Eigen::VectorXd& rewards, const Eigen::VectorXd& values,
                               double gamma, double tau) {
  const int h = static_cast<int>(rewards.size());
  if (values.size() != h + 1) throw std::invalid_argument("gae_advantages: values length != H+1");
  Eigen::VectorXd adv(h);
  double acc = 0.0;
  for (int t = h - 1; t >= 0; --t) {
    const double delta = rewards[t] + gamma * values[t + 1] - values[t];
    acc = delta + gamma * tau * acc;
    adv[t] = acc;
  }
  return adv;
}

}  // namespace metarl::meta
