#pragma once

#include "metarl/common/rng.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace metarl::envs {

// 2D point navigation families. Dynamics are shared: s' = s + clip(a, +-0.1)
// from a fixed start at the origin; only the reward depends on the goal.
//  - Corner: goal is one of the four corners (+-2, +-2); sparse shaped reward
//    (r_goal - d) / r_goal inside radius r_goal = 0.5, else 0.
//  - Semicircle: goal on the unit upper semicircle; sparse with radius 0.3.
//  - Dense: goal on the unit circle; reward -d^2 everywhere.
enum class Family { Corner, Semicircle, Dense };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

struct Task {
  Family family = Family::Corner;
  Eigen::Vector2d goal = Eigen::Vector2d::Zero();
};

inline constexpr double kActionClip = 0.1;
inline constexpr double kCornerGoalRadius = 0.5;
inline constexpr double kSemicircleGoalRadius = 0.3;
inline constexpr int kObsDim = 2;
inline constexpr int kActDim = 2;

std::vector<Task> sample_tasks(Family family, int n, RngStream& rng);

struct StepResult {
  Eigen::Vector2d next_state;
  double reward;
};

// Throws on non-finite actions.
StepResult env_step(const Eigen::Vector2d& s, const Eigen::Vector2d& a, const Task& task);

// Task-set snapshot: one line per task, "family gx gy" (hex floats).
void save_tasks(const std::string& path, const std::vector<Task>& tasks, bool append);
std::vector<Task> load_tasks(const std::string& path);

}  // namespace metarl::envs
