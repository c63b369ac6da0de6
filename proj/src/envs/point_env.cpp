#include "metarl/envs/point_env.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace metarl::envs {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Family family_from_string(const std::string& s) {
  if (s == "corner") return Family::Corner;
  if (s == "semicircle") return Family::Semicircle;
  if (s == "dense") return Family::Dense;
  throw std::invalid_argument("unknown environment family: " + s);
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::Corner: return "corner";
    case Family::Semicircle: return "semicircle";
    case Family::Dense: return "dense";
  }
  return "?";
}

std::vector<Task> sample_tasks(Family family, int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_tasks: n >= 1 required");
  std::vector<Task> tasks;
  tasks.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Task t;
    t.family = family;
    switch (family) {
      case Family::Corner: {
        const uint64_t c = rng.next_below(4);
        t.goal.x() = (c & 1) ? 2.0 : -2.0;
        t.goal.y() = (c & 2) ? 2.0 : -2.0;
        break;
      }
      case Family::Semicircle: {
        const double psi = kPi * rng.next_double();
        t.goal = {std::cos(psi), std::sin(psi)};
        break;
      }
      case Family::Dense: {
        const double psi = 2.0 * kPi * rng.next_double();
        t.goal = {std::cos(psi), std::sin(psi)};
        break;
      }
    }
    tasks.push_back(t);
  }
  return tasks;
}

StepResult env_step(const Eigen::Vector2d& s, const Eigen::Vector2d& a, const Task& task) {
  if (!a.allFinite()) throw std::invalid_argument("env_step: non-finite action");
  Eigen::Vector2d clipped = a.cwiseMax(-kActionClip).cwiseMin(kActionClip);
  StepResult r;
  r.next_state = s + clipped;
  const double d = (r.next_state - task.goal).norm();
  switch (task.family) {
    case Family::Corner:
      r.reward = d < kCornerGoalRadius ? (kCornerGoalRadius - d) / kCornerGoalRadius : 0.0;
      break;
    case Family::Semicircle:
      r.reward =
          d < kSemicircleGoalRadius ? (kSemicircleGoalRadius - d) / kSemicircleGoalRadius : 0.0;
      break;
    case Family::Dense:
      r.reward = -d * d;
      break;
  }
  return r;
}

void save_tasks(const std::string& path, const std::vector<Task>& tasks, bool append) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write task snapshot " + path);
  char buf[96];
  for (const Task& t : tasks) {
    std::snprintf(buf, sizeof buf, "%s %a %a\n", family_to_string(t.family).c_str(),
                  t.goal.x(), t.goal.y());
    out << buf;
  }
}

std::vector<Task> load_tasks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read task snapshot " + path);
  std::vector<Task> tasks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string fam, gx, gy;
    ls >> fam >> gx >> gy;
    if (!ls) throw std::runtime_error("bad task line: " + line);
    Task t;
    t.family = family_from_string(fam);
    t.goal.x() = std::strtod(gx.c_str(), nullptr);
    t.goal.y() = std::strtod(gy.c_str(), nullptr);
    tasks.push_back(t);
  }
  return tasks;
}

}  // namespace metarl::envs
