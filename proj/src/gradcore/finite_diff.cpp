#include "metarl/gradcore/backward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace metarl::gradcore {

double finite_diff_check(const std::function<NodePtr(const ParamSet&)>& f,
                         const ParamSet& params, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("finite_diff_check: eps must be positive");
  NodePtr loss = f(params);
  if (!loss || loss->rank() != 0) {
    throw std::invalid_argument("finite_diff_check: f must return a scalar node");
  }
  const Eigen::ArrayXd analytic = backward(loss, params).flatten();
  const Eigen::ArrayXd base = params.flatten();

  double max_rel = 0.0;
  for (int64_t i = 0; i < base.size(); ++i) {
    Eigen::ArrayXd plus = base;
    Eigen::ArrayXd minus = base;
    plus[i] += eps;
    minus[i] -= eps;
    const double fp = f(params.with_values(plus))->scalar();
    const double fm = f(params.with_values(minus))->scalar();
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw std::runtime_error("finite_diff_check: non-finite f");
    }
    const double numeric = (fp - fm) / (2.0 * eps);
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-8});
    max_rel = std::max(max_rel, std::abs(analytic[i] - numeric) / denom);
  }
  return max_rel;
}

}  // namespace metarl::gradcore
