#include "metarl/meta/meta_params.hpp"

namespace metarl::meta {

using namespace gradcore;

ParamSet MetaParams::theta_beta() const {
  ParamSet merged;
  merged.merge(exploiter.params);
  merged.merge(supervision.params);
  return merged;
}

ParamSet MetaParams::all_params() const {
  ParamSet merged;
  merged.merge(explorer.params);
  merged.merge(exploiter.params);
  merged.merge(supervision.params);
  return merged;
}

MetaParams make_meta_params(const MetaHyper& hyper, RngStream& rng) {
  MetaParams p;
  RngStream r_mu = rng.child(0);
  RngStream r_pi = rng.child(1);
  RngStream r_sup = rng.child(2);
  p.explorer = nets::make_gaussian_policy("mu", envs::kObsDim, envs::kActDim, 0, hyper.hidden,
                                          r_mu);
  p.exploiter = nets::make_gaussian_policy("pi", envs::kObsDim, envs::kActDim, hyper.z_dim,
                                           hyper.hidden, r_pi);
  p.supervision = nets::make_supervision_net("sup", envs::kObsDim, envs::kActDim, hyper.z_dim,
                                             hyper.hidden, hyper.repr_dim, r_sup);
  p.z = Eigen::VectorXd::Zero(hyper.z_dim);
  return p;
}

}  // namespace metarl::meta
