#pragma once

#include "metarl/meta/options.hpp"
#include "metarl/nets/gaussian_policy.hpp"
#include "metarl/nets/supervision_net.hpp"

namespace metarl::meta {

// The four parameter groups: phi (exploration policy), theta (exploitation
// policy), beta (supervision net incl. its linear head) and the shared task
// latent z. z stays identically zero outside the inner loop; only the
// per-task adapted copy z' carries task information.
struct MetaParams {
  nets::GaussianPolicy explorer;      // mu_phi(s)
  nets::GaussianPolicy exploiter;     // pi_{theta,z}(s)
  nets::SupervisionNet supervision;   // M_{beta,z}(s,a)
  Eigen::VectorXd z;

  int z_dim() const { return static_cast<int>(z.size()); }
  // Leaf view over theta and beta together (shared nodes, not copies).
  gradcore::ParamSet theta_beta() const;
  // Every group in one set, for checkpoints.
  gradcore::ParamSet all_params() const;
};

MetaParams make_meta_params(const MetaHyper& hyper, RngStream& rng);

}  // namespace metarl::meta
