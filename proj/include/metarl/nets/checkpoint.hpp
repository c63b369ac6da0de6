#pragma once

#include "metarl/gradcore/param_set.hpp"

#include <string>

namespace metarl::nets {

// Text checkpoint: one line per named array, shape followed by hex-float
// values, so doubles round-trip bit-exactly. Format:
//   metarl-checkpoint 1
//   <name> <rank> <dims...> <values as %a...>
void save_checkpoint(const std::string& path, const gradcore::ParamSet& params);

// Reads a checkpoint into a fresh ParamSet (entry order as in the file).
gradcore::ParamSet load_checkpoint(const std::string& path);

}  // namespace metarl::nets
