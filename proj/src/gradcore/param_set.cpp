#include "metarl/gradcore/param_set.hpp"

#include "metarl/gradcore/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace metarl::gradcore {

NodePtr ParamSet::add(const std::string& name, Shape shape, Eigen::ArrayXd values) {
  if (contains(name)) throw std::invalid_argument("ParamSet: duplicate name " + name);
  NodePtr n = leaf(std::move(shape), std::move(values));
  entries_.emplace_back(name, n);
  return n;
}

const NodePtr& ParamSet::node(const std::string& name) const {
  for (const auto& [k, v] : entries_) {
    if (k == name) return v;
  }
  throw std::invalid_argument("ParamSet: unknown name " + name);
}

bool ParamSet::contains(const std::string& name) const {
  for (const auto& [k, v] : entries_) {
    if (k == name) return true;
  }
  return false;
}

int64_t ParamSet::total_dim() const {
  int64_t n = 0;
  for (const auto& [k, v] : entries_) n += v->values().size();
  return n;
}

Eigen::ArrayXd ParamSet::flatten() const {
  Eigen::ArrayXd flat(total_dim());
  int64_t off = 0;
  for (const auto& [k, v] : entries_) {
    flat.segment(off, v->values().size()) = v->values();
    off += v->values().size();
  }
  return flat;
}

ParamSet ParamSet::with_values(const Eigen::ArrayXd& flat) const {
  if (flat.size() != total_dim()) {
    throw std::invalid_argument("ParamSet::with_values: size mismatch");
  }
  ParamSet out;
  int64_t off = 0;
  for (const auto& [k, v] : entries_) {
    const int64_t n = v->values().size();
    out.add(k, v->shape(), flat.segment(off, n));
    off += n;
  }
  return out;
}

ParamSet ParamSet::clone() const {
  ParamSet out;
  for (const auto& [k, v] : entries_) out.add(k, v->shape(), v->values());
  return out;
}

void ParamSet::merge(const ParamSet& other) {
  for (size_t i = 0; i < other.size(); ++i) {
    const auto& [k, v] = other.entry(i);
    if (contains(k)) throw std::invalid_argument("ParamSet::merge: duplicate name " + k);
    entries_.emplace_back(k, v);
  }
}

const NodePtr& GradientVector::node(const std::string& name) const {
  for (const auto& [k, v] : grads_) {
    if (k == name) return v;
  }
  throw std::invalid_argument("GradientVector: unknown name " + name);
}

Eigen::ArrayXd GradientVector::flatten() const {
  int64_t total = 0;
  for (const auto& [k, v] : grads_) total += v->values().size();
  Eigen::ArrayXd flat(total);
  int64_t off = 0;
  for (const auto& [k, v] : grads_) {
    flat.segment(off, v->values().size()) = v->values();
    off += v->values().size();
  }
  return flat;
}

double GradientVector::norm() const {
  double sq = 0.0;
  for (const auto& [k, v] : grads_) sq += v->values().square().sum();
  return std::sqrt(sq);
}

}  // namespace metarl::gradcore
