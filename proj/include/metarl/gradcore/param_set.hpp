#pragma once

#include "metarl/gradcore/node.hpp"

#include <string>
#include <utility>
#include <vector>

namespace metarl::gradcore {

// Named leaf nodes with a stable order. Parameter updates never mutate a
// leaf in place; with_values() manufactures a fresh set of leaves so that
// graphs recorded against the old values stay valid.
class ParamSet {
 public:
  ParamSet() = default;

  NodePtr add(const std::string& name, Shape shape, Eigen::ArrayXd values);
  const NodePtr& node(const std::string& name) const;
  bool contains(const std::string& name) const;

  size_t size() const { return entries_.size(); }
  const std::pair<std::string, NodePtr>& entry(size_t i) const { return entries_[i]; }
  int64_t total_dim() const;

  // Round-trips exactly: unflatten(flatten()) reproduces every value bit for bit.
  Eigen::ArrayXd flatten() const;
  ParamSet with_values(const Eigen::ArrayXd& flat) const;

  // Same names/shapes/values, fresh leaf nodes.
  ParamSet clone() const;

  // Shares the other set's leaf nodes under this set's namespace (names must
  // stay unique). Used to differentiate one loss against several networks.
  void merge(const ParamSet& other);

 private:
  std::vector<std::pair<std::string, NodePtr>> entries_;
};

// Per-leaf gradients aligned to a ParamSet. Entries are Nodes, so a gradient
// can itself be differentiated when it was produced with create_graph.
class GradientVector {
 public:
  GradientVector() = default;
  explicit GradientVector(std::vector<std::pair<std::string, NodePtr>> grads)
      : grads_(std::move(grads)) {}

  size_t size() const { return grads_.size(); }
  const std::pair<std::string, NodePtr>& entry(size_t i) const { return grads_[i]; }
  const NodePtr& node(const std::string& name) const;

  Eigen::ArrayXd flatten() const;
  double norm() const;

 private:
  std::vector<std::pair<std::string, NodePtr>> grads_;
};

}  // namespace metarl::gradcore
