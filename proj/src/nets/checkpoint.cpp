#include "metarl/nets/checkpoint.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace metarl::nets {

using namespace gradcore;

void save_checkpoint(const std::string& path, const ParamSet& params) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  out << "metarl-checkpoint 1\n";
  char buf[64];
  for (size_t i = 0; i < params.size(); ++i) {
    const auto& [name, node] = params.entry(i);
    out << name << ' ' << node->rank();
    for (int d = 0; d < node->rank(); ++d) out << ' ' << node->dim(d);
    const Eigen::ArrayXd& v = node->values();
    for (int64_t j = 0; j < v.size(); ++j) {
      std::snprintf(buf, sizeof buf, " %a", v[j]);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on checkpoint " + path);
}

ParamSet load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  std::string header;
  std::getline(in, header);
  if (header != "metarl-checkpoint 1") {
    throw std::runtime_error("bad checkpoint header in " + path);
  }
  ParamSet out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name;
    int rank = 0;
    ls >> name >> rank;
    if (!ls || rank < 0 || rank > 2) throw std::runtime_error("bad checkpoint entry: " + line);
    Shape shape;
    for (int d = 0; d < rank; ++d) {
      int dim = 0;
      ls >> dim;
      shape.push_back(dim);
    }
    Eigen::ArrayXd values(numel(shape));
    for (int64_t j = 0; j < values.size(); ++j) {
      std::string tok;
      ls >> tok;
      if (!ls) throw std::runtime_error("truncated checkpoint entry: " + name);
      values[j] = std::strtod(tok.c_str(), nullptr);
    }
    out.add(name, std::move(shape), std::move(values));
  }
  return out;
}

}  // namespace metarl::nets
