#include "decrsp/sssp_contract.hpp"

namespace decrsp {

void EsTreeSssp::update(const ChangeRecord& c, std::vector<EstimateChange>& changed) {
  scratch_.clear();
  tree_.update(c, scratch_);
  for (const LevelChange& lc : scratch_)
    changed.push_back({lc.node, Rational::from_weight(lc.level)});
}

SsspContract exact_contract() {
  SsspContract c;
  c.name = "es-tree";
  c.make = [](const DynamicGraph& g, std::vector<NodeId> sources, Weight depth) {
    return std::make_unique<EsTreeSssp>(g, std::move(sources), depth);
  };
  return c;
}

}  // namespace decrsp
