#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "decrsp/es_tree.hpp"
#include "decrsp/graph.hpp"
#include "decrsp/types.hpp"

namespace decrsp {

struct EstimateChange {
  NodeId node;
  Rational estimate;
  friend bool operator==(const EstimateChange&, const EstimateChange&) = default;
};

// Decremental approximate SSSP from a source set (all sources at distance 0).
// Estimates never undercut distances (A1), are within alpha*dist + beta up to
// the instance depth (A2), and every change is reported by update() (A3).
class DecrementalSssp {
 public:
  virtual ~DecrementalSssp() = default;
  virtual NodeId node_count() const = 0;
  virtual Rational estimate(NodeId v) const = 0;
  // Called after `c` has been applied to the instance's graph. Appends changed
  // estimates in increasing node order.
  virtual void update(const ChangeRecord& c, std::vector<EstimateChange>& changed) = 0;
  virtual std::uint64_t work() const = 0;
};

using SsspFactory = std::function<std::unique_ptr<DecrementalSssp>(
    const DynamicGraph& g, std::vector<NodeId> sources, Weight depth)>;

struct SsspContract {
  Rational alpha{1};
  Rational beta{0};
  SsspFactory make;
  std::string name;
};

class EsTreeSssp final : public DecrementalSssp {
 public:
  EsTreeSssp(const DynamicGraph& g, std::vector<NodeId> sources, Weight depth)
      : tree_(g, std::move(sources), depth) {}
  NodeId node_count() const override { return tree_.graph().node_count(); }
  Rational estimate(NodeId v) const override { return Rational::from_weight(tree_.level(v)); }
  void update(const ChangeRecord& c, std::vector<EstimateChange>& changed) override;
  std::uint64_t work() const override { return tree_.work(); }
  const EsTree& tree() const { return tree_; }

 private:
  EsTree tree_;
  std::vector<LevelChange> scratch_;
};

SsspContract exact_contract();

}  // namespace decrsp
