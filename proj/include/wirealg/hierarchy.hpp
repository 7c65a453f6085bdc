#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wirealg/wiring.hpp"

namespace wirealg {

/// A tree of implementation choices: the root interface, one wiring
/// diagram implementing it, and optionally a further decomposition per
/// inner slot. Slots without a child are leaves of the design.
struct HierarchicalModel {
  LabeledBox root_interface;
  WiringDiagram implementation;
  std::vector<std::shared_ptr<const HierarchicalModel>> children;  // per slot, may be null

  static HierarchicalModel leaf_impl(WiringDiagram impl);
};

/// Throws TypeError unless every child's root matches its slot and the
/// implementation targets the node's interface.
void check_hierarchy(const HierarchicalModel& h);

/// The leaf interfaces in depth-first slot order.
std::vector<LabeledBox> leaves(const HierarchicalModel& h);

/// Erases every intermediate interface: substitutes each child's
/// flattened implementation into its slot, bottom-up, leaving a single
/// diagram from the tensor of the leaves to the root.
WiringDiagram flatten(const HierarchicalModel& h);

/// The worked two-level decomposition: the sensor opens into two inertial
/// units feeding a fusion stage, the controller into a serial planner and
/// actuator pair, the dynamics into four parallel channels merged by a
/// frame stage — all over the one-level model's diagram.
HierarchicalModel build_uav_architecture();

}  // namespace wirealg
