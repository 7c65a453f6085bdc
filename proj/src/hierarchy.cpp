#include "wirealg/hierarchy.hpp"

#include "wirealg/lti.hpp"

namespace wirealg {

HierarchicalModel HierarchicalModel::leaf_impl(WiringDiagram impl) {
  HierarchicalModel h;
  h.root_interface = impl.outer;
  h.children.assign(impl.inner.size(), nullptr);
  h.implementation = std::move(impl);
  return h;
}

void check_hierarchy(const HierarchicalModel& h) {
  require_valid(h.implementation, "check_hierarchy");
  if (!same_ports(h.implementation.outer, h.root_interface))
    throw TypeError("check_hierarchy: implementation does not target '" +
                    h.root_interface.name + "'");
  if (h.children.size() != h.implementation.inner.size())
    throw TypeError("check_hierarchy: one child entry per slot required");
  for (std::size_t i = 0; i < h.children.size(); ++i) {
    if (!h.children[i]) continue;
    if (!same_ports(h.children[i]->root_interface, h.implementation.inner[i]))
      throw TypeError("check_hierarchy: child " + std::to_string(i) +
                      " does not match its slot interface");
    check_hierarchy(*h.children[i]);
  }
}

std::vector<LabeledBox> leaves(const HierarchicalModel& h) {
  std::vector<LabeledBox> out;
  for (std::size_t i = 0; i < h.implementation.inner.size(); ++i) {
    if (!h.children[i]) {
      out.push_back(h.implementation.inner[i]);
      continue;
    }
    auto sub = leaves(*h.children[i]);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

WiringDiagram flatten(const HierarchicalModel& h) {
  check_hierarchy(h);
  WiringDiagram result = h.implementation;
  // back to front keeps the remaining slot indices stable
  for (std::size_t i = h.children.size(); i-- > 0;) {
    if (!h.children[i]) continue;
    result = substitute(result, i, flatten(*h.children[i]));
  }
  return result;
}

namespace {

LabeledBox r_box(const std::string& name, std::size_t n_in, std::size_t n_out) {
  LabeledBox b;
  b.name = name;
  b.inputs.assign(n_in, WireType::real(1));
  b.outputs.assign(n_out, WireType::real(1));
  return b;
}

}  // namespace

HierarchicalModel build_uav_architecture() {
  const UavModel uav = build_uav_model();

  // sensor = two inertial units, one per sensor input, fused pairwise
  WiringDiagram sensor_impl;
  sensor_impl.inner = {r_box("imu1", 1, 1), r_box("imu2", 1, 1),
                       r_box("fuse", 2, 1)};
  sensor_impl.outer = uav.diagram.inner[0];
  sensor_impl.input_routing = {
      PortSource::outer_input(0),      // imu1 <- current state
      PortSource::outer_input(1),      // imu2 <- environment
      PortSource::inner_output(0, 0),  // fuse <- imu1
      PortSource::inner_output(1, 0),  // fuse <- imu2
  };
  sensor_impl.output_routing = {PortSource::inner_output(2, 0)};

  // controller = planner followed by actuator driver, in series
  WiringDiagram controller_impl;
  controller_impl.inner = {r_box("plan", 2, 1), r_box("drive", 1, 1)};
  controller_impl.outer = uav.diagram.inner[1];
  controller_impl.input_routing = {
      PortSource::outer_input(0),      // plan <- predicted state
      PortSource::outer_input(1),      // plan <- desired state
      PortSource::inner_output(0, 0),  // drive <- plan
  };
  controller_impl.output_routing = {PortSource::inner_output(1, 0)};

  // dynamics = four parallel channels off the control action, merged by
  // the frame stage
  WiringDiagram dynamics_impl;
  dynamics_impl.inner = {r_box("chan1", 1, 1), r_box("chan2", 1, 1),
                         r_box("chan3", 1, 1), r_box("chan4", 1, 1),
                         r_box("frame", 4, 1)};
  dynamics_impl.outer = uav.diagram.inner[2];
  dynamics_impl.input_routing = {
      PortSource::outer_input(0),      // chan1 <- control action
      PortSource::outer_input(0),      // chan2 <- control action
      PortSource::outer_input(0),      // chan3 <- control action
      PortSource::outer_input(0),      // chan4 <- control action
      PortSource::inner_output(0, 0),  // frame <- chan1
      PortSource::inner_output(1, 0),  // frame <- chan2
      PortSource::inner_output(2, 0),  // frame <- chan3
      PortSource::inner_output(3, 0),  // frame <- chan4
  };
  dynamics_impl.output_routing = {PortSource::inner_output(4, 0)};

  HierarchicalModel h;
  h.root_interface = uav.diagram.outer;
  h.implementation = uav.diagram;
  h.children = {
      std::make_shared<const HierarchicalModel>(
          HierarchicalModel::leaf_impl(std::move(sensor_impl))),
      std::make_shared<const HierarchicalModel>(
          HierarchicalModel::leaf_impl(std::move(controller_impl))),
      std::make_shared<const HierarchicalModel>(
          HierarchicalModel::leaf_impl(std::move(dynamics_impl))),
  };
  check_hierarchy(h);
  return h;
}

}  // namespace wirealg
