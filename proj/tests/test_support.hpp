#pragma once

#include <random>
#include <string>
#include <vector>

#include "wirealg/contracts.hpp"
#include "wirealg/moore.hpp"
#include "wirealg/types.hpp"
#include "wirealg/wiring.hpp"

namespace wirealg::testing {

using Rng = std::mt19937;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline WireType bit() { return WireType::finite({"0", "1"}); }

inline LabeledBox box(const std::string& name, std::size_t n_in,
                      std::size_t n_out, const WireType& w) {
  LabeledBox b;
  b.name = name;
  b.inputs.assign(n_in, w);
  b.outputs.assign(n_out, w);
  return b;
}

/// The three-process diagram: X and Y feed Z, Z also reads the third
/// outer input, only Z's output leaves. All wires share one type.
inline WiringDiagram fig1_diagram(const WireType& w) {
  WiringDiagram d;
  d.inner = {box("X", 1, 1, w), box("Y", 1, 1, w), box("Z", 3, 1, w)};
  d.outer = box("A", 3, 1, w);
  d.input_routing = {
      PortSource::outer_input(0),      // X <- w
      PortSource::outer_input(1),      // Y <- u
      PortSource::inner_output(0, 0),  // Z <- x
      PortSource::inner_output(1, 0),  // Z <- y
      PortSource::outer_input(2),      // Z <- v
  };
  d.output_routing = {PortSource::inner_output(2, 0)};
  return d;
}

/// B and C both read X's input, D merges them: the one-level
/// decomposition of the X slot.
inline WiringDiagram x_decomposition(const WireType& w) {
  WiringDiagram d;
  d.inner = {box("B", 1, 1, w), box("C", 1, 1, w), box("D", 2, 1, w)};
  d.outer = box("X", 1, 1, w);
  d.input_routing = {
      PortSource::outer_input(0),
      PortSource::outer_input(0),
      PortSource::inner_output(0, 0),
      PortSource::inner_output(1, 0),
  };
  d.output_routing = {PortSource::inner_output(2, 0)};
  return d;
}

/// Serial placement of two one-in/one-out boxes.
inline WiringDiagram serial_diagram(const WireType& w) {
  WiringDiagram d;
  d.inner = {box("X", 1, 1, w), box("Y", 1, 1, w)};
  d.outer = box("A", 1, 1, w);
  d.input_routing = {PortSource::outer_input(0), PortSource::inner_output(0, 0)};
  d.output_routing = {PortSource::inner_output(1, 0)};
  return d;
}

/// Random outer interface and routing over the given inner boxes, all
/// sharing one wire type.
inline WiringDiagram random_routing(Rng& rng,
                                    std::vector<LabeledBox> inner_boxes,
                                    const WireType& w) {
  WiringDiagram d;
  d.inner = std::move(inner_boxes);
  std::size_t total_out = 0;
  for (const auto& b : d.inner) total_out += b.outputs.size();

  std::size_t outer_in = pick(rng, 0, 2);
  if (outer_in == 0 && total_out == 0 && d.inner_input_count() > 0) outer_in = 1;
  const std::size_t outer_out = total_out == 0 ? 0 : pick(rng, 0, 2);
  d.outer = box("outer", outer_in, outer_out, w);

  std::vector<PortSource> sources;
  for (std::size_t i = 0; i < outer_in; ++i)
    sources.push_back(PortSource::outer_input(i));
  std::vector<PortSource> inner_sources;
  for (std::size_t b = 0; b < d.inner.size(); ++b)
    for (std::size_t p = 0; p < d.inner[b].outputs.size(); ++p)
      inner_sources.push_back(PortSource::inner_output(b, p));
  sources.insert(sources.end(), inner_sources.begin(), inner_sources.end());

  for (std::size_t i = 0; i < d.inner_input_count(); ++i)
    d.input_routing.push_back(sources[pick(rng, 0, sources.size() - 1)]);
  for (std::size_t o = 0; o < outer_out; ++o)
    d.output_routing.push_back(
        inner_sources[pick(rng, 0, inner_sources.size() - 1)]);
  return d;
}

/// A random diagram over one shared wire type. Small enough to be
/// exhaustively enumerable: at most `max_boxes` inner boxes with at most
/// two ports per side.
inline WiringDiagram random_diagram(Rng& rng, const WireType& w,
                                    std::size_t max_boxes = 3) {
  std::vector<LabeledBox> boxes;
  const std::size_t n_boxes = pick(rng, 1, max_boxes);
  for (std::size_t b = 0; b < n_boxes; ++b)
    boxes.push_back(
        box("b" + std::to_string(b), pick(rng, 0, 2), pick(rng, 0, 2), w));
  return random_routing(rng, std::move(boxes), w);
}

/// A random single-slot diagram on top of `inner_box`, for building
/// composable chains.
inline WiringDiagram random_cap(Rng& rng, const LabeledBox& inner_box,
                                const WireType& w) {
  WiringDiagram d;
  d.inner = {inner_box};
  const std::size_t n_out = inner_box.outputs.size();
  std::size_t outer_in = pick(rng, 0, 2);
  if (outer_in == 0 && n_out == 0 && !inner_box.inputs.empty()) outer_in = 1;
  const std::size_t outer_out = n_out == 0 ? 0 : pick(rng, 0, 2);
  d.outer = box("cap", outer_in, outer_out, w);

  std::vector<PortSource> sources;
  for (std::size_t i = 0; i < outer_in; ++i)
    sources.push_back(PortSource::outer_input(i));
  for (std::size_t p = 0; p < n_out; ++p)
    sources.push_back(PortSource::inner_output(0, p));
  for (std::size_t i = 0; i < inner_box.inputs.size(); ++i)
    d.input_routing.push_back(sources[pick(rng, 0, sources.size() - 1)]);
  for (std::size_t o = 0; o < outer_out; ++o)
    d.output_routing.push_back(
        PortSource::inner_output(0, pick(rng, 0, n_out - 1)));
  return d;
}

/// Pointwise equality of two diagrams' (f_in, f_out) over every finite
/// tuple; both must share the inner tensor and outer port lists.
inline bool evaluation_equal(const WiringDiagram& a, const WiringDiagram& b) {
  const LabeledBox ta = a.inner_tensor(), tb = b.inner_tensor();
  if (!same_ports(ta, tb) || !same_ports(a.outer, b.outer)) return false;
  const FiniteDomain out_dom(ta.outputs);
  const FiniteDomain in_dom(a.outer.inputs);
  for (std::size_t x = 0; x < out_dom.size(); ++x) {
    const ValueTuple xs = out_dom.decode_tuple(x);
    if (evaluate_fout(a, xs) != evaluate_fout(b, xs)) return false;
    for (std::size_t y = 0; y < in_dom.size(); ++y) {
      const ValueTuple ys = in_dom.decode_tuple(y);
      if (evaluate_fin(a, xs, ys) != evaluate_fin(b, xs, ys)) return false;
    }
  }
  return true;
}

inline MooreMachine random_machine(Rng& rng, const LabeledBox& interface,
                                   std::size_t max_states = 4) {
  MooreMachine m;
  m.interface = interface;
  const std::size_t n = pick(rng, 1, max_states);
  for (std::size_t s = 0; s < n; ++s) m.states.push_back("s" + std::to_string(s));
  const std::size_t n_in = m.input_domain().size();
  const std::size_t n_out = m.output_domain().size();
  m.update.resize(n * n_in);
  for (auto& e : m.update) e = static_cast<std::uint32_t>(pick(rng, 0, n - 1));
  m.readout.resize(n);
  for (auto& e : m.readout)
    e = static_cast<std::uint32_t>(pick(rng, 0, n_out - 1));
  return m;
}

/// The machine drawn in the paper's state diagram: steady outputs negate
/// steady inputs.
inline MooreMachine not_machine() {
  MooreMachine m;
  m.interface = box("not", 1, 1, bit());
  m.states = {"s1", "s2"};
  // update(s1,0)=s2, update(s1,1)=s1, update(s2,0)=s2, update(s2,1)=s1
  m.update = {1, 0, 1, 0};
  m.readout = {0, 1};
  return m;
}

inline FiniteContract random_contract(Rng& rng, const LabeledBox& interface,
                                      double density = 0.4) {
  FiniteContract c;
  c.interface = interface;
  const std::size_t n_in = c.input_domain().size();
  const std::size_t n_out = c.output_domain().size();
  for (std::size_t x = 0; x < n_in; ++x)
    for (std::size_t y = 0; y < n_out; ++y)
      if (chance(rng, density)) c.tuples.emplace(x, y);
  return c;
}

inline bool tables_equal(const MooreMachine& a, const MooreMachine& b) {
  return a.states.size() == b.states.size() && a.update == b.update &&
         a.readout == b.readout;
}

}  // namespace wirealg::testing
