#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wirealg/matrix.hpp"
#include "wirealg/types.hpp"

namespace wirealg {

/// Where a routed value comes from: an input port of the outer box, or
/// an output port of one of the inner boxes.
struct PortSource {
  enum class Kind { OuterInput, InnerOutput };

  Kind kind = Kind::OuterInput;
  std::size_t box = 0;   // InnerOutput only
  std::size_t port = 0;  // port index within the source list

  static PortSource outer_input(std::size_t port) {
    return PortSource{Kind::OuterInput, 0, port};
  }
  static PortSource inner_output(std::size_t box, std::size_t port) {
    return PortSource{Kind::InnerOutput, box, port};
  }

  friend bool operator==(const PortSource&, const PortSource&) = default;
};

/// A wiring diagram: the morphism from the tensor of `inner` to `outer`.
///
/// Routing is stored per destination port, so every wiring map is a pure
/// rewiring built from projections, duplications and discards. The pair
/// of functions the diagram denotes is recovered by evaluation, with the
/// argument convention fixed once for the whole library:
/// evaluate_fin(diagram, inner_outputs, outer_inputs).
///
/// input_routing is flat over all inner input ports, box by box in inner
/// order; output_routing has one entry per outer output port and may only
/// name inner outputs (an outer input never reaches an outer output
/// directly; insert a relay box for a passthrough).
struct WiringDiagram {
  std::vector<LabeledBox> inner;
  LabeledBox outer;
  std::vector<PortSource> input_routing;
  std::vector<PortSource> output_routing;

  std::size_t inner_input_count() const;
  std::size_t inner_output_count() const;

  /// Types of the tensor of inner boxes, flattened in inner order.
  std::vector<WireType> inner_input_types() const;
  std::vector<WireType> inner_output_types() const;

  /// The tensor of the inner boxes as a box (the morphism's domain).
  LabeledBox inner_tensor(const std::string& name = "") const;

  /// Flat index of input port `port` of inner box `box`.
  std::size_t input_flat_index(std::size_t box, std::size_t port) const;
  std::size_t output_flat_index(std::size_t box, std::size_t port) const;
};

struct Diagnostic {
  std::string rule;     // stable identifier of the violated invariant
  std::string message;  // names the offending port

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Empty result iff the diagram is well formed: all indices in range,
/// every destination typed like its source, and no outer output fed
/// straight from an outer input.
std::vector<Diagnostic> validate(const WiringDiagram& d);

/// Throws TypeError built from validate() when the diagram is invalid.
void require_valid(const WiringDiagram& d, const std::string& context);

/// The diagram's f_in: each inner input port picks up the value at its
/// routed source. Argument order is (inner_outputs, outer_inputs).
ValueTuple evaluate_fin(const WiringDiagram& d, const ValueTuple& inner_outputs,
                        const ValueTuple& outer_inputs);

/// The diagram's f_out over the inner outputs.
ValueTuple evaluate_fout(const WiringDiagram& d,
                         const ValueTuple& inner_outputs);

/// Identity morphism: one inner slot wired straight through.
WiringDiagram identity_diagram(const LabeledBox& b);

/// Parallel placement; no connections between the two halves.
WiringDiagram tensor_diagrams(const WiringDiagram& d1, const WiringDiagram& d2);

/// Replaces inner slot `slot` of `host` by the inner boxes of `impl`,
/// splicing the routing through the erased interface. impl.outer must be
/// port-list-equal to the slot box.
WiringDiagram substitute(const WiringDiagram& host, std::size_t slot,
                         const WiringDiagram& impl);

/// Categorical composition g ∘ f for g whose single inner slot is
/// f.outer. For the general case substitute into the relevant slot.
WiringDiagram compose(const WiringDiagram& f, const WiringDiagram& g);

/// The routing as 0/1 matrices over all-Real wires:
///   f_in(x', y) = in_from_inner * x' + in_from_outer * y
///   f_out(x')   = out_from_inner * x'
struct WiringMatrices {
  Matrix in_from_inner;  // A^f: inner-input dims x inner-output dims
  Matrix in_from_outer;  // B^f: inner-input dims x outer-input dims
  Matrix out_from_inner; // C^f: outer-output dims x inner-output dims
};

WiringMatrices wiring_as_matrices(const WiringDiagram& d);

/// Graphviz rendering of the routing; plumbing for inspection only.
std::string to_dot(const WiringDiagram& d, const std::string& name = "diagram");

}  // namespace wirealg
