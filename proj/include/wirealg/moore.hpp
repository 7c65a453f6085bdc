#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wirealg/parallel.hpp"
#include "wirealg/types.hpp"
#include "wirealg/wiring.hpp"

namespace wirealg {

/// A finite Moore machine inhabiting an all-Finite box: state set,
/// total update table S x In -> S and total readout table S -> Out.
///
/// Tables are dense over enumerated domains: update[s * |In| + x] is the
/// next-state index, readout[s] the output-tuple index (FiniteDomain
/// encoding over the interface's port lists).
struct MooreMachine {
  LabeledBox interface;
  std::vector<std::string> states;
  std::vector<std::uint32_t> update;
  std::vector<std::uint32_t> readout;

  FiniteDomain input_domain() const { return FiniteDomain(interface.inputs); }
  FiniteDomain output_domain() const { return FiniteDomain(interface.outputs); }

  std::size_t state_index(const std::string& token) const;
  std::uint32_t step(std::size_t state, std::size_t input) const {
    return update[state * input_domain().size() + input];
  }
};

/// Throws TypeError unless tables are total and every entry in range.
void check_machine(const MooreMachine& m);

struct TraceStep {
  ValueTuple input;
  std::string state_after;
  ValueTuple output;
};

struct Trace {
  std::string initial_state;
  std::vector<TraceStep> steps;
};

/// Default cap on |S| x |In| of any composed machine's table.
inline constexpr std::size_t kDefaultTableLimit = 1'000'000;

/// Parallel placement of two machines: product states, componentwise
/// update and readout. Product state (s,t) sits at index s * |S_Y| + t
/// and is named "(s,t)".
MooreMachine moore_tensor(const MooreMachine& m1, const MooreMachine& m2,
                          std::size_t table_limit = kDefaultTableLimit);

/// The composite machine induced by a wiring diagram over a machine on
/// the diagram's inner tensor. The state set is untouched; the new
/// tables route each readout through the diagram:
///   update'(s, y) = update(s, f_in(readout(s), y))
///   readout'(s)   = f_out(readout(s))
/// Both tables are materialized by full enumeration (size-guarded).
MooreMachine moore_apply_wiring(const WiringDiagram& d, const MooreMachine& m,
                                std::size_t table_limit = kDefaultTableLimit,
                                Exec exec = Exec::Auto);

/// Runs the machine: step k emits readout(s_k), then s_{k+1} =
/// update(s_k, x_k).
Trace simulate(const MooreMachine& m, const std::string& initial_state,
               const std::vector<ValueTuple>& inputs);

/// Steps one machine per inner slot against the wiring directly, without
/// building the composite machine: per step, read every slot's readout,
/// route values through the diagram, then update all slots at once.
/// Serves as the independent oracle for moore_apply_wiring; the emitted
/// states use the same product naming as iterated moore_tensor.
Trace cosimulate_oracle(const WiringDiagram& d,
                        const std::vector<MooreMachine>& machines,
                        const std::vector<std::string>& initial_states,
                        const std::vector<ValueTuple>& ext_inputs);

/// A total table In -> Out as a machine: states are the inputs, the
/// update replaces the state with the new input, the readout applies the
/// table. table[x] is the output-tuple index for input-tuple index x.
MooreMachine machine_from_function(const LabeledBox& interface,
                                   const std::vector<std::size_t>& table);

}  // namespace wirealg
