#include "wirealg/moore.hpp"

#include <algorithm>

namespace wirealg {

namespace {

void check_all_finite_box(const LabeledBox& b, const std::string& context) {
  if (!all_finite(b.inputs) || !all_finite(b.outputs))
    throw TypeError(context + ": box '" + b.name + "' has non-finite wires");
}

void check_table_size(std::size_t states, std::size_t inputs,
                      std::size_t limit, const std::string& context) {
  if (states == 0) throw TypeError(context + ": empty state set");
  if (inputs != 0 && states > limit / inputs)
    throw TypeError(context + ": table of " + std::to_string(states) + " x " +
                    std::to_string(inputs) + " entries exceeds the limit of " +
                    std::to_string(limit));
}

std::string product_state_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

}  // namespace

std::size_t MooreMachine::state_index(const std::string& token) const {
  auto it = std::find(states.begin(), states.end(), token);
  if (it == states.end())
    throw TypeError("unknown state '" + token + "' of machine on '" +
                    interface.name + "'");
  return static_cast<std::size_t>(it - states.begin());
}

void check_machine(const MooreMachine& m) {
  check_all_finite_box(m.interface, "check_machine");
  const std::size_t n_in = m.input_domain().size();
  const std::size_t n_out = m.output_domain().size();
  if (m.states.empty()) throw TypeError("check_machine: empty state set");
  if (m.update.size() != m.states.size() * n_in)
    throw TypeError("check_machine: update table is not total");
  if (m.readout.size() != m.states.size())
    throw TypeError("check_machine: readout table is not total");
  for (auto s : m.update)
    if (s >= m.states.size())
      throw TypeError("check_machine: update entry out of range");
  for (auto y : m.readout)
    if (y >= n_out) throw TypeError("check_machine: readout entry out of range");
}

MooreMachine moore_tensor(const MooreMachine& m1, const MooreMachine& m2,
                          std::size_t table_limit) {
  MooreMachine r;
  r.interface.name = m1.interface.name + "*" + m2.interface.name;
  r.interface.inputs = m1.interface.inputs;
  r.interface.inputs.insert(r.interface.inputs.end(),
                            m2.interface.inputs.begin(),
                            m2.interface.inputs.end());
  r.interface.outputs = m1.interface.outputs;
  r.interface.outputs.insert(r.interface.outputs.end(),
                             m2.interface.outputs.begin(),
                             m2.interface.outputs.end());

  const std::size_t n1 = m1.states.size(), n2 = m2.states.size();
  const std::size_t in1 = m1.input_domain().size();
  const std::size_t in2 = m2.input_domain().size();
  const std::size_t out2 = m2.output_domain().size();
  check_table_size(n1 * n2, in1 * in2, table_limit, "moore_tensor");

  r.states.reserve(n1 * n2);
  for (const auto& a : m1.states)
    for (const auto& b : m2.states)
      r.states.push_back(product_state_name(a, b));

  r.update.resize(n1 * n2 * in1 * in2);
  r.readout.resize(n1 * n2);
  for (std::size_t s = 0; s < n1; ++s) {
    for (std::size_t t = 0; t < n2; ++t) {
      const std::size_t st = s * n2 + t;
      r.readout[st] =
          static_cast<std::uint32_t>(m1.readout[s] * out2 + m2.readout[t]);
      for (std::size_t x = 0; x < in1; ++x)
        for (std::size_t y = 0; y < in2; ++y)
          r.update[st * (in1 * in2) + x * in2 + y] = static_cast<std::uint32_t>(
              m1.update[s * in1 + x] * n2 + m2.update[t * in2 + y]);
    }
  }
  return r;
}

MooreMachine moore_apply_wiring(const WiringDiagram& d, const MooreMachine& m,
                                std::size_t table_limit, Exec exec) {
  require_valid(d, "moore_apply_wiring");
  check_machine(m);
  const LabeledBox tensor = d.inner_tensor();
  if (!same_ports(m.interface, tensor))
    throw TypeError(
        "moore_apply_wiring: machine does not inhabit the diagram's inner "
        "tensor");
  check_all_finite_box(d.outer, "moore_apply_wiring");

  MooreMachine r;
  r.interface = d.outer;
  r.states = m.states;

  const FiniteDomain inner_in(tensor.inputs);
  const FiniteDomain inner_out(tensor.outputs);
  const FiniteDomain outer_in(d.outer.inputs);
  const FiniteDomain outer_out(d.outer.outputs);
  const std::size_t n_states = m.states.size();
  const std::size_t n_y = outer_in.size();
  check_table_size(n_states, n_y, table_limit, "moore_apply_wiring");

  r.update.resize(n_states * n_y);
  r.readout.resize(n_states);

  auto fill_states = [&](std::size_t s0, std::size_t s1) {
    std::vector<std::size_t> out_digits(inner_out.arity());
    std::vector<std::size_t> y_digits(outer_in.arity());
    std::vector<std::size_t> routed_in(inner_in.arity());
    std::vector<std::size_t> routed_out(outer_out.arity());
    for (std::size_t s = s0; s < s1; ++s) {
      inner_out.decode_into(m.readout[s], out_digits);

      for (std::size_t o = 0; o < d.output_routing.size(); ++o) {
        const auto& src = d.output_routing[o];
        routed_out[o] = out_digits[d.output_flat_index(src.box, src.port)];
      }
      r.readout[s] = static_cast<std::uint32_t>(outer_out.encode(routed_out));

      for (std::size_t y = 0; y < n_y; ++y) {
        outer_in.decode_into(y, y_digits);
        for (std::size_t i = 0; i < d.input_routing.size(); ++i) {
          const auto& src = d.input_routing[i];
          routed_in[i] =
              src.kind == PortSource::Kind::OuterInput
                  ? y_digits[src.port]
                  : out_digits[d.output_flat_index(src.box, src.port)];
        }
        const std::size_t x = inner_in.encode(routed_in);
        r.update[s * n_y + y] = m.update[s * inner_in.size() + x];
      }
    }
  };

  if (run_parallel(exec, n_states * std::max<std::size_t>(n_y, 1))) {
    const auto ranges = chunk_ranges(n_states);
    const std::int64_t n_chunks = static_cast<std::int64_t>(ranges.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < n_chunks; ++c)
      fill_states(ranges[static_cast<std::size_t>(c)].first,
                  ranges[static_cast<std::size_t>(c)].second);
  } else {
    fill_states(0, n_states);
  }
  return r;
}

Trace simulate(const MooreMachine& m, const std::string& initial_state,
               const std::vector<ValueTuple>& inputs) {
  check_machine(m);
  const FiniteDomain in_dom = m.input_domain();
  const FiniteDomain out_dom = m.output_domain();

  Trace t;
  t.initial_state = initial_state;
  std::size_t s = m.state_index(initial_state);
  for (const auto& x : inputs) {
    check_tuple(m.interface.inputs, x, "simulate");
    TraceStep step;
    step.input = x;
    step.output = out_dom.decode_tuple(m.readout[s]);
    s = m.update[s * in_dom.size() + in_dom.encode_tuple(x)];
    step.state_after = m.states[s];
    t.steps.push_back(std::move(step));
  }
  return t;
}

Trace cosimulate_oracle(const WiringDiagram& d,
                        const std::vector<MooreMachine>& machines,
                        const std::vector<std::string>& initial_states,
                        const std::vector<ValueTuple>& ext_inputs) {
  require_valid(d, "cosimulate_oracle");
  if (machines.size() != d.inner.size())
    throw TypeError("cosimulate_oracle: one machine per inner slot required");
  if (initial_states.size() != d.inner.size())
    throw TypeError("cosimulate_oracle: one initial state per slot required");
  for (std::size_t b = 0; b < machines.size(); ++b) {
    check_machine(machines[b]);
    if (!same_ports(machines[b].interface, d.inner[b]))
      throw TypeError("cosimulate_oracle: machine " + std::to_string(b) +
                      " does not inhabit its slot");
  }

  std::vector<std::size_t> state(machines.size());
  for (std::size_t b = 0; b < machines.size(); ++b)
    state[b] = machines[b].state_index(initial_states[b]);

  auto joined_name = [&]() {
    if (machines.empty()) return std::string("()");
    std::string name = machines[0].states[state[0]];
    for (std::size_t b = 1; b < machines.size(); ++b)
      name = "(" + name + "," + machines[b].states[state[b]] + ")";
    return name;
  };

  const FiniteDomain outer_out(d.outer.outputs);
  Trace t;
  t.initial_state = joined_name();

  std::vector<std::size_t> out_digits(d.inner_output_count());
  std::vector<std::size_t> in_digits(d.inner_input_count());
  for (const auto& y : ext_inputs) {
    check_tuple(d.outer.inputs, y, "cosimulate_oracle");

    // instantaneous readouts of every slot
    std::size_t flat = 0;
    for (std::size_t b = 0; b < machines.size(); ++b) {
      const auto& mb = machines[b];
      FiniteDomain(mb.interface.outputs)
          .decode_into(mb.readout[state[b]],
                       std::span<std::size_t>(out_digits.data() + flat,
                                              mb.interface.outputs.size()));
      flat += mb.interface.outputs.size();
    }

    TraceStep step;
    step.input = y;
    std::vector<std::size_t> routed_out(d.output_routing.size());
    for (std::size_t o = 0; o < d.output_routing.size(); ++o) {
      const auto& src = d.output_routing[o];
      routed_out[o] = out_digits[d.output_flat_index(src.box, src.port)];
    }
    step.output = outer_out.decode_tuple(outer_out.encode(routed_out));

    // route values, then update every slot simultaneously
    for (std::size_t i = 0; i < d.input_routing.size(); ++i) {
      const auto& src = d.input_routing[i];
      in_digits[i] = src.kind == PortSource::Kind::OuterInput
                         ? std::get<std::size_t>(y[src.port])
                         : out_digits[d.output_flat_index(src.box, src.port)];
    }
    flat = 0;
    for (std::size_t b = 0; b < machines.size(); ++b) {
      const auto& mb = machines[b];
      const FiniteDomain dom(mb.interface.inputs);
      const std::size_t x = dom.encode(std::span<const std::size_t>(
          in_digits.data() + flat, mb.interface.inputs.size()));
      state[b] = mb.update[state[b] * dom.size() + x];
      flat += mb.interface.inputs.size();
    }
    step.state_after = joined_name();
    t.steps.push_back(std::move(step));
  }
  return t;
}

MooreMachine machine_from_function(const LabeledBox& interface,
                                   const std::vector<std::size_t>& table) {
  check_all_finite_box(interface, "machine_from_function");
  const FiniteDomain in_dom(interface.inputs);
  const FiniteDomain out_dom(interface.outputs);
  if (table.size() != in_dom.size())
    throw TypeError("machine_from_function: table is not total over the inputs");

  MooreMachine m;
  m.interface = interface;
  m.states.reserve(in_dom.size());
  for (std::size_t x = 0; x < in_dom.size(); ++x) {
    auto digits = in_dom.decode(x);
    std::string name;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) name += ",";
      name += interface.inputs[i].symbols[digits[i]];
    }
    m.states.push_back(name.empty() ? "*" : name);
  }
  m.update.resize(in_dom.size() * in_dom.size());
  for (std::size_t s = 0; s < in_dom.size(); ++s)
    for (std::size_t x = 0; x < in_dom.size(); ++x)
      m.update[s * in_dom.size() + x] = static_cast<std::uint32_t>(x);
  m.readout.reserve(in_dom.size());
  for (std::size_t x = 0; x < in_dom.size(); ++x) {
    if (table[x] >= out_dom.size())
      throw TypeError("machine_from_function: table value out of range");
    m.readout.push_back(static_cast<std::uint32_t>(table[x]));
  }
  return m;
}

}  // namespace wirealg
