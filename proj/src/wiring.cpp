#include "wirealg/wiring.hpp"

#include <sstream>

namespace wirealg {

namespace {

const WireType* source_type(const WiringDiagram& d, const PortSource& s) {
  if (s.kind == PortSource::Kind::OuterInput) {
    if (s.port >= d.outer.inputs.size()) return nullptr;
    return &d.outer.inputs[s.port];
  }
  if (s.box >= d.inner.size()) return nullptr;
  if (s.port >= d.inner[s.box].outputs.size()) return nullptr;
  return &d.inner[s.box].outputs[s.port];
}

}  // namespace

std::size_t WiringDiagram::inner_input_count() const {
  std::size_t n = 0;
  for (const auto& b : inner) n += b.inputs.size();
  return n;
}

std::size_t WiringDiagram::inner_output_count() const {
  std::size_t n = 0;
  for (const auto& b : inner) n += b.outputs.size();
  return n;
}

std::vector<WireType> WiringDiagram::inner_input_types() const {
  std::vector<WireType> t;
  for (const auto& b : inner) t.insert(t.end(), b.inputs.begin(), b.inputs.end());
  return t;
}

std::vector<WireType> WiringDiagram::inner_output_types() const {
  std::vector<WireType> t;
  for (const auto& b : inner) t.insert(t.end(), b.outputs.begin(), b.outputs.end());
  return t;
}

LabeledBox WiringDiagram::inner_tensor(const std::string& name) const {
  return LabeledBox{name, inner_input_types(), inner_output_types()};
}

std::size_t WiringDiagram::input_flat_index(std::size_t box,
                                            std::size_t port) const {
  std::size_t n = 0;
  for (std::size_t b = 0; b < box; ++b) n += inner[b].inputs.size();
  return n + port;
}

std::size_t WiringDiagram::output_flat_index(std::size_t box,
                                             std::size_t port) const {
  std::size_t n = 0;
  for (std::size_t b = 0; b < box; ++b) n += inner[b].outputs.size();
  return n + port;
}

std::vector<Diagnostic> validate(const WiringDiagram& d) {
  std::vector<Diagnostic> out;
  const auto in_types = d.inner_input_types();

  if (d.input_routing.size() != in_types.size())
    out.push_back({"arity",
                   "input_routing has " + std::to_string(d.input_routing.size()) +
                       " entries for " + std::to_string(in_types.size()) +
                       " inner input ports"});
  if (d.output_routing.size() != d.outer.outputs.size())
    out.push_back({"arity", "output_routing has " +
                                std::to_string(d.output_routing.size()) +
                                " entries for " +
                                std::to_string(d.outer.outputs.size()) +
                                " outer output ports"});

  const std::size_t n_in = std::min(d.input_routing.size(), in_types.size());
  for (std::size_t i = 0; i < n_in; ++i) {
    const auto& src = d.input_routing[i];
    const WireType* st = source_type(d, src);
    if (!st) {
      out.push_back({"index-range",
                     "inner input port " + std::to_string(i) +
                         " is routed from an out-of-range source"});
      continue;
    }
    if (!(*st == in_types[i]))
      out.push_back({"type-mismatch",
                     "inner input port " + std::to_string(i) +
                         " receives a value of a different wire type"});
  }

  const std::size_t n_out =
      std::min(d.output_routing.size(), d.outer.outputs.size());
  for (std::size_t o = 0; o < n_out; ++o) {
    const auto& src = d.output_routing[o];
    if (src.kind == PortSource::Kind::OuterInput) {
      out.push_back({"outer-output-source",
                     "outer output port " + std::to_string(o) +
                         " is routed from an outer input; outputs may only "
                         "come from inner outputs"});
      continue;
    }
    const WireType* st = source_type(d, src);
    if (!st) {
      out.push_back({"index-range",
                     "outer output port " + std::to_string(o) +
                         " is routed from an out-of-range source"});
      continue;
    }
    if (!(*st == d.outer.outputs[o]))
      out.push_back({"type-mismatch",
                     "outer output port " + std::to_string(o) +
                         " receives a value of a different wire type"});
  }
  return out;
}

void require_valid(const WiringDiagram& d, const std::string& context) {
  auto diags = validate(d);
  if (diags.empty()) return;
  std::string msg = context + ": invalid diagram";
  for (const auto& g : diags) msg += "; [" + g.rule + "] " + g.message;
  throw TypeError(msg);
}

ValueTuple evaluate_fin(const WiringDiagram& d, const ValueTuple& inner_outputs,
                        const ValueTuple& outer_inputs) {
  check_tuple(d.inner_output_types(), inner_outputs, "evaluate_fin");
  check_tuple(d.outer.inputs, outer_inputs, "evaluate_fin");
  ValueTuple result(d.input_routing.size());
  for (std::size_t i = 0; i < d.input_routing.size(); ++i) {
    const auto& src = d.input_routing[i];
    result[i] = src.kind == PortSource::Kind::OuterInput
                    ? outer_inputs[src.port]
                    : inner_outputs[d.output_flat_index(src.box, src.port)];
  }
  return result;
}

ValueTuple evaluate_fout(const WiringDiagram& d,
                         const ValueTuple& inner_outputs) {
  check_tuple(d.inner_output_types(), inner_outputs, "evaluate_fout");
  ValueTuple result(d.output_routing.size());
  for (std::size_t o = 0; o < d.output_routing.size(); ++o) {
    const auto& src = d.output_routing[o];
    if (src.kind != PortSource::Kind::InnerOutput)
      throw TypeError("evaluate_fout: outer output routed from an outer input");
    result[o] = inner_outputs[d.output_flat_index(src.box, src.port)];
  }
  return result;
}

WiringDiagram identity_diagram(const LabeledBox& b) {
  WiringDiagram d;
  d.inner = {b};
  d.outer = b;
  d.input_routing.reserve(b.inputs.size());
  for (std::size_t i = 0; i < b.inputs.size(); ++i)
    d.input_routing.push_back(PortSource::outer_input(i));
  d.output_routing.reserve(b.outputs.size());
  for (std::size_t o = 0; o < b.outputs.size(); ++o)
    d.output_routing.push_back(PortSource::inner_output(0, o));
  return d;
}

WiringDiagram tensor_diagrams(const WiringDiagram& d1,
                              const WiringDiagram& d2) {
  WiringDiagram d;
  d.inner = d1.inner;
  d.inner.insert(d.inner.end(), d2.inner.begin(), d2.inner.end());
  d.outer.name = d1.outer.name.empty() || d2.outer.name.empty()
                     ? d1.outer.name + d2.outer.name
                     : d1.outer.name + "*" + d2.outer.name;
  d.outer.inputs = d1.outer.inputs;
  d.outer.inputs.insert(d.outer.inputs.end(), d2.outer.inputs.begin(),
                        d2.outer.inputs.end());
  d.outer.outputs = d1.outer.outputs;
  d.outer.outputs.insert(d.outer.outputs.end(), d2.outer.outputs.begin(),
                         d2.outer.outputs.end());

  const std::size_t box_shift = d1.inner.size();
  const std::size_t in_shift = d1.outer.inputs.size();
  auto shifted = [&](const PortSource& s) {
    return s.kind == PortSource::Kind::OuterInput
               ? PortSource::outer_input(s.port + in_shift)
               : PortSource::inner_output(s.box + box_shift, s.port);
  };

  d.input_routing = d1.input_routing;
  for (const auto& s : d2.input_routing) d.input_routing.push_back(shifted(s));
  d.output_routing = d1.output_routing;
  for (const auto& s : d2.output_routing)
    d.output_routing.push_back(shifted(s));
  return d;
}

WiringDiagram substitute(const WiringDiagram& host, std::size_t slot,
                         const WiringDiagram& impl) {
  if (slot >= host.inner.size())
    throw TypeError("substitute: slot index out of range");
  if (!same_ports(impl.outer, host.inner[slot]))
    throw TypeError("substitute: implementation interface does not match slot " +
                    std::to_string(slot));

  WiringDiagram r;
  r.outer = host.outer;
  r.inner.reserve(host.inner.size() - 1 + impl.inner.size());
  for (std::size_t b = 0; b < slot; ++b) r.inner.push_back(host.inner[b]);
  for (const auto& b : impl.inner) r.inner.push_back(b);
  for (std::size_t b = slot + 1; b < host.inner.size(); ++b)
    r.inner.push_back(host.inner[b]);

  // Box index in the result for a surviving host box / an impl box.
  auto host_box = [&](std::size_t b) {
    return b < slot ? b : b - 1 + impl.inner.size();
  };
  auto impl_box = [&](std::size_t b) { return slot + b; };

  // A host-side source, with reads of the erased slot's outputs replaced
  // by the sources impl routes them from.
  auto resolve_host = [&](const PortSource& s) -> PortSource {
    if (s.kind == PortSource::Kind::OuterInput) return s;
    if (s.box != slot) return PortSource::inner_output(host_box(s.box), s.port);
    const PortSource& inside = impl.output_routing[s.port];
    return PortSource::inner_output(impl_box(inside.box), inside.port);
  };

  // An impl-side source; impl's outer inputs are the slot's inputs, which
  // the host routes (possibly back through the slot's own outputs).
  auto resolve_impl = [&](const PortSource& s) -> PortSource {
    if (s.kind == PortSource::Kind::InnerOutput)
      return PortSource::inner_output(impl_box(s.box), s.port);
    const PortSource& outside =
        host.input_routing[host.input_flat_index(slot, s.port)];
    return resolve_host(outside);
  };

  for (std::size_t b = 0; b < host.inner.size(); ++b) {
    if (b == slot) {
      for (const auto& s : impl.input_routing)
        r.input_routing.push_back(resolve_impl(s));
      continue;
    }
    for (std::size_t p = 0; p < host.inner[b].inputs.size(); ++p)
      r.input_routing.push_back(
          resolve_host(host.input_routing[host.input_flat_index(b, p)]));
  }
  for (const auto& s : host.output_routing)
    r.output_routing.push_back(resolve_host(s));
  return r;
}

WiringDiagram compose(const WiringDiagram& f, const WiringDiagram& g) {
  if (g.inner.size() != 1)
    throw TypeError("compose: g must have exactly one inner slot");
  if (!same_ports(g.inner[0], f.outer))
    throw TypeError("compose: g's slot does not match f's outer interface");
  return substitute(g, 0, f);
}

WiringMatrices wiring_as_matrices(const WiringDiagram& d) {
  require_valid(d, "wiring_as_matrices");
  auto in_types = d.inner_input_types();
  auto out_types = d.inner_output_types();
  if (!all_real(in_types) || !all_real(out_types) ||
      !all_real(d.outer.inputs) || !all_real(d.outer.outputs))
    throw TypeError("wiring_as_matrices: non-real wire type present");

  const int rows_in = total_real_dim(in_types);
  const int inner_out_dim = total_real_dim(out_types);
  const int outer_in_dim = total_real_dim(d.outer.inputs);
  const int outer_out_dim = total_real_dim(d.outer.outputs);

  // scalar offset of each port within its flattened list
  auto offsets = [](const std::vector<WireType>& ts) {
    std::vector<int> off(ts.size() + 1, 0);
    for (std::size_t i = 0; i < ts.size(); ++i) off[i + 1] = off[i] + ts[i].dim;
    return off;
  };
  auto in_off = offsets(in_types);
  auto out_off = offsets(out_types);
  auto outer_in_off = offsets(d.outer.inputs);

  WiringMatrices m{Matrix(rows_in, inner_out_dim),
                   Matrix(rows_in, outer_in_dim),
                   Matrix(outer_out_dim, inner_out_dim)};

  for (std::size_t i = 0; i < d.input_routing.size(); ++i) {
    const auto& src = d.input_routing[i];
    const int dim = in_types[i].dim;
    if (src.kind == PortSource::Kind::OuterInput) {
      for (int k = 0; k < dim; ++k)
        m.in_from_outer.at(in_off[i] + k, outer_in_off[src.port] + k) = 1.0;
    } else {
      const int col0 = out_off[d.output_flat_index(src.box, src.port)];
      for (int k = 0; k < dim; ++k)
        m.in_from_inner.at(in_off[i] + k, col0 + k) = 1.0;
    }
  }

  int row = 0;
  for (std::size_t o = 0; o < d.output_routing.size(); ++o) {
    const auto& src = d.output_routing[o];
    const int dim = d.outer.outputs[o].dim;
    const int col0 = out_off[d.output_flat_index(src.box, src.port)];
    for (int k = 0; k < dim; ++k) m.out_from_inner.at(row + k, col0 + k) = 1.0;
    row += dim;
  }
  return m;
}

std::string to_dot(const WiringDiagram& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
  for (std::size_t b = 0; b < d.inner.size(); ++b)
    os << "  b" << b << " [shape=box,label=\"" << d.inner[b].name << "\"];\n";
  for (std::size_t i = 0; i < d.outer.inputs.size(); ++i)
    os << "  in" << i << " [shape=plaintext,label=\"in" << i << "\"];\n";
  for (std::size_t o = 0; o < d.outer.outputs.size(); ++o)
    os << "  out" << o << " [shape=plaintext,label=\"out" << o << "\"];\n";
  std::size_t flat = 0;
  for (std::size_t b = 0; b < d.inner.size(); ++b) {
    for (std::size_t p = 0; p < d.inner[b].inputs.size(); ++p, ++flat) {
      const auto& src = d.input_routing[flat];
      if (src.kind == PortSource::Kind::OuterInput)
        os << "  in" << src.port << " -> b" << b << " [label=\"" << p << "\"];\n";
      else
        os << "  b" << src.box << " -> b" << b << " [label=\"" << src.port
           << ">" << p << "\"];\n";
    }
  }
  for (std::size_t o = 0; o < d.output_routing.size(); ++o) {
    const auto& src = d.output_routing[o];
    os << "  b" << src.box << " -> out" << o << " [label=\"" << src.port
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace wirealg
