#include "wirealg/contracts.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace wirealg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_scalar_real_box(const LabeledBox& b, const std::string& context) {
  for (const auto& p : b.inputs)
    if (!p.is_real() || p.dim != 1)
      throw TypeError(context + ": box '" + b.name + "' needs Real(1) wires");
  for (const auto& p : b.outputs)
    if (!p.is_real() || p.dim != 1)
      throw TypeError(context + ": box '" + b.name + "' needs Real(1) wires");
}

void check_finite_interfaces(const WiringDiagram& d, const std::string& context) {
  for (const auto& b : d.inner)
    if (!all_finite(b.inputs) || !all_finite(b.outputs))
      throw TypeError(context + ": non-finite wires on box '" + b.name + "'");
  if (!all_finite(d.outer.inputs) || !all_finite(d.outer.outputs))
    throw TypeError(context + ": non-finite wires on the outer box");
}

// odometer over per-variable grid sizes; first variable most significant
bool advance(std::vector<std::size_t>& digits,
             const std::vector<std::size_t>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

Interval Interval::all() { return Interval{-kInf, kInf}; }
Interval Interval::none() { return Interval{1.0, 0.0}; }

Interval intersect(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

IntervalContract IntervalContract::unconstrained(const LabeledBox& box) {
  check_scalar_real_box(box, "IntervalContract");
  IntervalContract c;
  c.interface = box;
  c.inputs.assign(box.inputs.size(), Interval::all());
  c.outputs.assign(box.outputs.size(), Interval::all());
  return c;
}

IntervalContract IntervalContract::empty(const LabeledBox& box) {
  auto c = unconstrained(box);
  c.inputs.assign(c.inputs.size(), Interval::none());
  c.outputs.assign(c.outputs.size(), Interval::none());
  c.marked_empty = true;
  return c;
}

bool IntervalContract::is_empty() const {
  if (marked_empty) return true;
  for (const auto& i : inputs)
    if (i.is_empty()) return true;
  for (const auto& i : outputs)
    if (i.is_empty()) return true;
  return false;
}

std::vector<AGVariable> AGContract::variables() const {
  std::vector<AGVariable> v = inputs;
  v.insert(v.end(), outputs.begin(), outputs.end());
  return v;
}

LabeledBox AGContract::interface(const std::string& name) const {
  LabeledBox b;
  b.name = name;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    b.inputs.push_back(WireType::real(1));
  for (std::size_t i = 0; i < outputs.size(); ++i)
    b.outputs.push_back(WireType::real(1));
  return b;
}

void check_ag(const AGContract& c) {
  std::map<std::string, const AGVariable*> seen;
  for (const auto& v : c.variables()) {
    if (v.name.empty()) throw TypeError("check_ag: unnamed variable");
    if (v.grid.empty())
      throw TypeError("check_ag: variable '" + v.name + "' has an empty grid");
    if (!std::is_sorted(v.grid.begin(), v.grid.end()) ||
        std::adjacent_find(v.grid.begin(), v.grid.end()) != v.grid.end())
      throw TypeError("check_ag: grid of '" + v.name +
                      "' must be strictly increasing");
    if (!seen.emplace(v.name, &v).second)
      throw TypeError("check_ag: duplicate variable '" + v.name + "'");
  }
  for (const auto& t : c.assumptions) {
    if (t.size() != c.inputs.size())
      throw TypeError("check_ag: assumption tuple arity mismatch");
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= c.inputs[i].grid.size())
        throw TypeError("check_ag: assumption index out of grid range");
  }
  const auto vars = c.variables();
  for (const auto& t : c.guarantees) {
    if (t.size() != vars.size())
      throw TypeError("check_ag: guarantee tuple arity mismatch");
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= vars[i].grid.size())
        throw TypeError("check_ag: guarantee index out of grid range");
  }
}

// ---------------------------------------------------------------------

FiniteContract contract_tensor(const FiniteContract& r1,
                               const FiniteContract& r2) {
  FiniteContract r;
  r.interface.name = r1.interface.name + "*" + r2.interface.name;
  r.interface.inputs = r1.interface.inputs;
  r.interface.inputs.insert(r.interface.inputs.end(),
                            r2.interface.inputs.begin(),
                            r2.interface.inputs.end());
  r.interface.outputs = r1.interface.outputs;
  r.interface.outputs.insert(r.interface.outputs.end(),
                             r2.interface.outputs.begin(),
                             r2.interface.outputs.end());
  const std::size_t in2 = r2.input_domain().size();
  const std::size_t out2 = r2.output_domain().size();
  for (const auto& [x1, y1] : r1.tuples)
    for (const auto& [x2, y2] : r2.tuples)
      r.tuples.emplace(x1 * in2 + x2, y1 * out2 + y2);
  return r;
}

FiniteContract contract_apply_wiring(const WiringDiagram& d,
                                     const FiniteContract& r, Exec exec) {
  require_valid(d, "contract_apply_wiring");
  check_finite_interfaces(d, "contract_apply_wiring");
  const LabeledBox tensor = d.inner_tensor();
  if (!same_ports(r.interface, tensor))
    throw TypeError(
        "contract_apply_wiring: contract does not sit on the diagram's inner "
        "tensor");

  const FiniteDomain inner_in(tensor.inputs);
  const FiniteDomain inner_out(tensor.outputs);
  const FiniteDomain outer_in(d.outer.inputs);
  const FiniteDomain outer_out(d.outer.outputs);

  FiniteContract out;
  out.interface = d.outer;

  auto scan = [&](std::size_t y0, std::size_t y1,
                  std::vector<std::pair<std::size_t, std::size_t>>& found) {
    std::vector<std::size_t> y_digits(outer_in.arity());
    std::vector<std::size_t> out_digits(inner_out.arity());
    std::vector<std::size_t> routed_in(inner_in.arity());
    std::vector<std::size_t> routed_out(outer_out.arity());
    for (std::size_t y = y0; y < y1; ++y) {
      outer_in.decode_into(y, y_digits);
      for (std::size_t x2 = 0; x2 < inner_out.size(); ++x2) {
        inner_out.decode_into(x2, out_digits);
        for (std::size_t i = 0; i < d.input_routing.size(); ++i) {
          const auto& src = d.input_routing[i];
          routed_in[i] =
              src.kind == PortSource::Kind::OuterInput
                  ? y_digits[src.port]
                  : out_digits[d.output_flat_index(src.box, src.port)];
        }
        if (!r.contains(inner_in.encode(routed_in), x2)) continue;
        for (std::size_t o = 0; o < d.output_routing.size(); ++o) {
          const auto& src = d.output_routing[o];
          routed_out[o] = out_digits[d.output_flat_index(src.box, src.port)];
        }
        found.emplace_back(y, outer_out.encode(routed_out));
      }
    }
  };

  const std::size_t work = outer_in.size() * inner_out.size();
  if (run_parallel(exec, work)) {
    const auto ranges = chunk_ranges(outer_in.size());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parts(
        ranges.size());
    const std::int64_t n_chunks = static_cast<std::int64_t>(ranges.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < n_chunks; ++c)
      scan(ranges[static_cast<std::size_t>(c)].first,
           ranges[static_cast<std::size_t>(c)].second,
           parts[static_cast<std::size_t>(c)]);
    for (const auto& part : parts)
      out.tuples.insert(part.begin(), part.end());
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> found;
    scan(0, outer_in.size(), found);
    out.tuples.insert(found.begin(), found.end());
  }
  return out;
}

FiniteContract pullback_compose_oracle(const WiringDiagram& d,
                                       const FiniteContract& r) {
  require_valid(d, "pullback_compose_oracle");
  check_finite_interfaces(d, "pullback_compose_oracle");
  const LabeledBox tensor = d.inner_tensor();
  if (!same_ports(r.interface, tensor))
    throw TypeError(
        "pullback_compose_oracle: contract does not sit on the diagram's "
        "inner tensor");

  const FiniteDomain inner_in(tensor.inputs);
  const FiniteDomain inner_out(tensor.outputs);
  const FiniteDomain outer_in(d.outer.inputs);
  const FiniteDomain outer_out(d.outer.outputs);

  // step one: the pullback of the relation along (f_in, pi_2)
  std::vector<std::pair<std::size_t, std::size_t>> pullback;
  for (std::size_t y = 0; y < outer_in.size(); ++y) {
    const ValueTuple y_tuple = outer_in.decode_tuple(y);
    for (std::size_t x2 = 0; x2 < inner_out.size(); ++x2) {
      const ValueTuple x2_tuple = inner_out.decode_tuple(x2);
      const ValueTuple routed = evaluate_fin(d, x2_tuple, y_tuple);
      if (r.contains(inner_in.encode_tuple(routed), x2))
        pullback.emplace_back(y, x2);
    }
  }

  // step two: the image under 1 x f_out
  FiniteContract out;
  out.interface = d.outer;
  for (const auto& [y, x2] : pullback) {
    const ValueTuple y2 = evaluate_fout(d, inner_out.decode_tuple(x2));
    out.tuples.emplace(y, outer_out.encode_tuple(y2));
  }
  return out;
}

bool contract_refines(const FiniteContract& r1, const FiniteContract& r2) {
  if (!same_ports(r1.interface, r2.interface))
    throw TypeError("contract_refines: interfaces differ");
  return std::includes(r2.tuples.begin(), r2.tuples.end(), r1.tuples.begin(),
                       r1.tuples.end());
}

// ---------------------------------------------------------------------

IntervalContract interval_apply_wiring(const WiringDiagram& d,
                                       const IntervalContract& c) {
  require_valid(d, "interval_apply_wiring");
  for (const auto& b : d.inner) check_scalar_real_box(b, "interval_apply_wiring");
  check_scalar_real_box(d.outer, "interval_apply_wiring");
  const LabeledBox tensor = d.inner_tensor();
  if (!same_ports(c.interface, tensor) ||
      c.inputs.size() != tensor.inputs.size() ||
      c.outputs.size() != tensor.outputs.size())
    throw TypeError(
        "interval_apply_wiring: contract does not sit on the diagram's inner "
        "tensor");

  // two outer outputs on one wire would always carry equal values; that
  // composite is a diagonal, not an independent contract
  for (std::size_t o = 0; o < d.output_routing.size(); ++o)
    for (std::size_t p = o + 1; p < d.output_routing.size(); ++p)
      if (d.output_routing[o] == d.output_routing[p])
        throw TypeError(
            "interval_apply_wiring: outer outputs " + std::to_string(o) +
            " and " + std::to_string(p) +
            " share a wire; the composite is not independent");

  if (c.is_empty()) return IntervalContract::empty(d.outer);

  IntervalContract out = IntervalContract::unconstrained(d.outer);

  // one value flows along each wire, so the meet over a source and all
  // of its destinations decides whether the wire can carry anything
  std::vector<Interval> wire_meet = c.outputs;
  for (std::size_t i = 0; i < d.input_routing.size(); ++i) {
    const auto& src = d.input_routing[i];
    if (src.kind == PortSource::Kind::OuterInput) {
      out.inputs[src.port] = intersect(out.inputs[src.port], c.inputs[i]);
    } else {
      auto& meet = wire_meet[d.output_flat_index(src.box, src.port)];
      meet = intersect(meet, c.inputs[i]);
    }
  }
  for (const auto& meet : wire_meet)
    if (meet.is_empty()) return IntervalContract::empty(d.outer);

  for (std::size_t o = 0; o < d.output_routing.size(); ++o) {
    const auto& src = d.output_routing[o];
    out.outputs[o] = wire_meet[d.output_flat_index(src.box, src.port)];
  }

  if (out.is_empty()) return IntervalContract::empty(d.outer);
  return out;
}

FiniteContract discretize_interval_contract(const IntervalContract& c,
                                            const std::vector<double>& grid) {
  WireType symbol_type = [&] {
    std::vector<std::string> syms;
    for (double g : grid) syms.push_back(format_double(g));
    return WireType::finite(std::move(syms));
  }();

  FiniteContract r;
  r.interface.name = c.interface.name;
  r.interface.inputs.assign(c.inputs.size(), symbol_type);
  r.interface.outputs.assign(c.outputs.size(), symbol_type);
  if (c.is_empty()) return r;

  auto allowed = [&](const Interval& iv) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (iv.contains(grid[i])) idx.push_back(i);
    return idx;
  };

  std::vector<std::vector<std::size_t>> in_allowed, out_allowed;
  for (const auto& iv : c.inputs) in_allowed.push_back(allowed(iv));
  for (const auto& iv : c.outputs) out_allowed.push_back(allowed(iv));
  for (const auto& a : in_allowed)
    if (a.empty()) return r;
  for (const auto& a : out_allowed)
    if (a.empty()) return r;

  const FiniteDomain in_dom(r.interface.inputs);
  const FiniteDomain out_dom(r.interface.outputs);
  std::vector<std::size_t> in_digits(c.inputs.size(), 0);
  std::vector<std::size_t> pick_in(c.inputs.size(), 0);

  // walk the product of allowed index sets on each side
  std::vector<std::size_t> in_radix, out_radix;
  for (const auto& a : in_allowed) in_radix.push_back(a.size());
  for (const auto& a : out_allowed) out_radix.push_back(a.size());

  std::vector<std::size_t> in_sel(in_radix.size(), 0);
  do {
    for (std::size_t i = 0; i < in_sel.size(); ++i)
      in_digits[i] = in_allowed[i][in_sel[i]];
    const std::size_t in_code = in_dom.encode(in_digits);
    std::vector<std::size_t> out_sel(out_radix.size(), 0);
    std::vector<std::size_t> out_digits(out_radix.size(), 0);
    do {
      for (std::size_t i = 0; i < out_sel.size(); ++i)
        out_digits[i] = out_allowed[i][out_sel[i]];
      r.tuples.emplace(in_code, out_dom.encode(out_digits));
    } while (advance(out_sel, out_radix));
  } while (advance(in_sel, in_radix));
  return r;
}

// ---------------------------------------------------------------------

namespace {

struct JointLayout {
  std::vector<AGVariable> vars;       // composite inputs ++ outputs
  std::size_t n_inputs = 0;
  std::vector<std::size_t> pos1;      // c1 variable k lives at vars[pos1[k]]
  std::vector<std::size_t> pos2;
  std::vector<std::size_t> radix;
};

std::size_t find_var(const std::vector<AGVariable>& vars,
                     const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return i;
  return vars.size();
}

}  // namespace

AGContract ag_compose(
    const AGContract& c1, const AGContract& c2_in,
    const std::vector<std::pair<std::string, std::string>>& pairing) {
  check_ag(c1);
  check_ag(c2_in);

  AGContract c2 = c2_in;
  for (const auto& [to_name, from_name] : pairing) {
    bool renamed = false;
    auto rename_in = [&](std::vector<AGVariable>& vs) {
      for (auto& v : vs)
        if (v.name == from_name) {
          v.name = to_name;
          renamed = true;
        }
    };
    rename_in(c2.inputs);
    rename_in(c2.outputs);
    if (!renamed)
      throw TypeError("ag_compose: no variable '" + from_name +
                      "' to pair with '" + to_name + "'");
    if (find_var(c1.inputs, to_name) == c1.inputs.size() &&
        find_var(c1.outputs, to_name) == c1.outputs.size())
      throw TypeError("ag_compose: pairing names unknown variable '" + to_name +
                      "'");
  }
  check_ag(c2);

  const auto vars1 = c1.variables();
  const auto vars2 = c2.variables();
  for (const auto& o1 : c1.outputs)
    if (find_var(c2.outputs, o1.name) != c2.outputs.size())
      throw TypeError("ag_compose: variable '" + o1.name +
                      "' is an output of both contracts");
  for (const auto& v2 : vars2) {
    const std::size_t k = find_var(vars1, v2.name);
    if (k != vars1.size() && vars1[k].grid != v2.grid)
      throw TypeError("ag_compose: shared variable '" + v2.name +
                      "' has different grids");
  }

  // composite variable split: a shared name driven by either side is an
  // output, everything else read from the environment stays an input
  AGContract out;
  auto is_output = [&](const std::string& name) {
    return find_var(c1.outputs, name) != c1.outputs.size() ||
           find_var(c2.outputs, name) != c2.outputs.size();
  };
  for (const auto& v : c1.inputs)
    if (!is_output(v.name)) out.inputs.push_back(v);
  for (const auto& v : c2.inputs)
    if (!is_output(v.name) &&
        find_var(out.inputs, v.name) == out.inputs.size())
      out.inputs.push_back(v);
  out.outputs = c1.outputs;
  for (const auto& v : c2.outputs) out.outputs.push_back(v);

  JointLayout layout;
  layout.vars = out.variables();
  layout.n_inputs = out.inputs.size();
  for (const auto& v : layout.vars) layout.radix.push_back(v.grid.size());
  for (const auto& v : vars1) layout.pos1.push_back(find_var(layout.vars, v.name));
  for (const auto& v : vars2) layout.pos2.push_back(find_var(layout.vars, v.name));

  auto project = [](const std::vector<std::size_t>& joint,
                    const std::vector<std::size_t>& pos, std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = joint[pos[i]];
    return t;
  };

  // guarantees: the natural join of the two guarantee sets
  std::vector<std::size_t> joint(layout.vars.size(), 0);
  do {
    if (c1.guarantees.count(project(joint, layout.pos1, vars1.size())) &&
        c2.guarantees.count(project(joint, layout.pos2, vars2.size())))
      out.guarantees.insert(joint);
  } while (advance(joint, layout.radix));

  // weakest assumption over the composite inputs: every joint extension
  // in which one side's guarantee fires must satisfy the other side's
  // assumption
  std::vector<std::size_t> in1_pos(layout.pos1.begin(),
                                   layout.pos1.begin() +
                                       static_cast<std::ptrdiff_t>(c1.inputs.size()));
  std::vector<std::size_t> in2_pos(layout.pos2.begin(),
                                   layout.pos2.begin() +
                                       static_cast<std::ptrdiff_t>(c2.inputs.size()));

  std::vector<std::size_t> in_radix(layout.radix.begin(),
                                    layout.radix.begin() +
                                        static_cast<std::ptrdiff_t>(layout.n_inputs));
  std::vector<std::size_t> rest_radix(layout.radix.begin() +
                                          static_cast<std::ptrdiff_t>(layout.n_inputs),
                                      layout.radix.end());
  std::vector<std::size_t> a(in_radix.size(), 0);
  do {
    bool ok = true;
    std::vector<std::size_t> rest(rest_radix.size(), 0);
    std::vector<std::size_t> j(layout.vars.size());
    do {
      std::copy(a.begin(), a.end(), j.begin());
      std::copy(rest.begin(), rest.end(),
                j.begin() + static_cast<std::ptrdiff_t>(layout.n_inputs));
      if (c2.guarantees.count(project(j, layout.pos2, vars2.size())) &&
          !c1.assumptions.count(project(j, in1_pos, c1.inputs.size()))) {
        ok = false;
        break;
      }
      if (c1.guarantees.count(project(j, layout.pos1, vars1.size())) &&
          !c2.assumptions.count(project(j, in2_pos, c2.inputs.size()))) {
        ok = false;
        break;
      }
    } while (advance(rest, rest_radix));
    if (ok) out.assumptions.insert(a);
  } while (advance(a, in_radix));

  if (out.assumptions.empty())
    throw TypeError("ag_compose: incompatible contracts (empty assumption)");
  return out;
}

FiniteContract ag_to_static(const AGContract& c, AGMode mode) {
  check_ag(c);
  auto port_of = [](const AGVariable& v) {
    std::vector<std::string> syms;
    for (double g : v.grid) syms.push_back(format_double(g));
    return WireType::finite(std::move(syms));
  };

  FiniteContract r;
  for (const auto& v : c.inputs) r.interface.inputs.push_back(port_of(v));
  for (const auto& v : c.outputs) r.interface.outputs.push_back(port_of(v));

  const FiniteDomain in_dom(r.interface.inputs);
  const FiniteDomain out_dom(r.interface.outputs);
  std::vector<std::size_t> joint(c.inputs.size() + c.outputs.size());
  for (std::size_t x = 0; x < in_dom.size(); ++x) {
    const auto in_digits = in_dom.decode(x);
    const bool assumed = c.assumptions.count(in_digits) != 0;
    if (!assumed && mode == AGMode::Strict) continue;
    std::copy(in_digits.begin(), in_digits.end(), joint.begin());
    for (std::size_t y = 0; y < out_dom.size(); ++y) {
      out_dom.decode_into(
          y, std::span<std::size_t>(joint.data() + c.inputs.size(),
                                    c.outputs.size()));
      const bool guaranteed = c.guarantees.count(joint) != 0;
      if (mode == AGMode::Strict ? guaranteed : (!assumed || guaranteed))
        r.tuples.emplace(x, y);
    }
  }
  return r;
}

// ---------------------------------------------------------------------

std::vector<std::size_t> check_trace(const FiniteContract& r, const Trace& t) {
  std::vector<std::size_t> bad;
  const FiniteDomain in_dom = r.input_domain();
  const FiniteDomain out_dom = r.output_domain();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    check_tuple(r.interface.inputs, t.steps[k].input, "check_trace");
    check_tuple(r.interface.outputs, t.steps[k].output, "check_trace");
    if (!r.contains(in_dom.encode_tuple(t.steps[k].input),
                    out_dom.encode_tuple(t.steps[k].output)))
      bad.push_back(k);
  }
  return bad;
}

std::vector<std::size_t> check_trace(const IntervalContract& r, const Trace& t) {
  std::vector<std::size_t> bad;
  auto in_range = [](const Interval& iv, const Value& v) {
    return iv.contains(std::get<std::vector<double>>(v)[0]);
  };
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    check_tuple(r.interface.inputs, t.steps[k].input, "check_trace");
    check_tuple(r.interface.outputs, t.steps[k].output, "check_trace");
    bool ok = true;
    for (std::size_t i = 0; i < r.inputs.size() && ok; ++i)
      ok = in_range(r.inputs[i], t.steps[k].input[i]);
    for (std::size_t o = 0; o < r.outputs.size() && ok; ++o)
      ok = in_range(r.outputs[o], t.steps[k].output[o]);
    if (!ok) bad.push_back(k);
  }
  return bad;
}

FiniteContract steady_states(const MooreMachine& m, Exec exec) {
  check_machine(m);
  FiniteContract r;
  r.interface = m.interface;
  const std::size_t n_in = m.input_domain().size();
  const std::size_t n_states = m.states.size();

  auto scan = [&](std::size_t s0, std::size_t s1,
                  std::vector<std::pair<std::size_t, std::size_t>>& found) {
    for (std::size_t s = s0; s < s1; ++s)
      for (std::size_t x = 0; x < n_in; ++x)
        if (m.update[s * n_in + x] == s) found.emplace_back(x, m.readout[s]);
  };

  if (run_parallel(exec, n_states * n_in)) {
    const auto ranges = chunk_ranges(n_states);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parts(
        ranges.size());
    const std::int64_t n_chunks = static_cast<std::int64_t>(ranges.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < n_chunks; ++c)
      scan(ranges[static_cast<std::size_t>(c)].first,
           ranges[static_cast<std::size_t>(c)].second,
           parts[static_cast<std::size_t>(c)]);
    for (const auto& part : parts) r.tuples.insert(part.begin(), part.end());
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> found;
    scan(0, n_states, found);
    r.tuples.insert(found.begin(), found.end());
  }
  return r;
}

}  // namespace wirealg
