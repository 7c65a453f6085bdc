#include "wirealg/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace wirealg {

using nlohmann::json;

namespace {

/// Carries a semantic problem up to the per-declaration handler.
struct SemanticError {
  std::string where;
  std::string message;
};

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw SemanticError{where, message};
}

void line_col_of(const std::string& text, std::size_t byte, int& line,
                 int& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(where, "unknown key '" + key + "'");
}

const json& need(const json& obj, const std::string& key,
                 const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing key '" + key + "'");
  return *it;
}

std::string need_string(const json& obj, const std::string& key,
                        const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_string()) fail(where, "'" + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t need_index(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) fail(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

double need_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

WireType parse_wire_type(const json& v,
                         const std::map<std::string, WireType>& types,
                         const std::string& where) {
  if (v.is_string()) {
    auto it = types.find(v.get<std::string>());
    if (it == types.end())
      fail(where, "unknown wire type '" + v.get<std::string>() + "'");
    return it->second;
  }
  if (!v.is_object()) fail(where, "wire type must be a name or an object");
  check_keys(v, {"finite", "real"}, where);
  if (v.contains("finite")) {
    const json& syms = v["finite"];
    if (!syms.is_array() || syms.empty())
      fail(where, "'finite' needs a non-empty symbol array");
    std::vector<std::string> symbols;
    for (const auto& s : syms) {
      if (!s.is_string()) fail(where, "finite symbols must be strings");
      const std::string tok = s.get<std::string>();
      if (tok.empty() || tok.find(',') != std::string::npos ||
          tok.find_first_of(" \t\n|") != std::string::npos)
        fail(where, "symbol '" + tok + "' may not be empty or contain ',', '|' or whitespace");
      symbols.push_back(tok);
    }
    try {
      return WireType::finite(std::move(symbols));
    } catch (const TypeError& e) {
      fail(where, e.what());
    }
  }
  if (v.contains("real")) {
    const json& d = v["real"];
    if (!d.is_number_unsigned() || d.get<std::size_t>() < 1)
      fail(where, "'real' needs a positive dimension");
    return WireType::real(static_cast<int>(d.get<std::size_t>()));
  }
  fail(where, "wire type object needs 'finite' or 'real'");
}

json wire_type_to_json(const WireType& t) {
  json v = json::object();
  if (t.is_finite())
    v["finite"] = t.symbols;
  else
    v["real"] = t.dim;
  return v;
}

const LabeledBox& box_ref(const ModelDocument& doc, const std::string& name,
                          const std::string& where) {
  auto it = doc.boxes.find(name);
  if (it == doc.boxes.end()) fail(where, "unknown box '" + name + "'");
  return it->second;
}

PortSource parse_port_source(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where, "routing entry must be an object");
  check_keys(v, {"outer", "box", "port"}, where);
  if (v.contains("outer")) {
    if (v.contains("box") || v.contains("port"))
      fail(where, "routing entry mixes 'outer' with 'box'/'port'");
    return PortSource::outer_input(need_index(v["outer"], where));
  }
  return PortSource::inner_output(need_index(need(v, "box", where), where),
                                  need_index(need(v, "port", where), where));
}

json port_source_to_json(const PortSource& s) {
  json v = json::object();
  if (s.kind == PortSource::Kind::OuterInput) {
    v["outer"] = s.port;
  } else {
    v["box"] = s.box;
    v["port"] = s.port;
  }
  return v;
}

std::string input_key(const LabeledBox& box, const FiniteDomain& dom,
                      std::size_t index) {
  const auto digits = dom.decode(index);
  std::string key;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) key += ",";
    key += box.inputs[i].symbols[digits[i]];
  }
  return key;
}

std::size_t symbol_index(const WireType& t, const std::string& sym,
                         const std::string& where) {
  auto it = std::find(t.symbols.begin(), t.symbols.end(), sym);
  if (it == t.symbols.end()) fail(where, "unknown symbol '" + sym + "'");
  return static_cast<std::size_t>(it - t.symbols.begin());
}

std::size_t tuple_from_symbols(const std::vector<WireType>& ports,
                               const json& arr, const FiniteDomain& dom,
                               const std::string& where) {
  if (!arr.is_array() || arr.size() != ports.size())
    fail(where, "expected one symbol per port");
  std::vector<std::size_t> digits(ports.size());
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (!arr[i].is_string()) fail(where, "symbols must be strings");
    digits[i] = symbol_index(ports[i], arr[i].get<std::string>(), where);
  }
  return dom.encode(digits);
}

json symbols_of_tuple(const std::vector<WireType>& ports,
                      const FiniteDomain& dom, std::size_t index) {
  const auto digits = dom.decode(index);
  json arr = json::array();
  for (std::size_t i = 0; i < ports.size(); ++i)
    arr.push_back(ports[i].symbols[digits[i]]);
  return arr;
}

Matrix parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "matrix must be an array of rows");
  std::vector<double> entries;
  std::size_t rows = v.size(), cols = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    const json& row = v[r];
    if (!row.is_array()) fail(where, "matrix row must be an array");
    if (r == 0)
      cols = row.size();
    else if (row.size() != cols)
      fail(where, "matrix rows have unequal lengths");
    for (const auto& e : row) entries.push_back(need_number(e, where));
  }
  return Matrix(rows, cols, std::move(entries));
}

json matrix_to_json(const Matrix& m) {
  json v = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    v.push_back(row);
  }
  return v;
}

Interval parse_interval(const json& v, const std::string& where) {
  if (v.is_string() && v.get<std::string>() == "empty") return Interval::none();
  if (!v.is_array() || v.size() != 2)
    fail(where, "interval must be [lo, hi] or \"empty\"");
  const double lo = v[0].is_null()
                        ? -std::numeric_limits<double>::infinity()
                        : need_number(v[0], where);
  const double hi = v[1].is_null() ? std::numeric_limits<double>::infinity()
                                   : need_number(v[1], where);
  if (!(lo <= hi)) fail(where, "interval has lo > hi; use \"empty\" instead");
  return Interval::closed(lo, hi);
}

json interval_to_json(const Interval& iv) {
  if (iv.is_empty()) return json("empty");
  json v = json::array();
  v.push_back(std::isinf(iv.lo) ? json() : json(iv.lo));
  v.push_back(std::isinf(iv.hi) ? json() : json(iv.hi));
  return v;
}

std::vector<AGVariable> parse_ag_variables(const json& v,
                                           const std::string& where) {
  if (!v.is_array()) fail(where, "variables must be an array");
  std::vector<AGVariable> vars;
  for (const auto& e : v) {
    if (!e.is_object()) fail(where, "variable must be an object");
    check_keys(e, {"name", "grid"}, where);
    AGVariable var;
    var.name = need_string(e, "name", where);
    const json& grid = need(e, "grid", where);
    if (!grid.is_array() || grid.empty())
      fail(where, "grid must be a non-empty array");
    for (const auto& g : grid) var.grid.push_back(need_number(g, where));
    vars.push_back(std::move(var));
  }
  return vars;
}

std::set<std::vector<std::size_t>> parse_ag_tuples(
    const json& v, const std::vector<AGVariable>& vars,
    const std::string& where) {
  if (!v.is_array()) fail(where, "tuples must be an array");
  std::set<std::vector<std::size_t>> out;
  for (const auto& t : v) {
    if (!t.is_array() || t.size() != vars.size())
      fail(where, "tuple arity does not match the variable list");
    std::vector<std::size_t> digits(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const double value = need_number(t[i], where);
      const auto& grid = vars[i].grid;
      auto it = std::find(grid.begin(), grid.end(), value);
      if (it == grid.end())
        fail(where, "value " + format_double(value) + " is not on the grid of '" +
                        vars[i].name + "'");
      digits[i] = static_cast<std::size_t>(it - grid.begin());
    }
    out.insert(std::move(digits));
  }
  return out;
}

json ag_variables_to_json(const std::vector<AGVariable>& vars) {
  json arr = json::array();
  for (const auto& v : vars) {
    json e = json::object();
    e["name"] = v.name;
    e["grid"] = v.grid;
    arr.push_back(e);
  }
  return arr;
}

json ag_tuples_to_json(const std::set<std::vector<std::size_t>>& tuples,
                       const std::vector<AGVariable>& vars) {
  json arr = json::array();
  for (const auto& t : tuples) {
    json e = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) e.push_back(vars[i].grid[t[i]]);
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

std::string ModelIssue::to_string() const {
  std::ostringstream os;
  if (line > 0)
    os << "line " << line << ", col " << col << ": " << message;
  else
    os << where << ": " << message;
  return os.str();
}

ParseResult parse_model(const std::string& text) {
  ParseResult result;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    ModelIssue issue;
    issue.where = "document";
    issue.message = e.what();
    line_col_of(text, e.byte, issue.line, issue.col);
    result.issues.push_back(std::move(issue));
    return result;
  }

  ModelDocument doc;
  auto issue = [&](const SemanticError& e) {
    result.issues.push_back(ModelIssue{e.where, e.message, 0, 0});
  };

  try {
    if (!root.is_object()) fail("document", "top level must be an object");
    check_keys(root,
               {"schema_version", "types", "boxes", "diagrams", "hierarchies",
                "machines", "systems", "contracts", "bindings"},
               "document");
    if (root.contains("schema_version") &&
        (!root["schema_version"].is_number_unsigned() ||
         root["schema_version"].get<std::size_t>() != 1))
      fail("document", "unsupported schema_version (expected 1)");
  } catch (const SemanticError& e) {
    issue(e);
    return result;
  }

  auto section = [&](const char* key) -> json {
    if (!root.contains(key)) return json::object();
    if (!root[key].is_object()) {
      issue(SemanticError{key, "section must be an object"});
      return json::object();
    }
    return root[key];
  };

  for (const auto& [name, v] : section("types").items()) {
    try {
      doc.types.emplace(name, parse_wire_type(v, doc.types, "types/" + name));
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  for (const auto& [name, v] : section("boxes").items()) {
    const std::string where = "boxes/" + name;
    try {
      if (!v.is_object()) fail(where, "box must be an object");
      check_keys(v, {"inputs", "outputs"}, where);
      LabeledBox box;
      box.name = name;
      for (const auto& t : need(v, "inputs", where))
        box.inputs.push_back(parse_wire_type(t, doc.types, where));
      for (const auto& t : need(v, "outputs", where))
        box.outputs.push_back(parse_wire_type(t, doc.types, where));
      doc.boxes.emplace(name, std::move(box));
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  for (const auto& [name, v] : section("diagrams").items()) {
    const std::string where = "diagrams/" + name;
    try {
      if (!v.is_object()) fail(where, "diagram must be an object");
      check_keys(v, {"boxes", "outer", "inputs", "outputs"}, where);
      WiringDiagram d;
      for (const auto& b : need(v, "boxes", where)) {
        if (!b.is_string()) fail(where, "'boxes' must list box names");
        d.inner.push_back(box_ref(doc, b.get<std::string>(), where));
      }
      d.outer = box_ref(doc, need_string(v, "outer", where), where);
      for (const auto& s : need(v, "inputs", where))
        d.input_routing.push_back(parse_port_source(s, where));
      for (const auto& s : need(v, "outputs", where))
        d.output_routing.push_back(parse_port_source(s, where));
      for (const auto& g : validate(d)) fail(where, "[" + g.rule + "] " + g.message);
      doc.diagrams.emplace(name, std::move(d));
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  for (const auto& [name, v] : section("machines").items()) {
    const std::string where = "machines/" + name;
    try {
      if (!v.is_object()) fail(where, "machine must be an object");
      check_keys(v, {"box", "states", "update", "readout"}, where);
      MooreMachine m;
      m.interface = box_ref(doc, need_string(v, "box", where), where);
      if (!all_finite(m.interface.inputs) || !all_finite(m.interface.outputs))
        fail(where, "machines need all-finite boxes");
      for (const auto& s : need(v, "states", where)) {
        if (!s.is_string()) fail(where, "states must be strings");
        m.states.push_back(s.get<std::string>());
      }
      if (m.states.empty()) fail(where, "machine needs at least one state");

      const FiniteDomain in_dom(m.interface.inputs);
      const FiniteDomain out_dom(m.interface.outputs);
      std::map<std::string, std::size_t> key_of;
      for (std::size_t x = 0; x < in_dom.size(); ++x)
        key_of[input_key(m.interface, in_dom, x)] = x;
      std::map<std::string, std::size_t> state_of;
      for (std::size_t s = 0; s < m.states.size(); ++s) {
        if (!state_of.emplace(m.states[s], s).second)
          fail(where, "duplicate state '" + m.states[s] + "'");
      }

      const json& update = need(v, "update", where);
      m.update.assign(m.states.size() * in_dom.size(),
                      std::numeric_limits<std::uint32_t>::max());
      for (const auto& [state, row] : update.items()) {
        auto sit = state_of.find(state);
        if (sit == state_of.end()) fail(where, "update of unknown state '" + state + "'");
        if (!row.is_object()) fail(where, "update row must be an object");
        for (const auto& [ikey, target] : row.items()) {
          auto kit = key_of.find(ikey);
          if (kit == key_of.end())
            fail(where, "update key '" + ikey + "' is not an input tuple");
          if (!target.is_string() || !state_of.count(target.get<std::string>()))
            fail(where, "update target of '" + ikey + "' is not a state");
          m.update[sit->second * in_dom.size() + kit->second] =
              static_cast<std::uint32_t>(state_of[target.get<std::string>()]);
        }
      }
      for (auto e : m.update)
        if (e == std::numeric_limits<std::uint32_t>::max())
          fail(where, "update table is not total");

      const json& readout = need(v, "readout", where);
      m.readout.assign(m.states.size(), 0);
      std::vector<bool> have(m.states.size(), false);
      for (const auto& [state, syms] : readout.items()) {
        auto sit = state_of.find(state);
        if (sit == state_of.end())
          fail(where, "readout of unknown state '" + state + "'");
        m.readout[sit->second] = static_cast<std::uint32_t>(
            tuple_from_symbols(m.interface.outputs, syms, out_dom, where));
        have[sit->second] = true;
      }
      for (bool b : have)
        if (!b) fail(where, "readout table is not total");
      doc.machines.emplace(name, std::move(m));
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  for (const auto& [name, v] : section("systems").items()) {
    const std::string where = "systems/" + name;
    try {
      if (!v.is_object()) fail(where, "system must be an object");
      check_keys(v, {"box", "a", "b", "c"}, where);
      LTISystem sys;
      sys.interface = box_ref(doc, need_string(v, "box", where), where);
      sys.A = parse_matrix(need(v, "a", where), where);
      sys.B = parse_matrix(need(v, "b", where), where);
      sys.C = parse_matrix(need(v, "c", where), where);
      try {
        check_system(sys);
      } catch (const TypeError& e) {
        fail(where, e.what());
      }
      doc.systems.emplace(name, std::move(sys));
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  for (const auto& [name, v] : section("contracts").items()) {
    const std::string where = "contracts/" + name;
    try {
      if (!v.is_object()) fail(where, "contract must be an object");
      const std::string kind = need_string(v, "kind", where);
      if (kind == "finite") {
        check_keys(v, {"kind", "box", "tuples"}, where);
        FiniteContract c;
        c.interface = box_ref(doc, need_string(v, "box", where), where);
        if (!all_finite(c.interface.inputs) || !all_finite(c.interface.outputs))
          fail(where, "finite contracts need all-finite boxes");
        const FiniteDomain in_dom(c.interface.inputs);
        const FiniteDomain out_dom(c.interface.outputs);
        for (const auto& t : need(v, "tuples", where)) {
          if (!t.is_array() || t.size() != 2)
            fail(where, "tuple must be [[inputs],[outputs]]");
          c.tuples.emplace(
              tuple_from_symbols(c.interface.inputs, t[0], in_dom, where),
              tuple_from_symbols(c.interface.outputs, t[1], out_dom, where));
        }
        doc.finite_contracts.emplace(name, std::move(c));
      } else if (kind == "interval") {
        check_keys(v, {"kind", "box", "empty", "inputs", "outputs"}, where);
        const LabeledBox& box = box_ref(doc, need_string(v, "box", where), where);
        IntervalContract c;
        try {
          c = IntervalContract::unconstrained(box);
        } catch (const TypeError& e) {
          fail(where, e.what());
        }
        if (v.contains("empty")) {
          if (!v["empty"].is_boolean() || !v["empty"].get<bool>())
            fail(where, "'empty' may only be true");
          if (v.contains("inputs") || v.contains("outputs"))
            fail(where, "an empty contract carries no port intervals");
          c = IntervalContract::empty(box);
        } else {
          const json& ins = need(v, "inputs", where);
          const json& outs = need(v, "outputs", where);
          if (!ins.is_array() || ins.size() != c.inputs.size())
            fail(where, "one interval per input port required");
          if (!outs.is_array() || outs.size() != c.outputs.size())
            fail(where, "one interval per output port required");
          for (std::size_t i = 0; i < c.inputs.size(); ++i)
            c.inputs[i] = parse_interval(ins[i], where);
          for (std::size_t o = 0; o < c.outputs.size(); ++o)
            c.outputs[o] = parse_interval(outs[o], where);
          // any empty port already empties the whole contract
          if (c.is_empty()) c = IntervalContract::empty(box);
        }
        doc.interval_contracts.emplace(name, std::move(c));
      } else if (kind == "ag") {
        check_keys(v, {"kind", "inputs", "outputs", "assumptions", "guarantees"},
                   where);
        AGContract c;
        c.inputs = parse_ag_variables(need(v, "inputs", where), where);
        c.outputs = parse_ag_variables(need(v, "outputs", where), where);
        c.assumptions =
            parse_ag_tuples(need(v, "assumptions", where), c.inputs, where);
        c.guarantees =
            parse_ag_tuples(need(v, "guarantees", where), c.variables(), where);
        try {
          check_ag(c);
        } catch (const TypeError& e) {
          fail(where, e.what());
        }
        doc.ag_contracts.emplace(name, std::move(c));
      } else {
        fail(where, "unknown contract kind '" + kind + "'");
      }
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  // nested hierarchies
  std::function<HierarchicalModel(const json&, const std::string&)> parse_hier =
      [&](const json& v, const std::string& where) -> HierarchicalModel {
    if (!v.is_object()) fail(where, "hierarchy node must be an object");
    check_keys(v, {"diagram", "children"}, where);
    HierarchicalModel h;
    const std::string dname = need_string(v, "diagram", where);
    auto it = doc.diagrams.find(dname);
    if (it == doc.diagrams.end()) fail(where, "unknown diagram '" + dname + "'");
    h.implementation = it->second;
    h.root_interface = h.implementation.outer;
    const json& children = need(v, "children", where);
    if (!children.is_array() || children.size() != h.implementation.inner.size())
      fail(where, "'children' needs one entry (node or null) per slot");
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (children[i].is_null()) {
        h.children.push_back(nullptr);
        continue;
      }
      h.children.push_back(std::make_shared<const HierarchicalModel>(
          parse_hier(children[i], where + "/children[" + std::to_string(i) + "]")));
    }
    try {
      check_hierarchy(h);
    } catch (const TypeError& e) {
      fail(where, e.what());
    }
    return h;
  };
  for (const auto& [name, v] : section("hierarchies").items()) {
    try {
      doc.hierarchies.emplace(name, parse_hier(v, "hierarchies/" + name));
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  for (const auto& [name, v] : section("bindings").items()) {
    const std::string where = "bindings/" + name;
    try {
      if (!v.is_object()) fail(where, "binding must be an object");
      check_keys(v, {"algebra", "diagram", "slots"}, where);
      Binding b;
      b.algebra = need_string(v, "algebra", where);
      if (b.algebra != "moore" && b.algebra != "lti" && b.algebra != "contract")
        fail(where, "algebra must be moore, lti or contract");
      b.diagram = need_string(v, "diagram", where);
      auto dit = doc.diagrams.find(b.diagram);
      if (dit == doc.diagrams.end())
        fail(where, "unknown diagram '" + b.diagram + "'");
      for (const auto& s : need(v, "slots", where)) {
        if (!s.is_string()) fail(where, "slots must be names");
        b.slots.push_back(s.get<std::string>());
      }
      const WiringDiagram& d = dit->second;
      if (b.slots.size() != d.inner.size())
        fail(where, "binding needs one inhabitant per inner slot");
      for (std::size_t i = 0; i < b.slots.size(); ++i) {
        const LabeledBox* box = nullptr;
        if (b.algebra == "moore") {
          auto it = doc.machines.find(b.slots[i]);
          if (it == doc.machines.end())
            fail(where, "unknown machine '" + b.slots[i] + "'");
          box = &it->second.interface;
        } else if (b.algebra == "lti") {
          auto it = doc.systems.find(b.slots[i]);
          if (it == doc.systems.end())
            fail(where, "unknown system '" + b.slots[i] + "'");
          box = &it->second.interface;
        } else {
          if (auto it = doc.finite_contracts.find(b.slots[i]);
              it != doc.finite_contracts.end()) {
            box = &it->second.interface;
          } else if (auto it2 = doc.interval_contracts.find(b.slots[i]);
                     it2 != doc.interval_contracts.end()) {
            box = &it2->second.interface;
          } else {
            fail(where, "unknown contract '" + b.slots[i] + "'");
          }
        }
        if (!same_ports(*box, d.inner[i]))
          fail(where, "slot " + std::to_string(i) + " ('" + b.slots[i] +
                          "') does not type-check against box '" +
                          d.inner[i].name + "'");
      }
      doc.bindings.emplace(name, std::move(b));
    } catch (const SemanticError& e) {
      issue(e);
    }
  }

  if (result.issues.empty()) result.document = std::move(doc);
  return result;
}

std::string serialize_model(const ModelDocument& doc) {
  json root = json::object();
  root["schema_version"] = 1;

  if (!doc.types.empty()) {
    json s = json::object();
    for (const auto& [name, t] : doc.types) s[name] = wire_type_to_json(t);
    root["types"] = s;
  }
  if (!doc.boxes.empty()) {
    json s = json::object();
    for (const auto& [name, b] : doc.boxes) {
      json v = json::object();
      v["inputs"] = json::array();
      v["outputs"] = json::array();
      for (const auto& t : b.inputs) v["inputs"].push_back(wire_type_to_json(t));
      for (const auto& t : b.outputs)
        v["outputs"].push_back(wire_type_to_json(t));
      s[name] = v;
    }
    root["boxes"] = s;
  }
  if (!doc.diagrams.empty()) {
    json s = json::object();
    for (const auto& [name, d] : doc.diagrams) {
      json v = json::object();
      v["boxes"] = json::array();
      for (const auto& b : d.inner) v["boxes"].push_back(b.name);
      v["outer"] = d.outer.name;
      v["inputs"] = json::array();
      for (const auto& src : d.input_routing)
        v["inputs"].push_back(port_source_to_json(src));
      v["outputs"] = json::array();
      for (const auto& src : d.output_routing)
        v["outputs"].push_back(port_source_to_json(src));
      s[name] = v;
    }
    root["diagrams"] = s;
  }
  if (!doc.machines.empty()) {
    json s = json::object();
    for (const auto& [name, m] : doc.machines) {
      const FiniteDomain in_dom(m.interface.inputs);
      const FiniteDomain out_dom(m.interface.outputs);
      json v = json::object();
      v["box"] = m.interface.name;
      v["states"] = m.states;
      json update = json::object();
      for (std::size_t st = 0; st < m.states.size(); ++st) {
        json row = json::object();
        for (std::size_t x = 0; x < in_dom.size(); ++x)
          row[input_key(m.interface, in_dom, x)] =
              m.states[m.update[st * in_dom.size() + x]];
        update[m.states[st]] = row;
      }
      v["update"] = update;
      json readout = json::object();
      for (std::size_t st = 0; st < m.states.size(); ++st)
        readout[m.states[st]] =
            symbols_of_tuple(m.interface.outputs, out_dom, m.readout[st]);
      v["readout"] = readout;
      s[name] = v;
    }
    root["machines"] = s;
  }
  if (!doc.systems.empty()) {
    json s = json::object();
    for (const auto& [name, sys] : doc.systems) {
      json v = json::object();
      v["box"] = sys.interface.name;
      v["a"] = matrix_to_json(sys.A);
      v["b"] = matrix_to_json(sys.B);
      v["c"] = matrix_to_json(sys.C);
      s[name] = v;
    }
    root["systems"] = s;
  }
  if (!doc.finite_contracts.empty() || !doc.interval_contracts.empty() ||
      !doc.ag_contracts.empty()) {
    json s = json::object();
    for (const auto& [name, c] : doc.finite_contracts) {
      const FiniteDomain in_dom = c.input_domain();
      const FiniteDomain out_dom = c.output_domain();
      json v = json::object();
      v["kind"] = "finite";
      v["box"] = c.interface.name;
      json tuples = json::array();
      for (const auto& [in, out] : c.tuples) {
        json pair = json::array();
        pair.push_back(symbols_of_tuple(c.interface.inputs, in_dom, in));
        pair.push_back(symbols_of_tuple(c.interface.outputs, out_dom, out));
        tuples.push_back(pair);
      }
      v["tuples"] = tuples;
      s[name] = v;
    }
    for (const auto& [name, c] : doc.interval_contracts) {
      json v = json::object();
      v["kind"] = "interval";
      v["box"] = c.interface.name;
      if (c.is_empty()) {
        v["empty"] = true;
      } else {
        v["inputs"] = json::array();
        for (const auto& iv : c.inputs)
          v["inputs"].push_back(interval_to_json(iv));
        v["outputs"] = json::array();
        for (const auto& iv : c.outputs)
          v["outputs"].push_back(interval_to_json(iv));
      }
      s[name] = v;
    }
    for (const auto& [name, c] : doc.ag_contracts) {
      json v = json::object();
      v["kind"] = "ag";
      v["inputs"] = ag_variables_to_json(c.inputs);
      v["outputs"] = ag_variables_to_json(c.outputs);
      v["assumptions"] = ag_tuples_to_json(c.assumptions, c.inputs);
      v["guarantees"] = ag_tuples_to_json(c.guarantees, c.variables());
      s[name] = v;
    }
    root["contracts"] = s;
  }
  if (!doc.hierarchies.empty()) {
    std::function<json(const HierarchicalModel&)> hier_to_json =
        [&](const HierarchicalModel& h) {
          json v = json::object();
          std::string dname;
          for (const auto& [name, d] : doc.diagrams) {
            if (d.inner == h.implementation.inner &&
                d.outer == h.implementation.outer &&
                d.input_routing == h.implementation.input_routing &&
                d.output_routing == h.implementation.output_routing) {
              dname = name;
              break;
            }
          }
          if (dname.empty())
            throw TypeError(
                "serialize_model: hierarchy implementation is not a declared "
                "diagram");
          v["diagram"] = dname;
          json children = json::array();
          for (const auto& c : h.children)
            children.push_back(c ? hier_to_json(*c) : json());
          v["children"] = children;
          return v;
        };
    json s = json::object();
    for (const auto& [name, h] : doc.hierarchies) s[name] = hier_to_json(h);
    root["hierarchies"] = s;
  }
  if (!doc.bindings.empty()) {
    json s = json::object();
    for (const auto& [name, b] : doc.bindings) {
      json v = json::object();
      v["algebra"] = b.algebra;
      v["diagram"] = b.diagram;
      v["slots"] = b.slots;
      s[name] = v;
    }
    root["bindings"] = s;
  }
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------

const Binding& resolve_binding(const ModelDocument& doc,
                               const std::string& name) {
  if (auto it = doc.bindings.find(name); it != doc.bindings.end())
    return it->second;
  // fall back to the unique binding over a diagram of that name
  const Binding* found = nullptr;
  for (const auto& [_, b] : doc.bindings) {
    if (b.diagram != name) continue;
    if (found) throw TypeError("several bindings target diagram '" + name + "'");
    found = &b;
  }
  if (!found) throw TypeError("no binding named '" + name + "'");
  return *found;
}

MooreMachine compose_moore_binding(const ModelDocument& doc, const Binding& b) {
  if (b.algebra != "moore")
    throw TypeError("binding is not a moore binding");
  const WiringDiagram& d = doc.diagrams.at(b.diagram);
  MooreMachine acc;
  bool first = true;
  for (const auto& slot : b.slots) {
    const MooreMachine& m = doc.machines.at(slot);
    acc = first ? m : moore_tensor(acc, m);
    first = false;
  }
  if (first) {
    acc.interface = LabeledBox{};
    acc.states = {"*"};
    acc.update = {0};
    acc.readout = {0};
  }
  return moore_apply_wiring(d, acc);
}

LTISystem compose_lti_binding(const ModelDocument& doc, const Binding& b) {
  if (b.algebra != "lti") throw TypeError("binding is not an lti binding");
  const WiringDiagram& d = doc.diagrams.at(b.diagram);
  LTISystem acc;
  bool first = true;
  for (const auto& slot : b.slots) {
    const LTISystem& sys = doc.systems.at(slot);
    acc = first ? sys : lti_tensor(acc, sys);
    first = false;
  }
  if (first) {
    acc.interface = LabeledBox{};
    acc.A = Matrix(0, 0);
    acc.B = Matrix(0, 0);
    acc.C = Matrix(0, 0);
  }
  return lti_apply_wiring(d, acc);
}

bool binding_is_interval(const ModelDocument& doc, const Binding& b) {
  bool any_interval = false, any_finite = false;
  for (const auto& slot : b.slots) {
    if (doc.interval_contracts.count(slot))
      any_interval = true;
    else if (doc.finite_contracts.count(slot))
      any_finite = true;
  }
  if (any_interval && any_finite)
    throw TypeError("binding mixes finite and interval contracts");
  return any_interval;
}

FiniteContract compose_finite_contract_binding(const ModelDocument& doc,
                                               const Binding& b) {
  if (b.algebra != "contract")
    throw TypeError("binding is not a contract binding");
  const WiringDiagram& d = doc.diagrams.at(b.diagram);
  FiniteContract acc;
  bool first = true;
  for (const auto& slot : b.slots) {
    const FiniteContract& c = doc.finite_contracts.at(slot);
    acc = first ? c : contract_tensor(acc, c);
    first = false;
  }
  if (first) acc.tuples.emplace(0, 0);  // the full relation on the unit box
  return contract_apply_wiring(d, acc);
}

IntervalContract compose_interval_contract_binding(const ModelDocument& doc,
                                                   const Binding& b) {
  if (b.algebra != "contract")
    throw TypeError("binding is not a contract binding");
  const WiringDiagram& d = doc.diagrams.at(b.diagram);
  IntervalContract acc = IntervalContract::unconstrained(d.inner_tensor());
  std::size_t in_at = 0, out_at = 0;
  for (const auto& slot : b.slots) {
    const IntervalContract& c = doc.interval_contracts.at(slot);
    for (const auto& iv : c.inputs) acc.inputs[in_at++] = iv;
    for (const auto& iv : c.outputs) acc.outputs[out_at++] = iv;
  }
  return interval_apply_wiring(d, acc);
}

// ---------------------------------------------------------------------

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

ValueTuple tuple_from_tokens(const std::vector<std::string>& tokens,
                             const std::vector<WireType>& ports,
                             const std::string& where) {
  ValueTuple t;
  std::size_t at = 0;
  for (const auto& p : ports) {
    if (p.is_finite()) {
      if (at >= tokens.size()) throw TypeError(where + ": too few values");
      auto it = std::find(p.symbols.begin(), p.symbols.end(), tokens[at]);
      if (it == p.symbols.end())
        throw TypeError(where + ": unknown symbol '" + tokens[at] + "'");
      t.push_back(static_cast<std::size_t>(it - p.symbols.begin()));
      ++at;
    } else {
      std::vector<double> v;
      for (int k = 0; k < p.dim; ++k) {
        if (at >= tokens.size()) throw TypeError(where + ": too few values");
        std::size_t used = 0;
        double x = 0.0;
        try {
          x = std::stod(tokens[at], &used);
        } catch (const std::exception&) {
          throw TypeError(where + ": '" + tokens[at] + "' is not a number");
        }
        if (used != tokens[at].size())
          throw TypeError(where + ": '" + tokens[at] + "' is not a number");
        v.push_back(x);
        ++at;
      }
      t.push_back(std::move(v));
    }
  }
  if (at != tokens.size()) throw TypeError(where + ": too many values");
  return t;
}

}  // namespace

std::vector<ValueTuple> parse_value_lines(const std::string& text,
                                          const std::vector<WireType>& ports) {
  std::vector<ValueTuple> out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    out.push_back(
        tuple_from_tokens(tokens, ports, "line " + std::to_string(lineno)));
  }
  return out;
}

std::string render_trace(const Trace& t, const std::vector<WireType>& in_ports,
                         const std::vector<WireType>& out_ports) {
  std::ostringstream os;
  os << "# initial " << t.initial_state << "\n";
  for (const auto& step : t.steps) {
    os << tuple_to_string(in_ports, step.input) << " | " << step.state_after
       << " | " << tuple_to_string(out_ports, step.output) << "\n";
  }
  return os.str();
}

Trace parse_trace(const std::string& text,
                  const std::vector<WireType>& in_ports,
                  const std::vector<WireType>& out_ports) {
  Trace t;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# initial ", 0) == 0) {
      t.initial_state = line.substr(10);
      continue;
    }
    if (line[0] == '#') continue;
    const std::string where = "line " + std::to_string(lineno);
    const auto bar1 = line.find('|');
    const auto bar2 = bar1 == std::string::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string::npos)
      throw TypeError(where + ": expected `inputs | state | outputs`");
    TraceStep step;
    step.input = tuple_from_tokens(split_tokens(line.substr(0, bar1)), in_ports,
                                   where);
    const auto state_tokens =
        split_tokens(line.substr(bar1 + 1, bar2 - bar1 - 1));
    step.state_after = state_tokens.empty() ? "" : state_tokens[0];
    step.output = tuple_from_tokens(split_tokens(line.substr(bar2 + 1)),
                                    out_ports, where);
    t.steps.push_back(std::move(step));
  }
  return t;
}

}  // namespace wirealg
