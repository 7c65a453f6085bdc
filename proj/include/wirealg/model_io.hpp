#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wirealg/contracts.hpp"
#include "wirealg/hierarchy.hpp"
#include "wirealg/lti.hpp"
#include "wirealg/moore.hpp"
#include "wirealg/types.hpp"
#include "wirealg/wiring.hpp"

namespace wirealg {

/// Assigns one declared inhabitant per inner slot of a diagram.
struct Binding {
  std::string algebra;  // "moore" | "lti" | "contract"
  std::string diagram;
  std::vector<std::string> slots;
};

/// A parsed model file: named declarations plus slot bindings. The file
/// format is a strict JSON profile documented in docs/format.md.
struct ModelDocument {
  std::map<std::string, WireType> types;
  std::map<std::string, LabeledBox> boxes;
  std::map<std::string, WiringDiagram> diagrams;
  std::map<std::string, HierarchicalModel> hierarchies;
  std::map<std::string, MooreMachine> machines;
  std::map<std::string, LTISystem> systems;
  std::map<std::string, FiniteContract> finite_contracts;
  std::map<std::string, IntervalContract> interval_contracts;
  std::map<std::string, AGContract> ag_contracts;
  std::map<std::string, Binding> bindings;
};

/// One parse or semantic problem. Syntax errors carry 1-based line and
/// column; semantic errors carry the path of the offending declaration.
struct ModelIssue {
  std::string where;
  std::string message;
  int line = 0;
  int col = 0;

  std::string to_string() const;
};

struct ParseResult {
  std::optional<ModelDocument> document;  // set iff issues is empty
  std::vector<ModelIssue> issues;
};

/// Never throws on malformed input; all problems land in issues.
ParseResult parse_model(const std::string& text);

/// Canonical text: sorted keys, two-space indent, shortest round-trip
/// decimals, trailing newline. parse(serialize(doc)) reproduces doc and
/// serialization of the reparse is byte-identical.
std::string serialize_model(const ModelDocument& doc);

// ---------------------------------------------------------------------
// binding composition

const Binding& resolve_binding(const ModelDocument& doc,
                               const std::string& name);

MooreMachine compose_moore_binding(const ModelDocument& doc, const Binding& b);
LTISystem compose_lti_binding(const ModelDocument& doc, const Binding& b);
FiniteContract compose_finite_contract_binding(const ModelDocument& doc,
                                               const Binding& b);
IntervalContract compose_interval_contract_binding(const ModelDocument& doc,
                                                   const Binding& b);

/// True when every slot of a contract binding names an interval contract.
bool binding_is_interval(const ModelDocument& doc, const Binding& b);

// ---------------------------------------------------------------------
// step sequences and traces as line-oriented text

/// One tuple per line, values whitespace-separated in port order.
std::vector<ValueTuple> parse_value_lines(const std::string& text,
                                          const std::vector<WireType>& ports);

/// Trace line format: `inputs | state | outputs` with whitespace-
/// separated values inside each field.
std::string render_trace(const Trace& t, const std::vector<WireType>& in_ports,
                         const std::vector<WireType>& out_ports);
Trace parse_trace(const std::string& text,
                  const std::vector<WireType>& in_ports,
                  const std::vector<WireType>& out_ports);

}  // namespace wirealg
