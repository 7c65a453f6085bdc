#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wirealg/moore.hpp"
#include "wirealg/parallel.hpp"
#include "wirealg/types.hpp"
#include "wirealg/wiring.hpp"

namespace wirealg {

/// A static contract on an all-Finite box: the set of allowable
/// (input, output) pairs, stored as FiniteDomain-encoded tuple indices.
struct FiniteContract {
  LabeledBox interface;
  std::set<std::pair<std::size_t, std::size_t>> tuples;

  FiniteDomain input_domain() const { return FiniteDomain(interface.inputs); }
  FiniteDomain output_domain() const { return FiniteDomain(interface.outputs); }

  bool contains(std::size_t in, std::size_t out) const {
    return tuples.count({in, out}) != 0;
  }
};

/// Closed real interval; lo > hi encodes the empty set, infinities mark
/// unbounded ends.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval all();
  static Interval none();
  static Interval closed(double lo, double hi) { return Interval{lo, hi}; }

  bool is_empty() const { return !(lo <= hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }

  friend Interval intersect(const Interval& a, const Interval& b);
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// An independent contract on a box with scalar real wires: one allowed
/// interval per port, inputs and outputs unrelated. The whole contract
/// is EMPTY as soon as any port admits no value; the explicit marker
/// also covers boxes without ports, where no port could carry it.
struct IntervalContract {
  LabeledBox interface;  // Real(1) ports only
  std::vector<Interval> inputs;
  std::vector<Interval> outputs;
  bool marked_empty = false;

  static IntervalContract unconstrained(const LabeledBox& box);
  static IntervalContract empty(const LabeledBox& box);

  bool is_empty() const;
};

/// An assume-guarantee contract over named variables with finite value
/// grids. Assumptions are tuples over the input variables, guarantees
/// tuples over inputs-then-outputs; tuples hold grid indices.
struct AGVariable {
  std::string name;
  std::vector<double> grid;  // non-empty, strictly increasing

  friend bool operator==(const AGVariable&, const AGVariable&) = default;
};

struct AGContract {
  std::vector<AGVariable> inputs;
  std::vector<AGVariable> outputs;
  std::set<std::vector<std::size_t>> assumptions;  // over inputs
  std::set<std::vector<std::size_t>> guarantees;   // over inputs ++ outputs

  std::vector<AGVariable> variables() const;
  /// The contract's box: one Real(1) port per variable.
  LabeledBox interface(const std::string& name = "") const;
};

void check_ag(const AGContract& c);

// ---------------------------------------------------------------------
// static contract algebra

/// Laxator: tuples of the parallel composite are the pairs drawn from
/// both relations, with the interface ports concatenated input-first.
FiniteContract contract_tensor(const FiniteContract& r1,
                               const FiniteContract& r2);

/// The composite contract under a wiring diagram: (y1, y2) is allowed
/// when some inner output tuple x2 routes to an allowed inner pair and
/// projects onto y2. Computed by exhaustive search over the inner output
/// domain for every outer input.
FiniteContract contract_apply_wiring(const WiringDiagram& d,
                                     const FiniteContract& r,
                                     Exec exec = Exec::Auto);

/// Two-step route to the same composite: materialize the pullback
/// P = {(y, x') | (f_in(x', y), x') allowed}, then take the image of
/// (y, x') -> (y, f_out(x')). Kept independent of contract_apply_wiring
/// as its oracle.
FiniteContract pullback_compose_oracle(const WiringDiagram& d,
                                       const FiniteContract& r);

/// true iff every tuple of r1 is allowed by r2 (same interface).
bool contract_refines(const FiniteContract& r1, const FiniteContract& r2);

// ---------------------------------------------------------------------
// independent (interval) contracts

/// Composite of an independent contract under pure rewiring. Every
/// internal connection carries the intersection of the intervals at its
/// two ends; one empty connection empties the whole composite. Outer
/// inputs take on the intersection of the intervals they feed, outer
/// outputs the intersection of every interval on their wire.
IntervalContract interval_apply_wiring(const WiringDiagram& d,
                                       const IntervalContract& c);

/// The interval contract as a finite relation over per-port symbol grids
/// (every port gets the same grid). Product structure by construction.
FiniteContract discretize_interval_contract(const IntervalContract& c,
                                            const std::vector<double>& grid);

// ---------------------------------------------------------------------
// assume-guarantee contracts

/// Composition by shared variable names: guarantees conjoin over the
/// joined variable set; the assumption is the weakest set over the
/// composite inputs whose every joint extension keeps both components'
/// assumptions implied by the other's guarantee. Throws TypeError when
/// the contracts are incompatible (empty assumption).
///
/// `pairing` renames c2 variables onto c1 names before matching:
/// {c1_name, c2_name} identifies the two wires.
AGContract ag_compose(
    const AGContract& c1, const AGContract& c2,
    const std::vector<std::pair<std::string, std::string>>& pairing = {});

enum class AGMode { Strict, Implicative };

/// The contract as a static relation: Strict keeps tuples whose inputs
/// satisfy the assumptions and which meet the guarantees; Implicative
/// also keeps every tuple whose inputs fall outside the assumptions.
/// Ports are Finite-typed with the grid values as symbols.
FiniteContract ag_to_static(const AGContract& c, AGMode mode);

// ---------------------------------------------------------------------
// traces and behaviors

/// Indices of trace steps whose (input, output) pair the contract
/// disallows.
std::vector<std::size_t> check_trace(const FiniteContract& r, const Trace& t);
std::vector<std::size_t> check_trace(const IntervalContract& r, const Trace& t);

/// The steady-state relation of a machine: pairs (x, readout(s)) over
/// all states fixed by x. This instantiates the algebra map from
/// behaviors to the contracts they maximally satisfy.
FiniteContract steady_states(const MooreMachine& m, Exec exec = Exec::Auto);

}  // namespace wirealg
