#include <doctest.h>

#include "test_support.hpp"
#include "wirealg/contracts.hpp"
#include "wirealg/hierarchy.hpp"
#include "wirealg/lti.hpp"
#include "wirealg/moore.hpp"

using namespace wirealg;
using namespace wirealg::testing;

namespace {

/// A random implementation of a given interface.
WiringDiagram random_implementation(Rng& rng, const LabeledBox& target,
                                    const WireType& w) {
  WiringDiagram d;
  const std::size_t n_boxes = pick(rng, 1, 2);
  for (std::size_t b = 0; b < n_boxes; ++b)
    d.inner.push_back(
        box("s" + std::to_string(b), pick(rng, 0, 2), pick(rng, 1, 2), w));
  d.outer = target;

  std::vector<PortSource> sources;
  for (std::size_t i = 0; i < target.inputs.size(); ++i)
    sources.push_back(PortSource::outer_input(i));
  std::vector<PortSource> inner_sources;
  for (std::size_t b = 0; b < d.inner.size(); ++b)
    for (std::size_t p = 0; p < d.inner[b].outputs.size(); ++p)
      inner_sources.push_back(PortSource::inner_output(b, p));
  sources.insert(sources.end(), inner_sources.begin(), inner_sources.end());

  for (std::size_t i = 0; i < d.inner_input_count(); ++i)
    d.input_routing.push_back(sources[pick(rng, 0, sources.size() - 1)]);
  for (std::size_t o = 0; o < target.outputs.size(); ++o)
    d.output_routing.push_back(
        inner_sources[pick(rng, 0, inner_sources.size() - 1)]);
  return d;
}

HierarchicalModel random_tree(Rng& rng, const WireType& w, int depth = 2) {
  HierarchicalModel h;
  h.implementation = random_diagram(rng, w, 2);
  h.root_interface = h.implementation.outer;
  for (const auto& slot : h.implementation.inner) {
    if (depth > 0 && chance(rng, 0.5)) {
      HierarchicalModel child;
      child.implementation = random_implementation(rng, slot, w);
      child.root_interface = slot;
      child.children.assign(child.implementation.inner.size(), nullptr);
      if (depth > 1 && chance(rng, 0.4)) {
        for (std::size_t i = 0; i < child.implementation.inner.size(); ++i) {
          if (!chance(rng, 0.5)) continue;
          HierarchicalModel grand;
          grand.implementation = random_implementation(
              rng, child.implementation.inner[i], w);
          grand.root_interface = child.implementation.inner[i];
          grand.children.assign(grand.implementation.inner.size(), nullptr);
          child.children[i] =
              std::make_shared<const HierarchicalModel>(std::move(grand));
        }
      }
      h.children.push_back(
          std::make_shared<const HierarchicalModel>(std::move(child)));
    } else {
      h.children.push_back(nullptr);
    }
  }
  return h;
}

/// Composes through every intermediate interface, drawing a fresh random
/// machine at each leaf (recorded in leaf order for the one-shot run).
MooreMachine moore_level_by_level(const HierarchicalModel& h, Rng& rng,
                                  std::vector<MooreMachine>& leaf_machines) {
  MooreMachine acc;
  bool first = true;
  for (std::size_t i = 0; i < h.implementation.inner.size(); ++i) {
    MooreMachine m;
    if (h.children[i]) {
      m = moore_level_by_level(*h.children[i], rng, leaf_machines);
    } else {
      m = random_machine(rng, h.implementation.inner[i]);
      leaf_machines.push_back(m);
    }
    acc = first ? m : moore_tensor(acc, m);
    first = false;
  }
  if (first) {
    acc.interface = LabeledBox{};
    acc.states = {"*"};
    acc.update = {0};
    acc.readout = {0};
  }
  return moore_apply_wiring(h.implementation, acc);
}

}  // namespace

TEST_CASE("a leaf tree flattens to its own implementation") {
  Rng rng(199);
  const auto d = random_diagram(rng, bit());
  const auto h = HierarchicalModel::leaf_impl(d);
  const auto flat = flatten(h);
  CHECK(flat.inner == d.inner);
  CHECK(flat.input_routing == d.input_routing);
  CHECK(flat.output_routing == d.output_routing);
}

TEST_CASE("the one-level decomposition tree flattens to the zoomed picture") {
  const auto w = bit();
  const auto host = fig1_diagram(w);
  HierarchicalModel h;
  h.root_interface = host.outer;
  h.implementation = host;
  h.children = {std::make_shared<const HierarchicalModel>(
                    HierarchicalModel::leaf_impl(x_decomposition(w))),
                nullptr, nullptr};
  const auto flat = flatten(h);
  REQUIRE(flat.inner.size() == 5);
  CHECK(leaves(h).size() == 5);
  CHECK(evaluation_equal(flat, substitute(host, 0, x_decomposition(w))));
}

TEST_CASE("the two-level flight architecture flattens to ten leaves") {
  const auto h = build_uav_architecture();
  const auto flat = flatten(h);
  REQUIRE(flat.inner.size() == 10);
  CHECK(leaves(h).size() == 10);
  CHECK(same_ports(flat.outer, build_uav_model().diagram.outer));
  CHECK(validate(flat).empty());

  // only the frame stage's output leaves the composite
  REQUIRE(flat.output_routing.size() == 1);
  CHECK(flat.inner[flat.output_routing[0].box].name == "frame");
}

TEST_CASE("flattening in any slot order is observably equal") {
  Rng rng(211);
  for (int i = 0; i < 40; ++i) {
    const auto h = random_tree(rng, bit(), 1);
    const auto flat = flatten(h);

    // substitute front to back instead, tracking the index shifts
    WiringDiagram alt = h.implementation;
    std::size_t offset = 0;
    for (std::size_t slot = 0; slot < h.children.size(); ++slot) {
      if (!h.children[slot]) {
        offset += 1;
        continue;
      }
      const auto sub = flatten(*h.children[slot]);
      alt = substitute(alt, offset, sub);
      offset += sub.inner.size();
    }
    CHECK(alt.inner == flat.inner);
    CHECK(evaluation_equal(alt, flat));
  }
}

TEST_CASE("level-by-level machine composition equals one-shot on the flat diagram") {
  Rng rng(223);
  for (int i = 0; i < 40; ++i) {
    const auto h = random_tree(rng, bit());
    std::vector<MooreMachine> leaf_machines;
    const auto level = moore_level_by_level(h, rng, leaf_machines);

    MooreMachine whole;
    bool first = true;
    for (const auto& m : leaf_machines) {
      whole = first ? m : moore_tensor(whole, m);
      first = false;
    }
    if (first) {
      whole.interface = LabeledBox{};
      whole.states = {"*"};
      whole.update = {0};
      whole.readout = {0};
    }
    const auto flat = moore_apply_wiring(flatten(h), whole);
    CHECK(tables_equal(level, flat));
  }
}

TEST_CASE("level-by-level system composition equals one-shot, to precision") {
  Rng rng(227);
  const auto h = build_uav_architecture();
  const auto flat_diagram = flatten(h);

  for (int rep = 0; rep < 20; ++rep) {
    std::vector<LTISystem> leaf_systems;
    for (const auto& b : flat_diagram.inner) {
      LTISystem sys;
      sys.interface = b;
      const std::size_t n = pick(rng, 0, 2);
      sys.A = Matrix(n, n);
      sys.B = Matrix(n, b.inputs.size());
      sys.C = Matrix(b.outputs.size(), n);
      auto fill = [&](Matrix& m) {
        for (auto& e : m.data)
          e = static_cast<double>(pick(rng, 0, 8)) / 2.0 - 2.0;
      };
      fill(sys.A);
      fill(sys.B);
      fill(sys.C);
      leaf_systems.push_back(sys);
    }

    // one shot
    LTISystem whole = leaf_systems[0];
    for (std::size_t k = 1; k < leaf_systems.size(); ++k)
      whole = lti_tensor(whole, leaf_systems[k]);
    const auto flat = lti_apply_wiring(flat_diagram, whole);

    // through the intermediate interfaces
    std::size_t at = 0;
    std::vector<LTISystem> mids;
    for (std::size_t slot = 0; slot < 3; ++slot) {
      const auto& child = *h.children[slot];
      LTISystem acc = leaf_systems[at++];
      for (std::size_t k = 1; k < child.implementation.inner.size(); ++k)
        acc = lti_tensor(acc, leaf_systems[at++]);
      mids.push_back(lti_apply_wiring(child.implementation, acc));
    }
    const auto level = lti_apply_wiring(
        h.implementation, lti_tensor(lti_tensor(mids[0], mids[1]), mids[2]));

    CHECK(max_abs_diff(level.A, flat.A) <= 1e-12);
    CHECK(max_abs_diff(level.B, flat.B) <= 1e-12);
    CHECK(max_abs_diff(level.C, flat.C) <= 1e-12);
  }
}

TEST_CASE("level-by-level contract composition equals one-shot") {
  Rng rng(229);
  for (int i = 0; i < 40; ++i) {
    const auto h = random_tree(rng, bit(), 1);
    const auto flat_diagram = flatten(h);

    std::vector<FiniteContract> leaf_contracts;
    for (const auto& b : leaves(h))
      leaf_contracts.push_back(random_contract(rng, b));

    FiniteContract whole;
    bool first = true;
    for (const auto& c : leaf_contracts) {
      whole = first ? c : contract_tensor(whole, c);
      first = false;
    }
    if (first) whole.tuples.emplace(0, 0);
    const auto flat = contract_apply_wiring(flat_diagram, whole);

    std::size_t at = 0;
    FiniteContract acc_all;
    bool outer_first = true;
    for (std::size_t slot = 0; slot < h.children.size(); ++slot) {
      FiniteContract part;
      if (h.children[slot]) {
        const auto& child = *h.children[slot];
        FiniteContract acc = leaf_contracts[at++];
        for (std::size_t k = 1; k < child.implementation.inner.size(); ++k)
          acc = contract_tensor(acc, leaf_contracts[at++]);
        part = contract_apply_wiring(child.implementation, acc);
      } else {
        part = leaf_contracts[at++];
      }
      acc_all = outer_first ? part : contract_tensor(acc_all, part);
      outer_first = false;
    }
    if (outer_first) acc_all.tuples.emplace(0, 0);
    const auto level = contract_apply_wiring(h.implementation, acc_all);

    CHECK(level.tuples == flat.tuples);
  }
}

TEST_CASE("mismatched children are rejected") {
  const auto w = bit();
  const auto host = fig1_diagram(w);
  HierarchicalModel h;
  h.root_interface = host.outer;
  h.implementation = host;
  h.children = {nullptr, nullptr,
                std::make_shared<const HierarchicalModel>(
                    HierarchicalModel::leaf_impl(x_decomposition(w)))};
  // the X decomposition implements a 1-in/1-out box, slot 2 needs 3-in
  CHECK_THROWS_AS(flatten(h), TypeError);
}
