#include <doctest.h>

#include <array>
#include <cmath>

#include "test_support.hpp"
#include "wirealg/lti.hpp"
#include "wirealg/moore.hpp"

using namespace wirealg;
using namespace wirealg::testing;

namespace {

LTISystem random_lti(Rng& rng, const LabeledBox& interface,
                     std::size_t max_state = 3) {
  static const std::array<double, 7> pool = {-2, -1, -0.5, 0, 0.5, 1, 2};
  auto entry = [&] { return pool[pick(rng, 0, pool.size() - 1)]; };
  LTISystem sys;
  sys.interface = interface;
  const std::size_t n = pick(rng, 0, max_state);
  const std::size_t k = interface.inputs.size();
  const std::size_t l = interface.outputs.size();
  sys.A = Matrix(n, n);
  sys.B = Matrix(n, k);
  sys.C = Matrix(l, n);
  for (auto& e : sys.A.data) e = entry();
  for (auto& e : sys.B.data) e = entry();
  for (auto& e : sys.C.data) e = entry();
  return sys;
}

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

double max_err(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

ValueTuple scalars_to_tuple(const std::vector<double>& v) {
  ValueTuple t;
  for (double x : v) t.push_back(std::vector<double>{x});
  return t;
}

std::vector<double> tuple_to_scalars(const ValueTuple& t) {
  std::vector<double> v;
  for (const auto& e : t) v.push_back(std::get<std::vector<double>>(e)[0]);
  return v;
}

}  // namespace

TEST_CASE("tensor with the empty system keeps the matrices") {
  Rng rng(79);
  const auto sys = random_lti(rng, box("X", 2, 1, WireType::real(1)));
  LTISystem unit;
  unit.interface = LabeledBox{"I", {}, {}};
  unit.A = Matrix(0, 0);
  unit.B = Matrix(0, 0);
  unit.C = Matrix(0, 0);
  const auto t = lti_tensor(sys, unit);
  CHECK(t.A == sys.A);
  CHECK(t.B == sys.B);
  CHECK(t.C == sys.C);
}

TEST_CASE("tensor of one-dimensional systems is block diagonal") {
  LTISystem a, b;
  a.interface = b.interface = box("X", 1, 1, WireType::real(1));
  a.A = Matrix(1, 1, {2});
  a.B = Matrix(1, 1, {1});
  a.C = Matrix(1, 1, {1});
  b.A = Matrix(1, 1, {3});
  b.B = Matrix(1, 1, {1});
  b.C = Matrix(1, 1, {1});
  const auto t = lti_tensor(a, b);
  CHECK(t.A == Matrix(2, 2, {2, 0, 0, 3}));
  CHECK(t.state_dim() == 2);
}

TEST_CASE("tensor stepping is componentwise stepping") {
  Rng rng(83);
  for (int i = 0; i < 20; ++i) {
    const auto s1 = random_lti(rng, box("X", pick(rng, 0, 2), pick(rng, 0, 2),
                                        WireType::real(1)));
    const auto s2 = random_lti(rng, box("Y", pick(rng, 0, 2), pick(rng, 0, 2),
                                        WireType::real(1)));
    const auto t = lti_tensor(s1, s2);

    const auto sa = random_vec(rng, s1.state_dim());
    const auto sb = random_vec(rng, s2.state_dim());
    const auto xa = random_vec(rng, s1.input_dim());
    const auto xb = random_vec(rng, s2.input_dim());

    std::vector<double> s = sa, x = xa;
    s.insert(s.end(), sb.begin(), sb.end());
    x.insert(x.end(), xb.begin(), xb.end());

    const auto [next, out] = lti_step(t, s, x);
    const auto [na, oa] = lti_step(s1, sa, xa);
    const auto [nb, ob] = lti_step(s2, sb, xb);
    std::vector<double> want_next = na, want_out = oa;
    want_next.insert(want_next.end(), nb.begin(), nb.end());
    want_out.insert(want_out.end(), ob.begin(), ob.end());
    CHECK(max_err(next, want_next) == 0.0);
    CHECK(max_err(out, want_out) == 0.0);
  }
}

TEST_CASE("identity wiring maps a system to itself exactly") {
  Rng rng(89);
  for (int i = 0; i < 110; ++i) {
    const auto b = box("X", pick(rng, 0, 2), pick(rng, 0, 2), WireType::real(1));
    const auto sys = random_lti(rng, b);
    const auto r = lti_apply_wiring(identity_diagram(b), sys);
    CHECK(r.A == sys.A);
    CHECK(r.B == sys.B);
    CHECK(r.C == sys.C);
  }
}

TEST_CASE("longitudinal dynamics step from unit angle of attack") {
  const auto uav = build_uav_model();
  const auto& dynamics = uav.slots[2];
  const auto [next, out] = lti_step(dynamics, {1, 0, 0}, {0});
  CHECK(next == std::vector<double>{-0.313, -0.0139, 0});
  CHECK(out == std::vector<double>{0});
}

TEST_CASE("zero state and input step to zero") {
  const auto uav = build_uav_model();
  const auto [next, out] = lti_step(uav.composite, std::vector<double>(7, 0.0),
                                    {0, 0});
  CHECK(next == std::vector<double>(7, 0.0));
  CHECK(out == std::vector<double>{0});
}

TEST_CASE("a linear system agrees with its sampled machine") {
  // next = input, output = 2 * state, on the grid {-1, 0, 1}
  LTISystem sys;
  sys.interface = box("X", 1, 1, WireType::real(1));
  sys.A = Matrix(1, 1, {0});
  sys.B = Matrix(1, 1, {1});
  sys.C = Matrix(1, 1, {2});

  MooreMachine m;
  m.interface = LabeledBox{"X",
                           {WireType::finite({"-1", "0", "1"})},
                           {WireType::finite({"-2", "0", "2"})}};
  m.states = {"-1", "0", "1"};
  m.update = {0, 1, 2, 0, 1, 2, 0, 1, 2};
  m.readout = {0, 1, 2};

  const std::array<double, 3> grid = {-1, 0, 1};
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t x = 0; x < 3; ++x) {
      const auto [next, out] = lti_step(sys, {grid[s]}, {grid[x]});
      CHECK(next[0] == std::stod(m.states[m.update[s * 3 + x]]));
      CHECK(out[0] ==
            std::stod(m.interface.outputs[0].symbols[m.readout[s]]));
    }
}

TEST_CASE("a linear map becomes a buffered system") {
  const auto sys = lti_from_linear_map(Matrix(1, 2, {1, 1}), "sum");
  CHECK(sys.state_dim() == 2);
  CHECK(sys.A == Matrix::zero(2, 2));
  CHECK(sys.B == Matrix::identity(2));
  CHECK(sys.C == Matrix(1, 2, {1, 1}));
  CHECK(sys.interface.inputs.size() == 2);
  CHECK(sys.interface.outputs.size() == 1);
}

TEST_CASE("buffered maps reproduce the map after one step") {
  Rng rng(97);
  for (int i = 0; i < 20; ++i) {
    Matrix h(pick(rng, 1, 2), pick(rng, 1, 2));
    for (auto& e : h.data)
      e = static_cast<double>(pick(rng, 0, 8)) / 2.0 - 2.0;
    const auto sys = lti_from_linear_map(h);
    const auto x = random_vec(rng, h.cols);
    auto s = std::vector<double>(h.cols, 0.0);
    auto [s1, y0] = lti_step(sys, s, x);
    auto [s2, y1] = lti_step(sys, s1, x);
    (void)s2;
    (void)y0;
    CHECK(max_err(y1, h * x) == 0.0);
  }
}

TEST_CASE("one-by-one identity map delays its input by a step") {
  const auto sys = lti_from_linear_map(Matrix::identity(1));
  auto [s1, y0] = lti_step(sys, {0}, {7});
  auto [s2, y1] = lti_step(sys, s1, {3});
  CHECK(y0 == std::vector<double>{0});
  CHECK(y1 == std::vector<double>{7});
  CHECK(s2 == std::vector<double>{3});
}

TEST_CASE("the flight model composite matches the frozen matrices") {
  const auto uav = build_uav_model();
  CHECK(uav.composite.state_dim() == 7);
  CHECK(uav.composite.C == Matrix(1, 7, {0, 0, 0, 0, 0, 0, 1}));
  const Matrix want_a(7, 7, {
      0, 0, 0,      0,      0,       0,      1,
      0, 0, 0,      0,      0,       0,      0,
      1, 1, 0,      0,      0,       0,      0,
      0, 0, 0,      0,      0,       0,      0,
      0, 0, 0.232,  0.232,  -0.313,  56.7,   0,
      0, 0, 0.0203, 0.0203, -0.0139, -0.426, 0,
      0, 0, 0,      0,      0,       56.7,   0,
  });
  CHECK(max_abs_diff(uav.composite.A, want_a) <= 1e-12);
  const Matrix want_b(7, 2, {0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0});
  CHECK(max_abs_diff(uav.composite.B, want_b) <= 1e-12);

  // readout picks the pitch angle out of the composite state
  const auto [next, out] =
      lti_step(uav.composite, {0, 0, 0, 0, 0, 0, 0.5}, {0, 0});
  (void)next;
  CHECK(out == std::vector<double>{0.5});
}

TEST_CASE("composite stepping equals co-stepping the slots") {
  Rng rng(101);
  for (int i = 0; i < 25; ++i) {
    const auto d = random_diagram(rng, WireType::real(1));
    std::vector<LTISystem> slots;
    for (const auto& b : d.inner) slots.push_back(random_lti(rng, b));
    LTISystem whole = slots[0];
    for (std::size_t b = 1; b < slots.size(); ++b)
      whole = lti_tensor(whole, slots[b]);
    const auto composite = lti_apply_wiring(d, whole);

    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::vector<double>> states;
      std::vector<double> flat_state;
      for (const auto& sys : slots) {
        states.push_back(random_vec(rng, sys.state_dim()));
        flat_state.insert(flat_state.end(), states.back().begin(),
                          states.back().end());
      }
      const auto ext = random_vec(rng, d.outer.inputs.size());

      // route readouts structurally, then update each slot
      ValueTuple readouts;
      for (std::size_t b = 0; b < slots.size(); ++b) {
        const auto y = slots[b].C * states[b];
        for (double v : y) readouts.push_back(std::vector<double>{v});
      }
      const auto routed = evaluate_fin(d, readouts, scalars_to_tuple(ext));
      const auto emitted = tuple_to_scalars(evaluate_fout(d, readouts));

      std::vector<double> want_next;
      std::size_t at = 0;
      for (std::size_t b = 0; b < slots.size(); ++b) {
        std::vector<double> x;
        for (std::size_t p = 0; p < slots[b].interface.inputs.size(); ++p)
          x.push_back(std::get<std::vector<double>>(routed[at++])[0]);
        const auto [nb, ob] = lti_step(slots[b], states[b], x);
        (void)ob;
        want_next.insert(want_next.end(), nb.begin(), nb.end());
      }

      const auto [next, out] = lti_step(composite, flat_state, ext);
      CHECK(max_err(next, want_next) <= 1e-9);
      CHECK(max_err(out, emitted) <= 1e-9);
    }
  }
}

TEST_CASE("wiring application follows the machine update semantics") {
  Rng rng(103);
  for (int i = 0; i < 25; ++i) {
    const auto d = random_diagram(rng, WireType::real(1));
    const auto sys = random_lti(rng, d.inner_tensor());
    const auto composite = lti_apply_wiring(d, sys);

    const auto s = random_vec(rng, sys.state_dim());
    const auto y = random_vec(rng, d.outer.inputs.size());

    const auto readout = sys.C * s;
    const auto routed = tuple_to_scalars(
        evaluate_fin(d, scalars_to_tuple(readout), scalars_to_tuple(y)));
    const auto [want_next, unused] = lti_step(sys, s, routed);
    (void)unused;
    const auto want_out =
        tuple_to_scalars(evaluate_fout(d, scalars_to_tuple(readout)));

    const auto [next, out] = lti_step(composite, s, y);
    CHECK(max_err(next, want_next) <= 1e-12);
    CHECK(max_err(out, want_out) <= 1e-12);
  }
}

TEST_CASE("wiring application is functorial to high precision") {
  Rng rng(107);
  for (int i = 0; i < 110; ++i) {
    const auto f_raw = random_diagram(rng, WireType::real(1));
    WiringDiagram f;
    f.inner = {f_raw.inner_tensor("g")};
    f.outer = f_raw.outer;
    for (const auto& s : f_raw.input_routing)
      f.input_routing.push_back(
          s.kind == PortSource::Kind::OuterInput
              ? s
              : PortSource::inner_output(
                    0, f_raw.output_flat_index(s.box, s.port)));
    for (const auto& s : f_raw.output_routing)
      f.output_routing.push_back(PortSource::inner_output(
          0, f_raw.output_flat_index(s.box, s.port)));

    const auto g = random_cap(rng, f.outer, WireType::real(1));
    const auto sys = random_lti(rng, f.inner[0]);

    const auto once = lti_apply_wiring(compose(f, g), sys);
    const auto twice = lti_apply_wiring(g, lti_apply_wiring(f, sys));
    CHECK(max_abs_diff(once.A, twice.A) <= 1e-12);
    CHECK(max_abs_diff(once.B, twice.B) <= 1e-12);
    CHECK(max_abs_diff(once.C, twice.C) <= 1e-12);
  }
}

TEST_CASE("composite systems step linearly") {
  Rng rng(109);
  for (int i = 0; i < 20; ++i) {
    const auto d = random_diagram(rng, WireType::real(1));
    const auto composite = lti_apply_wiring(d, random_lti(rng, d.inner_tensor()));
    const auto s1 = random_vec(rng, composite.state_dim());
    const auto s2 = random_vec(rng, composite.state_dim());
    const auto x1 = random_vec(rng, composite.input_dim());
    const auto x2 = random_vec(rng, composite.input_dim());
    const double alpha = 0.75, beta = -1.5;

    std::vector<double> s(s1.size()), x(x1.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = alpha * s1[k] + beta * s2[k];
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = alpha * x1[k] + beta * x2[k];

    const auto [n, o] = lti_step(composite, s, x);
    const auto [n1, o1] = lti_step(composite, s1, x1);
    const auto [n2, o2] = lti_step(composite, s2, x2);
    std::vector<double> want_n(n.size()), want_o(o.size());
    for (std::size_t k = 0; k < n.size(); ++k)
      want_n[k] = alpha * n1[k] + beta * n2[k];
    for (std::size_t k = 0; k < o.size(); ++k)
      want_o[k] = alpha * o1[k] + beta * o2[k];
    CHECK(max_err(n, want_n) <= 1e-9);
    CHECK(max_err(o, want_o) <= 1e-9);
  }
}
