#include "wirealg/lti.hpp"

#include <sstream>

namespace wirealg {

void check_system(const LTISystem& sys) {
  if (!all_real(sys.interface.inputs) || !all_real(sys.interface.outputs))
    throw TypeError("check_system: non-real wires on '" + sys.interface.name +
                    "'");
  const std::size_t k =
      static_cast<std::size_t>(total_real_dim(sys.interface.inputs));
  const std::size_t l =
      static_cast<std::size_t>(total_real_dim(sys.interface.outputs));
  const std::size_t n = sys.A.rows;
  if (sys.A.cols != n) throw TypeError("check_system: A must be square");
  if (sys.B.rows != n || sys.B.cols != k)
    throw TypeError("check_system: B must be n x k");
  if (sys.C.rows != l || sys.C.cols != n)
    throw TypeError("check_system: C must be l x n");
}

LTISystem lti_tensor(const LTISystem& s1, const LTISystem& s2) {
  check_system(s1);
  check_system(s2);
  LTISystem r;
  r.interface.name = s1.interface.name + "*" + s2.interface.name;
  r.interface.inputs = s1.interface.inputs;
  r.interface.inputs.insert(r.interface.inputs.end(),
                            s2.interface.inputs.begin(),
                            s2.interface.inputs.end());
  r.interface.outputs = s1.interface.outputs;
  r.interface.outputs.insert(r.interface.outputs.end(),
                             s2.interface.outputs.begin(),
                             s2.interface.outputs.end());
  r.A = Matrix::block_diagonal(s1.A, s2.A);
  r.B = Matrix::block_diagonal(s1.B, s2.B);
  r.C = Matrix::block_diagonal(s1.C, s2.C);
  return r;
}

LTISystem lti_apply_wiring(const WiringDiagram& d, const LTISystem& sys) {
  check_system(sys);
  if (!same_ports(sys.interface, d.inner_tensor()))
    throw TypeError(
        "lti_apply_wiring: system does not inhabit the diagram's inner tensor");
  const WiringMatrices f = wiring_as_matrices(d);

  LTISystem r;
  r.interface = d.outer;
  r.A = sys.A + sys.B * f.in_from_inner * sys.C;
  r.B = sys.B * f.in_from_outer;
  r.C = f.out_from_inner * sys.C;
  check_system(r);
  return r;
}

std::pair<std::vector<double>, std::vector<double>> lti_step(
    const LTISystem& sys, const std::vector<double>& s,
    const std::vector<double>& x) {
  check_system(sys);
  if (s.size() != sys.state_dim())
    throw TypeError("lti_step: state dimension mismatch");
  if (x.size() != sys.input_dim())
    throw TypeError("lti_step: input dimension mismatch");
  std::vector<double> next = sys.A * s;
  const std::vector<double> forced = sys.B * x;
  for (std::size_t i = 0; i < next.size(); ++i) next[i] += forced[i];
  return {next, sys.C * s};
}

LTISystem lti_from_linear_map(const Matrix& h, const std::string& name) {
  LTISystem sys;
  sys.interface.name = name;
  sys.interface.inputs.assign(h.cols, WireType::real(1));
  sys.interface.outputs.assign(h.rows, WireType::real(1));
  sys.A = Matrix::zero(h.cols, h.cols);
  sys.B = Matrix::identity(h.cols);
  sys.C = h;
  check_system(sys);
  return sys;
}

UavModel build_uav_model() {
  UavModel m;

  // longitudinal equations of motion; state (a, q, theta), input is the
  // elevator deflection angle, output the pitch angle
  LTISystem dynamics;
  dynamics.interface =
      LabeledBox{"dynamics", {WireType::real(1)}, {WireType::real(1)}};
  dynamics.A = Matrix(3, 3,
                      {-0.313, 56.7, 0.0,
                       -0.0139, -0.426, 0.0,
                       0.0, 56.7, 0.0});
  dynamics.B = Matrix(3, 1, {0.232, 0.0203, 0.0});
  dynamics.C = Matrix(1, 3, {0.0, 0.0, 1.0});
  check_system(dynamics);

  // sensor s' = s + e and controller c = s' + d as buffered signal sums
  LTISystem sensor = lti_from_linear_map(Matrix(1, 2, {1.0, 1.0}), "sensor");
  LTISystem controller =
      lti_from_linear_map(Matrix(1, 2, {1.0, 1.0}), "controller");

  // sensor reads (current state, environment), controller reads
  // (predicted state, desired state), dynamics read the control action;
  // outer inputs are (environment, desired state), the output is pitch
  WiringDiagram d;
  d.inner = {sensor.interface, controller.interface, dynamics.interface};
  d.outer = LabeledBox{"uav", {WireType::real(1), WireType::real(1)},
                       {WireType::real(1)}};
  d.input_routing = {
      PortSource::inner_output(2, 0),  // sensor.s   <- dynamics output
      PortSource::outer_input(0),      // sensor.e   <- environment
      PortSource::inner_output(0, 0),  // controller.s' <- sensor output
      PortSource::outer_input(1),      // controller.d  <- desired state
      PortSource::inner_output(1, 0),  // dynamics.c <- controller output
  };
  d.output_routing = {PortSource::inner_output(2, 0)};
  require_valid(d, "build_uav_model");

  m.diagram = d;
  m.slots = {sensor, controller, dynamics};
  m.composite =
      lti_apply_wiring(d, lti_tensor(lti_tensor(sensor, controller), dynamics));
  return m;
}

std::string render_equations(const LTISystem& sys,
                             const std::vector<std::string>& state_names,
                             const std::vector<std::string>& input_names,
                             const std::vector<std::string>& output_names) {
  check_system(sys);
  if (state_names.size() != sys.state_dim() ||
      input_names.size() != sys.input_dim() ||
      output_names.size() != sys.output_dim())
    throw TypeError("render_equations: name count mismatch");

  auto render_row = [&](const Matrix& a, std::size_t row,
                        const std::vector<std::string>& names,
                        std::string& line, bool& first) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      const double c = a.at(row, j);
      if (c == 0.0) continue;
      if (first) {
        if (c == 1.0)
          line += names[j];
        else if (c == -1.0)
          line += "-" + names[j];
        else
          line += format_double(c) + "*" + names[j];
        first = false;
      } else {
        const double mag = c < 0 ? -c : c;
        line += c < 0 ? " - " : " + ";
        line += mag == 1.0 ? names[j] : format_double(mag) + "*" + names[j];
      }
    }
  };

  std::ostringstream os;
  for (std::size_t i = 0; i < sys.state_dim(); ++i) {
    std::string line = state_names[i] + "' = ";
    bool first = true;
    render_row(sys.A, i, state_names, line, first);
    render_row(sys.B, i, input_names, line, first);
    if (first) line += "0";
    os << line << "\n";
  }
  for (std::size_t o = 0; o < sys.output_dim(); ++o) {
    std::string line = output_names[o] + " = ";
    bool first = true;
    render_row(sys.C, o, state_names, line, first);
    if (first) line += "0";
    os << line << "\n";
  }
  return os.str();
}

}  // namespace wirealg
