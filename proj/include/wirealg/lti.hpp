#pragma once

#include <string>
#include <vector>

#include "wirealg/matrix.hpp"
#include "wirealg/types.hpp"
#include "wirealg/wiring.hpp"

namespace wirealg {

/// A discrete-time linear system inhabiting an all-Real box:
///   s' = A s + B x,   y = C s
/// with A n x n, B n x k, C l x n for input dim k and output dim l.
struct LTISystem {
  LabeledBox interface;  // Real ports; total dims must match B and C
  Matrix A;
  Matrix B;
  Matrix C;

  std::size_t state_dim() const { return A.rows; }
  std::size_t input_dim() const { return B.cols; }
  std::size_t output_dim() const { return C.rows; }
};

/// Throws TypeError unless the shapes line up with the interface.
void check_system(const LTISystem& sys);

/// Block-diagonal parallel composite.
LTISystem lti_tensor(const LTISystem& s1, const LTISystem& s2);

/// The composite linear system induced by a wiring diagram: with the
/// diagram's 0/1 matrices (Af, Bf, Cf), the result keeps the state space
/// and has matrices (A + B Af C, B Bf, Cf C).
LTISystem lti_apply_wiring(const WiringDiagram& d, const LTISystem& sys);

/// One step: returns (A s + B x, C s).
std::pair<std::vector<double>, std::vector<double>> lti_step(
    const LTISystem& sys, const std::vector<double>& s,
    const std::vector<double>& x);

/// A linear map as a system: states buffer the inputs (A = 0, B = I) and
/// the readout applies the map (C = h). The interface has one Real(1)
/// port per input/output dimension.
LTISystem lti_from_linear_map(const Matrix& h, const std::string& name = "");

/// The worked fixed-wing model: sensor and controller are buffered
/// signal sums, the dynamics carry the longitudinal equations of motion.
/// Returns the diagram, the three slot systems (sensor, controller,
/// dynamics) and the composite.
struct UavModel {
  WiringDiagram diagram;
  std::vector<LTISystem> slots;
  LTISystem composite;
};

UavModel build_uav_model();

/// Update and readout equations of a system, one line per state/output
/// row, coefficients in shortest round-trip decimals.
std::string render_equations(const LTISystem& sys,
                             const std::vector<std::string>& state_names,
                             const std::vector<std::string>& input_names,
                             const std::vector<std::string>& output_names);

}  // namespace wirealg
