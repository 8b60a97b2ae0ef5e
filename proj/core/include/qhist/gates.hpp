#pragma once

#include "qhist/state.hpp"

namespace qhist {

/// Apparatus-rotation angles (radians).
struct RotationParams {
    double theta = 0.0;
    double phi = 0.0;
};

/// The 2x2 rotation
///
///     <1|R|1> = cos(theta)          <1|R|0> = e^{i phi} sin(theta)
///     <0|R|1> = -e^{-i phi} sin(theta)   <0|R|0> = cos(theta)
///
/// R(pi/4, 0) is the variant of the Hadamard gate whose outcome-1 Kraus
/// operator is I/sqrt(2) (see mms.hpp); it differs from the textbook
/// Hadamard by a sign pattern.
UnitaryOperator rotation_gate(RotationParams p);

enum class StandardGate {
    Identity,
    PauliX,
    PauliZ,
    Cnot,  // 4x4, targets = (control, target)
};

UnitaryOperator standard_gate(StandardGate g);

/// Full-register unitary acting as `u` on the targets, identity elsewhere.
UnitaryOperator embed(const UnitaryOperator& u,
                      const std::vector<QubitLabel>& targets, const Register& reg);

}  // namespace qhist
