#include "qhist/gates.hpp"

#include <cmath>

#include "qhist/errors.hpp"

namespace qhist {

UnitaryOperator rotation_gate(RotationParams p) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.phi)) {
        throw ValidationError("rotation parameters must be finite");
    }
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const Complex eip = std::polar(1.0, p.phi);
    Matrix m(2, 2);
    m(1, 1) = c;
    m(1, 0) = eip * s;
    m(0, 1) = -std::conj(eip) * s;
    m(0, 0) = c;
    return UnitaryOperator(std::move(m));
}

UnitaryOperator standard_gate(StandardGate g) {
    switch (g) {
        case StandardGate::Identity:
            return UnitaryOperator(Matrix::Identity(2, 2));
        case StandardGate::PauliX: {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 1) = 1;
            m(1, 0) = 1;
            return UnitaryOperator(std::move(m));
        }
        case StandardGate::PauliZ: {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 0) = 1;
            m(1, 1) = -1;
            return UnitaryOperator(std::move(m));
        }
        case StandardGate::Cnot: {
            // index = 2*control + target
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = 1;
            m(1, 1) = 1;
            m(2, 3) = 1;
            m(3, 2) = 1;
            return UnitaryOperator(std::move(m));
        }
    }
    throw ValidationError("unknown standard gate");
}

UnitaryOperator embed(const UnitaryOperator& u,
                      const std::vector<QubitLabel>& targets, const Register& reg) {
    return UnitaryOperator(embed_matrix(u.matrix(), targets, reg), reg);
}

}  // namespace qhist
