#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qhist/register.hpp"

namespace qhist {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEntropyEigenFloor = 1e-12;
inline constexpr double kMatchTol = 1e-10;
inline constexpr double kBranchPruneTol = 1e-14;

class DensityOperator;

/// Normalized pure state over a labeled register.
class StateVector {
public:
    /// Validates length against the register and normalizes. Throws
    /// ValidationError on a size mismatch or (near-)zero norm.
    StateVector(Register reg, Vector amplitudes, bool renormalize = true);

    /// Basis state |index> in the register's canonical bit convention.
    static StateVector basis_state(Register reg, std::uint64_t index);
    /// Single-qubit state amp1|1> + amp0|0>.
    static StateVector single_qubit(QubitLabel q, Complex amp1, Complex amp0);

    const Register& reg() const { return reg_; }
    const Vector& amplitudes() const { return amp_; }
    Complex amplitude(std::uint64_t index) const { return amp_(static_cast<Eigen::Index>(index)); }
    std::uint64_t dim() const { return reg_.dim(); }

    double norm_sq() const { return amp_.squaredNorm(); }

    DensityOperator density() const;

private:
    Register reg_;
    Vector amp_;
};

/// Hermitian, unit-trace operator over a labeled register.
class DensityOperator {
public:
    /// Validates squareness, dimension, Hermiticity (1e-12) and unit trace
    /// (1e-12). Positivity is checked separately by validate_psd().
    DensityOperator(Register reg, Matrix matrix);

    const Register& reg() const { return reg_; }
    const Matrix& matrix() const { return m_; }
    std::uint64_t dim() const { return reg_.dim(); }

    double trace_real() const { return m_.trace().real(); }

    /// Throws ValidationError if any eigenvalue is below -1e-10.
    void validate_psd() const;

private:
    Register reg_;
    Matrix m_;
};

/// Unitary matrix on k qubits, optionally bound to a register.
class UnitaryOperator {
public:
    /// Validates squareness, power-of-two side and U†U = I within 1e-12.
    explicit UnitaryOperator(Matrix matrix, std::optional<Register> reg = {});

    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    int qubits() const { return qubits_; }

    bool bound() const { return reg_.has_value(); }
    const Register& reg() const;

    UnitaryOperator adjoint() const { return UnitaryOperator(m_.adjoint(), reg_); }

private:
    Matrix m_;
    std::optional<Register> reg_;
    int qubits_ = 0;
};

// Kronecker products re-permuted to the canonical order of the merged
// register. Registers must be disjoint.
StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
UnitaryOperator tensor(const UnitaryOperator& a, const UnitaryOperator& b);

/// Reduced operator after discarding the given qubits. Discarding every
/// qubit yields the 1x1 matrix [Tr rho].
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<QubitLabel>& discard);

/// -Tr(rho log2 rho) in bits; eigenvalues below 1e-12 contribute zero.
/// Throws ValidationError on non-Hermitian input.
double von_neumann_entropy(const DensityOperator& rho);

/// -sum p log2 p in bits with 0 log 0 := 0. Entries must be nonnegative and
/// sum to 1 within 1e-10.
double shannon_entropy(std::span<const double> p);

/// Applies a k-qubit unitary to the listed target qubits (targets[0] is the
/// most significant gate-index bit). Remaining qubits are untouched.
StateVector apply_unitary(const StateVector& psi, const UnitaryOperator& u,
                          const std::vector<QubitLabel>& targets);
/// rho -> U rho U† on the target qubits.
DensityOperator apply_unitary(const DensityOperator& rho, const UnitaryOperator& u,
                              const std::vector<QubitLabel>& targets);

/// Full-register matrix acting as `m` on the targets, identity elsewhere.
Matrix embed_matrix(const Matrix& m, const std::vector<QubitLabel>& targets,
                    const Register& reg);

/// Zeroes every element whose row and column differ on the given qubit
/// (exact computational-basis dephasing of that qubit).
DensityOperator dephase_qubit(const DensityOperator& rho, QubitLabel q);

/// Reduced 2x2 state of one qubit, computed directly from the amplitudes.
Matrix reduced_qubit(const StateVector& psi, QubitLabel q);

Complex inner(const StateVector& a, const StateVector& b);
/// |<a|b>|^2 (global phase ignored).
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qhist
