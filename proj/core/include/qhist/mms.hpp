#pragma once

#include <random>

#include "qhist/gates.hpp"
#include "qhist/state.hpp"

namespace qhist {

/// Outcome-indexed Kraus pair for one generalized measurement:
///   m1 = P1 cos(theta) + P0 e^{-i phi} sin(theta)
///   m0 = -P1 e^{i phi} sin(theta) + P0 cos(theta)
/// At theta = 0 they reduce to the projectors P1, P0; completeness
/// m0†m0 + m1†m1 = I holds for all parameters.
struct KrausSet {
    RotationParams params;
    Eigen::Matrix2cd m0;
    Eigen::Matrix2cd m1;

    double completeness_defect() const;
    const Eigen::Matrix2cd& op(int r) const { return r ? m1 : m0; }
};

KrausSet kraus_ops(RotationParams p);

/// 2x2 coefficient c(r, k) with m_r = sum_k c(r, k) P_k; shared by the
/// single-qubit Kraus pair and the history-operator construction.
Complex kraus_coefficient(RotationParams p, int r, int k);

/// The unitary actually applied to an apparatus qubit: the entrywise
/// conjugate of rotation_gate(p), which makes the circuit's outcome-r
/// operators equal the KrausSet above for every phi.
UnitaryOperator apparatus_rotation(RotationParams p);

/// One measurement branch: outcome bit, its probability, and the normalized
/// post-measurement state over the register without the apparatus qubit.
struct BranchOutcome {
    int r = 0;
    double probability = 0.0;
    StateVector post_state;
};

enum class IsolationMode {
    ExplicitX,  // append a fresh X-qubit, entangle, trace it out
    Dephase,    // zero the apparatus coherences directly (exact shortcut)
};

struct MmsResult {
    std::vector<BranchOutcome> branches;  // ascending r, pruned branches absent
    DensityOperator rho_sa;               // post-isolation state of the full register
    std::vector<int> dropped;             // outcomes pruned below 1e-14

    const BranchOutcome& branch(int r) const;
};

/// Entangles sys -> ancilla with a CNOT, optionally conjugated into the
/// basis of `basis_change` on the system qubit. The ancilla must be fresh
/// (reduced state |0><0| within 1e-10).
StateVector premeasure(const StateVector& psi, QubitLabel sys, QubitLabel ancilla,
                       const std::optional<UnitaryOperator>& basis_change = {});

/// Generalized measurement of a previously premeasured ancilla: rotate the
/// apparatus, isolate it from a fresh X-qubit (or dephase, identically),
/// and report both outcome branches.
MmsResult mms_measure(const StateVector& psi, QubitLabel ancilla_a,
                      RotationParams p, IsolationMode mode);

const BranchOutcome& sample_outcome(const std::vector<BranchOutcome>& branches,
                                    std::mt19937_64& rng);

struct EraseResult {
    StateVector recovered;
    int r = 0;
};

/// Undoes a premeasurement: measures the ancilla with R(pi/4, 0); r = 1
/// recovers the pre-premeasurement state directly, r = 0 after a Pauli-Z on
/// the system qubit. Each outcome occurs with probability 1/2.
EraseResult erase_premeasurement(const StateVector& psi, QubitLabel sys,
                                 QubitLabel ancilla_a, std::mt19937_64& rng);

/// rho -> sum_k P_k rho P_k for a complete orthogonal projector family
/// (full-register matrices).
DensityOperator von_neumann_collapse_oracle(const DensityOperator& rho,
                                            const std::vector<Matrix>& projectors);

}  // namespace qhist
