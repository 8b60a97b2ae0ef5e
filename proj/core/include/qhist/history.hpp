#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhist/gates.hpp"
#include "qhist/state.hpp"

namespace qhist {

/// One gate invocation inside an evolution segment (parser-level form).
struct GateCall {
    std::string name;          // h | x | z | cnot | r
    std::vector<int> targets;  // system qubit indices
    RotationParams params;     // for "r"
};

/// Gates between two adjacent premeasurement events, compiled on demand to
/// a single system unitary. Earliest gate acts first.
struct EvolutionSegment {
    std::vector<GateCall> gates;
};

struct PremeasureEvent {
    std::string label;
    int target = 0;
    /// Premeasurement basis: projectors U P_k U† with U = rotation_gate(*basis_change).
    std::optional<RotationParams> basis_change;
};

struct MeasuredEvent {
    std::string label;
    RotationParams rotation;
};

/// A d-qubit system evolving through n premeasurement events, each recorded
/// on its own A-qubit, with a subset of events selected for measurement.
struct HistorySpec {
    int d = 1;
    std::optional<Vector> pure_init;        // nullopt = maximally mixed
    std::vector<EvolutionSegment> segments; // n+1: segment l precedes event l
    std::vector<PremeasureEvent> events;
    std::vector<MeasuredEvent> measured;

    int n_events() const { return static_cast<int>(events.size()); }
    int event_position(const std::string& label) const;  // throws if unknown
    void validate() const;
};

/// 2^n x 2^n matrix D over history vectors; event 0 occupies the most
/// significant index bit.
struct HistoryDensityMatrix {
    int n = 0;
    std::vector<std::string> event_labels;
    Matrix entries;

    /// Hermiticity (1e-10), real nonnegative diagonal (-1e-10), unit trace (1e-9).
    void validate() const;
};

struct Branch {
    std::vector<int> beta;   // measured outcome bits, event order
    double probability = 0;
    Matrix d;                // unnormalized sub-history matrix over the rest
};

struct BranchTree {
    std::vector<std::string> measured_labels;    // event order
    std::vector<std::string> unmeasured_labels;  // event order
    std::vector<Branch> branches;                // ascending beta index, pruned absent
    std::vector<std::vector<int>> dropped;       // betas pruned below 1e-14
};

std::uint64_t history_bits_to_index(std::span<const int> bits);
std::vector<int> history_index_to_bits(std::uint64_t index, int n);

/// Compiled unitary of one segment (index 0..n; n is the trailing segment).
Matrix segment_unitary(const HistorySpec& spec, int segment_index);

/// Chain operator: product over events of (projector * preceding segment),
/// rightmost factor earliest; excludes the trailing segment.
Matrix chain_operator(const HistorySpec& spec, std::span<const int> alpha);

/// Chain operator with projectors replaced by the event Kraus operators for
/// the given per-event rotations; reduces to chain_operator at theta = 0.
Matrix generalized_history_operator(const HistorySpec& spec,
                                    std::span<const int> beta,
                                    std::span<const RotationParams> rotations);

/// Explicit circuit simulation of the premeasurement sequence (pure init
/// required): returns the state over System + one A-qubit per event.
StateVector build_history_state(const HistorySpec& spec);

/// D_{a a'} = Tr_S( C_a rho0 C_a'† ), operator-sum evaluation.
HistoryDensityMatrix history_density_matrix(const HistorySpec& spec);

/// Measures the given events: conjugates D by the apparatus rotations,
/// zeroes cross-branch blocks, and splits into per-beta sub-matrices.
BranchTree apply_mms_to_history(const HistoryDensityMatrix& d,
                                const std::vector<MeasuredEvent>& measured);
/// Convenience: history_density_matrix(spec) measured per spec.measured.
BranchTree apply_mms_to_history(const HistorySpec& spec);

/// p(gamma | beta) = D^{(beta)}_{gamma gamma} / Tr D^{(beta)}.
double conditional_probability(const BranchTree& tree, std::span<const int> beta,
                               std::span<const int> gamma);

/// Traces one unmeasured event out of every branch.
BranchTree marginalize(const BranchTree& tree, const std::string& event_label);

struct ConsistencyReport {
    bool consistent = false;
    double max_offdiagonal = 0.0;
};

/// True iff every off-diagonal |D_{a a'}| is below tol.
ConsistencyReport consistency_check(const HistoryDensityMatrix& d, double tol);

/// The same spec with one premeasurement event removed (its surrounding
/// segments merged); used by the in-history erasure workflow.
HistorySpec without_event(const HistorySpec& spec, const std::string& label);

}  // namespace qhist
