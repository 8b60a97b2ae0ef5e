#include "qhist/mms.hpp"

#include <cmath>
#include <numbers>

#include "qhist/errors.hpp"

namespace qhist {

double KrausSet::completeness_defect() const {
    const Eigen::Matrix2cd sum = m0.adjoint() * m0 + m1.adjoint() * m1;
    return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

Complex kraus_coefficient(RotationParams p, int r, int k) {
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const Complex eip = std::polar(1.0, p.phi);
    if (r == 1) return k == 1 ? Complex(c) : std::conj(eip) * s;
    return k == 1 ? -eip * s : Complex(c);
}

KrausSet kraus_ops(RotationParams p) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.phi)) {
        throw ValidationError("rotation parameters must be finite");
    }
    KrausSet set;
    set.params = p;
    // P1 = |1><1| occupies entry (1,1); P0 = |0><0| entry (0,0).
    set.m1 = Eigen::Matrix2cd::Zero();
    set.m1(1, 1) = kraus_coefficient(p, 1, 1);
    set.m1(0, 0) = kraus_coefficient(p, 1, 0);
    set.m0 = Eigen::Matrix2cd::Zero();
    set.m0(1, 1) = kraus_coefficient(p, 0, 1);
    set.m0(0, 0) = kraus_coefficient(p, 0, 0);
    return set;
}

UnitaryOperator apparatus_rotation(RotationParams p) {
    return UnitaryOperator(rotation_gate(p).matrix().conjugate());
}

const BranchOutcome& MmsResult::branch(int r) const {
    for (const auto& b : branches) {
        if (b.r == r) return b;
    }
    throw ValidationError("branch r=" + std::to_string(r) +
                          " was pruned (zero probability)");
}

StateVector premeasure(const StateVector& psi, QubitLabel sys, QubitLabel ancilla,
                       const std::optional<UnitaryOperator>& basis_change) {
    const Matrix anc = reduced_qubit(psi, ancilla);
    Matrix fresh = Matrix::Zero(2, 2);
    fresh(0, 0) = 1;
    if ((anc - fresh).cwiseAbs().maxCoeff() > 1e-10) {
        throw ValidationError("ancilla " + ancilla.str() +
                              " is not fresh (reduced state differs from |0><0|)");
    }
    StateVector out = psi;
    if (basis_change) {
        out = apply_unitary(out, basis_change->adjoint(), {sys});
    }
    out = apply_unitary(out, standard_gate(StandardGate::Cnot), {sys, ancilla});
    if (basis_change) {
        out = apply_unitary(out, *basis_change, {sys});
    }
    return out;
}

namespace {

// Projects the apparatus qubit onto |r> and removes it from the register.
// Returns the unnormalized amplitudes and the branch probability.
std::pair<Vector, double> project_out(const StateVector& psi, QubitLabel anc, int r) {
    const int s = psi.reg().shift(anc);
    const Register rest = psi.reg().without({anc});
    Vector out(static_cast<Eigen::Index>(rest.dim()));
    double prob = 0.0;
    const std::uint64_t low_mask = (std::uint64_t{1} << s) - 1;
    for (std::uint64_t k = 0; k < rest.dim(); ++k) {
        const std::uint64_t full = ((k & ~low_mask) << 1) | (k & low_mask) |
                                   (static_cast<std::uint64_t>(r) << s);
        const Complex a = psi.amplitude(full);
        out(static_cast<Eigen::Index>(k)) = a;
        prob += std::norm(a);
    }
    return {std::move(out), prob};
}

int fresh_x_index(const Register& reg) {
    int next = 0;
    for (const auto& q : reg.labels()) {
        if (q.kind == Subsystem::AncillaX && q.index >= next) next = q.index + 1;
    }
    return next;
}

}  // namespace

MmsResult mms_measure(const StateVector& psi, QubitLabel ancilla_a,
                      RotationParams p, IsolationMode mode) {
    psi.reg().position(ancilla_a);  // must be present
    const StateVector rotated = apply_unitary(psi, apparatus_rotation(p), {ancilla_a});

    std::vector<BranchOutcome> branches;
    std::vector<int> dropped;
    const Register rest = rotated.reg().without({ancilla_a});
    for (int r = 0; r <= 1; ++r) {
        auto [amp, prob] = project_out(rotated, ancilla_a, r);
        if (prob < kBranchPruneTol) {
            dropped.push_back(r);
            continue;
        }
        branches.push_back(BranchOutcome{r, prob, StateVector(rest, std::move(amp))});
    }

    DensityOperator rho_sa = [&] {
        if (mode == IsolationMode::ExplicitX) {
            const QubitLabel x = x_qubit(fresh_x_index(rotated.reg()));
            StateVector with_x = tensor(rotated, StateVector::basis_state(Register({x}), 0));
            with_x = apply_unitary(with_x, standard_gate(StandardGate::Cnot),
                                   {ancilla_a, x});
            return partial_trace(with_x.density(), {x});
        }
        return dephase_qubit(rotated.density(), ancilla_a);
    }();

    return MmsResult{std::move(branches), std::move(rho_sa), std::move(dropped)};
}

const BranchOutcome& sample_outcome(const std::vector<BranchOutcome>& branches,
                                    std::mt19937_64& rng) {
    if (branches.empty()) throw ValidationError("no branches to sample");
    double total = 0.0;
    for (const auto& b : branches) total += b.probability;
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("branch probabilities sum to " + std::to_string(total));
    }
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * total;
    double acc = 0.0;
    for (const auto& b : branches) {
        acc += b.probability;
        if (u < acc) return b;
    }
    return branches.back();
}

EraseResult erase_premeasurement(const StateVector& psi, QubitLabel sys,
                                 QubitLabel ancilla_a, std::mt19937_64& rng) {
    const MmsResult res = mms_measure(psi, ancilla_a,
                                      RotationParams{std::numbers::pi / 4, 0.0},
                                      IsolationMode::Dephase);
    const BranchOutcome& picked = sample_outcome(res.branches, rng);
    StateVector recovered = picked.post_state;
    if (picked.r == 0) {
        recovered = apply_unitary(recovered, standard_gate(StandardGate::PauliZ), {sys});
    }
    return EraseResult{std::move(recovered), picked.r};
}

DensityOperator von_neumann_collapse_oracle(const DensityOperator& rho,
                                            const std::vector<Matrix>& projectors) {
    if (projectors.empty()) throw ValidationError("empty projector set");
    const Eigen::Index d = rho.matrix().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        if (projectors[i].rows() != d || projectors[i].cols() != d) {
            throw ValidationError("projector dimension mismatch");
        }
        sum += projectors[i];
        for (std::size_t j = 0; j < projectors.size(); ++j) {
            const Matrix prod = projectors[i] * projectors[j];
            const Matrix expected = (i == j) ? projectors[i] : Matrix::Zero(d, d);
            if ((prod - expected).cwiseAbs().maxCoeff() > 1e-12) {
                throw ValidationError("projector family is not orthogonal");
            }
        }
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
        throw ValidationError("projector family is incomplete");
    }
    Matrix out = Matrix::Zero(d, d);
    for (const auto& pk : projectors) out += pk * rho.matrix() * pk;
    return DensityOperator(rho.reg(), std::move(out));
}

}  // namespace qhist
