#include "qhist/state.hpp"

#include <algorithm>
#include <cmath>

#include "qhist/errors.hpp"

namespace qhist {

namespace {

// Bit shifts of the target labels inside a full basis index; targets[0]
// maps to the most significant gate-index bit.
std::vector<int> target_shifts(const Register& reg,
                               const std::vector<QubitLabel>& targets) {
    if (targets.empty()) throw ValidationError("empty target list");
    std::vector<int> shifts;
    shifts.reserve(targets.size());
    for (const auto& q : targets) shifts.push_back(reg.shift(q));
    auto sorted = shifts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("duplicate target qubit");
    }
    return shifts;
}

// scatter[g] places the k gate-index bits of g at the given shifts.
std::vector<std::uint64_t> scatter_table(const std::vector<int>& shifts) {
    const int k = static_cast<int>(shifts.size());
    std::vector<std::uint64_t> table(std::uint64_t{1} << k, 0);
    for (std::uint64_t g = 0; g < table.size(); ++g) {
        std::uint64_t v = 0;
        for (int j = 0; j < k; ++j) {
            if ((g >> (k - 1 - j)) & 1u) v |= std::uint64_t{1} << shifts[j];
        }
        table[g] = v;
    }
    return table;
}

// Expands r by inserting zero bits at the given shifts (ascending order).
std::uint64_t expand_base(std::uint64_t r, const std::vector<int>& asc_shifts) {
    for (int s : asc_shifts) {
        const std::uint64_t low = r & ((std::uint64_t{1} << s) - 1);
        r = ((r >> s) << (s + 1)) | low;
    }
    return r;
}

void transform_in_place(Vector& amp, const Matrix& m,
                        const std::vector<int>& shifts) {
    const int k = static_cast<int>(shifts.size());
    const auto scat = scatter_table(shifts);
    auto asc = shifts;
    std::sort(asc.begin(), asc.end());
    const std::uint64_t blocks = static_cast<std::uint64_t>(amp.size()) >> k;
    const std::uint64_t G = std::uint64_t{1} << k;
    Vector local(G);
    for (std::uint64_t r = 0; r < blocks; ++r) {
        const std::uint64_t base = expand_base(r, asc);
        for (std::uint64_t g = 0; g < G; ++g) {
            local(static_cast<Eigen::Index>(g)) =
                amp(static_cast<Eigen::Index>(base | scat[g]));
        }
        Vector out = m * local;
        for (std::uint64_t g = 0; g < G; ++g) {
            amp(static_cast<Eigen::Index>(base | scat[g])) =
                out(static_cast<Eigen::Index>(g));
        }
    }
}

}  // namespace

StateVector::StateVector(Register reg, Vector amplitudes, bool renormalize)
    : reg_(std::move(reg)), amp_(std::move(amplitudes)) {
    if (static_cast<std::uint64_t>(amp_.size()) != reg_.dim()) {
        throw ValidationError("amplitude vector of length " +
                              std::to_string(amp_.size()) +
                              " does not match register " + reg_.str());
    }
    const double n2 = amp_.squaredNorm();
    if (renormalize) {
        if (n2 < 1e-12) throw ValidationError("cannot normalize a zero state");
        amp_ /= std::sqrt(n2);
    } else if (std::abs(n2 - 1.0) > 1e-9) {
        throw ValidationError("state norm drifted: |psi|^2 = " + std::to_string(n2));
    }
}

StateVector StateVector::basis_state(Register reg, std::uint64_t index) {
    if (index >= reg.dim()) throw ValidationError("basis index out of range");
    Vector amp = Vector::Zero(static_cast<Eigen::Index>(reg.dim()));
    amp(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(reg), std::move(amp), false);
}

StateVector StateVector::single_qubit(QubitLabel q, Complex amp1, Complex amp0) {
    Vector amp(2);
    amp(0) = amp0;
    amp(1) = amp1;
    return StateVector(Register({q}), std::move(amp));
}

DensityOperator StateVector::density() const {
    return DensityOperator(reg_, amp_ * amp_.adjoint());
}

DensityOperator::DensityOperator(Register reg, Matrix matrix)
    : reg_(std::move(reg)), m_(std::move(matrix)) {
    if (m_.rows() != m_.cols() ||
        static_cast<std::uint64_t>(m_.rows()) != reg_.dim()) {
        throw ValidationError("density matrix shape does not match register " +
                              reg_.str());
    }
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw ValidationError("density operator not Hermitian (defect " +
                              std::to_string(herm) + ")");
    }
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > 1e-9) {
        throw ValidationError("density operator trace " + std::to_string(tr));
    }
}

void DensityOperator::validate_psd() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw ValidationError("density operator has eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
    }
}

UnitaryOperator::UnitaryOperator(Matrix matrix, std::optional<Register> reg)
    : m_(std::move(matrix)), reg_(std::move(reg)) {
    const Eigen::Index d = m_.rows();
    if (d != m_.cols() || d == 0 || (d & (d - 1)) != 0) {
        throw ValidationError("unitary matrix side must be a power of two");
    }
    Eigen::Index t = d;
    while (t > 1) {
        t >>= 1;
        ++qubits_;
    }
    const double defect =
        (m_.adjoint() * m_ - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > kUnitaryTol) {
        throw ValidationError("matrix is not unitary (defect " +
                              std::to_string(defect) + ")");
    }
    if (reg_ && reg_->size() != qubits_) {
        throw ValidationError("unitary dimension does not match register " +
                              reg_->str());
    }
}

const Register& UnitaryOperator::reg() const {
    if (!reg_) throw ValidationError("unitary is not bound to a register");
    return *reg_;
}

namespace {

// Shifts of each of r's labels (in r's canonical order) inside the merged
// register's basis index.
std::vector<int> shifts_in(const Register& merged, const Register& r) {
    std::vector<int> s;
    s.reserve(r.labels().size());
    for (const auto& q : r.labels()) s.push_back(merged.shift(q));
    return s;
}

inline std::uint64_t gather_bits(std::uint64_t index, const std::vector<int>& shifts) {
    std::uint64_t out = 0;
    for (int s : shifts) out = (out << 1) | ((index >> s) & 1u);
    return out;
}

}  // namespace

StateVector tensor(const StateVector& a, const StateVector& b) {
    const Register merged = a.reg().merged(b.reg());
    const auto sa = shifts_in(merged, a.reg());
    const auto sb = shifts_in(merged, b.reg());
    Vector out(static_cast<Eigen::Index>(merged.dim()));
    for (std::uint64_t i = 0; i < merged.dim(); ++i) {
        out(static_cast<Eigen::Index>(i)) =
            a.amplitude(gather_bits(i, sa)) * b.amplitude(gather_bits(i, sb));
    }
    return StateVector(merged, std::move(out), false);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    const Register merged = a.reg().merged(b.reg());
    const auto sa = shifts_in(merged, a.reg());
    const auto sb = shifts_in(merged, b.reg());
    const std::uint64_t dim = merged.dim();
    Matrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t ia = gather_bits(i, sa);
        const std::uint64_t ib = gather_bits(i, sb);
        for (std::uint64_t j = 0; j < dim; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                a.matrix()(static_cast<Eigen::Index>(ia),
                           static_cast<Eigen::Index>(gather_bits(j, sa))) *
                b.matrix()(static_cast<Eigen::Index>(ib),
                           static_cast<Eigen::Index>(gather_bits(j, sb)));
        }
    }
    return DensityOperator(merged, std::move(out));
}

UnitaryOperator tensor(const UnitaryOperator& a, const UnitaryOperator& b) {
    const Register merged = a.reg().merged(b.reg());
    const auto sa = shifts_in(merged, a.reg());
    const auto sb = shifts_in(merged, b.reg());
    const std::uint64_t dim = merged.dim();
    Matrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t ia = gather_bits(i, sa);
        const std::uint64_t ib = gather_bits(i, sb);
        for (std::uint64_t j = 0; j < dim; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                a.matrix()(static_cast<Eigen::Index>(ia),
                           static_cast<Eigen::Index>(gather_bits(j, sa))) *
                b.matrix()(static_cast<Eigen::Index>(ib),
                           static_cast<Eigen::Index>(gather_bits(j, sb)));
        }
    }
    return UnitaryOperator(std::move(out), merged);
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<QubitLabel>& discard) {
    if (discard.empty()) return rho;
    const Register kept = rho.reg().without(discard);  // validates membership
    std::vector<int> kept_shifts, traced_shifts;
    for (const auto& q : kept.labels()) kept_shifts.push_back(rho.reg().shift(q));
    for (const auto& q : rho.reg().labels()) {
        if (!kept.contains(q)) traced_shifts.push_back(rho.reg().shift(q));
    }
    const auto kept_scatter = scatter_table(kept_shifts.empty()
                                                ? std::vector<int>{}
                                                : kept_shifts);
    const auto traced_scatter = scatter_table(traced_shifts);
    const std::uint64_t kd = kept.dim();
    const std::uint64_t td = std::uint64_t{1} << traced_shifts.size();
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kd),
                              static_cast<Eigen::Index>(kd));
    for (std::uint64_t r = 0; r < kd; ++r) {
        const std::uint64_t i0 = kept_shifts.empty() ? 0 : kept_scatter[r];
        for (std::uint64_t c = 0; c < kd; ++c) {
            const std::uint64_t j0 = kept_shifts.empty() ? 0 : kept_scatter[c];
            Complex sum = 0;
            for (std::uint64_t t = 0; t < td; ++t) {
                const std::uint64_t tb = traced_scatter[t];
                sum += rho.matrix()(static_cast<Eigen::Index>(i0 | tb),
                                    static_cast<Eigen::Index>(j0 | tb));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    }
    return DensityOperator(kept, std::move(out));
}

double von_neumann_entropy(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam > kEntropyEigenFloor) s -= lam * std::log2(lam);
    }
    return s;
}

double shannon_entropy(std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) {
        if (v < -1e-12) {
            throw ValidationError("negative probability " + std::to_string(v));
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw ValidationError("probabilities sum to " + std::to_string(sum));
    }
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) s -= v * std::log2(v);
    }
    return s;
}

StateVector apply_unitary(const StateVector& psi, const UnitaryOperator& u,
                          const std::vector<QubitLabel>& targets) {
    const auto shifts = target_shifts(psi.reg(), targets);
    if (u.dim() != (Eigen::Index{1} << shifts.size())) {
        throw ValidationError("unitary dimension does not match target count");
    }
    Vector amp = psi.amplitudes();
    transform_in_place(amp, u.matrix(), shifts);
    return StateVector(psi.reg(), std::move(amp), false);
}

DensityOperator apply_unitary(const DensityOperator& rho, const UnitaryOperator& u,
                              const std::vector<QubitLabel>& targets) {
    const Matrix full = embed_matrix(u.matrix(), targets, rho.reg());
    return DensityOperator(rho.reg(), full * rho.matrix() * full.adjoint());
}

Matrix embed_matrix(const Matrix& m, const std::vector<QubitLabel>& targets,
                    const Register& reg) {
    const auto shifts = target_shifts(reg, targets);
    const int k = static_cast<int>(shifts.size());
    if (m.rows() != m.cols() || m.rows() != (Eigen::Index{1} << k)) {
        throw ValidationError("operator dimension does not match target count");
    }
    const auto scat = scatter_table(shifts);
    std::uint64_t mask = 0;
    for (int s : shifts) mask |= std::uint64_t{1} << s;
    const std::uint64_t dim = reg.dim();
    const std::uint64_t G = std::uint64_t{1} << k;
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim),
                              static_cast<Eigen::Index>(dim));
    for (std::uint64_t i = 0; i < dim; ++i) {
        const std::uint64_t rest = i & ~mask;
        std::uint64_t gi = 0;
        for (int j = 0; j < k; ++j) {
            gi = (gi << 1) | ((i >> shifts[j]) & 1u);
        }
        for (std::uint64_t gj = 0; gj < G; ++gj) {
            out(static_cast<Eigen::Index>(i),
                static_cast<Eigen::Index>(rest | scat[gj])) =
                m(static_cast<Eigen::Index>(gi), static_cast<Eigen::Index>(gj));
        }
    }
    return out;
}

DensityOperator dephase_qubit(const DensityOperator& rho, QubitLabel q) {
    const int s = rho.reg().shift(q);
    Matrix out = rho.matrix();
    const std::uint64_t dim = rho.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            if (((i ^ j) >> s) & 1u) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0;
            }
        }
    }
    return DensityOperator(rho.reg(), std::move(out));
}

Matrix reduced_qubit(const StateVector& psi, QubitLabel q) {
    const int s = psi.reg().shift(q);
    Matrix out = Matrix::Zero(2, 2);
    const std::uint64_t dim = psi.dim();
    const std::uint64_t bit = std::uint64_t{1} << s;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & bit) continue;  // enumerate the bit-0 member of each pair
        const Complex a0 = psi.amplitude(i);
        const Complex a1 = psi.amplitude(i | bit);
        out(0, 0) += a0 * std::conj(a0);
        out(0, 1) += a0 * std::conj(a1);
        out(1, 0) += a1 * std::conj(a0);
        out(1, 1) += a1 * std::conj(a1);
    }
    return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (a.reg() != b.reg()) {
        throw ValidationError("inner product over mismatched registers");
    }
    return a.amplitudes().dot(b.amplitudes());  // Eigen dot conjugates a
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a, b));
}

}  // namespace qhist
