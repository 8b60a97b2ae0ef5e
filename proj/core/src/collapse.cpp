#include "qhist/collapse.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qhist/errors.hpp"
#include "qhist/mms.hpp"

namespace qhist {

namespace {

void validate_split(double c0_sq, double c1_sq) {
    if (c0_sq < -1e-12 || c1_sq < -1e-12 || std::abs(c0_sq + c1_sq - 1.0) > 1e-10) {
        throw ValidationError("c0_sq, c1_sq must be nonnegative and sum to 1");
    }
}

// log-factorial table: lf[k] = ln(k!)
std::vector<double> log_factorials(int n) {
    std::vector<double> lf(n + 1, 0.0);
    for (int k = 2; k <= n; ++k) lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    return lf;
}

// B_l(p, n) from logs; exact at the p in {0,1} edges.
double binom_pmf(const std::vector<double>& lf, int n, int l, double p) {
    if (p <= 0.0) return l == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return l == n ? 1.0 : 0.0;
    const double lc = lf[n] - lf[l] - lf[n - l];
    return std::exp(lc + l * std::log(p) + (n - l) * std::log1p(-p));
}

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

Eigen::Matrix2cd total_kraus(int l, int n, RotationParams p) {
    if (n < 1 || l < 0 || l > n) {
        throw ValidationError("outcome count l must lie in [0, n]");
    }
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const Complex eip = std::polar(1.0, p.phi);
    const Complex coef1 = std::pow(Complex(c), l) * std::pow(-eip * s, n - l);
    const Complex coef0 = std::pow(Complex(c), n - l) * std::pow(std::conj(eip) * s, l);
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 1) = coef1;  // P1 component
    m(0, 0) = coef0;  // P0 component
    return m;
}

std::vector<double> outcome_distribution(double c0_sq, double c1_sq, double theta,
                                         int n) {
    validate_split(c0_sq, c1_sq);
    if (n < 1) throw ValidationError("n must be at least 1");
    const double q2 = std::cos(theta) * std::cos(theta);
    const auto lf = log_factorials(n);
    std::vector<double> p(n + 1);
    for (int l = 0; l <= n; ++l) {
        // B_l(1-q^2, n) = B_{n-l}(q^2, n)
        p[l] = c1_sq * binom_pmf(lf, n, l, q2) + c0_sq * binom_pmf(lf, n, n - l, q2);
    }
    return p;
}

double binomial_entropy(double q_sq, int n) {
    if (q_sq < 0.0 || q_sq > 1.0) throw ValidationError("q_sq must lie in [0, 1]");
    if (n < 1) throw ValidationError("n must be at least 1");
    const auto lf = log_factorials(n);
    double s = 0.0;
    for (int l = 0; l <= n; ++l) s += entropy_term(binom_pmf(lf, n, l, q_sq));
    return s;
}

CollapseCurve extraction_curve(double c0_sq, double c1_sq, double theta, int n_max) {
    validate_split(c0_sq, c1_sq);
    if (n_max < 1) throw ValidationError("n_max must be at least 1");
    CollapseCurve curve;
    curve.theta = theta;
    curve.q_squared = std::cos(theta) * std::cos(theta);
    curve.c0_sq = c0_sq;
    curve.c1_sq = c1_sq;
    const double probs[2] = {c0_sq, c1_sq};
    curve.s0 = shannon_entropy(probs);
    if (curve.s0 <= 1e-9) {
        throw ValidationError(
            "degenerate initial state: nothing to extract (s0 ~ 0)");
    }
    const auto lf = log_factorials(n_max);
    curve.points.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        double s_total = 0.0;
        double s_binom = 0.0;
        for (int l = 0; l <= n; ++l) {
            const double b = binom_pmf(lf, n, l, curve.q_squared);
            const double b_mirror = binom_pmf(lf, n, n - l, curve.q_squared);
            s_total += entropy_term(c1_sq * b + c0_sq * b_mirror);
            s_binom += entropy_term(b);
        }
        curve.points.push_back(
            CollapsePoint{n, s_total, s_binom, (s_total - s_binom) / curve.s0});
    }
    return curve;
}

double nstar_asymptotic(double theta) {
    const double x = theta - std::numbers::pi / 4;
    return std::numbers::ln2 / (2.0 * x * x);
}

NStarEstimate estimate_nstar(const CollapseCurve& curve) {
    constexpr double kLow = 0.01;
    constexpr double kHigh = 0.99;
    constexpr int kMinPoints = 3;

    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    int used = 0;
    for (const auto& pt : curve.points) {
        if (pt.fraction <= kLow || pt.fraction >= kHigh) continue;
        const double resid = 1.0 - pt.fraction;
        const double w = resid * resid;
        const double x = static_cast<double>(pt.n);
        const double y = std::log(resid);
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
        ++used;
    }
    if (used < kMinPoints) {
        throw ValidationError(
            "insufficient qualifying points for an N* fit (theta too close to "
            "pi/4, 0 or pi/2)");
    }
    const double denom = sw * swxx - swx * swx;
    const double slope = (sw * swxy - swx * swy) / denom;
    if (!(slope < 0.0)) {
        throw ValidationError("extraction curve is not decaying; cannot fit N*");
    }
    return NStarEstimate{curve.theta, -1.0 / slope, nstar_asymptotic(curve.theta),
                         used};
}

double small_x_extraction(double x, int n) {
    return 2.0 * x * x * static_cast<double>(n) / std::numbers::ln2;
}

std::vector<double> explicit_collapse_oracle(Complex c0, Complex c1, double theta,
                                             double phi, int n) {
    if (n < 1 || n > 10) {
        throw ValidationError("explicit oracle supports 1 <= n <= 10");
    }
    RegisterCapGuard cap(1 + 2 * n);
    const RotationParams p{theta, phi};
    const QubitLabel s = sys_qubit(0);

    StateVector state = StateVector::single_qubit(s, c1, c0);
    for (int i = 0; i < n; ++i) {
        const QubitLabel a = a_qubit(i);
        const QubitLabel x = x_qubit(i);
        state = tensor(state, StateVector::basis_state(Register({a}), 0));
        state = premeasure(state, s, a);
        state = apply_unitary(state, apparatus_rotation(p), {a});
        state = tensor(state, StateVector::basis_state(Register({x}), 0));
        state = apply_unitary(state, standard_gate(StandardGate::Cnot), {a, x});
    }

    std::vector<int> a_shifts(n);
    for (int i = 0; i < n; ++i) a_shifts[i] = state.reg().shift(a_qubit(i));
    std::vector<double> out(n + 1, 0.0);
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
        int l = 0;
        for (int i = 0; i < n; ++i) l += static_cast<int>((idx >> a_shifts[i]) & 1u);
        out[l] += std::norm(state.amplitude(idx));
    }
    return out;
}

}  // namespace qhist
