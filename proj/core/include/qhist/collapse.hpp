#pragma once

#include <vector>

#include "qhist/gates.hpp"
#include "qhist/state.hpp"

namespace qhist {

/// One point of an information-extraction curve.
struct CollapsePoint {
    int n = 0;
    double s_total = 0.0;  // entropy of the outcome distribution, bits
    double s_binom = 0.0;  // entropy of the single binomial component, bits
    double fraction = 0.0; // (s_total - s_binom) / s0
};

struct CollapseCurve {
    double theta = 0.0;
    double q_squared = 0.0;  // cos^2(theta)
    double c0_sq = 0.0;
    double c1_sq = 0.0;
    double s0 = 0.0;         // initial Shannon entropy of (c0_sq, c1_sq)
    std::vector<CollapsePoint> points;  // n = 1..n_max
};

struct NStarEstimate {
    double theta = 0.0;
    double n_star_fit = 0.0;
    double n_star_asymptotic = 0.0;
    int fit_points_used = 0;
};

/// Aggregate Kraus operator for l outcome-1 results out of n repeated
/// measurements at the same angles (diagonal, order independent):
///   M_l = P1 cos^l(th) (-e^{i phi} sin th)^{n-l} + P0 cos^{n-l}(th) (e^{-i phi} sin th)^l
Eigen::Matrix2cd total_kraus(int l, int n, RotationParams p);

/// p_l = C(n,l) [ c1_sq q^{2l} (1-q^2)^{n-l} + c0_sq q^{2(n-l)} (1-q^2)^l ],
/// q = cos(theta); log-space binomials, valid up to n ~ 1e4.
std::vector<double> outcome_distribution(double c0_sq, double c1_sq, double theta,
                                         int n);

/// Entropy of the binomial distribution B(q_sq, n), bits.
double binomial_entropy(double q_sq, int n);

/// Extraction curve over n = 1..n_max. Requires a non-degenerate initial
/// state (s0 > 1e-9).
CollapseCurve extraction_curve(double c0_sq, double c1_sq, double theta, int n_max);

/// ln2 / (2 (theta - pi/4)^2).
double nstar_asymptotic(double theta);

/// Weighted least-squares fit of ln(1 - fraction) against n over points with
/// fraction in (0.01, 0.99), weights (1 - fraction)^2; slope = -1/N*.
/// Needs at least 3 qualifying points.
NStarEstimate estimate_nstar(const CollapseCurve& curve);

/// Leading small-x extraction law 2 x^2 n / ln2, bits.
double small_x_extraction(double x, int n);

/// Brute-force outcome distribution from the full (1 + 2n)-qubit circuit:
/// n rounds of premeasure -> apparatus rotation -> CNOT to a fresh X-qubit,
/// then joint apparatus probabilities aggregated by the count of r = 1.
std::vector<double> explicit_collapse_oracle(Complex c0, Complex c1, double theta,
                                             double phi, int n);

}  // namespace qhist
