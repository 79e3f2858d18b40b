#pragma once

#include <span>
#include <vector>

#include "burnside/chains.hpp"
#include "burnside/orthopoly.hpp"
#include "burnside/rational.hpp"
#include "burnside/rng.hpp"

namespace burnside {

/// Eigenpair verification result: eigenvalue per even degree 2k plus the
/// exact residuals of the eigen-equations.
struct SpectralReport {
    ChainSpec spec;
    std::vector<std::pair<int, Rat>> eigenvalues;  // (degree, eigenvalue), even degrees
    std::vector<Rat> residuals;       // per degree, max_i |(P psi_j)(i) - lambda psi_j(i)|
    Rat max_even_residual{0};
    Rat zero_space_residual{0};       // max over odd degrees (lambda = 0)

    bool exact_pass() const {
        return max_even_residual == 0 && zero_space_residual == 0;
    }
};

/// lambda_k = 3F2(-2k, 2k+2 theta-1, theta/2; theta, theta | 1). Exact; at
/// theta = 1 equals C(2k,k)^2 / 2^{4k}.
Rat eigenvalue_closed_form(const Rat& theta, int k);

struct McEstimate {
    double estimate = 0;
    double std_error = 0;
};

/// Monte Carlo mean of (Z - Z')^{2k} over independent Beta(theta/2, theta/2)
/// pairs; agrees with eigenvalue_closed_form within sampling error.
McEstimate eigenvalue_continuous_mc(double theta, int k, long samples, Rng& rng);

/// Checks P psi_{2k} = lambda_k psi_{2k} and P psi_{2k-1} = 0 for every
/// degree, in exact arithmetic. Matrix and table must share (n, theta):
/// table parameters alpha = beta = theta.
SpectralReport verify_eigenpairs(const RowStochasticMatrix& matrix, const PolyTable& table);

/// Half L1 distance between probability vectors.
Rat tv_distance(std::span<const Rat> p, std::span<const Rat> q);
double tv_distance(std::span<const double> p, std::span<const double> q);

/// sum_y (p(y) - pi(y))^2 / pi(y); requires pi > 0 entrywise.
Rat chi_square_distance(std::span<const Rat> p, std::span<const Rat> pi);
double chi_square_distance(std::span<const double> p, std::span<const double> pi);

/// Spectral form of the chi-square distance of row `state` of P^l:
///   sum_{k >= 1} lambda_k^{2l} psi_{2k}(state)^2 / norm_{2k}
/// (odd degrees carry eigenvalue 0 and drop out for l >= 1). Exact.
Rat chi_square_spectral_sum(const PolyTable& table, int state, int l);

/// Row `start` of P^l, exact.
std::vector<Rat> matrix_power_row(const RowStochasticMatrix& matrix, int start, int l);

/// Same in floating point with compensated summation, for (n, l) beyond
/// the exact envelope.
std::vector<double> matrix_power_row_double(const RowStochasticMatrix& matrix, int start, int l);

struct SandwichRow {
    int l = 0;
    Rat tv{0};
    Rat lower{0};
    Rat upper{0};
    bool pass = false;
};

/// Exact mixing sandwich for the untwisted chain started from state n:
///   (1/4)(1/4)^l <= ||P^l(n,.) - u|| <= 4 (1/4)^l  for l = 1..l_max.
std::vector<SandwichRow> tv_sandwich_check(int n, int l_max);

struct RateFitResult {
    double fitted_slope = 0;
    double target_slope = 0;   // log(1/(2(1+theta)))
    double band_min = 0;       // min over l of tv / rate^l
    double band_max = 0;
    std::vector<double> tv_per_l;
    bool pass = false;         // |fitted - target| / |target| < 2%
};

/// Geometric-rate fit of the twisted chain from state n: least-squares
/// slope of log TV(P^l(n,.), beta-binomial(theta,theta)) over
/// l = fit_from..l_max against log(1/(2(1+theta))). The multiplicative
/// band (empirical constants) is reported, not asserted.
RateFitResult twisted_rate_check(const Rat& theta, int n, int l_max, int fit_from = 4);

/// Double sum
///   sum_{l=0}^{2k} ((-2k)_l (2k+1)_l / (l!)^2) sum_j (-j)_l alpha_j^n / (-n)_l,
/// exact; equals C(2k,k)^2 / 2^{4k} for every n >= 2k.
Rat finite_n_eigenvalue_sum(int n, int k);

/// Exact residual of the series transformation
///   (a+A)_m 3F2(a, c-b, -m; c, a+A | 1) - (A)_m 3F2(a, b, -m; c, 1-A-m | 1)
/// at m = 2k, a = theta/2, c = theta, b = 2 theta + 2k - 1, A = 1 - theta - 2k;
/// expected exactly 0.
Rat transformation_identity_check(const Rat& theta, int k);

/// Floating eigenvalues of the pi-symmetrized kernel, descending. Only a
/// cross-check of the exact path.
std::vector<double> numeric_eigenvalues(const RowStochasticMatrix& matrix,
                                        std::span<const Rat> pi);

}  // namespace burnside
