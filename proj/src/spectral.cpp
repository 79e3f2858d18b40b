#include "burnside/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "burnside/distributions.hpp"
#include "burnside/hypergeom.hpp"

namespace burnside {

Rat eigenvalue_closed_form(const Rat& theta, int k) {
    if (k < 1) throw std::invalid_argument("eigenvalue_closed_form: k must be >= 1");
    if (!(theta > 0)) throw std::invalid_argument("eigenvalue_closed_form: theta must be positive");
    return pfq_terminating({Rat(-2 * k), 2 * theta + Rat(2 * k) - 1, theta / 2},
                           {theta, theta}, Rat(1));
}

McEstimate eigenvalue_continuous_mc(double theta, int k, long samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("eigenvalue_continuous_mc: samples must be >= 1");
    if (k < 1) throw std::invalid_argument("eigenvalue_continuous_mc: k must be >= 1");
    double sum = 0.0, sumsq = 0.0;
    for (long s = 0; s < samples; ++s) {
        const double z = rng.beta(theta / 2, theta / 2);
        const double zp = rng.beta(theta / 2, theta / 2);
        double d = z - zp;
        double v = 1.0;
        for (int i = 0; i < 2 * k; ++i) v *= d;
        sum += v;
        sumsq += v * v;
    }
    McEstimate estimate;
    estimate.estimate = sum / static_cast<double>(samples);
    const double var =
        std::max(0.0, sumsq / static_cast<double>(samples) - estimate.estimate * estimate.estimate);
    estimate.std_error = std::sqrt(var / static_cast<double>(samples));
    return estimate;
}

SpectralReport verify_eigenpairs(const RowStochasticMatrix& matrix, const PolyTable& table) {
    const int n = matrix.order() - 1;
    if (table.n() != n) throw std::invalid_argument("verify_eigenpairs: dimension mismatch");
    if (table.params().alpha != table.params().beta)
        throw std::invalid_argument("verify_eigenpairs: table must have alpha == beta");
    SpectralReport report;
    report.spec = ChainSpec{n, table.params().alpha};
    for (int degree = 0; degree <= n; ++degree) {
        const Rat lambda = degree == 0
                               ? Rat(1)
                               : (degree % 2 == 0
                                      ? eigenvalue_closed_form(table.params().alpha, degree / 2)
                                      : Rat(0));
        Rat residual(0);
        for (int i = 0; i <= n; ++i) {
            Rat applied(0);
            for (int y = 0; y <= n; ++y) applied += matrix.at(i, y) * table.value(degree, y);
            const Rat r = abs(applied - lambda * table.value(degree, i));
            if (r > residual) residual = r;
        }
        report.residuals.push_back(residual);
        if (degree % 2 == 0) {
            report.eigenvalues.emplace_back(degree, lambda);
            if (residual > report.max_even_residual) report.max_even_residual = residual;
        } else {
            if (residual > report.zero_space_residual) report.zero_space_residual = residual;
        }
    }
    return report;
}

Rat tv_distance(std::span<const Rat> p, std::span<const Rat> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < p.size(); ++i) s += abs(p[i] - q[i]);
    return s / 2;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return s / 2;
}

Rat chi_square_distance(std::span<const Rat> p, std::span<const Rat> pi) {
    if (p.size() != pi.size()) throw std::invalid_argument("chi_square_distance: length mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(pi[i] > 0)) throw std::invalid_argument("chi_square_distance: pi must be positive");
        const Rat d = p[i] - pi[i];
        s += d * d / pi[i];
    }
    return s;
}

double chi_square_distance(std::span<const double> p, std::span<const double> pi) {
    if (p.size() != pi.size()) throw std::invalid_argument("chi_square_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(pi[i] > 0.0)) throw std::invalid_argument("chi_square_distance: pi must be positive");
        const double d = p[i] - pi[i];
        s += d * d / pi[i];
    }
    return s;
}

Rat chi_square_spectral_sum(const PolyTable& table, int state, int l) {
    if (state < 0 || state > table.n())
        throw std::out_of_range("chi_square_spectral_sum: state outside {0..n}");
    if (l < 1) throw std::invalid_argument("chi_square_spectral_sum: l must be >= 1");
    if (table.params().alpha != table.params().beta)
        throw std::invalid_argument("chi_square_spectral_sum: table must have alpha == beta");
    const Rat theta = table.params().alpha;
    Rat sum(0);
    for (int k = 1; 2 * k <= table.n(); ++k) {
        const Rat lambda = eigenvalue_closed_form(theta, k);
        Rat lam_pow(1);
        for (int i = 0; i < 2 * l; ++i) lam_pow *= lambda;
        const Rat& psi = table.value(2 * k, state);
        sum += lam_pow * psi * psi / table.norm(2 * k);
    }
    return sum;
}

std::vector<Rat> matrix_power_row(const RowStochasticMatrix& matrix, int start, int l) {
    const int order = matrix.order();
    if (start < 0 || start >= order) throw std::out_of_range("matrix_power_row: bad start");
    std::vector<Rat> row(order, Rat(0));
    row[start] = 1;
    for (int step = 0; step < l; ++step) {
        std::vector<Rat> next(order, Rat(0));
        for (int i = 0; i < order; ++i) {
            if (row[i] == 0) continue;
            for (int j = 0; j < order; ++j) next[j] += row[i] * matrix.at(i, j);
        }
        row = std::move(next);
    }
    return row;
}

std::vector<double> matrix_power_row_double(const RowStochasticMatrix& matrix, int start, int l) {
    const int order = matrix.order();
    if (start < 0 || start >= order) throw std::out_of_range("matrix_power_row_double: bad start");
    std::vector<std::vector<double>> pd(order, std::vector<double>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) pd[i][j] = to_double(matrix.at(i, j));
    std::vector<double> row(order, 0.0);
    row[start] = 1.0;
    for (int step = 0; step < l; ++step) {
        std::vector<double> next(order, 0.0);
        std::vector<double> comp(order, 0.0);  // Kahan compensation
        for (int i = 0; i < order; ++i) {
            if (row[i] == 0.0) continue;
            for (int j = 0; j < order; ++j) {
                const double term = row[i] * pd[i][j] - comp[j];
                const double t = next[j] + term;
                comp[j] = (t - next[j]) - term;
                next[j] = t;
            }
        }
        row = std::move(next);
    }
    return row;
}

std::vector<SandwichRow> tv_sandwich_check(int n, int l_max) {
    if (n < 2) throw std::invalid_argument("tv_sandwich_check: n must be >= 2");
    if (l_max < 1) throw std::invalid_argument("tv_sandwich_check: l_max must be >= 1");
    const RowStochasticMatrix matrix = build_matrix(ChainSpec{n, Rat(1)});
    const std::vector<Rat> uniform(n + 1, make_rat(1, n + 1));
    std::vector<SandwichRow> rows;
    std::vector<Rat> row(n + 1, Rat(0));
    row[n] = 1;
    Rat rate_pow(1);
    for (int l = 1; l <= l_max; ++l) {
        std::vector<Rat> next(n + 1, Rat(0));
        for (int i = 0; i <= n; ++i) {
            if (row[i] == 0) continue;
            for (int j = 0; j <= n; ++j) next[j] += row[i] * matrix.at(i, j);
        }
        row = std::move(next);
        rate_pow /= 4;
        SandwichRow entry;
        entry.l = l;
        entry.tv = tv_distance(std::span<const Rat>(row), std::span<const Rat>(uniform));
        entry.lower = rate_pow / 4;
        entry.upper = 4 * rate_pow;
        entry.pass = entry.lower <= entry.tv && entry.tv <= entry.upper;
        rows.push_back(std::move(entry));
    }
    return rows;
}

RateFitResult twisted_rate_check(const Rat& theta, int n, int l_max, int fit_from) {
    if (!(theta >= 1)) throw std::invalid_argument("twisted_rate_check: requires theta >= 1");
    if (l_max <= fit_from)
        throw std::invalid_argument("twisted_rate_check: l_max must exceed fit_from");
    const RowStochasticMatrix matrix = build_matrix(ChainSpec{n, theta});
    const std::vector<Rat> pi = beta_binomial_row(BetaBinomialParams{n, theta, theta});
    RateFitResult result;
    const double rate = 1.0 / (2.0 * (1.0 + to_double(theta)));
    result.target_slope = std::log(rate);
    std::vector<Rat> row(n + 1, Rat(0));
    row[n] = 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    double rate_pow = 1.0;
    result.band_min = 1e300;
    result.band_max = 0.0;
    for (int l = 1; l <= l_max; ++l) {
        std::vector<Rat> next(n + 1, Rat(0));
        for (int i = 0; i <= n; ++i) {
            if (row[i] == 0) continue;
            for (int j = 0; j <= n; ++j) next[j] += row[i] * matrix.at(i, j);
        }
        row = std::move(next);
        rate_pow *= rate;
        const double t = to_double(tv_distance(std::span<const Rat>(row), std::span<const Rat>(pi)));
        result.tv_per_l.push_back(t);
        result.band_min = std::min(result.band_min, t / rate_pow);
        result.band_max = std::max(result.band_max, t / rate_pow);
        if (l >= fit_from) {
            const double y = std::log(t);
            sx += l;
            sy += y;
            sxx += static_cast<double>(l) * l;
            sxy += l * y;
            ++count;
        }
    }
    result.fitted_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    result.pass =
        std::fabs(result.fitted_slope - result.target_slope) < 0.02 * std::fabs(result.target_slope);
    return result;
}

Rat finite_n_eigenvalue_sum(int n, int k) {
    if (k < 1) throw std::invalid_argument("finite_n_eigenvalue_sum: k must be >= 1");
    if (n < 2 * k) throw std::invalid_argument("finite_n_eigenvalue_sum: requires n >= 2k");
    const std::vector<Rat> alphas = alpha_row(n);
    Rat total(0);
    for (int l = 0; l <= 2 * k; ++l) {
        const auto lu = static_cast<unsigned long>(l);
        const Rat coef = pochhammer(Rat(-2 * k), lu) * pochhammer(Rat(2 * k + 1), lu) /
                         Rat(factorial(lu) * factorial(lu));
        Rat inner(0);
        for (int j = 0; j <= n; ++j) inner += pochhammer(Rat(-j), lu) * alphas[j];
        inner /= pochhammer(Rat(-n), lu);
        total += coef * inner;
    }
    return total;
}

Rat transformation_identity_check(const Rat& theta, int k) {
    if (k < 1) throw std::invalid_argument("transformation_identity_check: k must be >= 1");
    if (!(theta > 0))
        throw std::invalid_argument("transformation_identity_check: theta must be positive");
    const int m = 2 * k;
    const auto mu = static_cast<unsigned long>(m);
    const Rat a = theta / 2;
    const Rat c = theta;
    const Rat b = 2 * theta + Rat(2 * k) - 1;
    const Rat big_a = Rat(1) - theta - Rat(2 * k);
    const Rat lhs = pochhammer(a + big_a, mu) *
                    pfq_terminating({a, c - b, Rat(-m)}, {c, a + big_a}, Rat(1));
    const Rat rhs = pochhammer(big_a, mu) *
                    pfq_terminating({a, b, Rat(-m)}, {c, Rat(1) - big_a - Rat(m)}, Rat(1));
    return lhs - rhs;
}

std::vector<double> numeric_eigenvalues(const RowStochasticMatrix& matrix,
                                        std::span<const Rat> pi) {
    const int order = matrix.order();
    if (static_cast<int>(pi.size()) != order)
        throw std::invalid_argument("numeric_eigenvalues: pi length mismatch");
    // symmetrize: S = D^{1/2} P D^{-1/2}, D = diag(pi); same spectrum
    Eigen::MatrixXd s(order, order);
    std::vector<double> sqrt_pi(order);
    for (int i = 0; i < order; ++i) sqrt_pi[i] = std::sqrt(to_double(pi[i]));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            s(i, j) = sqrt_pi[i] * to_double(matrix.at(i, j)) / sqrt_pi[j];
    s = (s + s.transpose()) / 2.0;  // clean rounding asymmetry
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    std::vector<double> eigenvalues(solver.eigenvalues().data(),
                                    solver.eigenvalues().data() + order);
    std::sort(eigenvalues.rbegin(), eigenvalues.rend());
    return eigenvalues;
}

}  // namespace burnside
