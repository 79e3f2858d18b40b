#include "burnside/orthopoly.hpp"

#include <cmath>

#include "burnside/distributions.hpp"
#include "burnside/hypergeom.hpp"

namespace burnside {

namespace {
// binomials in the rational path grow as ~4^n; past this the dense table
// stops being a desk-scale object
constexpr int kMaxTableSize = 512;
}  // namespace

void HahnFamilyParams::validate() const {
    if (n < 0) throw std::invalid_argument("HahnFamilyParams: n must be >= 0");
    if (!(alpha > 0) || !(beta > 0))
        throw std::invalid_argument("HahnFamilyParams: alpha, beta must be positive");
}

PolyTable::PolyTable(HahnFamilyParams params, std::vector<std::vector<Rat>> values,
                     std::vector<Rat> norms)
    : params_(std::move(params)), values_(std::move(values)), norms_(std::move(norms)) {}

const Rat& PolyTable::value(int degree, int point) const {
    if (degree < 0 || degree > n() || point < 0 || point > n())
        throw std::out_of_range("PolyTable::value: index outside {0..n}");
    return values_[degree][point];
}

const Rat& PolyTable::norm(int degree) const {
    if (degree < 0 || degree > n()) throw std::out_of_range("PolyTable::norm: degree outside {0..n}");
    return norms_[degree];
}

Rat hahn_eval(const HahnFamilyParams& params, int degree, int point) {
    params.validate();
    if (degree < 0 || degree > params.n)
        throw std::out_of_range("hahn_eval: degree outside {0..n}");
    if (point < 0 || point > params.n)
        throw std::out_of_range("hahn_eval: point outside {0..n}");
    return pfq_terminating(
        {Rat(-degree), Rat(degree) + params.alpha + params.beta - 1, Rat(-point)},
        {params.alpha, Rat(-params.n)}, Rat(1));
}

Rat hahn_endpoint(const HahnFamilyParams& params, int degree) {
    params.validate();
    if (degree < 0 || degree > params.n)
        throw std::out_of_range("hahn_endpoint: degree outside {0..n}");
    const auto j = static_cast<unsigned long>(degree);
    return pochhammer(-params.beta - degree, j) / pochhammer(params.alpha + 1, j);
}

namespace {

std::vector<Rat> weighted_norms(const HahnFamilyParams& params,
                                const std::vector<std::vector<Rat>>& values) {
    const BetaBinomialParams mass{params.n, params.alpha, params.beta};
    const std::vector<Rat> m = beta_binomial_row(mass);
    std::vector<Rat> norms;
    norms.reserve(params.n + 1);
    for (int j = 0; j <= params.n; ++j) {
        Rat s(0);
        for (int i = 0; i <= params.n; ++i) s += values[j][i] * values[j][i] * m[i];
        norms.push_back(s);
    }
    return norms;
}

}  // namespace

PolyTable hahn_table(const HahnFamilyParams& params) {
    params.validate();
    if (params.n > kMaxTableSize)
        throw std::invalid_argument("hahn_table: n exceeds the rational-path cap");
    std::vector<std::vector<Rat>> values(params.n + 1, std::vector<Rat>(params.n + 1));
    for (int j = 0; j <= params.n; ++j)
        for (int i = 0; i <= params.n; ++i) values[j][i] = hahn_eval(params, j, i);
    auto norms = weighted_norms(params, values);
    return PolyTable(params, std::move(values), std::move(norms));
}

PolyTable chebyshev_table(int n) {
    if (n < 1) throw std::invalid_argument("chebyshev_table: n must be >= 1");
    if (n > kMaxTableSize)
        throw std::invalid_argument("chebyshev_table: n exceeds the rational-path cap");
    const HahnFamilyParams params{n, Rat(1), Rat(1)};
    std::vector<std::vector<Rat>> values(n + 1, std::vector<Rat>(n + 1));
    for (int x = 0; x <= n; ++x) {
        values[0][x] = 1;
        values[1][x] = make_rat(n - 2 * x, n);
    }
    for (int j = 1; j < n; ++j) {
        for (int x = 0; x <= n; ++x) {
            Rat v = Rat(2 * j + 1) * Rat(n - 2 * x) * values[j][x] -
                    Rat(j) * Rat(j + n + 1) * values[j - 1][x];
            values[j + 1][x] = v / Rat(static_cast<long>(j + 1) * (n - j));
        }
    }
    auto norms = weighted_norms(params, values);
    return PolyTable(params, std::move(values), std::move(norms));
}

double jacobi_eval(const Rat& theta, int degree, double x) {
    if (!(theta > 0)) throw std::invalid_argument("jacobi_eval: theta must be positive");
    if (degree < 0) throw std::invalid_argument("jacobi_eval: degree must be >= 0");
    const Rat value = pfq_terminating({Rat(-degree), 2 * theta + Rat(degree) - 1},
                                      {theta}, rat_from_double(x));
    return to_double(value);
}

double orthogonality_report(const PolyTable& table) {
    const BetaBinomialParams mass{table.n(), table.params().alpha, table.params().beta};
    const std::vector<Rat> m = beta_binomial_row(mass);
    Rat worst(0);
    for (int j = 0; j <= table.n(); ++j) {
        for (int k = j + 1; k <= table.n(); ++k) {
            Rat s(0);
            for (int i = 0; i <= table.n(); ++i) s += table.value(j, i) * table.value(k, i) * m[i];
            if (abs(s) > worst) worst = abs(s);
        }
    }
    return to_double(worst);
}

}  // namespace burnside
