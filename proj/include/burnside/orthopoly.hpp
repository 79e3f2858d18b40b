#pragma once

#include <vector>

#include "burnside/rational.hpp"

namespace burnside {

/// Hahn family on {0..n} for the beta-binomial weight with parameters
/// (alpha, beta), normalized so Q_j(0) = 1.
struct HahnFamilyParams {
    int n = 0;
    Rat alpha{1};
    Rat beta{1};

    void validate() const;
};

/// Dense table of one polynomial family: values[j][i] = psi_j(i) for
/// degrees and points 0..n, plus the weighted square norms
/// sum_i psi_j(i)^2 m(i) against the family's beta-binomial mass m.
/// Exact rationals; immutable once built.
class PolyTable {
  public:
    PolyTable(HahnFamilyParams params, std::vector<std::vector<Rat>> values,
              std::vector<Rat> norms);

    const HahnFamilyParams& params() const { return params_; }
    int n() const { return params_.n; }

    const Rat& value(int degree, int point) const;
    double value_d(int degree, int point) const { return to_double(value(degree, point)); }
    const Rat& norm(int degree) const;

  private:
    HahnFamilyParams params_;
    std::vector<std::vector<Rat>> values_;
    std::vector<Rat> norms_;
};

/// Q_j(x) = 3F2(-j, j+alpha+beta-1, -x; alpha, -n | 1). Exact.
Rat hahn_eval(const HahnFamilyParams& params, int degree, int point);

/// Closed-form endpoint value Q_j(n) = (-beta-j)_j / (alpha+1)_j.
Rat hahn_endpoint(const HahnFamilyParams& params, int degree);

/// Full table via hahn_eval for arbitrary (alpha, beta).
PolyTable hahn_table(const HahnFamilyParams& params);

/// Discrete Chebyshev table (alpha = beta = 1) built from the three-term
/// recurrence
///   (j+1)(n-j) T_{j+1}(x) = (2j+1)(n-2x) T_j(x) - j(j+n+1) T_{j-1}(x)
/// with T_0 = 1, T_1(x) = (n-2x)/n. Values agree with hahn_eval exactly.
PolyTable chebyshev_table(int n);

/// Jacobi polynomial for the Beta(theta,theta) weight on [0,1],
/// phi_j(x) = 2F1(-j, 2 theta + j - 1; theta | x), normalized phi_j(0)=1.
/// x is expanded exactly, so the value is the correctly rounded rational.
double jacobi_eval(const Rat& theta, int degree, double x);

/// max_{j != k} | sum_i psi_j(i) psi_k(i) m(i) |, expected ~ 0.
double orthogonality_report(const PolyTable& table);

}  // namespace burnside
