#pragma once

#include <utility>
#include <vector>

#include "burnside/rational.hpp"
#include "burnside/rng.hpp"

namespace burnside {

/// Parameters of the beta-binomial law
///   m(j) = C(n,j) (alpha)_j (beta)_{n-j} / (alpha+beta)_n  on {0..n}.
struct BetaBinomialParams {
    int n = 0;
    Rat alpha{1};
    Rat beta{1};

    void validate() const;
};

Rat beta_binomial_pmf(const BetaBinomialParams& params, int j);
std::vector<Rat> beta_binomial_row(const BetaBinomialParams& params);

/// Cycle-count vector of a permutation: counts[i-1] is the number of
/// (i)-cycles, so sum_i i*counts[i-1] equals the permutation size.
struct CycleType {
    std::vector<int> counts;

    int size() const;         // sum i * a_i
    int cycle_count() const;  // sum a_i
    void validate(int n) const;
};

struct EwensParams {
    int n = 1;
    Rat theta{1};

    void validate() const;
};

/// P(cycle type t) = #{sigma with type t} * theta^{c(t)} / (theta)_n,
/// with the count n! / prod_i (i^{a_i} a_i!). Exact.
Rat ewens_pmf_cycletype(const EwensParams& params, const CycleType& type);

/// All cycle types of permutations of n symbols (partitions of n).
std::vector<CycleType> all_cycle_types(int n);

/// Sequential Chinese-restaurant draw of an Ewens(theta) cycle type:
/// element i opens a new cycle with probability theta/(theta+i-1), else
/// extends the cycle of a uniformly chosen earlier element.
CycleType sample_ewens_cycle_type(const EwensParams& params, Rng& rng);

/// Same construction retaining memberships: returns element -> cycle id
/// (ids are dense, in order of cycle creation).
std::vector<int> sample_ewens_partition(int n, double theta, Rng& rng);

struct MomentCheckResult {
    double estimate = 0;
    double target = 0;
    double std_error = 0;
};

/// Monte Carlo check of the uniform-permutation cycle moments
///   prod_i l_i! * E[ prod_i C(a_{k_i}, l_i) ] = prod_i k_i^{-l_i}
/// when sum k_i l_i <= n, and 0 otherwise. moments is a list of (k, l).
MomentCheckResult polya_moment_check(int n,
                                     const std::vector<std::pair<int, int>>& moments,
                                     long samples, Rng& rng);

/// Stick-breaking fragmentation of an interval of the given total length
/// with Beta(1,theta) fractions. Stops once the unallocated remainder is
/// below truncation_mass * total and appends that remainder as a final
/// segment, so the emitted lengths sum to total.
std::vector<double> stick_breaking_lengths(double total, double theta,
                                           double truncation_mass, Rng& rng);

}  // namespace burnside
