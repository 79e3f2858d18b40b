#pragma once

#include <utility>
#include <vector>

#include "burnside/rational.hpp"

namespace burnside {

/// A generalized hypergeometric series rFs(a1..ar; b1..bs | x) that is a
/// finite sum because some upper parameter is a nonpositive integer -L.
///
/// Invariants enforced by create()/validate():
///   * at least one upper parameter equals -L with integer L >= 0;
///   * no lower parameter is a nonpositive integer >= -(L-1), i.e. no
///     denominator factor vanishes before the series terminates.
struct TerminatingSeriesSpec {
    std::vector<Rat> upper_params;
    std::vector<Rat> lower_params;
    Rat argument;
    unsigned termination_index = 0;

    /// Derives the termination index from the upper parameters and
    /// validates; throws std::invalid_argument on a non-terminating or
    /// poisoned spec.
    static TerminatingSeriesSpec create(std::vector<Rat> upper,
                                        std::vector<Rat> lower,
                                        Rat argument);

    void validate() const;
};

/// Exact sum  sum_{l=0}^{L} (a1...ar)_l x^l / ((b1...bs)_l l!).
Rat pfq_terminating(const TerminatingSeriesSpec& spec);

/// Convenience: derive the TerminatingSeriesSpec and sum in one call.
Rat pfq_terminating(std::vector<Rat> upper, std::vector<Rat> lower, Rat argument);

/// 2F1(a,b;c|1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)),
/// valid for a+b < c with c, c-a, c-b away from nonpositive integers.
/// Floating-point; serves as an oracle for the exact terminating path.
double gauss_2f1_at_1(const Rat& a, const Rat& b, const Rat& c);

/// | 3F2(2a,2b,a+b; a+b+1/2, 2a+2b | x) - 2F1(a,b; a+b+1/2 | x)^2 |
/// for terminating instances (both sides are then polynomials in x and the
/// difference is computed exactly before converting to double).
/// Throws std::domain_error outside the terminating regime or when a lower
/// parameter vanishes before termination.
double clausen_residual(const Rat& a, const Rat& b, double x);

/// Two-sided bound on Gamma(1+x):
///   sqrt(pi) (x/e)^x (8x^3+4x^2+x+1/100)^(1/6)
///     < Gamma(1+x) <
///   sqrt(pi) (x/e)^x (8x^3+4x^2+x+1/30)^(1/6).
/// Returns (lower, upper) in log scale relative to nothing, i.e. the pair
/// (log lower bound, log upper bound).
std::pair<double, double> stirling_log_bounds(double x);

/// True iff the double-sided inequality holds at x (compared against
/// lgamma(1+x)).
bool stirling_bound_check(double x);

namespace detail {
/// log|Gamma(x)| with the sign of Gamma(x); x may be a negative
/// non-integer (reflection formula).
std::pair<double, int> signed_log_gamma(double x);
}  // namespace detail

}  // namespace burnside
