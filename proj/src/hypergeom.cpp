#include "burnside/hypergeom.hpp"

#include <cmath>
#include <limits>

namespace burnside {

namespace {

// Smallest termination index among nonpositive-integer upper parameters,
// or -1 if the series does not terminate.
long find_termination(const std::vector<Rat>& upper) {
    long best = -1;
    for (const Rat& a : upper) {
        if (is_nonpositive_integer(a)) {
            const long l = -static_cast<long>(a.get_num().get_si());
            if (best < 0 || l < best) best = l;
        }
    }
    return best;
}

}  // namespace

TerminatingSeriesSpec TerminatingSeriesSpec::create(std::vector<Rat> upper,
                                                    std::vector<Rat> lower, Rat argument) {
    TerminatingSeriesSpec spec;
    spec.upper_params = std::move(upper);
    spec.lower_params = std::move(lower);
    spec.argument = std::move(argument);
    const long L = find_termination(spec.upper_params);
    if (L < 0)
        throw std::invalid_argument(
            "TerminatingSeriesSpec: no nonpositive-integer upper parameter");
    spec.termination_index = static_cast<unsigned>(L);
    spec.validate();
    return spec;
}

void TerminatingSeriesSpec::validate() const {
    const long L = static_cast<long>(termination_index);
    bool terminates = false;
    for (const Rat& a : upper_params)
        if (is_nonpositive_integer(a) && -a.get_num().get_si() == L) terminates = true;
    if (!terminates)
        throw std::invalid_argument(
            "TerminatingSeriesSpec: no upper parameter equals -termination_index");
    for (const Rat& b : lower_params) {
        // (b)_l vanishes for some l <= L iff b is an integer in [-(L-1), 0]
        if (is_nonpositive_integer(b) && -b.get_num().get_si() <= L - 1)
            throw std::invalid_argument(
                "TerminatingSeriesSpec: lower parameter hits a pole before termination");
    }
}

Rat pfq_terminating(const TerminatingSeriesSpec& spec) {
    spec.validate();
    Rat sum(0);
    Rat term(1);
    for (unsigned l = 0; l <= spec.termination_index; ++l) {
        sum += term;
        if (l == spec.termination_index) break;
        Rat num(1), den(1);
        for (const Rat& a : spec.upper_params) num *= a + static_cast<long>(l);
        for (const Rat& b : spec.lower_params) den *= b + static_cast<long>(l);
        den *= static_cast<long>(l) + 1;
        term *= num * spec.argument / den;
    }
    return sum;
}

Rat pfq_terminating(std::vector<Rat> upper, std::vector<Rat> lower, Rat argument) {
    return pfq_terminating(
        TerminatingSeriesSpec::create(std::move(upper), std::move(lower), std::move(argument)));
}

namespace detail {

std::pair<double, int> signed_log_gamma(double x) {
    if (x > 0.0) return {std::lgamma(x), 1};
    if (x == std::floor(x)) throw std::domain_error("signed_log_gamma: pole at nonpositive integer");
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    const double s = std::sin(M_PI * x);
    const int sign = s > 0 ? 1 : -1;
    return {std::log(M_PI / std::fabs(s)) - std::lgamma(1.0 - x), sign};
}

}  // namespace detail

double gauss_2f1_at_1(const Rat& a, const Rat& b, const Rat& c) {
    if (!(a + b < c)) throw std::domain_error("gauss_2f1_at_1: requires a + b < c");
    const Rat cma = c - a, cmb = c - b;
    if (is_nonpositive_integer(c) || is_nonpositive_integer(cma) || is_nonpositive_integer(cmb))
        throw std::domain_error("gauss_2f1_at_1: gamma pole in parameters");
    const auto [l1, s1] = detail::signed_log_gamma(to_double(c));
    const auto [l2, s2] = detail::signed_log_gamma(to_double(c - a - b));
    const auto [l3, s3] = detail::signed_log_gamma(to_double(cma));
    const auto [l4, s4] = detail::signed_log_gamma(to_double(cmb));
    return s1 * s2 * s3 * s4 * std::exp(l1 + l2 - l3 - l4);
}

double clausen_residual(const Rat& a, const Rat& b, double x) {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("clausen_residual: x must be in [0,1)");
    const Rat xr = rat_from_double(x);
    const Rat half = make_rat(1, 2);
    // Both sides must terminate; create() rejects poisoned lower parameters.
    TerminatingSeriesSpec lhs_spec, rhs_spec;
    try {
        lhs_spec = TerminatingSeriesSpec::create({2 * a, 2 * b, a + b},
                                                 {a + b + half, 2 * (a + b)}, xr);
        rhs_spec = TerminatingSeriesSpec::create({a, b}, {a + b + half}, xr);
    } catch (const std::invalid_argument& e) {
        throw std::domain_error(std::string("clausen_residual: ") + e.what());
    }
    const Rat lhs = pfq_terminating(lhs_spec);
    const Rat rhs = pfq_terminating(rhs_spec);
    return std::fabs(to_double(lhs - rhs * rhs));
}

std::pair<double, double> stirling_log_bounds(double x) {
    const double base = 0.5 * std::log(M_PI) + x * (std::log(x) - 1.0);
    const double poly = 8.0 * x * x * x + 4.0 * x * x + x;
    return {base + std::log(poly + 0.01) / 6.0, base + std::log(poly + 1.0 / 30.0) / 6.0};
}

bool stirling_bound_check(double x) {
    if (!(x > 0.0)) return false;
    const auto [lo, hi] = stirling_log_bounds(x);
    const double lg = std::lgamma(1.0 + x);
    return lo < lg && lg < hi;
}

}  // namespace burnside
