#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <stdexcept>

#include "burnside/chains.hpp"
#include "burnside/distributions.hpp"

namespace burnside {

double continuous_step(double x, double theta, Rng& rng) {
    if (!(theta > 0.0)) throw std::invalid_argument("continuous_step: theta must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("continuous_step: x outside [0,1]");
    const double z = rng.beta(theta / 2, theta / 2);
    const double zp = rng.beta(theta / 2, theta / 2);
    return x * z + (1.0 - x) * zp;
}

double continuous_step_stickbreaking(double x, double theta, Rng& rng) {
    if (!(theta > 0.0))
        throw std::invalid_argument("continuous_step_stickbreaking: theta must be positive");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("continuous_step_stickbreaking: x outside [0,1]");
    double y = 0.0;
    for (double segment : {x, 1.0 - x}) {
        if (segment <= 0.0) continue;
        for (double piece : stick_breaking_lengths(segment, theta, 1e-12, rng))
            if (rng.coin()) y += piece;
    }
    return std::min(y, 1.0);
}

double continuous_density(double x, double y, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("continuous_density: theta must be positive");
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
        throw std::invalid_argument("continuous_density: x, y must be interior");
    const double mass = x + y;
    const double lo = mass > 1.0 ? mass - 1.0 : 0.0;
    const double hi = std::min(x, y);
    if (hi <= lo) return 0.0;
    const double p = theta / 2 - 1.0;
    // every factor vanishes at one endpoint at most; writing each as
    // (offset + distance-to-endpoint) with the vanishing offset exactly
    // zero keeps the integrand accurate through tanh_sinh's
    // double-exponential refinement near the ends
    const double c1 = lo;                               // z       = c1 + dl
    const double c4 = mass > 1.0 ? 0.0 : 1.0 - mass;    // 1-x-y+z = c4 + dl
    const double c2 = x <= y ? 0.0 : x - y;             // x - z   = c2 + dr
    const double c3 = y <= x ? 0.0 : y - x;             // y - z   = c3 + dr
    // tanh_sinh passes zc = -(z - lo) on the left half, zc = hi - z on the
    // right half; the complement is exact where the direct difference is not
    const auto integrand = [&](double z, double zc) {
        const double dl = zc < 0.0 ? -zc : z - lo;
        const double dr = zc >= 0.0 ? zc : hi - z;
        if (dl <= 0.0 || dr <= 0.0) return 0.0;
        return std::pow(c1 + dl, p) * std::pow(c2 + dr, p) * std::pow(c3 + dr, p) *
               std::pow(c4 + dl, p);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0, l1 = 0.0;
    double integral = 0.0;
    try {
        integral = integrator.integrate(integrand, lo, hi, 1e-12, &error, &l1);
    } catch (const std::exception&) {
        // colliding endpoint singularities (y == x or y == 1-x with
        // theta < 2): the density is genuinely infinite there
        throw std::runtime_error("continuous_density: quadrature did not converge");
    }
    if (!std::isfinite(integral) || !(error < 1e-8 * (1.0 + l1)))
        throw std::runtime_error("continuous_density: quadrature did not converge");
    const double log_b = 2.0 * std::lgamma(theta / 2) - std::lgamma(theta);
    return integral * std::exp(-2.0 * log_b) *
           std::pow(x, 1.0 - theta) * std::pow(1.0 - x, 1.0 - theta);
}

}  // namespace burnside
