#include "burnside/distributions.hpp"

#include <cmath>
#include <numeric>

namespace burnside {

void BetaBinomialParams::validate() const {
    if (n < 0) throw std::invalid_argument("BetaBinomialParams: n must be >= 0");
    if (!(alpha > 0) || !(beta > 0))
        throw std::invalid_argument("BetaBinomialParams: alpha, beta must be positive");
}

Rat beta_binomial_pmf(const BetaBinomialParams& params, int j) {
    params.validate();
    if (j < 0 || j > params.n)
        throw std::out_of_range("beta_binomial_pmf: j outside {0..n}");
    const auto n = static_cast<unsigned long>(params.n);
    const auto ju = static_cast<unsigned long>(j);
    Rat mass(binomial(n, ju));
    mass *= pochhammer(params.alpha, ju);
    mass *= pochhammer(params.beta, n - ju);
    mass /= pochhammer(params.alpha + params.beta, n);
    return mass;
}

std::vector<Rat> beta_binomial_row(const BetaBinomialParams& params) {
    std::vector<Rat> row;
    row.reserve(params.n + 1);
    for (int j = 0; j <= params.n; ++j) row.push_back(beta_binomial_pmf(params, j));
    return row;
}

int CycleType::size() const {
    int s = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        s += static_cast<int>(i + 1) * counts[i];
    return s;
}

int CycleType::cycle_count() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

void CycleType::validate(int n) const {
    if (static_cast<int>(counts.size()) != n)
        throw std::invalid_argument("CycleType: counts must have length n");
    for (int a : counts)
        if (a < 0) throw std::invalid_argument("CycleType: negative count");
    if (size() != n) throw std::invalid_argument("CycleType: sum i*a_i != n");
    const int c = cycle_count();
    if (c < 1 || c > n) throw std::invalid_argument("CycleType: cycle count out of range");
}

void EwensParams::validate() const {
    if (n < 1) throw std::invalid_argument("EwensParams: n must be >= 1");
    if (!(theta > 0)) throw std::invalid_argument("EwensParams: theta must be positive");
}

Rat ewens_pmf_cycletype(const EwensParams& params, const CycleType& type) {
    params.validate();
    type.validate(params.n);
    // #permutations with this type:  n! / prod_i i^{a_i} a_i!
    Rat count(factorial(static_cast<unsigned long>(params.n)));
    for (std::size_t i = 0; i < type.counts.size(); ++i) {
        const int a = type.counts[i];
        if (a == 0) continue;
        mpz_class ipow;
        mpz_ui_pow_ui(ipow.get_mpz_t(), static_cast<unsigned long>(i + 1),
                      static_cast<unsigned long>(a));
        count /= Rat(ipow * factorial(static_cast<unsigned long>(a)));
    }
    Rat theta_pow(1);
    for (int c = 0; c < type.cycle_count(); ++c) theta_pow *= params.theta;
    return count * theta_pow / pochhammer(params.theta, static_cast<unsigned long>(params.n));
}

namespace {

void enumerate_types(int remaining, int max_part, std::vector<int>& counts,
                     std::vector<CycleType>& out, int n) {
    if (remaining == 0) {
        out.push_back(CycleType{counts});
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        ++counts[part - 1];
        enumerate_types(remaining - part, part, counts, out, n);
        --counts[part - 1];
    }
}

}  // namespace

std::vector<CycleType> all_cycle_types(int n) {
    std::vector<CycleType> out;
    std::vector<int> counts(n, 0);
    enumerate_types(n, n, counts, out, n);
    return out;
}

std::vector<int> sample_ewens_partition(int n, double theta, Rng& rng) {
    std::vector<int> cycle_of(n);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        // element i+1 opens a new cycle w.p. theta/(theta+i), otherwise
        // extends the cycle of a uniformly chosen earlier element
        const double u = rng.uniform01() * (theta + i);
        if (u < theta) {
            cycle_of[i] = cycles++;
        } else {
            int j = static_cast<int>(u - theta);
            if (j >= i) j = i - 1;
            cycle_of[i] = cycle_of[j];
        }
    }
    return cycle_of;
}

CycleType sample_ewens_cycle_type(const EwensParams& params, Rng& rng) {
    params.validate();
    const auto cycle_of = sample_ewens_partition(params.n, to_double(params.theta), rng);
    std::vector<int> sizes;
    for (int c : cycle_of) {
        if (c >= static_cast<int>(sizes.size())) sizes.resize(c + 1, 0);
        ++sizes[c];
    }
    CycleType type;
    type.counts.assign(params.n, 0);
    for (int s : sizes) ++type.counts[s - 1];
    return type;
}

MomentCheckResult polya_moment_check(int n, const std::vector<std::pair<int, int>>& moments,
                                     long samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("polya_moment_check: samples must be >= 1");
    double lfact = 1.0;
    long weight = 0;
    for (auto [k, l] : moments) {
        if (k < 1 || k > n || l < 1)
            throw std::invalid_argument("polya_moment_check: bad moment spec");
        for (int i = 2; i <= l; ++i) lfact *= i;
        weight += static_cast<long>(k) * l;
    }
    const EwensParams uniform{n, Rat(1)};
    double sum = 0.0, sumsq = 0.0;
    for (long s = 0; s < samples; ++s) {
        const CycleType type = sample_ewens_cycle_type(uniform, rng);
        double prod = 1.0;
        for (auto [k, l] : moments) {
            const int a = type.counts[k - 1];
            double binom = 1.0;  // C(a, l), zero when a < l
            for (int i = 0; i < l; ++i) binom *= static_cast<double>(a - i) / (i + 1);
            if (a < l) binom = 0.0;
            prod *= binom;
        }
        sum += prod;
        sumsq += prod * prod;
    }
    const double mean = sum / static_cast<double>(samples);
    const double var = std::max(0.0, sumsq / static_cast<double>(samples) - mean * mean);
    MomentCheckResult result;
    result.estimate = lfact * mean;
    result.std_error = lfact * std::sqrt(var / static_cast<double>(samples));
    if (weight <= n) {
        double target = 1.0;
        for (auto [k, l] : moments) target /= std::pow(static_cast<double>(k), l);
        result.target = target;
    } else {
        result.target = 0.0;
    }
    return result;
}

std::vector<double> stick_breaking_lengths(double total, double theta, double truncation_mass,
                                           Rng& rng) {
    if (!(truncation_mass > 0.0 && truncation_mass < 1.0))
        throw std::invalid_argument("stick_breaking_lengths: truncation_mass must be in (0,1)");
    if (!(theta > 0.0))
        throw std::invalid_argument("stick_breaking_lengths: theta must be positive");
    std::vector<double> lengths;
    if (total <= 0.0) return lengths;
    const double threshold = truncation_mass * total;
    double allocated = 0.0;
    while (total - allocated >= threshold) {
        const double remaining = total - allocated;
        const double piece = remaining * rng.beta_one_theta(theta);
        lengths.push_back(piece);
        allocated += piece;
    }
    // the stub keeps the lengths summing to total
    lengths.push_back(total - allocated);
    return lengths;
}

}  // namespace burnside
