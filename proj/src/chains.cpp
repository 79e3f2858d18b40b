#include "burnside/chains.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "burnside/distributions.hpp"

namespace burnside {

namespace {
constexpr int kMaxFullStateBits = 1000000;  // sampling-only full steps
constexpr int kMaxEngineStates = 20000;     // explicit-enumeration engine
}  // namespace

void ChainSpec::validate() const {
    if (n < 1) throw std::invalid_argument("ChainSpec: n must be >= 1");
    if (!(theta > 0)) throw std::invalid_argument("ChainSpec: theta must be positive");
}

RowStochasticMatrix::RowStochasticMatrix(int order)
    : order_(order), entries_(static_cast<std::size_t>(order) * order, Rat(0)) {
    if (order < 1) throw std::invalid_argument("RowStochasticMatrix: order must be >= 1");
}

std::vector<Rat> RowStochasticMatrix::row(int i) const {
    std::vector<Rat> out(order_);
    for (int j = 0; j < order_; ++j) out[j] = at(i, j);
    return out;
}

void RowStochasticMatrix::validate() const {
    for (int i = 0; i < order_; ++i) {
        Rat s(0);
        for (int j = 0; j < order_; ++j) {
            if (at(i, j) < 0) throw std::invalid_argument("RowStochasticMatrix: negative entry");
            s += at(i, j);
        }
        if (s != 1) throw std::invalid_argument("RowStochasticMatrix: row sum != 1");
    }
}

std::vector<Rat> alpha_row(int n) {
    if (n < 1) throw std::invalid_argument("alpha_row: n must be >= 1");
    std::vector<Rat> row;
    row.reserve(n + 1);
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, 2 * static_cast<unsigned long>(n));
    for (int j = 0; j <= n; ++j) {
        Rat a(binomial(2 * static_cast<unsigned long>(j), static_cast<unsigned long>(j)) *
                  binomial(2 * static_cast<unsigned long>(n - j), static_cast<unsigned long>(n - j)),
              denom);
        a.canonicalize();
        row.push_back(a);
    }
    return row;
}

namespace {

// Law of the ones-count after resampling a pure block of size m:
// beta-binomial(m, theta/2, theta/2); a size-0 block is the point mass at 0.
std::vector<Rat> block_zero_row(int m, const Rat& theta) {
    if (m == 0) return {Rat(1)};
    const Rat half_theta = theta / 2;
    return beta_binomial_row(BetaBinomialParams{m, half_theta, half_theta});
}

}  // namespace

std::vector<Rat> twisted_zero_row(const ChainSpec& spec) {
    spec.validate();
    return block_zero_row(spec.n, spec.theta);
}

RowStochasticMatrix build_matrix(const ChainSpec& spec) {
    spec.validate();
    const int n = spec.n;
    std::vector<std::vector<Rat>> zero_rows(n + 1);
    for (int m = 0; m <= n; ++m) zero_rows[m] = block_zero_row(m, spec.theta);
    RowStochasticMatrix matrix(n + 1);
    for (int j = 0; j <= n; ++j) {
        const auto& ones_block = zero_rows[j];
        const auto& zeros_block = zero_rows[n - j];
        for (int l = 0; l <= j; ++l)
            for (int m = 0; m <= n - j; ++m) matrix.at(j, l + m) += ones_block[l] * zeros_block[m];
    }
    return matrix;
}

int lumped_step(int state, const ChainSpec& spec, Rng& rng) {
    spec.validate();
    if (state < 0 || state > spec.n) throw std::out_of_range("lumped_step: state outside {0..n}");
    const double theta = to_double(spec.theta);
    int ones = 0;
    for (int block : {state, spec.n - state}) {
        if (block == 0) continue;
        const auto cycle_of = sample_ewens_partition(block, theta, rng);
        int cycles = 1 + *std::max_element(cycle_of.begin(), cycle_of.end());
        std::vector<int> size(cycles, 0);
        for (int c : cycle_of) ++size[c];
        for (int c = 0; c < cycles; ++c)
            if (rng.coin()) ones += size[c];
    }
    return ones;
}

TrajectorySample sample_trajectory(const ChainSpec& spec, int start, int steps,
                                   std::uint64_t seed) {
    spec.validate();
    if (start < 0 || start > spec.n)
        throw std::out_of_range("sample_trajectory: start outside {0..n}");
    if (steps < 0) throw std::invalid_argument("sample_trajectory: negative step count");
    TrajectorySample sample{spec, seed, {start}};
    Rng rng(seed);
    sample.states.reserve(steps + 1);
    for (int s = 0; s < steps; ++s)
        sample.states.push_back(lumped_step(sample.states.back(), spec, rng));
    return sample;
}

void full_burnside_step(std::vector<std::uint8_t>& bits, Rng& rng) {
    const int n = static_cast<int>(bits.size());
    if (n < 1) throw std::invalid_argument("full_burnside_step: empty state");
    if (n > kMaxFullStateBits) throw std::invalid_argument("full_burnside_step: n too large");
    std::vector<int> block[2];
    for (int i = 0; i < n; ++i) block[bits[i] ? 1 : 0].push_back(i);
    for (const auto& positions : block) {
        const int m = static_cast<int>(positions.size());
        if (m == 0) continue;
        // uniform permutation of the block via Fisher-Yates
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = m - 1; i > 0; --i)
            std::swap(perm[i], perm[static_cast<int>(rng.below(i + 1))]);
        // walk cycles, one coin per cycle
        std::vector<bool> seen(m, false);
        for (int i = 0; i < m; ++i) {
            if (seen[i]) continue;
            const std::uint8_t label = rng.coin() ? 1 : 0;
            int j = i;
            while (!seen[j]) {
                seen[j] = true;
                bits[positions[j]] = label;
                j = perm[j];
            }
        }
    }
}

std::vector<int> kcolors_twisted_step(const std::vector<int>& colors, int k, double theta,
                                      const std::vector<double>& gammas, Rng& rng) {
    if (k < 2) throw std::invalid_argument("kcolors_twisted_step: k must be >= 2");
    if (static_cast<int>(gammas.size()) != k || gammas[0] != 1.0)
        throw std::invalid_argument("kcolors_twisted_step: gammas must have size k with gammas[0]=1");
    for (double g : gammas)
        if (!(g > 0.0)) throw std::invalid_argument("kcolors_twisted_step: gammas must be positive");
    std::vector<int> next(colors.size());
    std::vector<std::vector<int>> classes(k);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        if (colors[i] < 0 || colors[i] >= k)
            throw std::invalid_argument("kcolors_twisted_step: color out of range");
        classes[colors[i]].push_back(static_cast<int>(i));
    }
    std::vector<double> log_gamma(k);
    for (int r = 0; r < k; ++r) log_gamma[r] = std::log(gammas[r]);
    for (const auto& positions : classes) {
        const int m = static_cast<int>(positions.size());
        if (m == 0) continue;
        const auto cycle_of = sample_ewens_partition(m, theta, rng);
        const int cycles = 1 + *std::max_element(cycle_of.begin(), cycle_of.end());
        std::vector<int> size(cycles, 0);
        for (int c : cycle_of) ++size[c];
        std::vector<int> color_of_cycle(cycles);
        std::vector<double> w(k);
        for (int c = 0; c < cycles; ++c) {
            // color r with prob gamma_r^len / sum_l gamma_l^len, in log space
            double wmax = -1e300;
            for (int r = 0; r < k; ++r) {
                w[r] = size[c] * log_gamma[r];
                wmax = std::max(wmax, w[r]);
            }
            double total = 0.0;
            for (int r = 0; r < k; ++r) {
                w[r] = std::exp(w[r] - wmax);
                total += w[r];
            }
            double u = rng.uniform01() * total;
            int pick = k - 1;
            for (int r = 0; r < k; ++r) {
                u -= w[r];
                if (u < 0.0) {
                    pick = r;
                    break;
                }
            }
            color_of_cycle[c] = pick;
        }
        for (int i = 0; i < m; ++i) next[positions[i]] = color_of_cycle[cycle_of[i]];
    }
    return next;
}

void GroupActionTable::validate() const {
    if (state_count < 1) throw std::invalid_argument("GroupActionTable: empty state set");
    if (state_count > kMaxEngineStates)
        throw std::invalid_argument("GroupActionTable: too many states to enumerate");
    if (elements.empty()) throw std::invalid_argument("GroupActionTable: empty group");
    if (weight_w.size() != elements.size())
        throw std::invalid_argument("GroupActionTable: weight_w size mismatch");
    if (static_cast<int>(weight_v.size()) != state_count)
        throw std::invalid_argument("GroupActionTable: weight_v size mismatch");
    for (const Rat& w : weight_w)
        if (!(w > 0)) throw std::invalid_argument("GroupActionTable: weight_w must be positive");
    for (const Rat& v : weight_v)
        if (!(v > 0)) throw std::invalid_argument("GroupActionTable: weight_v must be positive");
    bool has_identity = false;
    std::vector<char> hit(state_count);
    for (const auto& g : elements) {
        if (static_cast<int>(g.size()) != state_count)
            throw std::invalid_argument("GroupActionTable: element size mismatch");
        std::fill(hit.begin(), hit.end(), 0);
        bool identity = true;
        for (int x = 0; x < state_count; ++x) {
            if (g[x] < 0 || g[x] >= state_count || hit[g[x]])
                throw std::invalid_argument("GroupActionTable: element is not a bijection");
            hit[g[x]] = 1;
            identity = identity && g[x] == x;
        }
        has_identity = has_identity || identity;
    }
    if (!has_identity) throw std::invalid_argument("GroupActionTable: identity missing");
    if (elements.size() <= 512) {
        // closure under composition, affordable only for small groups
        std::set<std::vector<int>> all(elements.begin(), elements.end());
        for (const auto& g : elements)
            for (const auto& h : elements) {
                std::vector<int> gh(state_count);
                for (int x = 0; x < state_count; ++x) gh[x] = h[g[x]];
                if (!all.count(gh))
                    throw std::invalid_argument("GroupActionTable: not closed under composition");
            }
    }
}

namespace {

int count_cycles(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    return cycles;
}

std::vector<std::vector<int>> coordinate_permutations(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return all;
}

}  // namespace

GroupActionTable binary_burnside_action(int n, const Rat& theta) {
    if (n < 1 || n > 12) throw std::invalid_argument("binary_burnside_action: need 1 <= n <= 12");
    if (!(theta > 0)) throw std::invalid_argument("binary_burnside_action: theta must be positive");
    GroupActionTable table;
    table.state_count = 1 << n;
    for (const auto& perm : coordinate_permutations(n)) {
        std::vector<int> action(table.state_count);
        for (int x = 0; x < table.state_count; ++x) {
            int y = 0;
            for (int i = 0; i < n; ++i)
                if ((x >> perm[i]) & 1) y |= 1 << i;
            action[x] = y;
        }
        table.elements.push_back(std::move(action));
        Rat w(1);
        for (int c = count_cycles(perm); c > 0; --c) w *= theta;
        table.weight_w.push_back(w);
    }
    table.weight_v.assign(table.state_count, Rat(1));
    table.validate();
    return table;
}

GroupActionTable kcolor_burnside_action(int n, int k, const Rat& theta,
                                        const std::vector<Rat>& gammas) {
    if (n < 1 || k < 2) throw std::invalid_argument("kcolor_burnside_action: need n >= 1, k >= 2");
    if (static_cast<int>(gammas.size()) != k || gammas[0] != 1)
        throw std::invalid_argument("kcolor_burnside_action: gammas must have size k, gammas[0]=1");
    long states = 1;
    for (int i = 0; i < n; ++i) {
        states *= k;
        if (states > kMaxEngineStates)
            throw std::invalid_argument("kcolor_burnside_action: k^n too large");
    }
    GroupActionTable table;
    table.state_count = static_cast<int>(states);
    auto digit = [&](int x, int i) {
        for (int d = 0; d < i; ++d) x /= k;
        return x % k;
    };
    for (const auto& perm : coordinate_permutations(n)) {
        std::vector<int> action(table.state_count);
        for (int x = 0; x < table.state_count; ++x) {
            int y = 0, place = 1;
            for (int i = 0; i < n; ++i) {
                y += digit(x, perm[i]) * place;
                place *= k;
            }
            action[x] = y;
        }
        table.elements.push_back(std::move(action));
        Rat w(1);
        for (int c = count_cycles(perm); c > 0; --c) w *= theta;
        table.weight_w.push_back(w);
    }
    table.weight_v.reserve(table.state_count);
    for (int x = 0; x < table.state_count; ++x) {
        Rat v(1);
        for (int i = 0; i < n; ++i) {
            const int color = digit(x, i);
            if (color > 0) v *= gammas[color];
        }
        table.weight_v.push_back(v);
    }
    table.validate();
    return table;
}

RowStochasticMatrix generic_twisted_matrix(const GroupActionTable& table) {
    table.validate();
    const int ns = table.state_count;
    // per element: fixed states, V(g) = sum of v over them
    std::vector<std::vector<int>> fixed(table.elements.size());
    std::vector<Rat> big_v(table.elements.size(), Rat(0));
    std::vector<Rat> big_w(ns, Rat(0));
    for (std::size_t g = 0; g < table.elements.size(); ++g) {
        for (int x = 0; x < ns; ++x) {
            if (table.elements[g][x] == x) {
                fixed[g].push_back(x);
                big_v[g] += table.weight_v[x];
                big_w[x] += table.weight_w[g];
            }
        }
    }
    RowStochasticMatrix kernel(ns);
    for (std::size_t g = 0; g < table.elements.size(); ++g) {
        const Rat ratio = table.weight_w[g] / big_v[g];
        for (int x : fixed[g])
            for (int y : fixed[g]) kernel.at(x, y) += table.weight_v[y] / big_w[x] * ratio;
    }
    kernel.validate();
    return kernel;
}

std::vector<Rat> stationary_weights(const GroupActionTable& table) {
    const int ns = table.state_count;
    std::vector<Rat> pi(ns, Rat(0));
    for (std::size_t g = 0; g < table.elements.size(); ++g)
        for (int x = 0; x < ns; ++x)
            if (table.elements[g][x] == x) pi[x] += table.weight_w[g];
    Rat total(0);
    for (int x = 0; x < ns; ++x) {
        pi[x] *= table.weight_v[x];
        total += pi[x];
    }
    for (Rat& p : pi) p /= total;
    return pi;
}

std::vector<int> orbits_of(const GroupActionTable& table) {
    const int ns = table.state_count;
    std::vector<int> orbit(ns, -1);
    int next_id = 0;
    for (int x = 0; x < ns; ++x) {
        if (orbit[x] >= 0) continue;
        const int id = next_id++;
        // orbit of x is its closure under all elements (the table holds a
        // whole group, so one pass suffices)
        std::vector<int> stack{x};
        orbit[x] = id;
        while (!stack.empty()) {
            const int y = stack.back();
            stack.pop_back();
            for (const auto& g : table.elements) {
                const int z = g[y];
                if (orbit[z] < 0) {
                    orbit[z] = id;
                    stack.push_back(z);
                }
            }
        }
    }
    return orbit;
}

Rat lumpability_check(const GroupActionTable& table) {
    const RowStochasticMatrix kernel = generic_twisted_matrix(table);
    const std::vector<int> orbit = orbits_of(table);
    const int norbits = 1 + *std::max_element(orbit.begin(), orbit.end());
    const int ns = table.state_count;
    // row sums into each orbit
    std::vector<std::vector<Rat>> sums(ns, std::vector<Rat>(norbits, Rat(0)));
    for (int x = 0; x < ns; ++x)
        for (int y = 0; y < ns; ++y) sums[x][orbit[y]] += kernel.at(x, y);
    Rat worst(0);
    std::vector<int> representative(norbits, -1);
    for (int x = 0; x < ns; ++x) {
        const int o = orbit[x];
        if (representative[o] < 0) {
            representative[o] = x;
            continue;
        }
        for (int z = 0; z < norbits; ++z) {
            const Rat d = abs(sums[x][z] - sums[representative[o]][z]);
            if (d > worst) worst = d;
        }
    }
    return worst;
}

RowStochasticMatrix lump_matrix(const GroupActionTable& table) {
    const RowStochasticMatrix kernel = generic_twisted_matrix(table);
    const std::vector<int> orbit = orbits_of(table);
    const int norbits = 1 + *std::max_element(orbit.begin(), orbit.end());
    RowStochasticMatrix lumped(norbits);
    std::vector<int> representative(norbits, -1);
    for (int x = 0; x < table.state_count; ++x)
        if (representative[orbit[x]] < 0) representative[orbit[x]] = x;
    for (int o = 0; o < norbits; ++o) {
        const int x = representative[o];
        for (int y = 0; y < table.state_count; ++y) lumped.at(o, orbit[y]) += kernel.at(x, y);
    }
    lumped.validate();
    return lumped;
}

}  // namespace burnside
