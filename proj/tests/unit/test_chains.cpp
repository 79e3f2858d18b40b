#include "doctest.h"

#include <array>
#include <cmath>
#include <numeric>

#include "burnside/chains.hpp"
#include "burnside/distributions.hpp"
#include "burnside/spectral.hpp"

using namespace burnside;

namespace {

double empirical_tv(const std::vector<long>& counts, const std::vector<Rat>& law, long draws) {
    double tv = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j)
        tv += std::fabs(static_cast<double>(counts[j]) / draws - to_double(law[j]));
    return tv / 2;
}

}  // namespace

TEST_CASE("alpha row") {
    CHECK(alpha_row(2) == std::vector<Rat>{make_rat(3, 8), make_rat(1, 4), make_rat(3, 8)});
    for (int n : {1, 7, 23, 60}) {
        const auto row = alpha_row(n);
        CHECK(std::accumulate(row.begin(), row.end(), Rat(0)) == 1);
        for (int j = 0; j <= n; ++j) CHECK(row[j] == row[n - j]);
    }
}

TEST_CASE("twisted zero row") {
    CHECK(twisted_zero_row(ChainSpec{2, Rat(1)}) == alpha_row(2));
    CHECK(twisted_zero_row(ChainSpec{2, Rat(2)}) ==
          std::vector<Rat>{make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)});
    for (int n : {1, 5, 12}) {
        for (const Rat& theta : {make_rat(1, 2), Rat(3)}) {
            const auto row = twisted_zero_row(ChainSpec{n, theta});
            CHECK(std::accumulate(row.begin(), row.end(), Rat(0)) == 1);
            // it is the beta-binomial with both parameters theta/2
            CHECK(row == beta_binomial_row(BetaBinomialParams{n, theta / 2, theta / 2}));
        }
    }
}

TEST_CASE("kernel structure: rows, symmetry, stationarity, balance") {
    const RowStochasticMatrix one = build_matrix(ChainSpec{1, Rat(1)});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(one.at(i, j) == make_rat(1, 2));

    for (int n : {2, 5, 9}) {
        for (const Rat& theta : {make_rat(1, 2), Rat(1), Rat(2), Rat(5)}) {
            const RowStochasticMatrix matrix = build_matrix(ChainSpec{n, theta});
            matrix.validate();
            CHECK(matrix.row(0) == twisted_zero_row(ChainSpec{n, theta}));
            const auto pi = beta_binomial_row(BetaBinomialParams{n, theta, theta});
            for (int j = 0; j <= n; ++j) {
                Rat column(0);
                for (int i = 0; i <= n; ++i) column += pi[i] * matrix.at(i, j);
                CHECK(column == pi[j]);
                for (int k = 0; k <= n; ++k) {
                    CHECK(pi[j] * matrix.at(j, k) == pi[k] * matrix.at(k, j));
                    CHECK(matrix.at(j, k) == matrix.at(j, n - k));
                }
            }
        }
    }
}

TEST_CASE("kernel preserves polynomial degree") {
    // (P x^l) has vanishing finite differences of order l+1
    for (int n : {5, 9}) {
        const RowStochasticMatrix matrix = build_matrix(ChainSpec{n, make_rat(3, 2)});
        for (int l = 0; l <= n; ++l) {
            std::vector<Rat> image(n + 1, Rat(0));
            for (int i = 0; i <= n; ++i)
                for (int y = 0; y <= n; ++y) {
                    Rat power(1);
                    for (int e = 0; e < l; ++e) power *= y;
                    image[i] += matrix.at(i, y) * power;
                }
            for (int order = 0; order <= l; ++order)
                for (std::size_t i = 0; i + 1 < image.size(); ++i) image[i] = image[i + 1] - image[i];
            image.resize(image.size() - static_cast<std::size_t>(l) - 1);
            for (const Rat& difference : image) CHECK(difference == 0);
        }
    }
}

TEST_CASE("eigenvalue attached to a fixed even degree is stable in n") {
    for (const Rat& theta : {Rat(1), Rat(2)}) {
        for (int k : {1, 2}) {
            Rat reference;
            for (int n = 2 * k; n <= 2 * k + 4; ++n) {
                const RowStochasticMatrix matrix = build_matrix(ChainSpec{n, theta});
                const PolyTable table = hahn_table(HahnFamilyParams{n, theta, theta});
                // psi(0) = 1, so the eigenvalue is (P psi)(0)
                Rat applied(0);
                for (int y = 0; y <= n; ++y) applied += matrix.at(0, y) * table.value(2 * k, y);
                if (n == 2 * k)
                    reference = applied;
                else
                    CHECK(applied == reference);
            }
        }
    }
}

TEST_CASE("lumped sampler matches the exact kernel row") {
    Rng rng(90210);
    SUBCASE("n = 1 from state 0 is a fair coin") {
        const long draws = 40000;
        long ones = 0;
        for (long i = 0; i < draws; ++i) ones += lumped_step(0, ChainSpec{1, Rat(2)}, rng);
        const double p = static_cast<double>(ones) / draws;
        CHECK(std::fabs(p - 0.5) < 3 * std::sqrt(0.25 / draws));
    }
    SUBCASE("one-step law vs matrix row") {
        const int n = 6;
        for (const Rat& theta : {Rat(1), Rat(2)}) {
            const ChainSpec spec{n, theta};
            const RowStochasticMatrix matrix = build_matrix(spec);
            const long draws = 200000;
            std::vector<long> counts(n + 1, 0);
            for (long i = 0; i < draws; ++i) ++counts[lumped_step(n, spec, rng)];
            CHECK(empirical_tv(counts, matrix.row(n), draws) < 0.02);
        }
    }
    SUBCASE("mirrored start states give mirrored laws") {
        // exact statement at the kernel level: P(j, k) = P(n-j, n-k)
        const RowStochasticMatrix matrix = build_matrix(ChainSpec{7, Rat(1)});
        for (int j = 0; j <= 7; ++j)
            for (int k = 0; k <= 7; ++k) CHECK(matrix.at(j, k) == matrix.at(7 - j, 7 - k));
    }
}

TEST_CASE("trajectory sampling is seeded and stays in range") {
    const ChainSpec spec{5, Rat(2)};
    const TrajectorySample a = sample_trajectory(spec, 5, 100, 31);
    const TrajectorySample b = sample_trajectory(spec, 5, 100, 31);
    CHECK(a.states == b.states);
    CHECK(a.states.size() == 101);
    CHECK(a.states.front() == 5);
    CHECK(a.seed == 31);
    for (int state : a.states) {
        CHECK(state >= 0);
        CHECK(state <= 5);
    }
    CHECK(sample_trajectory(spec, 5, 100, 32).states != a.states);
    CHECK_THROWS_AS(sample_trajectory(spec, 6, 1, 0), std::out_of_range);
}

TEST_CASE("full-state sampler lumps consistently") {
    Rng rng(5150);
    SUBCASE("single site flips a fair coin") {
        const long draws = 40000;
        long ones = 0;
        for (long i = 0; i < draws; ++i) {
            std::vector<std::uint8_t> bits{1};
            full_burnside_step(bits, rng);
            ones += bits[0];
        }
        CHECK(std::fabs(static_cast<double>(ones) / draws - 0.5) < 3 * std::sqrt(0.25 / draws));
    }
    SUBCASE("ones-count histogram matches kernel row") {
        const int n = 4;
        const RowStochasticMatrix matrix = build_matrix(ChainSpec{n, Rat(1)});
        const long draws = 200000;
        std::vector<long> counts(n + 1, 0);
        for (long i = 0; i < draws; ++i) {
            std::vector<std::uint8_t> bits(n, 1);
            full_burnside_step(bits, rng);
            ++counts[std::accumulate(bits.begin(), bits.end(), 0)];
        }
        CHECK(empirical_tv(counts, matrix.row(n), draws) < 0.02);
    }
    SUBCASE("output law depends on the start only through the ones-count") {
        const long draws = 100000;
        std::vector<long> a(5, 0), b(5, 0);
        for (long i = 0; i < draws; ++i) {
            std::vector<std::uint8_t> x{0, 0, 1, 1};
            full_burnside_step(x, rng);
            ++a[std::accumulate(x.begin(), x.end(), 0)];
            std::vector<std::uint8_t> y{1, 0, 1, 0};
            full_burnside_step(y, rng);
            ++b[std::accumulate(y.begin(), y.end(), 0)];
        }
        double tv = 0.0;
        for (int j = 0; j <= 4; ++j)
            tv += std::fabs(static_cast<double>(a[j]) - b[j]) / draws;
        CHECK(tv / 2 < 0.02);
    }
}

TEST_CASE("k-color twisted sampler") {
    Rng rng(31337);
    SUBCASE("k = 2 with unit gamma lumps to the binary kernel row") {
        const int n = 6;
        for (const Rat& theta : {Rat(1), Rat(2)}) {
            const RowStochasticMatrix matrix = build_matrix(ChainSpec{n, theta});
            const long draws = 200000;
            std::vector<long> counts(n + 1, 0);
            for (long i = 0; i < draws; ++i) {
                const auto next = kcolors_twisted_step(std::vector<int>(n, 1), 2,
                                                       to_double(theta), {1.0, 1.0}, rng);
                ++counts[std::accumulate(next.begin(), next.end(), 0)];
            }
            CHECK(empirical_tv(counts, matrix.row(n), draws) < 0.02);
        }
    }
    SUBCASE("three colors reach the uniform orbit law") {
        // exact oracle: lumped engine stationary law is uniform over the
        // 15 compositions of 4 into 3 colors when theta = 1, gammas = 1
        const GroupActionTable table =
            kcolor_burnside_action(4, 3, Rat(1), {Rat(1), Rat(1), Rat(1)});
        const auto orbit = orbits_of(table);
        const auto pi = stationary_weights(table);
        const int norbits = 1 + *std::max_element(orbit.begin(), orbit.end());
        CHECK(norbits == 15);
        std::vector<Rat> lumped_pi(norbits, Rat(0));
        for (int x = 0; x < table.state_count; ++x) lumped_pi[orbit[x]] += pi[x];
        for (const Rat& mass : lumped_pi) CHECK(mass == make_rat(1, 15));

        // empirical long-run orbit occupancy against the uniform law
        auto orbit_index = [&](const std::vector<int>& colors) {
            int t1 = 0, t2 = 0;
            for (int c : colors) {
                t1 += c == 1;
                t2 += c == 2;
            }
            int id = 0;
            for (int u = 0; u <= 4; ++u)
                for (int v = 0; u + v <= 4; ++v) {
                    if (u == t1 && v == t2) return id;
                    ++id;
                }
            return -1;
        };
        const long steps = 150000;
        std::vector<long> counts(15, 0);
        std::vector<int> state(4, 0);
        for (long s = 0; s < steps; ++s) {
            state = kcolors_twisted_step(state, 3, 1.0, {1.0, 1.0, 1.0}, rng);
            ++counts[orbit_index(state)];
        }
        double tv = 0.0;
        for (long c : counts) tv += std::fabs(static_cast<double>(c) / steps - 1.0 / 15);
        CHECK(tv / 2 < 0.02);
    }
    CHECK_THROWS_AS(kcolors_twisted_step({0, 1}, 2, 1.0, {2.0, 1.0}, rng), std::invalid_argument);
}

TEST_CASE("generic engine: stationarity, reversibility, lumping") {
    SUBCASE("unit weights on three sites") {
        const GroupActionTable table = binary_burnside_action(3, Rat(1));
        const RowStochasticMatrix kernel = generic_twisted_matrix(table);
        const auto pi = stationary_weights(table);
        for (int x = 0; x < 8; ++x) {
            Rat column(0);
            for (int y = 0; y < 8; ++y) {
                CHECK(pi[x] * kernel.at(x, y) == pi[y] * kernel.at(y, x));
                column += pi[y] * kernel.at(y, x);
            }
            CHECK(column == pi[x]);
        }
        // lumped stationary law is uniform over the four orbits
        const auto orbit = orbits_of(table);
        std::vector<Rat> lumped_pi(4, Rat(0));
        for (int x = 0; x < 8; ++x) lumped_pi[orbit[x]] += pi[x];
        for (const Rat& mass : lumped_pi) CHECK(mass == make_rat(1, 4));
        CHECK(lumpability_check(table) == 0);
    }
    SUBCASE("cycle-weighted group recovers the beta-binomial orbit law") {
        const GroupActionTable table = binary_burnside_action(3, Rat(2));
        const auto pi = stationary_weights(table);
        const auto orbit = orbits_of(table);
        std::vector<Rat> lumped_pi(4, Rat(0));
        for (int x = 0; x < 8; ++x) lumped_pi[orbit[x]] += pi[x];
        CHECK(lumped_pi == beta_binomial_row(BetaBinomialParams{3, Rat(2), Rat(2)}));
        CHECK(lumpability_check(table) == 0);
    }
    SUBCASE("lumped engine equals the convolution kernel entrywise") {
        for (int n : {2, 3, 4, 5}) {
            for (const Rat& theta : {Rat(1), Rat(2)}) {
                const GroupActionTable table = binary_burnside_action(n, theta);
                CHECK(lumpability_check(table) == 0);
                const RowStochasticMatrix lumped = lump_matrix(table);
                const RowStochasticMatrix direct = build_matrix(ChainSpec{n, theta});
                REQUIRE(lumped.order() == direct.order());
                for (int i = 0; i <= n; ++i)
                    for (int j = 0; j <= n; ++j) CHECK(lumped.at(i, j) == direct.at(i, j));
            }
        }
    }
    SUBCASE("two-color tables with unit gamma reduce to the binary engine") {
        for (const Rat& theta : {Rat(1), Rat(2)}) {
            const GroupActionTable table = kcolor_burnside_action(3, 2, theta, {Rat(1), Rat(1)});
            CHECK(lumpability_check(table) == 0);
            const RowStochasticMatrix lumped = lump_matrix(table);
            const RowStochasticMatrix direct = build_matrix(ChainSpec{3, theta});
            // color-string orbits are ordered by first occurrence; map via
            // the ones-count of the orbit representatives
            const auto orbit = orbits_of(table);
            std::vector<int> ones_of_orbit(4, -1);
            for (int x = 0; x < table.state_count; ++x) {
                int ones = 0, v = x;
                for (int i = 0; i < 3; ++i) {
                    ones += v % 2;
                    v /= 2;
                }
                if (ones_of_orbit[orbit[x]] < 0) ones_of_orbit[orbit[x]] = ones;
            }
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    CHECK(lumped.at(a, b) == direct.at(ones_of_orbit[a], ones_of_orbit[b]));
        }
    }
    SUBCASE("cycle and state weights combine in the orbit law") {
        // three colors, theta = 2, gamma = (1, 1, 3): the mass of the orbit
        // with color counts (t0, t1, t2) is proportional to
        // (t0+1)(t1+1)(t2+1) 3^{t2}, since (2)_t / t! = t + 1
        const GroupActionTable table =
            kcolor_burnside_action(3, 3, Rat(2), {Rat(1), Rat(1), Rat(3)});
        CHECK(lumpability_check(table) == 0);
        const auto orbit = orbits_of(table);
        const auto pi = stationary_weights(table);
        const int norbits = 1 + *std::max_element(orbit.begin(), orbit.end());
        CHECK(norbits == 10);
        std::vector<Rat> lumped_pi(norbits, Rat(0));
        std::vector<std::array<int, 3>> counts_of_orbit(norbits, {-1, -1, -1});
        for (int x = 0; x < table.state_count; ++x) {
            lumped_pi[orbit[x]] += pi[x];
            std::array<int, 3> counts{0, 0, 0};
            int v = x;
            for (int i = 0; i < 3; ++i) {
                ++counts[v % 3];
                v /= 3;
            }
            counts_of_orbit[orbit[x]] = counts;
        }
        Rat normalizer(0);
        std::vector<Rat> expected(norbits);
        for (int o = 0; o < norbits; ++o) {
            const auto& t = counts_of_orbit[o];
            Rat mass((t[0] + 1) * (t[1] + 1) * (t[2] + 1));
            for (int e = 0; e < t[2]; ++e) mass *= 3;
            expected[o] = mass;
            normalizer += mass;
        }
        for (int o = 0; o < norbits; ++o) CHECK(lumped_pi[o] == expected[o] / normalizer);
    }
    SUBCASE("state weights tilt the orbit law exponentially") {
        // two colors with gamma = 2: lumped stationary mass prop to 2^t
        const GroupActionTable table = kcolor_burnside_action(3, 2, Rat(1), {Rat(1), Rat(2)});
        const auto orbit = orbits_of(table);
        const auto pi = stationary_weights(table);
        std::vector<Rat> lumped_pi(4, Rat(0));
        for (int x = 0; x < table.state_count; ++x) {
            int ones = 0, v = x;
            for (int i = 0; i < 3; ++i) {
                ones += v % 2;
                v /= 2;
            }
            lumped_pi[ones] += pi[x];
        }
        for (int t = 0; t <= 3; ++t) CHECK(lumped_pi[t] == make_rat(1L << t, 15));
        CHECK(lumpability_check(table) == 0);
    }
    SUBCASE("invalid tables are rejected") {
        GroupActionTable table = binary_burnside_action(2, Rat(1));
        table.weight_w[0] = Rat(0);
        CHECK_THROWS_AS(table.validate(), std::invalid_argument);
        GroupActionTable broken = binary_burnside_action(2, Rat(1));
        broken.elements[1][0] = broken.elements[1][1];
        CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
    }
}
