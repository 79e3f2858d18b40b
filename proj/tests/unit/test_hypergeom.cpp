#include "doctest.h"

#include <cmath>

#include "burnside/hypergeom.hpp"

using namespace burnside;

TEST_CASE("pochhammer basics and shift property") {
    CHECK(pochhammer(make_rat(7, 3), 0) == 1);
    CHECK(pochhammer(Rat(2), 3) == 24);
    CHECK(pochhammer(make_rat(1, 2), 2) == make_rat(3, 4));
    for (long num : {-5L, -1L, 1L, 3L, 7L}) {
        for (long den : {1L, 2L, 3L}) {
            const Rat a = make_rat(num, den);
            for (unsigned l = 0; l < 8; ++l)
                CHECK(pochhammer(a, l + 1) == pochhammer(a, l) * (a + static_cast<long>(l)));
        }
    }
}

TEST_CASE("terminating pFq basics") {
    // upper parameter 0 kills everything after the first term
    CHECK(pfq_terminating({Rat(0), make_rat(5, 2), Rat(3)}, {Rat(1), Rat(7)}, Rat(1)) == 1);
    CHECK(pfq_terminating({Rat(0)}, {make_rat(1, 3)}, make_rat(-2, 5)) == 1);
    CHECK(pfq_terminating({Rat(0), Rat(0), Rat(0)}, {make_rat(3, 2)}, Rat(1)) == 1);

    // 2F1(-1, b; c | 1) = 1 - b/c
    for (long b : {1L, 2L, 5L})
        for (long c : {3L, 4L, 7L})
            CHECK(pfq_terminating({Rat(-1), Rat(b)}, {Rat(c)}, Rat(1)) ==
                  Rat(1) - make_rat(b, c));

    // hand-summed 3F2(-2, 2theta+1, theta/2; theta, theta | 1) at theta = 1
    CHECK(pfq_terminating({Rat(-2), Rat(3), make_rat(1, 2)}, {Rat(1), Rat(1)}, Rat(1)) ==
          make_rat(1, 4));
}

TEST_CASE("terminating spec validation") {
    // no nonpositive-integer upper parameter
    CHECK_THROWS_AS(TerminatingSeriesSpec::create({make_rat(1, 2), Rat(3)}, {Rat(1)}, Rat(1)),
                    std::invalid_argument);
    // lower parameter pole before termination: (0)_1 = 0 with L = 2
    CHECK_THROWS_AS(TerminatingSeriesSpec::create({Rat(-2), Rat(1)}, {Rat(0)}, Rat(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(TerminatingSeriesSpec::create({Rat(-3)}, {Rat(-1)}, Rat(1)),
                    std::invalid_argument);
    // pole exactly at the termination boundary is fine: (-2)_l != 0 for l <= 2
    const auto spec = TerminatingSeriesSpec::create({Rat(-2), Rat(5)}, {Rat(-2)}, Rat(1));
    CHECK(spec.termination_index == 2);
    CHECK_NOTHROW(pfq_terminating(spec));
}

TEST_CASE("gauss 2F1(1) gamma-ratio oracle") {
    CHECK(gauss_2f1_at_1(Rat(-1), Rat(1), Rat(3)) == doctest::Approx(2.0 / 3).epsilon(1e-13));
    CHECK(gauss_2f1_at_1(Rat(-1), make_rat(3, 2), Rat(1)) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(gauss_2f1_at_1(Rat(-2), make_rat(5, 2), Rat(1)) == doctest::Approx(0.375).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_2f1_at_1(Rat(2), Rat(2), Rat(3)), std::domain_error);

    // cross-check against the exact terminating path on a parameter grid
    int points = 0;
    for (int m = 0; m <= 5; ++m) {
        const Rat a(-m);
        for (const Rat& b : {make_rat(1, 2), Rat(1), make_rat(3, 2), Rat(2), make_rat(-1, 2)}) {
            for (const Rat& c : {Rat(1), make_rat(3, 2), Rat(3), make_rat(7, 2)}) {
                if (!(a + b < c)) continue;
                if (is_nonpositive_integer(c) || is_nonpositive_integer(c - a) ||
                    is_nonpositive_integer(c - b))
                    continue;
                const double exact = to_double(pfq_terminating({a, b}, {c}, Rat(1)));
                CHECK(std::fabs(exact - gauss_2f1_at_1(a, b, c)) < 1e-12);
                ++points;
            }
        }
    }
    CHECK(points >= 40);
}

TEST_CASE("clausen residual vanishes on terminating instances") {
    // integer a <= -1 with b > -a keeps both sides terminating and every
    // lower parameter positive
    int points = 0;
    for (int ai = 1; ai <= 5; ++ai) {
        const Rat a(-ai);
        for (const Rat& shift : {make_rat(1, 4), make_rat(1, 2), Rat(1), make_rat(3, 2)}) {
            const Rat b = Rat(ai) + shift;
            for (double x : {0.0, 0.125, 0.25, 0.5, 0.75}) {
                CHECK(clausen_residual(a, b, x) < 1e-12);
                ++points;
            }
        }
    }
    CHECK(points >= 50);

    // a = b = -1: lower-parameter poles sit beyond both terminations
    CHECK(clausen_residual(Rat(-1), Rat(-1), 0.3) < 1e-12);
    CHECK(clausen_residual(Rat(-1), Rat(-1), 0.0) == 0.0);

    // a + b + 1/2 = 0 poisons the denominators at l = 1
    CHECK_THROWS_AS(clausen_residual(Rat(-1), make_rat(1, 2), 0.5), std::domain_error);
    CHECK_THROWS_AS(clausen_residual(make_rat(1, 4), make_rat(1, 4), 0.5), std::domain_error);
}

TEST_CASE("stirling gamma bounds hold on the grid") {
    CHECK(stirling_bound_check(1.0));
    CHECK(stirling_bound_check(10.0));
    CHECK(stirling_bound_check(0.5));
    for (int i = 1; i <= 500; ++i) CHECK(stirling_bound_check(i / 10.0));
}
