#include "doctest.h"

#include <cstdlib>
#include <sstream>

#include "burnside/io.hpp"

using namespace burnside;

TEST_CASE("parse_rational") {
    CHECK(parse_rational("3/4") == make_rat(3, 4));
    CHECK(parse_rational("-1/3") == make_rat(-1, 3));
    CHECK(parse_rational("2") == Rat(2));
    CHECK(parse_rational("0.25") == make_rat(1, 4));
    CHECK(parse_rational("1.5") == make_rat(3, 2));
    CHECK(parse_rational("0.1") == make_rat(1, 10));  // exact decimal, not a double
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}

TEST_CASE("format round-trips") {
    for (const Rat& q : {make_rat(3, 7), Rat(0), Rat(-5), make_rat(-22, 6)})
        CHECK(parse_rational(format_rational(q)) == q);
    for (double x : {0.1, 1.0 / 3.0, 0x1p-52, 1e-300, 123456.789})
        CHECK(std::strtod(fmt17(x).c_str(), nullptr) == x);
}

TEST_CASE("matrix json round trip is lossless and stable") {
    const RowStochasticMatrix matrix = build_matrix(ChainSpec{5, make_rat(3, 2)});
    OutputMetadata meta;
    meta.command = "matrix";
    meta.config = {{"n", "5"}, {"theta", "3/2"}};
    std::ostringstream first;
    write_matrix_json(first, matrix, meta);

    std::istringstream in(first.str());
    const RowStochasticMatrix parsed = read_matrix_json(in);
    REQUIRE(parsed.order() == matrix.order());
    for (int i = 0; i < matrix.order(); ++i)
        for (int j = 0; j < matrix.order(); ++j) CHECK(parsed.at(i, j) == matrix.at(i, j));

    std::ostringstream second;
    write_matrix_json(second, parsed, meta);
    CHECK(first.str() == second.str());
}

TEST_CASE("csv output carries metadata and full-precision entries") {
    const RowStochasticMatrix matrix = build_matrix(ChainSpec{2, Rat(1)});
    OutputMetadata meta;
    meta.command = "matrix";
    meta.config = {{"n", "2"}, {"theta", "1"}};
    meta.seed = 42;
    meta.has_seed = true;
    std::ostringstream out;
    write_matrix_csv(out, matrix, meta);
    const std::string text = out.str();
    CHECK(text.find("# command: matrix") != std::string::npos);
    CHECK(text.find("# seed: 42") != std::string::npos);
    CHECK(text.find("# version: ") != std::string::npos);
    CHECK(text.find("0.375,0.25,0.375") != std::string::npos);
}
