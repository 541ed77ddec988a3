#include <cmath>
#include <limits>

#include "doctest.h"
#include "opnorm/json_io.hpp"
#include "opnorm/matrix.hpp"
#include "opnorm/sampling.hpp"

using namespace opnorm;
using nlohmann::json;

TEST_CASE("matrix json round trip is bit exact") {
    Matrix m(2, 3);
    m(0, 0) = cplx(1.0 / 3.0, -2.0 / 7.0);
    m(0, 1) = cplx(1e-300, 1e300);
    m(0, 2) = cplx(-0.0, 0.0);
    m(1, 0) = cplx(0.1, 0.2);
    m(1, 1) = cplx(-5.0, std::nextafter(1.0, 2.0));
    m(1, 2) = cplx(3.0, 0.0);

    const std::string text = matrix_to_json(m).dump();
    const Matrix back = matrix_from_json(json::parse(text));
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(back(i, j).real() == m(i, j).real());
            CHECK(back(i, j).imag() == m(i, j).imag());
        }
    CHECK(std::signbit(back(0, 2).real()));
}

TEST_CASE("matrix json round trip on random data") {
    Rng rng(99);
    const Matrix m = random_matrix(rng, 5, 4);
    const Matrix back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("matrix parse errors name the bad field") {
    CHECK_THROWS_WITH_AS(matrix_from_json(json::array()), "matrix: expected an object",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(matrix_from_json(json{{"cols", 2}, {"entries", json::array()}}),
                         "matrix: missing field 'rows'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        matrix_from_json(json{{"rows", -1}, {"cols", 2}, {"entries", json::array()}}),
        "matrix: field 'rows' must be a nonnegative integer", std::invalid_argument);
    CHECK_THROWS_WITH_AS(matrix_from_json(json{{"rows", 1}, {"cols", 2}}),
                         "matrix: missing or non-array field 'entries'",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        matrix_from_json(json{{"rows", 2},
                              {"cols", 1},
                              {"entries", json::array({json::array({1.0, 0.0})})}}),
        "matrix: expected 2 entries, got 1", std::invalid_argument);

    json j{{"rows", 2}, {"cols", 2}, {"entries", json::array()}};
    for (int k = 0; k < 4; ++k) j["entries"].push_back(json::array({1.0, 0.0}));
    j["entries"][3] = json::array({1.0});
    CHECK_THROWS_WITH_AS(matrix_from_json(j), "entries[3]: expected [re, im]",
                         std::invalid_argument);
    j["entries"][3] = "nope";
    CHECK_THROWS_WITH_AS(matrix_from_json(j), "entries[3]: expected [re, im]",
                         std::invalid_argument);
}

TEST_CASE("non-finite values are rejected in both directions") {
    Matrix bad(1, 1);
    bad(0, 0) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(matrix_to_json(bad), std::invalid_argument);

    // JSON text cannot spell infinity, but a document built in code can
    // carry one; the reader must still refuse it.
    json j{{"rows", 1}, {"cols", 1}};
    j["entries"] = json::array(
        {json::array({std::numeric_limits<double>::infinity(), 0.0})});
    CHECK_THROWS_WITH_AS(matrix_from_json(j), "entries[0]: non-finite value",
                         std::invalid_argument);

    CVec v{cplx(std::numeric_limits<double>::infinity(), 0.0)};
    CHECK_THROWS_AS(cvec_to_json(v), std::invalid_argument);
}

TEST_CASE("cvec json round trip and errors") {
    const CVec v{cplx(1.5, -2.5), cplx(0.0, 1e-17), cplx(-7.0, 0.0)};
    const CVec back = cvec_from_json(json::parse(cvec_to_json(v).dump()));
    REQUIRE(back.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);

    CHECK(cvec_from_json(json::array()).empty());
    CHECK_THROWS_WITH_AS(cvec_from_json(json::object()),
                         "vector: expected an array of [re, im] pairs",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(cvec_from_json(json::array({json::array({1.0, 2.0, 3.0})})),
                         "vector[0]: expected [re, im]", std::invalid_argument);
}

TEST_CASE("empty matrix survives the round trip") {
    const Matrix m(0, 0);
    const Matrix back = matrix_from_json(matrix_to_json(m));
    CHECK(back.rows() == 0);
    CHECK(back.cols() == 0);
}
