#include <cmath>

#include "doctest.h"
#include "opnorm/analysis.hpp"
#include "opnorm/sampling.hpp"

using namespace opnorm;

TEST_CASE("sequence specs generate what they promise") {
    const CVec x0{cplx(2.0), cplx(-1.0)};

    const auto geo = CauchySequenceSpec::geometric(x0, 0.5, 5).generate();
    REQUIRE(geo.size() == 5);
    CHECK(geo[0][0] == cplx(2.0));
    CHECK(geo[3][0] == cplx(0.25));
    CHECK(geo[3][1] == cplx(-0.125));

    const CVec lim{cplx(1.0), cplx(1.0)};
    const auto con = CauchySequenceSpec::convergent(x0, lim, 4).generate();
    REQUIRE(con.size() == 4);
    // Distance to the limit halves each step.
    CHECK(std::abs(con[2][0] - lim[0]) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(con[3][1] - lim[1]) == doctest::Approx(0.25).epsilon(1e-15));

    const auto cus = CauchySequenceSpec::custom({x0, lim, x0}).generate();
    REQUIRE(cus.size() == 3);
    CHECK(cus[1][1] == lim[1]);
}

TEST_CASE("sequence specs reject unusable parameters") {
    const CVec x0{cplx(1.0)};
    CHECK_THROWS_AS(CauchySequenceSpec::geometric(x0, 1.0, 5).generate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(CauchySequenceSpec::geometric(x0, -0.5, 5).generate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(CauchySequenceSpec::geometric(x0, 0.5, 0).generate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(CauchySequenceSpec::geometric(x0, 0.5, 101).generate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(CauchySequenceSpec::convergent(x0, CVec{cplx(1.0), cplx(2.0)}, 5)
                        .generate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        CauchySequenceSpec::custom({x0, CVec{cplx(NAN, 0.0)}}).generate(),
        std::invalid_argument);
    CHECK_THROWS_AS(CauchySequenceSpec::custom({x0, CVec{cplx(1.0), cplx(2.0)}})
                        .generate(),
                    std::invalid_argument);
}

TEST_CASE("subadditivity and reverse triangle hold for multiplication") {
    const auto f = mult_norm_l2(6);
    const auto sub = check_norm_subadditivity(f, 300, 321);
    CHECK(sub.passed);
    CHECK(sub.metrics.at("worst_slack") >= -1e-9);
    const auto rev = check_reverse_triangle(f, 300, 321);
    CHECK(rev.passed);
    CHECK(rev.metrics.at("worst_slack") >= -1e-9);
}

TEST_CASE("subadditivity flags the shifted fixture via the pinned x = y pair") {
    const auto broken =
        adversarial_shift(trivial_norm(NormedSpaceModel::lp(3, 2.0), 2), 0.01);
    const auto sub = check_norm_subadditivity(broken, 10, 5);
    CHECK_FALSE(sub.passed);
    CHECK_FALSE(sub.witness.empty());
    CHECK(sub.metrics.at("worst_slack") < 0.0);
}

TEST_CASE("continuity_modulus equals the radius for unit-Lipschitz norms") {
    const auto f = mult_norm_l2(4);
    const std::vector<double> radii{1.0, 0.1, 0.01};
    const auto table = continuity_modulus(f, radii, 50, 17);
    REQUIRE(table.moduli.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(table.moduli[i] == doctest::Approx(radii[i]).epsilon(1e-12));

    CHECK_THROWS_AS(continuity_modulus(f, {}, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(continuity_modulus(f, {0.1, 1.0}, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(continuity_modulus(f, {1.0, -0.1}, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(continuity_modulus(f, {1.0, 0.1}, 0, 0), std::invalid_argument);
}

TEST_CASE("cauchy_propagation with a caller-supplied Lipschitz constant") {
    const auto f = mult_norm_l2(4);
    const CVec x0{cplx(1.0), cplx(0.5), cplx(-0.25), cplx(0.0, 1.0)};
    const auto spec = CauchySequenceSpec::geometric(x0, 0.5, 20);
    const auto rep = cauchy_propagation(f, spec, 1.0, 99);
    CHECK(rep.passed);
    CHECK(rep.metrics.at("m_hat") == 1.0);
    CHECK(rep.samples == 20 * 19 / 2);
    CHECK(rep.metrics.at("worst_ratio") <= 1.0 + 1e-12);
    CHECK(rep.metrics.at("image_over_domain_modulus") <= 1.0 + 1e-9);
    CHECK(rep.metrics.at("max_chain1_excess") <= 1e-12);
    // Both tail indices exist and the observed tail never lags the
    // prediction computed from the known decay.
    CHECK(rep.metrics.at("image_tail_index_1e-8") <=
          rep.metrics.at("predicted_tail_index_1e-8"));
}

TEST_CASE("cauchy_propagation estimates the constant when none is given") {
    const auto f = mult_norm_l2(4);
    const CVec x0{cplx(2.0), cplx(1.0), cplx(0.0), cplx(0.5)};
    const auto rep =
        cauchy_propagation(f, CauchySequenceSpec::geometric(x0, 0.6, 15), 0.0, 7);
    CHECK(rep.passed);
    CHECK(rep.metrics.at("m_hat") >= rep.metrics.at("m_hat_base"));
    CHECK(rep.metrics.at("m_hat") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cauchy_propagation accepts a constant sequence") {
    const auto f = mult_norm_l2(3);
    const CVec t{cplx(1.0), cplx(2.0), cplx(3.0)};
    const auto rep =
        cauchy_propagation(f, CauchySequenceSpec::custom({t, t, t, t}), 1.0, 0);
    CHECK(rep.passed);
    CHECK(rep.metrics.at("image_over_domain_modulus") == 0.0);
}

TEST_CASE("cauchy_propagation rejects sequences from another space") {
    const auto f = mult_norm_l2(3);
    CHECK_THROWS_AS(
        cauchy_propagation(f, CauchySequenceSpec::geometric(CVec{cplx(1.0)}, 0.5, 5)),
        std::invalid_argument);
}

TEST_CASE("completeness_certificate holds for multiplication with constant one") {
    const auto rep = completeness_certificate(mult_norm_l2(4), 31337);
    CHECK(rep.passed);
    CHECK(rep.metrics.at("m_hat") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.metrics.at("battery_sequences") == 40.0);
    CHECK(rep.metrics.at("failed_sequences") == 0.0);
    CHECK(rep.metrics.at("worst_modulus_excess") <= 1e-9);
    CHECK(rep.metrics.at("worst_battery_ratio") <= 1.0 + 1e-9);
    CHECK(rep.witness.empty());
}

TEST_CASE("completeness_certificate covers the composed family") {
    Rng rng(4);
    const auto f = compose_norm(mult_norm_l2(4), random_well_conditioned(rng, 4, 10.0));
    const auto rep = completeness_certificate(f, 8);
    CHECK(rep.passed);
    CHECK(rep.metrics.at("m_hat") >= rep.metrics.at("m_hat_base"));
}
