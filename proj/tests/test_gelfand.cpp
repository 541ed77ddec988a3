#include <cmath>

#include "doctest.h"
#include "opnorm/gelfand.hpp"
#include "opnorm/numkernel.hpp"
#include "opnorm/sampling.hpp"

using namespace opnorm;

namespace {

// Random span element with O(1) coefficients.
Matrix span_element(const CommutativeStarAlgebra& alg, Rng& rng) {
    CVec v(alg.class_count());
    for (auto& z : v) z = rng.cgauss();
    return alg.element_from_coeffs(v);
}

}  // namespace

TEST_CASE("a diagonal generator with a repeated eigenvalue merges slots") {
    const Matrix g = Matrix::diagonal(std::vector<double>{1.0, 2.0, 2.0});
    const auto alg = build_algebra({g});
    REQUIRE(alg.class_count() == 2);
    // Classes are ordered by their joint eigenvalue tuple.
    CHECK(std::abs(alg.joint_spectrum[0][0] - cplx(1.0)) < 1e-10);
    CHECK(std::abs(alg.joint_spectrum[1][0] - cplx(2.0)) < 1e-10);
    CHECK((alg.basis_elements[0] - Matrix::diagonal(std::vector<double>{1, 0, 0}))
              .max_abs() < 1e-10);
    CHECK((alg.basis_elements[1] - Matrix::diagonal(std::vector<double>{0, 1, 1}))
              .max_abs() < 1e-10);

    const auto chars = characters(alg);
    REQUIRE(chars.size() == 2);
    CHECK(std::abs(chars[0](g) - cplx(1.0)) < 1e-10);
    CHECK(std::abs(chars[1](g) - cplx(2.0)) < 1e-10);
    CHECK(std::abs(chars[0](Matrix::identity(3)) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(chars[1](Matrix::identity(3)) - cplx(1.0)) < 1e-12);
}

TEST_CASE("the identity generates the scalars") {
    const auto alg = build_algebra({Matrix::identity(4)});
    CHECK(alg.class_count() == 1);
    CHECK((alg.basis_elements[0] - Matrix::identity(4)).max_abs() < 1e-10);
    CHECK(characters(alg).size() == 1);
    const CVec gamma = gelfand_transform(alg, Matrix::identity(4));
    REQUIRE(gamma.size() == 1);
    CHECK(std::abs(gamma[0] - cplx(1.0)) < 1e-12);
}

TEST_CASE("a conjugated normal generator transforms to its sorted spectrum") {
    Rng rng(42);
    const Matrix u = random_unitary(rng, 4);
    const Matrix a =
        u * Matrix::diagonal(std::vector<double>{3.0, 3.0, -1.0, -1.0}) * u.adjoint();
    const auto alg = build_algebra({a});
    REQUIRE(alg.class_count() == 2);
    const CVec gamma = gelfand_transform(alg, a);
    CHECK(std::abs(gamma[0] - cplx(-1.0)) < 1e-8);
    CHECK(std::abs(gamma[1] - cplx(3.0)) < 1e-8);
    // The transform attains the operator norm on the character set.
    CHECK(FiniteCK::sup_norm(gamma) == doctest::Approx(spectral_norm(a)).epsilon(1e-8));
    // Projections resolve the identity.
    Matrix sum(4, 4);
    for (const Matrix& p : alg.basis_elements) sum += p;
    CHECK((sum - Matrix::identity(4)).max_abs() < 1e-10);
}

TEST_CASE("membership separates span elements from outsiders") {
    const Matrix g = Matrix::diagonal(std::vector<double>{1.0, 2.0, 4.0});
    const auto alg = build_algebra({g});
    const Matrix inside = g * g - 2.0 * g + 0.5 * Matrix::identity(3);
    CHECK(alg.membership_residual(inside) < 1e-12);

    Matrix outside(3, 3);
    outside(0, 1) = 1.0;
    outside(1, 0) = 1.0;
    CHECK(alg.membership_residual(outside) > 0.1);
    CHECK_THROWS_AS(gelfand_transform(alg, outside), std::invalid_argument);

    // Coefficients round trip through the span.
    const CVec v{cplx(2.0, 1.0), cplx(-1.0), cplx(0.0, 3.0)};
    const CVec w = alg.project_coefficients(alg.element_from_coeffs(v));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(w[i] - v[i]) < 1e-10);
}

TEST_CASE("two commuting generators build a joint algebra") {
    Rng rng(9);
    std::vector<CVec> diags;
    const auto gens = random_commuting_normal_family(rng, 6, 2, &diags);
    const auto alg = build_algebra(gens);
    CHECK(alg.ambient_dim == 6);
    CHECK(alg.class_count() >= 1);
    // Each generator is reconstructed from its joint spectrum.
    for (std::size_t g = 0; g < gens.size(); ++g) {
        Matrix rec(6, 6);
        for (std::size_t c = 0; c < alg.class_count(); ++c)
            rec += alg.joint_spectrum[c][g] * alg.basis_elements[c];
        CHECK((rec - gens[g]).max_abs() < 1e-7 * std::max(1.0, gens[g].max_abs()));
    }
    // Projections are orthogonal.
    for (std::size_t i = 0; i < alg.class_count(); ++i)
        for (std::size_t j = 0; j < alg.class_count(); ++j) {
            const Matrix prod = alg.basis_elements[i] * alg.basis_elements[j];
            if (i == j)
                CHECK((prod - alg.basis_elements[i]).max_abs() < 1e-9);
            else
                CHECK(prod.max_abs() < 1e-9);
        }
}

TEST_CASE("characters are unital and multiplicative on the span") {
    Rng rng(123);
    CVec eigs;
    const Matrix a = random_normal_matrix(rng, 5, &eigs);
    const auto alg = build_algebra({a});
    const auto chars = characters(alg);
    Rng pairs(7);
    for (std::size_t i = 0; i < 100; ++i) {
        const Matrix f = span_element(alg, pairs);
        const Matrix g = span_element(alg, pairs);
        const Matrix fg = f * g;
        CHECK(alg.membership_residual(fg) < 1e-8);
        for (const auto& phi : chars)
            CHECK(std::abs(phi(fg) - phi(f) * phi(g)) < 1e-9);
    }
    for (const auto& phi : chars)
        CHECK(std::abs(phi(Matrix::identity(5)) - cplx(1.0)) < 1e-12);
}

TEST_CASE("build_algebra rejects non-normal and non-commuting input") {
    Matrix shift(2, 2);
    shift(0, 1) = 1.0;
    CHECK_THROWS_WITH_AS(build_algebra({shift}),
                         "build_algebra: generator 0 is not normal (defect 1)",
                         std::invalid_argument);

    const Matrix a = Matrix::diagonal(std::vector<double>{1.0, 2.0});
    Matrix b(2, 2);
    b(0, 1) = 1.0;
    b(1, 0) = 1.0;
    CHECK_THROWS_AS(build_algebra({a, b}), std::invalid_argument);
    CHECK_THROWS_AS(build_algebra({}), std::invalid_argument);
    CHECK_THROWS_AS(build_algebra({a, Matrix::identity(3)}), std::invalid_argument);
}

TEST_CASE("nearby eigenvalues merge under the declared tolerance") {
    const Matrix g = Matrix::diagonal(std::vector<double>{1.0, 1.0 + 1e-12, 5.0});
    CHECK(build_algebra({g}).class_count() == 2);
    const Matrix h = Matrix::diagonal(std::vector<double>{1.0, 1.5, 5.0});
    CHECK(build_algebra({h}).class_count() == 3);
}

TEST_CASE("contractivity and isometry checks pass on random algebras") {
    Rng rng(56);
    for (std::size_t i = 0; i < 3; ++i) {
        const Matrix a = random_normal_matrix(rng, 4 + i);
        const auto alg = build_algebra({a});
        const auto con = check_contractive(alg, 150, derive_seed(90, i));
        CHECK(con.passed);
        CHECK(con.metrics.at("worst_excess") <= 1e-9);
        CHECK(std::abs(con.metrics.at("worst_equality_gap")) <= 1e-9);
        const auto iso = check_isometric(alg, 150, derive_seed(91, i));
        CHECK(iso.passed);
        CHECK(iso.metrics.at("worst_isometry_gap") <= 1e-9);
        CHECK(iso.metrics.at("worst_reconstruction") <= 1e-9);
    }
}

TEST_CASE("every coefficient vector is attained by its span element") {
    const Matrix g = Matrix::diagonal(std::vector<double>{1.0, 2.0});
    const auto alg = build_algebra({g});
    const CVec v{cplx(3.0), cplx(0.0, -1.0)};
    const Matrix b = alg.element_from_coeffs(v);
    const CVec gamma = gelfand_transform(alg, b);
    CHECK(std::abs(gamma[0] - v[0]) < 1e-10);
    CHECK(std::abs(gamma[1] - v[1]) < 1e-10);

    const Matrix fb = multiplicative_ovnorm_element(alg, b);
    CHECK((fb - Matrix::diagonal(std::vector<double>{3.0, 1.0})).max_abs() < 1e-10);
}

TEST_CASE("the character-set norm is multiplicative and isometric") {
    Rng rng(31);
    const Matrix a = random_normal_matrix(rng, 6);
    const auto alg = build_algebra({a});
    const auto f = multiplicative_ovnorm(alg);
    CHECK(f.ck.point_count == alg.class_count());
    CHECK(f.ck.labels[0] == "phi0");

    Rng pairs(17);
    for (std::size_t i = 0; i < 50; ++i) {
        const Matrix x = span_element(alg, pairs);
        const Matrix y = span_element(alg, pairs);
        const Matrix lhs = multiplicative_ovnorm_element(alg, x * y);
        const Matrix rhs = multiplicative_ovnorm_element(alg, x) *
                           multiplicative_ovnorm_element(alg, y);
        CHECK((lhs - rhs).max_abs() < 1e-9);
        CHECK(op_norm_sup(multiplicative_ovnorm_element(alg, x)) ==
              doctest::Approx(spectral_norm(x)).epsilon(1e-9));
    }

    // As a C(K)-valued norm on coefficient vectors it satisfies the axioms.
    const auto rep = check_ck_axioms(f, 120, 60, 5150);
    CHECK(rep.all_passed());
}
