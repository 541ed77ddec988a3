#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "opnorm/numkernel.hpp"
#include "opnorm/sampling.hpp"
#include "support/oracles.hpp"

using namespace opnorm;

namespace {

double offdiag_max(const Matrix& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

double unitary_defect(const Matrix& u) {
    const Matrix g = u.adjoint() * u;
    return (g - Matrix::identity(u.cols())).max_abs();
}

}  // namespace

TEST_CASE("hermitian_eig on a diagonal matrix sorts the spectrum") {
    const auto ed = hermitian_eig(Matrix::diagonal(std::vector<double>{3.0, 1.0, 2.0}));
    REQUIRE(ed.eigenvalues.size() == 3);
    CHECK(ed.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ed.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ed.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(unitary_defect(ed.basis) < 1e-12);
}

TEST_CASE("hermitian_eig reconstructs random Hermitian input") {
    Rng rng(7);
    const Matrix m = random_hermitian(rng, 6);
    const auto ed = hermitian_eig(m);
    const Matrix mv = m * ed.basis;
    Matrix vd = ed.basis;
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t i = 0; i < 6; ++i) vd(i, j) *= ed.eigenvalues[j];
    CHECK((mv - vd).max_abs() <= kEigTol * std::max(1.0, m.max_abs()));
    CHECK(unitary_defect(ed.basis) < 1e-12);
    CHECK(std::is_sorted(ed.eigenvalues.begin(), ed.eigenvalues.end()));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    Matrix m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("is_psd basics and witness quality") {
    CHECK(is_psd(Matrix::diagonal(std::vector<double>{1.0, 1e-12, 2.0})).psd);
    const auto bad = is_psd(Matrix::diagonal(std::vector<double>{1.0, -1e-6, 2.0}));
    CHECK_FALSE(bad.psd);
    CHECK(bad.lambda_min == doctest::Approx(-1e-6).epsilon(1e-6));
    REQUIRE(bad.witness.size() == 3);
    CHECK(vec_norm2(bad.witness) == doctest::Approx(1.0).epsilon(1e-12));
    // The witness attains the reported bottom eigenvalue.
    const cplx q = vec_inner(Matrix::diagonal(std::vector<double>{1.0, -1e-6, 2.0})
                                 .apply(bad.witness),
                             bad.witness);
    CHECK(q.real() == doctest::Approx(bad.lambda_min).epsilon(1e-9));

    Rng rng(11);
    CHECK(is_psd(random_gram(rng, 5)).psd);
    CHECK(is_psd(Matrix(0, 0)).psd);
}

TEST_CASE("is_psd agrees with the pivoted Cholesky oracle") {
    Rng rng(1234);
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < 300; ++i) {
        const std::size_t d = 2 + i % 7;
        Matrix m;
        switch (i % 4) {
            case 0: m = random_gram(rng, d); break;
            case 1: m = random_hermitian(rng, d); break;
            case 2: {
                m = random_gram(rng, d);
                for (std::size_t k = 0; k < d; ++k) m(k, k) += 1e-3;
                break;
            }
            default: {
                // Singular PSD: a Gram matrix of rank d-1.
                m = random_gram(rng, d, d > 1 ? d - 1 : 1);
                break;
            }
        }
        if (is_psd(m).psd != oracles::cholesky_psd(m, kPsdTol)) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("spectral_norm exact cases") {
    CHECK(spectral_norm(Matrix::diagonal(std::vector<double>{3.0, -4.0})) == 4.0);
    Matrix shift(2, 2);
    shift(0, 1) = 1.0;
    CHECK(spectral_norm(shift) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(spectral_norm(Matrix(0, 0)), std::invalid_argument);

    Rng rng(5);
    const Matrix m = random_matrix(rng, 6, 6);
    const double sn = spectral_norm(m);
    // Sampled lower bound never exceeds the norm; doubling scales exactly.
    CHECK(oracles::sampled_spectral_lower(m, 200, rng) <= sn * (1.0 + 1e-12));
    CHECK(spectral_norm(2.0 * m) == doctest::Approx(2.0 * sn).epsilon(1e-13));
}

TEST_CASE("eigenvalues handles rotations, Jordan blocks, and triangles") {
    Matrix rot(2, 2);
    rot(0, 1) = 1.0;
    rot(1, 0) = -1.0;
    const auto ev = eigenvalues(rot);
    REQUIRE(ev.size() == 2);
    CHECK(std::abs(ev[0] - cplx(0.0, -1.0)) < 1e-10);
    CHECK(std::abs(ev[1] - cplx(0.0, 1.0)) < 1e-10);

    Matrix shift(2, 2);
    shift(0, 1) = 1.0;
    for (const cplx& z : eigenvalues(shift)) CHECK(std::abs(z) < 1e-8);
    CHECK(spectral_radius(shift) < 1e-8);

    Matrix tri(3, 3);
    tri(0, 0) = 2.0;
    tri(1, 1) = cplx(0.0, 1.0);
    tri(2, 2) = -1.0;
    tri(0, 1) = 5.0;
    tri(0, 2) = -3.0;
    tri(1, 2) = 0.5;
    auto tv = eigenvalues(tri);
    // Sorted by (re, im): -1, i, 2.
    CHECK(std::abs(tv[0] - cplx(-1.0, 0.0)) < 1e-9);
    CHECK(std::abs(tv[1] - cplx(0.0, 1.0)) < 1e-9);
    CHECK(std::abs(tv[2] - cplx(2.0, 0.0)) < 1e-9);
}

TEST_CASE("eigenvalues match the generating spectrum of normal matrices") {
    Rng rng(21);
    CVec want;
    const Matrix m = random_normal_matrix(rng, 7, &want);
    auto got = eigenvalues(m);
    REQUIRE(got.size() == want.size());
    // Both lists are (re, im)-sorted; compare pointwise.
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) < 1e-8 * std::max(1.0, m.max_abs()));
}

TEST_CASE("is_normal distinguishes normal from non-normal") {
    Rng rng(3);
    CHECK(is_normal(random_hermitian(rng, 5)));
    CHECK(is_normal(random_normal_matrix(rng, 5)));
    Matrix shift(2, 2);
    shift(0, 1) = 1.0;
    CHECK_FALSE(is_normal(shift));
}

TEST_CASE("numerical_radius: exact strategy equals spectral radius on normal input") {
    const Matrix m = Matrix::diagonal(CVec{cplx(1.0), cplx(-2.0), cplx(0.0, 1.5)});
    CHECK(numerical_radius(m, ExactNormal{}) == doctest::Approx(2.0).epsilon(1e-12));
    Matrix shift(2, 2);
    shift(0, 1) = 1.0;
    CHECK_THROWS_AS(numerical_radius(shift, ExactNormal{}), std::invalid_argument);
}

TEST_CASE("numerical_radius: sampled bound is monotone in count and tight for the shift") {
    Matrix shift(2, 2);
    shift(0, 1) = 1.0;
    const double r1 = numerical_radius(shift, Sampled{500, 42});
    const double r2 = numerical_radius(shift, Sampled{5000, 42});
    const double r3 = numerical_radius(shift, Sampled{20000, 42});
    CHECK(r1 <= r2);
    CHECK(r2 <= r3);
    // sup |<Mh,h>| = 1/2 for the nilpotent shift; the sample sup is a
    // lower bound approaching it.
    CHECK(r3 > 0.499);
    CHECK(r3 <= 0.5 + 1e-12);
}

TEST_CASE("simultaneous_diagonalize recovers a common eigenbasis") {
    Rng rng(77);
    std::vector<CVec> diags;
    const auto gens = random_commuting_normal_family(rng, 6, 3, &diags);
    const auto sd = simultaneous_diagonalize(gens);
    CHECK(unitary_defect(sd.basis) < 1e-10);
    REQUIRE(sd.diagonals.size() == gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const Matrix conj = sd.basis.adjoint() * gens[g] * sd.basis;
        CHECK(offdiag_max(conj) <= kSimDiagTol * std::max(1.0, gens[g].max_abs()));
        // The recovered diagonal is the generating one up to column order.
        CVec got = sd.diagonals[g], want = diags[g];
        auto lex = [](const cplx& a, const cplx& b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        };
        std::sort(got.begin(), got.end(), lex);
        std::sort(want.begin(), want.end(), lex);
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(std::abs(got[i] - want[i]) < 1e-8 * std::max(1.0, gens[g].max_abs()));
    }
}

TEST_CASE("simultaneous_diagonalize needs the refinement path on degenerate spectra") {
    Rng rng(13);
    const Matrix u = random_unitary(rng, 4);
    const Matrix g1 =
        u * Matrix::diagonal(std::vector<double>{1.0, 1.0, 2.0, 2.0}) * u.adjoint();
    const Matrix g2 =
        u * Matrix::diagonal(std::vector<double>{3.0, 4.0, 5.0, 6.0}) * u.adjoint();
    const auto sd = simultaneous_diagonalize({g1, g2});
    for (const Matrix& g : {g1, g2}) {
        const Matrix conj = sd.basis.adjoint() * g * sd.basis;
        CHECK(offdiag_max(conj) <= kSimDiagTol * std::max(1.0, g.max_abs()));
    }
}

TEST_CASE("simultaneous_diagonalize rejects bad input") {
    Matrix shift(2, 2);
    shift(0, 1) = 1.0;
    CHECK_THROWS_AS(simultaneous_diagonalize({shift}), std::invalid_argument);
    CHECK_THROWS_AS(simultaneous_diagonalize({}), std::invalid_argument);

    Matrix a = Matrix::diagonal(std::vector<double>{1.0, 2.0});
    Matrix b(2, 2);   // Hermitian but does not commute with a
    b(0, 1) = 1.0;
    b(1, 0) = 1.0;
    CHECK_THROWS_AS(simultaneous_diagonalize({a, b}), std::invalid_argument);
}

TEST_CASE("hessenberg preserves the spectrum and kills the lower triangle") {
    Rng rng(99);
    const Matrix m = random_matrix(rng, 5, 5);
    const Matrix h = detail::hessenberg(m);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) CHECK(std::abs(h(i, j)) < 1e-13);
    auto em = eigenvalues(m), eh = eigenvalues(h);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(std::abs(em[i] - eh[i]) < 1e-7 * std::max(1.0, m.max_abs()));
}
