#include "opnorm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "opnorm/numkernel.hpp"

namespace opnorm {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.cgauss();
    return m;
}

Matrix random_hermitian(Rng& rng, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = cplx(rng.normal(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx z = rng.cgauss();
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

Matrix random_unitary(Rng& rng, std::size_t n) {
    if (n == 0) return Matrix(0, 0);
    return hermitian_eig(random_hermitian(rng, n)).basis;
}

Matrix random_gram(Rng& rng, std::size_t n, std::size_t inner) {
    if (inner == 0) inner = n;
    const Matrix a = random_matrix(rng, inner, n);
    Matrix g = a.adjoint() * a;
    // Hermitian to the bit, not just to roundoff.
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = cplx(g(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) g(j, i) = std::conj(g(i, j));
    }
    return g;
}

Matrix random_normal_matrix(Rng& rng, std::size_t n, CVec* eigs_out) {
    const Matrix u = random_unitary(rng, n);
    CVec eigs(n);
    for (auto& z : eigs) z = rng.cgauss();
    const Matrix m = u * Matrix::diagonal(eigs) * u.adjoint();
    if (eigs_out) {
        std::sort(eigs.begin(), eigs.end(), [](const cplx& a, const cplx& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        *eigs_out = std::move(eigs);
    }
    return m;
}

std::vector<Matrix> random_commuting_normal_family(Rng& rng, std::size_t n,
                                                   std::size_t count,
                                                   std::vector<CVec>* diags_out) {
    const Matrix u = random_unitary(rng, n);
    std::vector<Matrix> out;
    out.reserve(count);
    if (diags_out) diags_out->clear();
    for (std::size_t k = 0; k < count; ++k) {
        CVec d(n);
        for (auto& z : d) z = rng.cgauss();
        out.push_back(u * Matrix::diagonal(d) * u.adjoint());
        if (diags_out) diags_out->push_back(std::move(d));
    }
    return out;
}

Matrix random_well_conditioned(Rng& rng, std::size_t n, double condition) {
    if (n == 0) return Matrix(0, 0);
    if (!(condition >= 1.0))
        throw std::invalid_argument("random_well_conditioned: condition must be >= 1");
    const Matrix u = random_unitary(rng, n);
    const Matrix v = random_unitary(rng, n);
    std::vector<double> sigma(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (n == 1) ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        sigma[i] = std::pow(condition, -t);
    }
    return u * Matrix::diagonal(sigma) * v.adjoint();
}

}  // namespace opnorm
