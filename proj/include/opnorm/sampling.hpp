#pragma once

#include <cstddef>
#include <vector>

#include "opnorm/matrix.hpp"
#include "opnorm/rng.hpp"

namespace opnorm {

// Deterministic random model matrices for tests and suite drivers. All
// draw only from the passed Rng, so a fixed seed fixes every output.

// iid standard complex gaussian entries.
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

Matrix random_hermitian(Rng& rng, std::size_t n);

// Eigenbasis of a random Hermitian matrix: Haar-like, exactly unitary to
// roundoff.
Matrix random_unitary(Rng& rng, std::size_t n);

// A^H A for a random inner x n matrix (inner = n when 0): PSD, rank
// min(inner, n) almost surely.
Matrix random_gram(Rng& rng, std::size_t n, std::size_t inner = 0);

// U diag(eigs) U^H with random unitary U. When eigs_out is non-null the
// drawn eigenvalues are returned, sorted by (re, im).
Matrix random_normal_matrix(Rng& rng, std::size_t n, CVec* eigs_out = nullptr);

// count normal matrices sharing one eigenbasis (hence pairwise commuting).
// diags_out, when non-null, receives each matrix's eigenvalue vector in
// basis order.
std::vector<Matrix> random_commuting_normal_family(Rng& rng, std::size_t n,
                                                   std::size_t count,
                                                   std::vector<CVec>* diags_out = nullptr);

// U diag(sigma) V^H with singular values log-spaced in [1/condition, 1];
// condition must be >= 1.
Matrix random_well_conditioned(Rng& rng, std::size_t n, double condition = 10.0);

}  // namespace opnorm
