#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "opnorm/matrix.hpp"
#include "opnorm/numkernel.hpp"
#include "opnorm/reports.hpp"
#include "opnorm/spaces.hpp"

namespace opnorm {

// Injectivity threshold for composition: the factor applied to ||T||
// that sigma_min(T) must strictly exceed.
inline constexpr double kInjTolFactor = 1e-10;

// A map F from a normed space into the bounded operators on a
// finite-dimensional Hilbert space C^h, presented as Hermitian matrices.
// Intended to satisfy, and be checked against: F(x) >= 0 (PSD),
// F(x+y) <= F(x) + F(y) in the PSD order, F(ax) = |a| F(x), and
// F(x) = 0 only at x = 0.
struct LHValuedNorm {
    NormedSpaceModel domain;
    std::size_t hilbert_dim = 0;
    std::function<Matrix(const CVec&)> evaluator;
    std::string descriptor;

    // Validates the input (dimension, finiteness) and the output shape.
    Matrix operator()(const CVec& x) const;
};

// F(x) = ||x|| * I on C^h.
LHValuedNorm trivial_norm(NormedSpaceModel space, std::size_t hilbert_dim);

// Multiplication on grid functions: the domain is C^k under the sup norm
// over grid points, and F(g) = diag(|g_1|, ..., |g_k|) acting on l2 grid
// vectors. (Any positive quadrature weight on the grid gives the same
// operator matrix, so none appears here.)
LHValuedNorm mult_norm_l2(std::size_t grid_size);

// Pullback F(T x) along an injective endomorphism T of f's domain
// (square, same dimension). Rejects T unless
// sigma_min(T) > kInjTolFactor * ||T||, since a kernel would break
// definiteness. The result lives on the same normed space.
LHValuedNorm compose_norm(const LHValuedNorm& f, const Matrix& t);

// Deliberately broken fixture: subtracts shift * I from F(x) for x != 0.
// Fails positivity (and definiteness for small inputs); used to exercise
// the failure paths of the axiom checks.
LHValuedNorm adversarial_shift(const LHValuedNorm& f, double shift);

// Sampled check of the four axioms. Margins:
//   positivity:   min over samples of lambda_min(F(x)) / max(1, max_abs)
//   triangle:     min over pairs of lambda_min(F(x)+F(y)-F(x+y)) / scale,
//                 scale = max(1, max_abs(F(x)) + max_abs(F(y)))
//   homogeneity:  -max relative deviation of F(ax) from |a| F(x)
//   definiteness: min(tol - max_abs(F(0)), min over x of max_abs(F(x)) - tol)
// The first three pass iff margin >= -tol; definiteness iff margin >= 0.
// The first few samples are pinned to scales {1e-3, 1e-2, 1, 1e2}; the
// rest are log-uniform in [1e-2, 1e2].
AxiomReport check_lh_axioms(const LHValuedNorm& f, std::size_t samples,
                            std::uint64_t seed, double tol = 1e-9);

// max ||F(x)|| over sphere_samples unit vectors; nondecreasing in
// sphere_samples for a fixed seed.
double boundedness_estimate(const LHValuedNorm& f, std::size_t sphere_samples,
                            std::uint64_t seed);

namespace detail {
// Scale ladder used by sampled checks: fixed boundary scales first, then
// log-uniform in [1e-2, 1e2].
double ladder_scale(Rng& rng, std::size_t index);
}  // namespace detail

}  // namespace opnorm
