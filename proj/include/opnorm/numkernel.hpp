#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "opnorm/matrix.hpp"

namespace opnorm {

// Default tolerances. All residual bounds are relative: scaled by
// max(1, ||input||) so they behave sensibly near zero.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kEigTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kNormalTol = 1e-10;
inline constexpr double kSimDiagTol = 1e-9;

// Thrown when an iterative kernel fails to reach its residual bound.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;   // ascending
    Matrix basis;                      // unitary; column j pairs with eigenvalues[j]
};

// Full eigendecomposition of a Hermitian matrix (cyclic Jacobi).
// Rejects inputs whose Hermitian defect exceeds herm_tol * max(1, max_abs).
// Guarantees ||M V - V diag(lambda)||_max <= eig_tol * max(1, max_abs(M)).
EigenDecomposition hermitian_eig(const Matrix& m, double herm_tol = kHermTol,
                                 double eig_tol = kEigTol);

struct PsdResult {
    bool psd = true;
    double lambda_min = 0.0;   // +inf convention not used; 0 for empty input
    CVec witness;              // unit vector with (Mv,v) = lambda_min; empty when psd
};

// Positive semidefiniteness up to tol * max(1, ||M||): lambda_min >= -tol * scale.
PsdResult is_psd(const Matrix& m, double tol = kPsdTol, double herm_tol = kHermTol);

// Largest singular value. Errors on an empty matrix.
double spectral_norm(const Matrix& m);

// All eigenvalues of a general square matrix (Hessenberg reduction +
// shifted QR). Returned sorted by (real, imag) for reproducibility.
std::vector<cplx> eigenvalues(const Matrix& m);

// max |lambda|; zero for an empty matrix.
double spectral_radius(const Matrix& m);

// ||M M^H - M^H M||_max <= tol * max(1, max_abs(M)^2)
bool is_normal(const Matrix& m, double tol = kNormalTol);

// Numerical radius sup_{||h||=1} |(Mh,h)| evaluation strategies.
// ExactNormal requires a normal matrix (then the radius equals the
// spectral radius); Sampled gives a seeded lower bound that is
// nondecreasing in count for a fixed seed.
struct ExactNormal {};
struct Sampled {
    std::size_t count = 0;
    std::uint64_t seed = 0;
};
using RadiusStrategy = std::variant<ExactNormal, Sampled>;

double numerical_radius(const Matrix& m, const RadiusStrategy& strategy);

struct SimDiagResult {
    Matrix basis;                      // unitary
    std::vector<CVec> diagonals;       // per generator: diag(U^H G U)
};

// Common unitary eigenbasis of pairwise-commuting normal matrices.
// Randomized combination attempts with a seeded engine, then per-block
// refinement; throws ConvergenceError if the residual bound
// ||U^H G U - diag||_max <= tol * max(1, max_abs(G)) cannot be met.
SimDiagResult simultaneous_diagonalize(const std::vector<Matrix>& generators,
                                       double tol = kSimDiagTol,
                                       std::uint64_t seed = 17);

namespace detail {

// Splits the columns of `basis` into clusters where `values` (the current
// per-column diagonal of some generator) are closer than gap, then
// rediagonalizes each remaining generator restricted to each cluster.
// Exposed for direct testing of the refinement path.
void refine_blocks(Matrix& basis, const std::vector<Matrix>& hermitian_parts,
                   double gap);

Matrix hessenberg(Matrix m);   // unitary similarity, upper Hessenberg

}  // namespace detail

}  // namespace opnorm
