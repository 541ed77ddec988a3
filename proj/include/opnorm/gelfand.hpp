#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opnorm/ck_norms.hpp"
#include "opnorm/matrix.hpp"
#include "opnorm/reports.hpp"

namespace opnorm {

// Span of the joint spectral projections of a commuting normal family in
// M_d(C): the maximal commutative *-algebra containing the generators.
// Unital and self-adjoint by construction; every element is normal and the
// product of two span elements stays in the span.
struct CommutativeStarAlgebra {
    std::size_t ambient_dim = 0;               // d
    std::vector<Matrix> generators;
    Matrix basis;                              // unitary U diagonalizing every generator
    std::vector<std::vector<std::size_t>> classes;  // slot partition; together all of 0..d-1
    std::vector<CVec> joint_spectrum;          // per class: one eigenvalue per generator
    std::vector<Matrix> basis_elements;        // P_c = U diag(1_c) U^H, orthogonal, sum = I
    double merge_tol = 1e-8;                   // slot-merging tolerance used at build time

    std::size_t class_count() const { return classes.size(); }

    // Coefficients of the span element closest to f: per-class average of the
    // diagonal of U^H f U.
    CVec project_coefficients(const Matrix& f) const;

    // max_abs(f - sum_c coeff_c P_c) / max(1, max_abs(f)). Zero (to roundoff)
    // exactly when f lies in the span.
    double membership_residual(const Matrix& f) const;

    Matrix element_from_coeffs(const CVec& v) const;   // sum_c v_c P_c
};

// Multiplicative functional on the algebra, realized by evaluation against a
// unit column of the diagonalizing basis: phi(f) = <f v, v>. Satisfies
// phi(1) = 1 and phi(fg) = phi(f) phi(g) on the span.
struct Character {
    std::size_t index = 0;   // class index
    std::size_t slot = 0;    // representative diagonal slot
    CVec vector;             // corresponding basis column, unit length

    cplx operator()(const Matrix& f) const;
};

// Simultaneously diagonalizes the generators, merges diagonal slots whose
// joint eigenvalue tuples agree within merge_tol (single linkage), and
// assembles the projection basis. Throws std::invalid_argument naming the
// offending generator (or pair) when one is non-normal or two fail to
// commute; ConvergenceError if the joint diagonalization does not settle.
CommutativeStarAlgebra build_algebra(const std::vector<Matrix>& generators,
                                     double tol = 1e-10, std::uint64_t seed = 17,
                                     double merge_tol = 1e-8);

// One character per class. Throws std::runtime_error if two classes are not
// separated by the generators (degenerate merge; rebuild with another seed
// or a coarser merge tolerance).
std::vector<Character> characters(const CommutativeStarAlgebra& algebra);

// (Gamma f)_i = phi_i(f), computed as per-class diagonal averages. Requires
// membership_residual(f) <= membership_tol; throws std::invalid_argument
// reporting the residual otherwise. Linear in f, and Gamma(I) is all-ones.
CVec gelfand_transform(const CommutativeStarAlgebra& algebra, const Matrix& f,
                       double membership_tol = 1e-8);

// Samples span elements and checks max_i |phi_i(f)| <= spectral_norm(f) + 1e-9.
// Every span element is normal, so the two sides must in fact agree; the
// report carries both the worst excess and the worst equality gap.
CheckReport check_contractive(const CommutativeStarAlgebra& algebra,
                              std::size_t samples, std::uint64_t seed);

// Checks | sup_i |(Gamma f)_i| - spectral_norm(f) | <= 1e-9 * max(1, norm)
// on sampled f, and that every coefficient vector v is attained:
// Gamma(sum v_c P_c) = v within 1e-9.
CheckReport check_isometric(const CommutativeStarAlgebra& algebra,
                            std::size_t samples, std::uint64_t seed);

// The C(K)-valued norm over the character set: domain = coefficient vectors
// indexed by characters (sup norm), evaluator(v) = diag(|v|). Under
// v = Gamma(b) this is multiplication by |Gamma b|, so it is multiplicative:
// F(ab) = F(a) F(b), and op_norm_sup(F(b)) equals the element norm of b.
CKValuedNorm multiplicative_ovnorm(const CommutativeStarAlgebra& algebra);

// Same norm applied directly to an algebra element: diag(|Gamma b|).
Matrix multiplicative_ovnorm_element(const CommutativeStarAlgebra& algebra,
                                     const Matrix& b);

}  // namespace opnorm
