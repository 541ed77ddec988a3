#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "opnorm/matrix.hpp"
#include "opnorm/reports.hpp"
#include "opnorm/spaces.hpp"

namespace opnorm {

// Finite stand-in for a compact point set: functions on it are complex
// k-vectors under the sup norm.
struct FiniteCK {
    std::size_t point_count = 0;
    std::vector<std::string> labels;

    // k equispaced points of [0,1], labeled by coordinate.
    static FiniteCK grid01(std::size_t k);
    // k points labeled prefix0..prefix{k-1}.
    static FiniteCK points(std::size_t k, const std::string& prefix);

    static double sup_norm(const CVec& f);   // max_i |f_i|
};

// A map F from a normed space into the k x k operators on functions over
// a finite point set. Intended to satisfy: F(x) preserves the
// nonnegative cone, F(x)+F(y)-F(x+y) does too, F(ax) = |a| F(x), and
// F(x) = 0 only at x = 0.
struct CKValuedNorm {
    NormedSpaceModel domain;
    FiniteCK ck;
    std::function<Matrix(const CVec&)> evaluator;
    std::string descriptor;

    Matrix operator()(const CVec& x) const;
};

struct ConeResult {
    bool preserving = true;
    // On failure: T applied to basis vector e_j exposes the bad entry.
    std::size_t witness_col = 0;
    std::size_t witness_row = 0;
    cplx entry{0.0};
    // Largest of (-Re, |Im|) over entries; <= tol when preserving.
    double violation = 0.0;
};

// On a finite point set, T preserves the nonnegative cone iff T is
// entrywise nonnegative real: real part >= -tol, |imag| <= tol.
ConeResult cone_preserving(const Matrix& t, double tol);

// Multiplication norm on grid functions: domain is C^k under the sup
// norm over the k-point grid of [0,1]; F(g) = diag(|g_1|,...,|g_k|).
CKValuedNorm mult_norm_ck(std::size_t grid_size);

// Operator norm induced by the sup norm: max row sum of moduli.
double op_norm_sup(const Matrix& t);

// Sampled check of the four cone axioms. Cone positivity tests every
// F(x) via cone_preserving; the triangle difference F(x)+F(y)-F(x+y) is
// certified by cone preservation when it holds, else by direct
// evaluation on f_samples sampled nonnegative functions (the report
// notes which route each pair took). Homogeneity and definiteness
// mirror check_lh_axioms with op_norm_sup as the size gauge.
AxiomReport check_ck_axioms(const CKValuedNorm& f, std::size_t x_samples,
                            std::size_t f_samples, std::uint64_t seed,
                            double tol = 1e-9);

// Broken fixture: subtracts shift from the (0,0) entry off the origin,
// so cone positivity fails with a witness.
CKValuedNorm adversarial_ck_shift(const CKValuedNorm& f, double shift);

}  // namespace opnorm
