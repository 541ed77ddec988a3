#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opnorm/matrix.hpp"
#include "opnorm/rng.hpp"

namespace opnorm {

enum class ScalarField { Real, Complex };

// A finite-dimensional normed space given by a computable norm oracle.
// Three oracle families are supported: lp norms (p in [1, inf]), a max
// over finitely many linear functionals, and the same with the sup taken
// over an explicit dual polytope description. The last two share storage;
// the polytope flavor additionally asserts that the functional list is
// exactly the extreme points of the dual ball.
class NormedSpaceModel {
public:
    // Empty placeholder (dim 0); assign a real space before use.
    NormedSpaceModel() = default;

    static NormedSpaceModel lp(std::size_t dim, double p,
                               ScalarField field = ScalarField::Complex,
                               std::string label = "");
    static NormedSpaceModel functional_sup(std::size_t dim,
                                           std::vector<CVec> functionals,
                                           ScalarField field = ScalarField::Complex,
                                           std::string label = "");
    static NormedSpaceModel dual_polytope(std::size_t dim,
                                          std::vector<CVec> extreme_points,
                                          ScalarField field = ScalarField::Real,
                                          std::string label = "");

    std::size_t dim() const noexcept { return dim_; }
    ScalarField field() const noexcept { return field_; }
    const std::string& label() const noexcept { return label_; }

    double norm(const CVec& x) const;

    bool is_lp() const noexcept { return kind_ == Kind::Lp; }
    bool is_dual_polytope() const noexcept { return kind_ == Kind::DualPolytope; }
    double p() const;                          // throws unless is_lp()
    const std::vector<CVec>& functionals() const;  // throws if is_lp()

    // Gaussian sample respecting the scalar field.
    CVec sample(Rng& rng) const;
    // Sample normalized to norm 1; retries on (measure-zero) zero draws.
    CVec sample_unit(Rng& rng) const;

private:
    enum class Kind { Lp, FunctionalSup, DualPolytope };

    Kind kind_ = Kind::Lp;
    std::size_t dim_ = 0;
    double p_ = 2.0;
    ScalarField field_ = ScalarField::Complex;
    std::vector<CVec> functionals_;
    std::string label_;
};

}  // namespace opnorm
