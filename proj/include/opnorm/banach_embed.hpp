#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "opnorm/ck_norms.hpp"
#include "opnorm/matrix.hpp"
#include "opnorm/spaces.hpp"

namespace opnorm {

// How to pick the functionals. Exact enumerates the extreme points of the
// dual ball (sign covectors for real l1 with n <= 16, +/- coordinate covectors for
// linf, the supplied extreme points for polytope norms; other norms have no
// enumeration and are rejected). Sampled draws `count` unit covectors; for
// the real Euclidean plane these are equispaced directions with a seeded
// rotation offset, which carries a covering guarantee. UserSupplied takes
// explicit covectors, certified to lie in the dual ball before acceptance.
struct ExactDual {};
struct SampledDual {
    std::size_t count = 0;
    std::uint64_t seed = 0;
};
struct UserSuppliedDual {
    std::vector<CVec> functionals;
};
using DualBallStrategy = std::variant<ExactDual, SampledDual, UserSuppliedDual>;

enum class DiscretizationKind { Exact, Sampled, UserSupplied };

// What the finite functional set promises about sup_i |phi_i(b)| vs ||b||.
// Exact: equality within roundoff. Bounded: ||b|| - sup <= defect_coeff *
// ||b||. None: one-sided bound only (sup never exceeds the norm).
enum class DefectGuarantee { Exact, Bounded, None };

struct DualBallDiscretization {
    NormedSpaceModel space;
    std::vector<CVec> functionals;   // each with dual norm <= 1 (+1e-9 for user input)
    DiscretizationKind kind = DiscretizationKind::Exact;
    DefectGuarantee guarantee = DefectGuarantee::None;
    double defect_coeff = 0.0;       // meaningful when guarantee == Bounded
};

struct EmbeddingReport {
    std::size_t samples = 0;
    double max_defect = 0.0;    // max over b of ||b|| - sup_i |phi_i(b)|
    double min_defect = 0.0;
    double defect_coeff = 0.0;  // echo of the discretization's bound
    DefectGuarantee guarantee = DefectGuarantee::None;
    bool one_sided_ok = true;   // every defect >= -1e-12 * max(1, ||b||)
    bool bound_ok = true;       // defects within the promised guarantee
};

// Builds the functional set for the space under the given strategy.
// Throws std::invalid_argument when Exact is requested for a norm without
// a known extreme-point enumeration, when l1 exact would need more than
// 2^16 covectors, when Sampled is used on a non-lp space (supply the
// covectors instead), or when a user-supplied functional fails the dual
// ball certification.
DualBallDiscretization discretize_dual_ball(const NormedSpaceModel& space,
                                            const DualBallStrategy& strategy);

// (beta b)_i = phi_i(b); linear in b.
CVec beta_embed(const DualBallDiscretization& disc, const CVec& b);

// The C(K)-valued norm of the discretization: evaluator(b) = diag(|beta b|)
// over the functional set, domain = the discretized space itself. Satisfies
// op_norm_sup(F(b)) = sup_i |phi_i(b)| <= ||b||, with equality per the
// discretization's guarantee.
CKValuedNorm embedding_ovnorm(const DualBallDiscretization& disc);

// Samples b (scale ladder times unit vectors) and measures the isometry
// defect ||b|| - sup_i |phi_i(b)|.
EmbeddingReport isometry_defect(const DualBallDiscretization& disc,
                                std::size_t samples, std::uint64_t seed);

}  // namespace opnorm
