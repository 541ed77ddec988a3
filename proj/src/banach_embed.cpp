#include "opnorm/banach_embed.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "opnorm/hilbert_norms.hpp"
#include "opnorm/reports.hpp"
#include "opnorm/rng.hpp"

namespace opnorm {

namespace {

cplx pair_apply(const CVec& phi, const CVec& b) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) acc += phi[j] * b[j];
    return acc;
}

// Exact dual norm of a covector against an lp norm: the Hoelder conjugate.
double lp_dual_norm(const CVec& phi, double p) {
    const double inf = std::numeric_limits<double>::infinity();
    if (p == 1.0) return vec_max_abs(phi);
    if (p == inf) {
        double s = 0.0;
        for (const cplx& z : phi) s += std::abs(z);
        return s;
    }
    const double q = p / (p - 1.0);
    double s = 0.0;
    for (const cplx& z : phi) s += std::pow(std::abs(z), q);
    return std::pow(s, 1.0 / q);
}

std::vector<CVec> l1_sign_covectors(std::size_t n) {
    if (n > 16)
        throw std::invalid_argument(
            "discretize_dual_ball: exact l1 enumeration needs 2^n covectors; n <= 16 required");
    std::vector<CVec> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        CVec phi(n);
        for (std::size_t j = 0; j < n; ++j)
            phi[j] = ((i >> (n - 1 - j)) & 1) ? cplx(-1.0) : cplx(1.0);
        out.push_back(std::move(phi));
    }
    return out;
}

std::vector<CVec> linf_coordinate_covectors(std::size_t n) {
    std::vector<CVec> out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        CVec plus(n, cplx(0.0)), minus(n, cplx(0.0));
        plus[i] = 1.0;
        minus[i] = -1.0;
        out.push_back(std::move(plus));
        out.push_back(std::move(minus));
    }
    return out;
}

}  // namespace

DualBallDiscretization discretize_dual_ball(const NormedSpaceModel& space,
                                            const DualBallStrategy& strategy) {
    const std::size_t n = space.dim();
    if (n == 0)
        throw std::invalid_argument("discretize_dual_ball: space must have dim >= 1");
    const double inf = std::numeric_limits<double>::infinity();

    DualBallDiscretization disc;
    disc.space = space;

    if (std::holds_alternative<ExactDual>(strategy)) {
        disc.kind = DiscretizationKind::Exact;
        disc.guarantee = DefectGuarantee::Exact;
        // Sign covectors exhaust the extreme points of the l1 dual ball
        // only over the reals; the complex dual sphere has no finite
        // extreme set, so complex l1 falls through to the rejection below.
        if (space.is_lp() && space.p() == 1.0 && space.field() == ScalarField::Real) {
            disc.functionals = l1_sign_covectors(n);
        } else if (space.is_lp() && space.p() == inf) {
            disc.functionals = linf_coordinate_covectors(n);
        } else if (space.is_dual_polytope()) {
            disc.functionals = space.functionals();
        } else {
            throw std::invalid_argument(
                "discretize_dual_ball: no exact extreme-point enumeration for " +
                space.label());
        }
        return disc;
    }

    if (const auto* sam = std::get_if<SampledDual>(&strategy)) {
        if (sam->count == 0)
            throw std::invalid_argument("discretize_dual_ball: sampled count must be >= 1");
        if (!space.is_lp())
            throw std::invalid_argument(
                "discretize_dual_ball: sampled covectors need an lp dual norm; supply "
                "functionals explicitly for " + space.label());
        disc.kind = DiscretizationKind::Sampled;
        const double p = space.p();
        if (p == 2.0 && n == 2 && space.field() == ScalarField::Real) {
            // Equispaced directions with a random rotation: any unit b lies
            // within pi/count of some sample, so sup_i |phi_i(b)| >=
            // cos(pi/count) and the defect is at most 1 - cos(pi/count).
            Rng rng(derive_seed(sam->seed, 0xd1));
            const double step = 2.0 * std::numbers::pi / static_cast<double>(sam->count);
            const double offset = rng.uniform(0.0, step);
            for (std::size_t i = 0; i < sam->count; ++i) {
                const double a = offset + step * static_cast<double>(i);
                disc.functionals.push_back({cplx(std::cos(a)), cplx(std::sin(a))});
            }
            disc.guarantee = DefectGuarantee::Bounded;
            disc.defect_coeff = 1.0 - std::cos(std::numbers::pi / static_cast<double>(sam->count));
        } else {
            // Random covectors scaled to exactly unit dual norm. No covering
            // guarantee is claimed; the one-sided bound still holds.
            Rng rng(derive_seed(sam->seed, 0xd2));
            disc.guarantee = DefectGuarantee::None;
            for (std::size_t i = 0; i < sam->count; ++i) {
                CVec phi(n);
                do {
                    for (auto& z : phi)
                        z = (space.field() == ScalarField::Real) ? cplx(rng.normal())
                                                                 : rng.cgauss();
                } while (lp_dual_norm(phi, p) == 0.0);
                const double dn = lp_dual_norm(phi, p);
                for (auto& z : phi) z /= dn;
                disc.functionals.push_back(std::move(phi));
            }
        }
        return disc;
    }

    const auto& user = std::get<UserSuppliedDual>(strategy);
    if (user.functionals.empty())
        throw std::invalid_argument("discretize_dual_ball: no functionals supplied");
    disc.kind = DiscretizationKind::UserSupplied;
    disc.guarantee = DefectGuarantee::None;
    Rng rng(derive_seed(0xcef7, 0));
    for (std::size_t i = 0; i < user.functionals.size(); ++i) {
        const CVec& phi = user.functionals[i];
        if (phi.size() != n)
            throw std::invalid_argument("discretize_dual_ball: functional " +
                                        std::to_string(i) + " has wrong dimension");
        if (!vec_all_finite(phi))
            throw std::invalid_argument("discretize_dual_ball: functional " +
                                        std::to_string(i) + " has non-finite entries");
        double dual = 0.0;
        if (space.is_lp()) {
            dual = lp_dual_norm(phi, space.p());
        } else {
            // The supplied extreme points of a polytope norm are admissible
            // verbatim; anything else is vetted by sampled maximization of
            // |phi(x)| over unit vectors (a lower bound, so this is a
            // rejection test, not a certificate).
            bool is_vertex = false;
            if (space.is_dual_polytope())
                for (const CVec& v : space.functionals()) {
                    if (vec_max_abs(vec_sub(phi, v)) <= 1e-12 ||
                        vec_max_abs(vec_add(phi, v)) <= 1e-12) {
                        is_vertex = true;
                        break;
                    }
                }
            if (is_vertex) {
                dual = 1.0;
            } else {
                for (std::size_t s = 0; s < 10000; ++s)
                    dual = std::max(dual, std::abs(pair_apply(phi, space.sample_unit(rng))));
            }
        }
        if (dual > 1.0 + 1e-9)
            throw std::invalid_argument("discretize_dual_ball: functional " +
                                        std::to_string(i) + " lies outside the dual ball "
                                        "(norm " + format_double(dual) + ")");
        disc.functionals.push_back(phi);
    }
    return disc;
}

CVec beta_embed(const DualBallDiscretization& disc, const CVec& b) {
    if (b.size() != disc.space.dim())
        throw std::invalid_argument("beta_embed: dimension mismatch");
    if (!vec_all_finite(b))
        throw std::invalid_argument("beta_embed: non-finite input");
    CVec out(disc.functionals.size());
    for (std::size_t i = 0; i < disc.functionals.size(); ++i)
        out[i] = pair_apply(disc.functionals[i], b);
    return out;
}

CKValuedNorm embedding_ovnorm(const DualBallDiscretization& disc) {
    const std::size_t k = disc.functionals.size();
    CKValuedNorm f;
    f.ck = FiniteCK::points(k, "phi");
    f.domain = disc.space;
    f.descriptor = "multiplication by the pointwise modulus of the image under a " +
                   std::to_string(k) + "-functional dual-ball discretization of " +
                   disc.space.label();
    DualBallDiscretization captured = disc;
    f.evaluator = [captured](const CVec& b) {
        const CVec img = beta_embed(captured, b);
        std::vector<double> d(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) d[i] = std::abs(img[i]);
        return Matrix::diagonal(d);
    };
    return f;
}

EmbeddingReport isometry_defect(const DualBallDiscretization& disc,
                                std::size_t samples, std::uint64_t seed) {
    if (samples == 0)
        throw std::invalid_argument("isometry_defect: need at least one sample");
    EmbeddingReport rep;
    rep.samples = samples;
    rep.defect_coeff = disc.defect_coeff;
    rep.guarantee = disc.guarantee;
    rep.max_defect = -std::numeric_limits<double>::infinity();
    rep.min_defect = std::numeric_limits<double>::infinity();
    Rng rng(derive_seed(seed, 0xbe));
    for (std::size_t i = 0; i < samples; ++i) {
        const CVec b = vec_scale(detail::ladder_scale(rng, i), disc.space.sample_unit(rng));
        const double bn = disc.space.norm(b);
        const double sup = vec_max_abs(beta_embed(disc, b));
        const double defect = bn - sup;
        rep.max_defect = std::max(rep.max_defect, defect);
        rep.min_defect = std::min(rep.min_defect, defect);
        const double slop = 1e-12 * std::max(1.0, bn);
        if (defect < -slop) rep.one_sided_ok = false;
        if (disc.guarantee == DefectGuarantee::Exact && std::abs(defect) > slop)
            rep.bound_ok = false;
        if (disc.guarantee == DefectGuarantee::Bounded &&
            defect > disc.defect_coeff * bn + slop)
            rep.bound_ok = false;
    }
    return rep;
}

}  // namespace opnorm
