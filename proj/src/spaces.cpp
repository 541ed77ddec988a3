#include "opnorm/spaces.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace opnorm {

namespace {

std::string default_lp_label(std::size_t dim, double p) {
    if (std::isinf(p)) return "linf(" + std::to_string(dim) + ")";
    if (p == 1.0) return "l1(" + std::to_string(dim) + ")";
    if (p == 2.0) return "l2(" + std::to_string(dim) + ")";
    return "lp(" + std::to_string(dim) + ",p=" + std::to_string(p) + ")";
}

// A functional-sup oracle is a norm iff it separates points. Basis
// vectors are checked exactly; a fixed-seed random batch guards against
// rank deficiency that happens to miss the axes.
void validate_separating(std::size_t dim, const std::vector<CVec>& fns,
                         const char* who) {
    if (fns.empty())
        throw std::invalid_argument(std::string(who) + ": empty functional list");
    for (const CVec& f : fns) {
        if (f.size() != dim)
            throw std::invalid_argument(std::string(who) + ": functional dimension mismatch");
        if (!vec_all_finite(f))
            throw std::invalid_argument(std::string(who) + ": non-finite functional");
    }
    auto sup_at = [&](const CVec& x) {
        double m = 0.0;
        for (const CVec& f : fns) {
            cplx acc(0.0);
            for (std::size_t i = 0; i < dim; ++i) acc += f[i] * x[i];
            m = std::max(m, std::abs(acc));
        }
        return m;
    };
    CVec probe(dim, cplx(0.0));
    for (std::size_t j = 0; j < dim; ++j) {
        probe[j] = 1.0;
        if (sup_at(probe) <= 0.0)
            throw std::invalid_argument(std::string(who) +
                                        ": functionals vanish on a basis vector");
        probe[j] = 0.0;
    }
    Rng rng(0x5eedULL);
    for (std::size_t k = 0; k < 64; ++k) {
        for (auto& z : probe) z = rng.cgauss();
        const double nx = vec_norm2(probe);
        if (nx == 0.0) continue;
        if (sup_at(probe) <= 1e-12 * nx)
            throw std::invalid_argument(std::string(who) +
                                        ": functionals do not separate points");
    }
}

}  // namespace

NormedSpaceModel NormedSpaceModel::lp(std::size_t dim, double p, ScalarField field,
                                      std::string label) {
    if (!(p >= 1.0))   // also rejects NaN
        throw std::invalid_argument("NormedSpaceModel::lp: p must be in [1, inf]");
    NormedSpaceModel m;
    m.kind_ = Kind::Lp;
    m.dim_ = dim;
    m.p_ = p;
    m.field_ = field;
    m.label_ = label.empty() ? default_lp_label(dim, p) : std::move(label);
    return m;
}

NormedSpaceModel NormedSpaceModel::functional_sup(std::size_t dim,
                                                  std::vector<CVec> functionals,
                                                  ScalarField field,
                                                  std::string label) {
    validate_separating(dim, functionals, "NormedSpaceModel::functional_sup");
    NormedSpaceModel m;
    m.kind_ = Kind::FunctionalSup;
    m.dim_ = dim;
    m.field_ = field;
    m.functionals_ = std::move(functionals);
    m.label_ = label.empty()
                   ? "fsup(" + std::to_string(dim) + "," +
                         std::to_string(m.functionals_.size()) + " fns)"
                   : std::move(label);
    return m;
}

NormedSpaceModel NormedSpaceModel::dual_polytope(std::size_t dim,
                                                 std::vector<CVec> extreme_points,
                                                 ScalarField field,
                                                 std::string label) {
    validate_separating(dim, extreme_points, "NormedSpaceModel::dual_polytope");
    NormedSpaceModel m;
    m.kind_ = Kind::DualPolytope;
    m.dim_ = dim;
    m.field_ = field;
    m.functionals_ = std::move(extreme_points);
    m.label_ = label.empty()
                   ? "polytope(" + std::to_string(dim) + "," +
                         std::to_string(m.functionals_.size()) + " verts)"
                   : std::move(label);
    return m;
}

double NormedSpaceModel::norm(const CVec& x) const {
    if (x.size() != dim_)
        throw std::invalid_argument("NormedSpaceModel::norm: dimension mismatch");
    if (!vec_all_finite(x))
        throw std::invalid_argument("NormedSpaceModel::norm: non-finite input");
    if (kind_ == Kind::Lp) {
        if (std::isinf(p_)) return vec_max_abs(x);
        if (p_ == 1.0) {
            double acc = 0.0;
            for (const cplx& z : x) acc += std::abs(z);
            return acc;
        }
        if (p_ == 2.0) return vec_norm2(x);
        // General p: scale out the max to avoid overflow in pow.
        const double m = vec_max_abs(x);
        if (m == 0.0) return 0.0;
        double acc = 0.0;
        for (const cplx& z : x) acc += std::pow(std::abs(z) / m, p_);
        return m * std::pow(acc, 1.0 / p_);
    }
    double sup = 0.0;
    for (const CVec& f : functionals_) {
        cplx acc(0.0);
        for (std::size_t i = 0; i < dim_; ++i) acc += f[i] * x[i];
        sup = std::max(sup, std::abs(acc));
    }
    return sup;
}

double NormedSpaceModel::p() const {
    if (kind_ != Kind::Lp)
        throw std::logic_error("NormedSpaceModel::p: not an lp space");
    return p_;
}

const std::vector<CVec>& NormedSpaceModel::functionals() const {
    if (kind_ == Kind::Lp)
        throw std::logic_error("NormedSpaceModel::functionals: lp space has none stored");
    return functionals_;
}

CVec NormedSpaceModel::sample(Rng& rng) const {
    CVec x(dim_);
    if (field_ == ScalarField::Complex) {
        for (auto& z : x) z = rng.cgauss();
    } else {
        for (auto& z : x) z = cplx(rng.normal(), 0.0);
    }
    return x;
}

CVec NormedSpaceModel::sample_unit(Rng& rng) const {
    if (dim_ == 0)
        throw std::invalid_argument("NormedSpaceModel::sample_unit: zero-dimensional space");
    for (int tries = 0; tries < 64; ++tries) {
        CVec x = sample(rng);
        const double nx = norm(x);
        if (nx > 1e-150) {
            const double inv = 1.0 / nx;
            for (auto& z : x) z *= inv;
            return x;
        }
    }
    throw std::runtime_error("NormedSpaceModel::sample_unit: norm oracle kept returning 0");
}

}  // namespace opnorm
