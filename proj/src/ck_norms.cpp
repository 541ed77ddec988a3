#include "opnorm/ck_norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "opnorm/hilbert_norms.hpp"

namespace opnorm {

FiniteCK FiniteCK::grid01(std::size_t k) {
    if (k == 0) throw std::invalid_argument("FiniteCK::grid01: need k >= 1");
    FiniteCK ck;
    ck.point_count = k;
    ck.labels.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double t = (k == 1) ? 0.0 : static_cast<double>(i) / static_cast<double>(k - 1);
        ck.labels.push_back("t=" + format_double(t));
    }
    return ck;
}

FiniteCK FiniteCK::points(std::size_t k, const std::string& prefix) {
    if (k == 0) throw std::invalid_argument("FiniteCK::points: need k >= 1");
    FiniteCK ck;
    ck.point_count = k;
    ck.labels.reserve(k);
    for (std::size_t i = 0; i < k; ++i) ck.labels.push_back(prefix + std::to_string(i));
    return ck;
}

double FiniteCK::sup_norm(const CVec& f) { return vec_max_abs(f); }

Matrix CKValuedNorm::operator()(const CVec& x) const {
    if (!evaluator)
        throw std::logic_error("CKValuedNorm: empty evaluator");
    if (x.size() != domain.dim())
        throw std::invalid_argument("CKValuedNorm: input dimension mismatch");
    if (!vec_all_finite(x))
        throw std::invalid_argument("CKValuedNorm: non-finite input");
    Matrix out = evaluator(x);
    if (out.rows() != ck.point_count || out.cols() != ck.point_count)
        throw std::logic_error("CKValuedNorm: evaluator returned wrong shape");
    return out;
}

ConeResult cone_preserving(const Matrix& t, double tol) {
    if (!t.is_square())
        throw std::invalid_argument("cone_preserving: matrix must be square");
    ConeResult r;
    for (std::size_t j = 0; j < t.cols(); ++j)
        for (std::size_t i = 0; i < t.rows(); ++i) {
            const cplx z = t(i, j);
            const double bad = std::max(-z.real(), std::abs(z.imag()));
            if (bad > r.violation) r.violation = bad;
            if (r.preserving && bad > tol) {
                r.preserving = false;
                r.witness_col = j;   // T e_j has the offending entry
                r.witness_row = i;
                r.entry = z;
            }
        }
    return r;
}

CKValuedNorm mult_norm_ck(std::size_t grid_size) {
    if (grid_size == 0)
        throw std::invalid_argument("mult_norm_ck: grid_size must be positive");
    CKValuedNorm f;
    f.ck = FiniteCK::grid01(grid_size);
    f.domain = NormedSpaceModel::lp(grid_size, std::numeric_limits<double>::infinity(),
                                    ScalarField::Complex,
                                    "C(grid01-" + std::to_string(grid_size) + ")");
    f.descriptor = "multiplication: g -> diag(|g_i|) on functions over a " +
                   std::to_string(grid_size) + "-point grid of [0,1]";
    f.evaluator = [grid_size](const CVec& g) {
        std::vector<double> d(grid_size);
        for (std::size_t i = 0; i < grid_size; ++i) d[i] = std::abs(g[i]);
        return Matrix::diagonal(d);
    };
    return f;
}

double op_norm_sup(const Matrix& t) {
    if (!t.is_square())
        throw std::invalid_argument("op_norm_sup: matrix must be square");
    double best = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < t.cols(); ++j) row += std::abs(t(i, j));
        best = std::max(best, row);
    }
    return best;
}

CKValuedNorm adversarial_ck_shift(const CKValuedNorm& f, double shift) {
    CKValuedNorm out = f;
    out.descriptor = "broken fixture: {" + f.descriptor + "} minus " +
                     format_double(shift) + " at entry (0,0) off the origin";
    CKValuedNorm inner = f;
    out.evaluator = [inner, shift](const CVec& x) {
        Matrix m = inner(x);
        bool zero = true;
        for (const cplx& z : x)
            if (z != cplx(0.0)) {
                zero = false;
                break;
            }
        if (!zero && m.rows() > 0) m(0, 0) -= shift;
        return m;
    };
    return out;
}

AxiomReport check_ck_axioms(const CKValuedNorm& f, std::size_t x_samples,
                            std::size_t f_samples, std::uint64_t seed, double tol) {
    if (x_samples == 0 || f_samples == 0)
        throw std::invalid_argument("check_ck_axioms: need at least one sample of each kind");
    if (f.domain.dim() == 0)
        throw std::invalid_argument("check_ck_axioms: zero-dimensional domain");
    AxiomReport rep;
    rep.sample_count = x_samples;
    rep.seed = seed;
    rep.tol = tol;
    const std::size_t k = f.ck.point_count;

    // Cone positivity: every F(x) entrywise nonnegative real within tol.
    {
        AxiomCheck c{"positivity", true, x_samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 31));
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < x_samples; ++i) {
            const CVec x = vec_scale(detail::ladder_scale(rng, i), f.domain.sample_unit(rng));
            const Matrix t = f(x);
            const double scale = std::max(1.0, t.max_abs());
            const ConeResult r = cone_preserving(t, tol * scale);
            worst = std::min(worst, -r.violation / scale);
            if (!r.preserving) {
                c.passed = false;
                if (c.witness.empty())
                    c.witness = "F(x) e_" + std::to_string(r.witness_col) +
                                " has entry " + format_cplx(r.entry) + " at row " +
                                std::to_string(r.witness_row) + ", x=" + format_cvec(x);
            }
        }
        c.worst_margin = worst;
        rep.checks.push_back(std::move(c));
    }

    // Cone triangle: F(x)+F(y)-F(x+y) preserves the cone. Entrywise
    // certification when possible; otherwise the literal definition on
    // sampled nonnegative functions.
    {
        AxiomCheck c{"triangle", true, x_samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 32));
        double worst = std::numeric_limits<double>::infinity();
        std::size_t entrywise = 0, sampled_only = 0;
        for (std::size_t i = 0; i < x_samples; ++i) {
            const CVec x = vec_scale(detail::ladder_scale(rng, i), f.domain.sample_unit(rng));
            const CVec y = vec_scale(detail::ladder_scale(rng, i + 1), f.domain.sample_unit(rng));
            const Matrix fx = f(x), fy = f(y);
            const Matrix d = fx + fy - f(vec_add(x, y));
            const double scale = std::max(1.0, op_norm_sup(fx) + op_norm_sup(fy));
            const ConeResult r = cone_preserving(d, tol * scale);
            if (r.preserving) {
                ++entrywise;
                worst = std::min(worst, -r.violation / scale);
                continue;
            }
            // Fallback: (D f)_i >= -tol*scale for sampled f >= 0. Basis
            // vectors come first; they are the extreme rays of the cone.
            ++sampled_only;
            bool ok = true;
            CVec fvec(k);
            double this_worst = 0.0;
            CVec bad_f;
            for (std::size_t s = 0; s < f_samples && ok; ++s) {
                if (s < k) {
                    fvec.assign(k, cplx(0.0));
                    fvec[s] = 1.0;
                } else {
                    for (auto& z : fvec) z = cplx(rng.uniform01(), 0.0);
                }
                const CVec img = d.apply(fvec);
                for (const cplx& z : img) {
                    const double bad = std::max(-z.real(), std::abs(z.imag()));
                    if (bad > this_worst) {
                        this_worst = bad;
                        bad_f = fvec;
                    }
                }
                if (this_worst > tol * scale) ok = false;
            }
            worst = std::min(worst, -this_worst / scale);
            if (!ok) {
                c.passed = false;
                if (c.witness.empty())
                    c.witness = "(F(x)+F(y)-F(x+y))f has a negative/non-real entry at x=" +
                                format_cvec(x) + ", y=" + format_cvec(y) +
                                ", f=" + format_cvec(bad_f);
            }
        }
        c.worst_margin = worst;
        c.note = std::to_string(entrywise) + " pairs certified entrywise, " +
                 std::to_string(sampled_only) + " by sampled nonnegative functions";
        rep.checks.push_back(std::move(c));
    }

    // Absolute homogeneity, gauged by op_norm_sup.
    {
        AxiomCheck c{"homogeneity", true, x_samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 33));
        static const cplx pinned[] = {cplx(0.0), cplx(-1.0), cplx(0.0, 1.0), cplx(2.5)};
        double worst_dev = 0.0;
        for (std::size_t i = 0; i < x_samples; ++i) {
            const CVec x = vec_scale(detail::ladder_scale(rng, i), f.domain.sample_unit(rng));
            const cplx a = (i < 4) ? pinned[i]
                                   : rng.unimodular() * std::pow(10.0, rng.uniform(-1.0, 1.0));
            const Matrix lhs = f(vec_scale(a, x));
            Matrix rhs = f(x);
            const double gauge = std::max(1.0, std::abs(a) * op_norm_sup(rhs));
            rhs *= std::abs(a);
            const double dev = (lhs - rhs).max_abs() / gauge;
            worst_dev = std::max(worst_dev, dev);
            if (dev > tol) {
                c.passed = false;
                if (c.witness.empty())
                    c.witness = "|F(ax) - |a|F(x)| = " + format_double(dev) +
                                " at a=" + format_cplx(a) + ", x=" + format_cvec(x);
            }
        }
        c.worst_margin = -worst_dev;
        rep.checks.push_back(std::move(c));
    }

    // Definiteness.
    {
        AxiomCheck c{"definiteness", true, x_samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 34));
        const Matrix f0 = f(CVec(f.domain.dim(), cplx(0.0)));
        double margin = tol - f0.max_abs();
        if (margin < 0.0) {
            c.passed = false;
            c.witness = "F(0) has max_abs=" + format_double(f0.max_abs());
        }
        for (std::size_t i = 0; i < x_samples; ++i) {
            const CVec x = vec_scale(detail::ladder_scale(rng, i), f.domain.sample_unit(rng));
            const double nz = op_norm_sup(f(x)) - tol;
            margin = std::min(margin, nz);
            if (nz < 0.0) {
                c.passed = false;
                if (c.witness.empty())
                    c.witness = "F(x) = 0 within tol at x=" + format_cvec(x);
            }
        }
        c.worst_margin = margin;
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace opnorm
