#include "opnorm/hilbert_norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace opnorm {

Matrix LHValuedNorm::operator()(const CVec& x) const {
    if (!evaluator)
        throw std::logic_error("LHValuedNorm: empty evaluator");
    if (x.size() != domain.dim())
        throw std::invalid_argument("LHValuedNorm: input dimension mismatch");
    if (!vec_all_finite(x))
        throw std::invalid_argument("LHValuedNorm: non-finite input");
    Matrix out = evaluator(x);
    if (out.rows() != hilbert_dim || out.cols() != hilbert_dim)
        throw std::logic_error("LHValuedNorm: evaluator returned wrong shape");
    return out;
}

LHValuedNorm trivial_norm(NormedSpaceModel space, std::size_t hilbert_dim) {
    LHValuedNorm f;
    f.descriptor = "trivial: x -> ||x|| I on C^" + std::to_string(hilbert_dim) +
                   ", domain " + space.label();
    f.hilbert_dim = hilbert_dim;
    NormedSpaceModel captured = space;
    f.evaluator = [captured, hilbert_dim](const CVec& x) {
        Matrix m = Matrix::identity(hilbert_dim);
        m *= captured.norm(x);
        return m;
    };
    f.domain = std::move(space);
    return f;
}

LHValuedNorm mult_norm_l2(std::size_t grid_size) {
    if (grid_size == 0)
        throw std::invalid_argument("mult_norm_l2: grid_size must be positive");
    LHValuedNorm f;
    f.domain = NormedSpaceModel::lp(grid_size, std::numeric_limits<double>::infinity(),
                                    ScalarField::Complex,
                                    "grid-sup(" + std::to_string(grid_size) + ")");
    f.hilbert_dim = grid_size;
    f.descriptor = "multiplication: g -> diag(|g_i|) on l2 grid vectors, " +
                   std::to_string(grid_size) + " points";
    f.evaluator = [grid_size](const CVec& g) {
        std::vector<double> d(grid_size);
        for (std::size_t i = 0; i < grid_size; ++i) d[i] = std::abs(g[i]);
        return Matrix::diagonal(d);
    };
    return f;
}

LHValuedNorm compose_norm(const LHValuedNorm& f, const Matrix& t) {
    if (!t.is_square())
        throw std::invalid_argument("compose_norm: T must be square");
    if (t.rows() != f.domain.dim())
        throw std::invalid_argument("compose_norm: T dimension does not match the domain");
    if (t.empty())
        throw std::invalid_argument("compose_norm: T must be nonempty");
    if (!t.all_finite())
        throw std::invalid_argument("compose_norm: T has non-finite entries");
    const double tnorm = spectral_norm(t);
    // sigma_min from the Gram matrix; an endomorphism is injective iff it
    // has full rank.
    const Matrix g = t.adjoint() * t;
    const auto e = hermitian_eig(g, 1e-8, kEigTol);
    const double smin = std::sqrt(std::max(0.0, e.eigenvalues.front()));
    if (!(smin > kInjTolFactor * tnorm))
        throw std::invalid_argument(
            "compose_norm: T is not injective within tolerance (sigma_min = " +
            format_double(smin) + ", ||T|| = " + format_double(tnorm) + ")");

    LHValuedNorm out;
    out.domain = f.domain;   // same normed space; only the evaluator changes
    out.hilbert_dim = f.hilbert_dim;
    out.descriptor = "pullback of {" + f.descriptor + "} along an injective endomorphism";
    LHValuedNorm inner = f;
    Matrix tc = t;
    out.evaluator = [inner, tc](const CVec& x) { return inner(tc.apply(x)); };
    return out;
}

LHValuedNorm adversarial_shift(const LHValuedNorm& f, double shift) {
    LHValuedNorm out = f;
    out.descriptor = "broken fixture: {" + f.descriptor + "} minus " +
                     format_double(shift) + " I off the origin";
    LHValuedNorm inner = f;
    out.evaluator = [inner, shift](const CVec& x) {
        Matrix m = inner(x);
        bool zero = true;
        for (const cplx& z : x)
            if (z != cplx(0.0)) {
                zero = false;
                break;
            }
        if (!zero) {
            Matrix s = Matrix::identity(m.rows());
            s *= shift;
            m -= s;
        }
        return m;
    };
    return out;
}

namespace detail {

double ladder_scale(Rng& rng, std::size_t index) {
    static constexpr double fixed[] = {1e-3, 1e-2, 1.0, 1e2};
    if (index < 4) return fixed[index];
    return std::pow(10.0, rng.uniform(-2.0, 2.0));
}

}  // namespace detail

AxiomReport check_lh_axioms(const LHValuedNorm& f, std::size_t samples,
                            std::uint64_t seed, double tol) {
    if (samples == 0)
        throw std::invalid_argument("check_lh_axioms: need at least one sample");
    if (f.domain.dim() == 0)
        throw std::invalid_argument("check_lh_axioms: zero-dimensional domain");
    AxiomReport rep;
    rep.sample_count = samples;
    rep.seed = seed;
    rep.tol = tol;

    // Positivity: Hermitian within tol, then PSD within tol.
    {
        AxiomCheck c{"positivity", true, samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 1));
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < samples; ++i) {
            const double sc = detail::ladder_scale(rng, i);
            const CVec x = vec_scale(sc, f.domain.sample_unit(rng));
            const Matrix m = f(x);
            const double mscale = std::max(1.0, m.max_abs());
            if (hermitian_defect(m) > tol * mscale) {
                c.passed = false;
                if (c.witness.empty())
                    c.witness = "F(x) not Hermitian at x=" + format_cvec(x) +
                                ", defect=" + format_double(hermitian_defect(m));
                continue;
            }
            const PsdResult p = is_psd(m, tol, tol);
            const double margin = p.lambda_min / mscale;
            worst = std::min(worst, margin);
            if (!p.psd) {
                c.passed = false;
                if (c.witness.empty())
                    c.witness = "lambda_min=" + format_double(p.lambda_min) +
                                " at x=" + format_cvec(x) +
                                ", eigvec=" + format_cvec(p.witness);
            }
        }
        c.worst_margin = worst;
        rep.checks.push_back(std::move(c));
    }

    // Triangle in the PSD order: F(x) + F(y) - F(x+y) >= 0.
    {
        AxiomCheck c{"triangle", true, samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 2));
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < samples; ++i) {
            const CVec x = vec_scale(detail::ladder_scale(rng, i), f.domain.sample_unit(rng));
            const CVec y = vec_scale(detail::ladder_scale(rng, i + 1), f.domain.sample_unit(rng));
            const Matrix fx = f(x), fy = f(y), fxy = f(vec_add(x, y));
            Matrix d = fx + fy - fxy;
            // Hermitian average: asymmetric outputs are positivity's problem.
            Matrix ds = d;
            ds += d.adjoint();
            ds *= 0.5;
            const double scale = std::max(1.0, fx.max_abs() + fy.max_abs());
            const auto e = hermitian_eig(ds, 1.0, kEigTol);
            const double lmin = e.eigenvalues.empty() ? 0.0 : e.eigenvalues.front();
            const double margin = lmin / scale;
            worst = std::min(worst, margin);
            if (margin < -tol) {
                c.passed = false;
                if (c.witness.empty())
                    c.witness = "lambda_min(F(x)+F(y)-F(x+y))=" + format_double(lmin) +
                                " at x=" + format_cvec(x) + ", y=" + format_cvec(y);
            }
        }
        c.worst_margin = worst;
        rep.checks.push_back(std::move(c));
    }

    // Absolute homogeneity: F(a x) = |a| F(x) entrywise.
    {
        AxiomCheck c{"homogeneity", true, samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 3));
        static const cplx pinned[] = {cplx(0.0), cplx(-1.0), cplx(0.0, 1.0), cplx(2.5)};
        double worst_dev = 0.0;
        for (std::size_t i = 0; i < samples; ++i) {
            const CVec x = vec_scale(detail::ladder_scale(rng, i), f.domain.sample_unit(rng));
            const cplx a = (i < 4) ? pinned[i]
                                   : rng.unimodular() * std::pow(10.0, rng.uniform(-1.0, 1.0));
            const Matrix lhs = f(vec_scale(a, x));
            Matrix rhs = f(x);
            rhs *= std::abs(a);
            const double dev =
                (lhs - rhs).max_abs() / std::max(1.0, std::abs(a) * rhs.max_abs());
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

    // Definiteness: F(0) = 0 and F(x) != 0 for sampled x != 0.
    {
        AxiomCheck c{"definiteness", true, samples, 0.0, "", ""};
        Rng rng(derive_seed(seed, 4));
        const Matrix f0 = f(CVec(f.domain.dim(), cplx(0.0)));
        double margin = tol - f0.max_abs();
        if (margin < 0.0) {
            c.passed = false;
            c.witness = "F(0) has max_abs=" + format_double(f0.max_abs());
        }
        for (std::size_t i = 0; i < samples; ++i) {
            const CVec x = vec_scale(detail::ladder_scale(rng, i), f.domain.sample_unit(rng));
            const double nz = f(x).max_abs() - tol;
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

double boundedness_estimate(const LHValuedNorm& f, std::size_t sphere_samples,
                            std::uint64_t seed) {
    if (f.domain.dim() == 0)
        throw std::invalid_argument("boundedness_estimate: zero-dimensional domain");
    Rng rng(derive_seed(seed, 5));
    double best = 0.0;
    for (std::size_t i = 0; i < sphere_samples; ++i) {
        const CVec x = f.domain.sample_unit(rng);
        best = std::max(best, spectral_norm(f(x)));
    }
    return best;
}

}  // namespace opnorm
