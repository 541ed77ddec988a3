#include "opnorm/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "opnorm/hilbert_norms.hpp"
#include "opnorm/numkernel.hpp"
#include "opnorm/rng.hpp"
#include "opnorm/spaces.hpp"

namespace opnorm {

namespace {

double tuple_distance(const CVec& a, const CVec& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool tuple_less(const CVec& a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

}  // namespace

CVec CommutativeStarAlgebra::project_coefficients(const Matrix& f) const {
    if (f.rows() != ambient_dim || f.cols() != ambient_dim)
        throw std::invalid_argument("project_coefficients: dimension mismatch");
    if (!f.all_finite())
        throw std::invalid_argument("project_coefficients: non-finite entries");
    const Matrix d = basis.adjoint() * f * basis;
    CVec coeffs(classes.size(), cplx(0.0));
    for (std::size_t c = 0; c < classes.size(); ++c) {
        cplx acc = 0.0;
        for (std::size_t s : classes[c]) acc += d(s, s);
        coeffs[c] = acc / static_cast<double>(classes[c].size());
    }
    return coeffs;
}

double CommutativeStarAlgebra::membership_residual(const Matrix& f) const {
    const Matrix rebuilt = element_from_coeffs(project_coefficients(f));
    return (f - rebuilt).max_abs() / std::max(1.0, f.max_abs());
}

Matrix CommutativeStarAlgebra::element_from_coeffs(const CVec& v) const {
    if (v.size() != classes.size())
        throw std::invalid_argument("element_from_coeffs: expected one coefficient per class");
    Matrix out(ambient_dim, ambient_dim);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        Matrix term = basis_elements[c];
        term *= v[c];
        out += term;
    }
    return out;
}

cplx Character::operator()(const Matrix& f) const {
    if (f.rows() != vector.size() || !f.is_square())
        throw std::invalid_argument("Character: dimension mismatch");
    return vec_inner(f.apply(vector), vector);
}

CommutativeStarAlgebra build_algebra(const std::vector<Matrix>& generators,
                                     double tol, std::uint64_t seed, double merge_tol) {
    if (generators.empty())
        throw std::invalid_argument("build_algebra: need at least one generator");
    const std::size_t d = generators.front().rows();
    if (d == 0)
        throw std::invalid_argument("build_algebra: zero-dimensional generators");
    for (std::size_t g = 0; g < generators.size(); ++g) {
        const Matrix& m = generators[g];
        if (!m.is_square() || m.rows() != d)
            throw std::invalid_argument("build_algebra: generator " + std::to_string(g) +
                                        " is not " + std::to_string(d) + "x" + std::to_string(d));
        if (!m.all_finite())
            throw std::invalid_argument("build_algebra: generator " + std::to_string(g) +
                                        " has non-finite entries");
        const Matrix comm = m * m.adjoint() - m.adjoint() * m;
        const double defect = comm.max_abs() / std::max(1.0, m.max_abs() * m.max_abs());
        if (defect > 1e-8)
            throw std::invalid_argument("build_algebra: generator " + std::to_string(g) +
                                        " is not normal (defect " + format_double(defect) + ")");
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            const Matrix comm = generators[i] * generators[j] - generators[j] * generators[i];
            const double scale =
                std::max(1.0, generators[i].max_abs() * generators[j].max_abs());
            if (comm.max_abs() > 1e-8 * scale)
                throw std::invalid_argument("build_algebra: generators " + std::to_string(i) +
                                            " and " + std::to_string(j) + " do not commute");
        }

    const SimDiagResult sd = simultaneous_diagonalize(generators, std::max(tol, kSimDiagTol), seed);

    CommutativeStarAlgebra alg;
    alg.ambient_dim = d;
    alg.generators = generators;
    alg.basis = sd.basis;
    alg.merge_tol = merge_tol;

    std::vector<CVec> tuples(d, CVec(generators.size()));
    for (std::size_t s = 0; s < d; ++s)
        for (std::size_t g = 0; g < generators.size(); ++g) tuples[s][g] = sd.diagonals[g][s];

    // Single-linkage merge of slots whose joint tuples agree within merge_tol.
    std::vector<std::size_t> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t s) {
        while (parent[s] != s) s = parent[s] = parent[parent[s]];
        return s;
    };
    for (std::size_t s = 0; s < d; ++s)
        for (std::size_t t = s + 1; t < d; ++t)
            if (tuple_distance(tuples[s], tuples[t]) <= merge_tol) parent[find(s)] = find(t);

    std::vector<std::vector<std::size_t>> groups(d);
    for (std::size_t s = 0; s < d; ++s) groups[find(s)].push_back(s);
    std::vector<std::vector<std::size_t>> classes;
    for (auto& g : groups)
        if (!g.empty()) classes.push_back(std::move(g));

    std::vector<CVec> spectrum(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        CVec avg(generators.size(), cplx(0.0));
        for (std::size_t s : classes[c])
            for (std::size_t g = 0; g < generators.size(); ++g) avg[g] += tuples[s][g];
        for (auto& z : avg) z /= static_cast<double>(classes[c].size());
        spectrum[c] = std::move(avg);
    }

    // Canonical class order: lexicographic in the joint eigenvalue tuples.
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return tuple_less(spectrum[a], spectrum[b]);
    });
    for (std::size_t c : order) {
        std::sort(classes[c].begin(), classes[c].end());
        alg.classes.push_back(classes[c]);
        alg.joint_spectrum.push_back(spectrum[c]);
    }

    for (const auto& cls : alg.classes) {
        Matrix p(d, d);
        for (std::size_t s : cls) {
            const CVec col = alg.basis.column(s);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) p(i, j) += col[i] * std::conj(col[j]);
        }
        // Exactly Hermitian storage for the projection.
        for (std::size_t i = 0; i < d; ++i) {
            p(i, i) = cplx(p(i, i).real(), 0.0);
            for (std::size_t j = i + 1; j < d; ++j) {
                const cplx avg = 0.5 * (p(i, j) + std::conj(p(j, i)));
                p(i, j) = avg;
                p(j, i) = std::conj(avg);
            }
        }
        alg.basis_elements.push_back(std::move(p));
    }

    // Structural sanity: the projections resolve the identity and are
    // mutually orthogonal idempotents. Violations mean the joint
    // diagonalization silently failed, so refuse to return the algebra.
    Matrix sum(d, d);
    for (const Matrix& p : alg.basis_elements) sum += p;
    if ((sum - Matrix::identity(d)).max_abs() > 1e-9)
        throw ConvergenceError("build_algebra: projections do not resolve the identity");
    for (std::size_t i = 0; i < alg.basis_elements.size(); ++i)
        for (std::size_t j = 0; j < alg.basis_elements.size(); ++j) {
            const Matrix prod = alg.basis_elements[i] * alg.basis_elements[j];
            const Matrix expect = (i == j) ? alg.basis_elements[i] : Matrix(d, d);
            if ((prod - expect).max_abs() > 1e-9)
                throw ConvergenceError("build_algebra: projection products leave the span");
        }
    return alg;
}

std::vector<Character> characters(const CommutativeStarAlgebra& algebra) {
    for (std::size_t i = 0; i < algebra.class_count(); ++i)
        for (std::size_t j = i + 1; j < algebra.class_count(); ++j)
            if (tuple_distance(algebra.joint_spectrum[i], algebra.joint_spectrum[j]) <=
                0.5 * algebra.merge_tol)
                throw std::runtime_error(
                    "characters: classes " + std::to_string(i) + " and " + std::to_string(j) +
                    " are not separated by the generators; rebuild with another seed or a "
                    "coarser merge tolerance");
    std::vector<Character> out;
    out.reserve(algebra.class_count());
    for (std::size_t c = 0; c < algebra.class_count(); ++c) {
        Character ch;
        ch.index = c;
        ch.slot = algebra.classes[c].front();
        ch.vector = algebra.basis.column(ch.slot);
        out.push_back(std::move(ch));
    }
    return out;
}

CVec gelfand_transform(const CommutativeStarAlgebra& algebra, const Matrix& f,
                       double membership_tol) {
    const double residual = algebra.membership_residual(f);
    if (residual > membership_tol)
        throw std::invalid_argument("gelfand_transform: element outside the algebra "
                                    "(projection residual " + format_double(residual) + ")");
    return algebra.project_coefficients(f);
}

CheckReport check_contractive(const CommutativeStarAlgebra& algebra,
                              std::size_t samples, std::uint64_t seed) {
    if (samples == 0)
        throw std::invalid_argument("check_contractive: need at least one sample");
    CheckReport rep;
    rep.name = "gelfand-contractive";
    rep.samples = samples;
    Rng rng(derive_seed(seed, 41));
    const std::size_t k = algebra.class_count();
    double worst_excess = -std::numeric_limits<double>::infinity();
    double worst_gap = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        CVec v(k, cplx(0.0));
        if (i == 0) {
            v.assign(k, cplx(1.0));                       // f = identity
        } else if (i >= 2) {
            const double scale = detail::ladder_scale(rng, i - 2);
            for (auto& z : v) z = scale * rng.cgauss();
        }                                                 // i == 1 keeps f = 0
        const Matrix f = algebra.element_from_coeffs(v);
        const double gn = vec_max_abs(gelfand_transform(algebra, f));
        const double sn = spectral_norm(f);
        const double excess = gn - sn;
        const double gap = std::abs(gn - sn);
        worst_excess = std::max(worst_excess, excess);
        worst_gap = std::max(worst_gap, gap);
        if (excess > 1e-9 || gap > 1e-9) {
            rep.passed = false;
            if (rep.witness.empty())
                rep.witness = "sup|Gamma f| = " + format_double(gn) + " vs ||f|| = " +
                              format_double(sn) + " at coefficients " + format_cvec(v);
        }
    }
    rep.metrics["worst_excess"] = worst_excess;
    rep.metrics["worst_equality_gap"] = worst_gap;
    rep.notes.push_back("every span element is normal, so the sup of character values "
                        "must equal the operator norm, not just bound it");
    return rep;
}

CheckReport check_isometric(const CommutativeStarAlgebra& algebra,
                            std::size_t samples, std::uint64_t seed) {
    if (samples == 0)
        throw std::invalid_argument("check_isometric: need at least one sample");
    CheckReport rep;
    rep.name = "gelfand-isometric";
    rep.samples = samples;
    const std::size_t k = algebra.class_count();
    double worst_gap = 0.0;
    {
        Rng rng(derive_seed(seed, 42));
        for (std::size_t i = 0; i < samples; ++i) {
            CVec v(k, cplx(0.0));
            if (i == 0) {
                v.assign(k, cplx(1.0));
            } else if (i == 1) {
                v[0] = 1.0;                               // f = first projection
            } else {
                const double scale = detail::ladder_scale(rng, i - 2);
                for (auto& z : v) z = scale * rng.cgauss();
            }
            const Matrix f = algebra.element_from_coeffs(v);
            const double gn = vec_max_abs(gelfand_transform(algebra, f));
            const double sn = spectral_norm(f);
            const double gap = std::abs(gn - sn) / std::max(1.0, sn);
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-9) {
                rep.passed = false;
                if (rep.witness.empty())
                    rep.witness = "sup|Gamma f| = " + format_double(gn) + " vs ||f|| = " +
                                  format_double(sn) + " at coefficients " + format_cvec(v);
            }
        }
    }
    double worst_rec = 0.0;
    {
        Rng rng(derive_seed(seed, 43));
        for (std::size_t i = 0; i < samples; ++i) {
            CVec v(k);
            if (i == 0) {
                for (std::size_t c = 0; c < k; ++c)
                    v[c] = (c % 2 == 0) ? cplx(3.0) : cplx(0.0, -1.0);
            } else {
                const double scale = detail::ladder_scale(rng, i - 1);
                for (auto& z : v) z = scale * rng.cgauss();
            }
            const CVec g = gelfand_transform(algebra, algebra.element_from_coeffs(v));
            const double rec =
                vec_max_abs(vec_sub(g, v)) / std::max(1.0, vec_max_abs(v));
            worst_rec = std::max(worst_rec, rec);
            if (rec > 1e-9) {
                rep.passed = false;
                if (rep.witness.empty())
                    rep.witness = "reconstruction residual " + format_double(rec) +
                                  " at target " + format_cvec(v);
            }
        }
    }
    rep.metrics["worst_isometry_gap"] = worst_gap;
    rep.metrics["worst_reconstruction"] = worst_rec;
    return rep;
}

CKValuedNorm multiplicative_ovnorm(const CommutativeStarAlgebra& algebra) {
    const std::size_t k = algebra.class_count();
    if (k == 0)
        throw std::invalid_argument("multiplicative_ovnorm: empty character set");
    CKValuedNorm f;
    f.ck = FiniteCK::points(k, "phi");
    f.domain = NormedSpaceModel::lp(k, std::numeric_limits<double>::infinity(),
                                    ScalarField::Complex,
                                    "gelfand-coeff(" + std::to_string(k) + ")");
    f.descriptor = "multiplication by |v| on functions over the " + std::to_string(k) +
                   "-point character set of a commutative *-algebra";
    f.evaluator = [k](const CVec& v) {
        std::vector<double> d(k);
        for (std::size_t i = 0; i < k; ++i) d[i] = std::abs(v[i]);
        return Matrix::diagonal(d);
    };
    return f;
}

Matrix multiplicative_ovnorm_element(const CommutativeStarAlgebra& algebra,
                                     const Matrix& b) {
    const CVec g = gelfand_transform(algebra, b);
    std::vector<double> d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = std::abs(g[i]);
    return Matrix::diagonal(d);
}

}  // namespace opnorm
