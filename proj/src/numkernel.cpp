#include "opnorm/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "opnorm/rng.hpp"

namespace opnorm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square_finite(const Matrix& m, const char* who) {
    if (!m.is_square())
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if (!m.all_finite())
        throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
}

// Sorts eigenvalues ascending and permutes basis columns to match.
void sort_eigensystem(std::vector<double>& vals, Matrix& basis) {
    const std::size_t n = vals.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<double> sv(n);
    Matrix sb(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sv[j] = vals[order[j]];
        for (std::size_t i = 0; i < n; ++i) sb(i, j) = basis(i, order[j]);
    }
    vals = std::move(sv);
    basis = std::move(sb);
}

}  // namespace

EigenDecomposition hermitian_eig(const Matrix& m, double herm_tol, double eig_tol) {
    require_square_finite(m, "hermitian_eig");
    const std::size_t n = m.rows();
    const double scale = std::max(1.0, m.max_abs());
    if (hermitian_defect(m) > herm_tol * scale)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");
    if (n == 0) return {{}, Matrix(0, 0)};

    // Work on the exact Hermitian average so sweeps cannot be biased by
    // sub-tolerance asymmetry.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    Matrix v = Matrix::identity(n);

    // Cyclic Jacobi. A pivot |a(p,q)| below roundoff significance is set to
    // zero instead of rotated; a sweep with no rotations means convergence.
    const std::size_t max_sweeps = 100;
    std::size_t sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double g = std::abs(apq);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (g <= 0.5 * kEps * (std::abs(app) + std::abs(aqq)) || g == 0.0) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                rotated = true;
                // Unitary diag(1, conj(w)) turns the pivot block into the
                // real symmetric [[app, g], [g, aqq]]; then a classic real
                // Jacobi rotation with tangent t annihilates it.
                const cplx w = apq / g;
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx swc = s * std::conj(w);   // column mix
                const cplx sw = s * w;               // row mix
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - swc * arq;
                    a(r, q) = s * arp + c * std::conj(w) * arq;
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - swc * vrq;
                    v(r, q) = s * vrp + c * std::conj(w) * vrq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - sw * aqr;
                    a(q, r) = s * apr + c * w * aqr;
                }
                // Pivot block values are known analytically; overwrite to
                // keep roundoff from accumulating on the diagonal.
                a(p, p) = cplx(app - t * g, 0.0);
                a(q, q) = cplx(aqq + t * g, 0.0);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
        if (!rotated) break;
    }
    if (sweep == max_sweeps)
        throw ConvergenceError("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real();
    sort_eigensystem(vals, v);

    // Verify the residual promise against the original input.
    const Matrix mv = m * v;
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            resid = std::max(resid, std::abs(mv(i, j) - v(i, j) * vals[j]));
    if (resid > eig_tol * scale)
        throw ConvergenceError("hermitian_eig: residual bound not met");
    return {std::move(vals), std::move(v)};
}

PsdResult is_psd(const Matrix& m, double tol, double herm_tol) {
    auto e = hermitian_eig(m, herm_tol, kEigTol);
    if (e.eigenvalues.empty()) return {true, 0.0, {}};
    const double lmin = e.eigenvalues.front();
    const double lmax = e.eigenvalues.back();
    const double scale = std::max(1.0, std::max(std::abs(lmin), std::abs(lmax)));
    if (lmin >= -tol * scale) return {true, lmin, {}};
    return {false, lmin, e.basis.column(0)};
}

double spectral_norm(const Matrix& m) {
    if (m.empty()) throw std::invalid_argument("spectral_norm: empty matrix");
    if (!m.all_finite())
        throw std::invalid_argument("spectral_norm: matrix has non-finite entries");
    const double s = m.max_abs();
    if (s == 0.0) return 0.0;
    if (m.is_square()) {
        // Exact-diagonal fast path: norm values of multiplication-type
        // norms land here constantly.
        bool diag = true;
        for (std::size_t i = 0; i < m.rows() && diag; ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (i != j && m(i, j) != cplx(0.0)) {
                    diag = false;
                    break;
                }
        if (diag) {
            double best = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i)
                best = std::max(best, std::abs(m(i, i)));
            return best;
        }
        // Exactly Hermitian: largest |eigenvalue|, skipping the Gram.
        if (hermitian_defect(m) == 0.0) {
            auto e = hermitian_eig(m, 1.0, kEigTol);
            return std::max(std::abs(e.eigenvalues.front()),
                            std::abs(e.eigenvalues.back()));
        }
    }
    // Gram of the smaller side; prescaled so squaring cannot overflow.
    Matrix w = (1.0 / s) * m;
    const Matrix g = (w.rows() <= w.cols()) ? w * w.adjoint() : w.adjoint() * w;
    auto e = hermitian_eig(g, 1e-8, kEigTol);
    return s * std::sqrt(std::max(0.0, e.eigenvalues.back()));
}

namespace {

// Unitary 2x2 [[c, s], [-conj(s), c]] with real c mapping (a, b) to (r, 0).
void givens(cplx a, cplx b, double& c, cplx& s) {
    const double aa = std::abs(a), bb = std::abs(b);
    if (bb == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    const double r = std::hypot(aa, bb);
    if (aa == 0.0) {
        c = 0.0;
        s = std::conj(b) / bb;
        return;
    }
    c = aa / r;
    s = (a / aa) * std::conj(b) / r;
}

std::vector<cplx> qr_eigenvalues(Matrix h) {
    const std::size_t n = h.rows();
    std::vector<cplx> out;
    out.reserve(n);
    const double fro = std::max(h.frobenius_norm(), 1.0);
    std::size_t hi = n - 1;
    std::size_t its = 0;
    const std::size_t its_cap = 120;
    for (;;) {
        // Walk up from hi to find a negligible subdiagonal.
        std::size_t l = hi;
        while (l > 0) {
            double thr = kEps * (std::abs(h(l - 1, l - 1)) + std::abs(h(l, l)));
            if (thr == 0.0) thr = kEps * fro;
            if (std::abs(h(l, l - 1)) <= thr) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {  // 1x1 block split off
            out.push_back(h(hi, hi));
            if (hi == 0) break;
            --hi;
            its = 0;
            continue;
        }
        if (l + 1 == hi) {  // 2x2 block: closed form
            const cplx a = h(l, l), b = h(l, hi), c = h(hi, l), d = h(hi, hi);
            const cplx tr = a + d;
            const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            out.push_back(0.5 * (tr + disc));
            out.push_back(0.5 * (tr - disc));
            if (l == 0) break;
            hi = l - 1;
            its = 0;
            continue;
        }
        if (++its > its_cap)
            throw ConvergenceError("eigenvalues: QR iteration did not converge");
        // Wilkinson shift; periodic exceptional shift breaks stalls.
        cplx mu;
        if (its % 20 == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
            const cplx c = h(hi, hi - 1), d = h(hi, hi);
            const cplx tr = a + d;
            const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            const cplx r1 = 0.5 * (tr + disc), r2 = 0.5 * (tr - disc);
            mu = (std::abs(r1 - d) <= std::abs(r2 - d)) ? r1 : r2;
        }
        // Explicit single-shift QR step on the window [l, hi].
        for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
        std::vector<double> cs(hi - l);
        std::vector<cplx> sn(hi - l);
        for (std::size_t k = l; k < hi; ++k) {
            double c;
            cplx s;
            givens(h(k, k), h(k + 1, k), c, s);
            cs[k - l] = c;
            sn[k - l] = s;
            for (std::size_t j = k; j <= hi; ++j) {
                const cplx x = h(k, j), y = h(k + 1, j);
                h(k, j) = c * x + s * y;
                h(k + 1, j) = -std::conj(s) * x + c * y;
            }
        }
        for (std::size_t k = l; k < hi; ++k) {
            const double c = cs[k - l];
            const cplx s = sn[k - l];
            const std::size_t rmax = std::min(k + 1, hi);
            for (std::size_t i = l; i <= rmax; ++i) {
                const cplx x = h(i, k), y = h(i, k + 1);
                h(i, k) = c * x + std::conj(s) * y;
                h(i, k + 1) = -s * x + c * y;
            }
        }
        for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
    }
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace

namespace detail {

Matrix hessenberg(Matrix a) {
    const std::size_t n = a.rows();
    if (n < 3) return a;
    std::vector<cplx> v;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cplx alpha = a(k + 1, k);
        const double aabs = std::abs(alpha);
        const cplx phase = (aabs == 0.0) ? cplx(1.0) : alpha / aabs;
        const cplx beta = -phase * xnorm;   // no cancellation in v[0]
        v.assign(n - k - 1, cplx(0.0));
        v[0] = alpha - beta;
        for (std::size_t i = k + 2; i < n; ++i) v[i - k - 1] = a(i, k);
        double sigma = 0.0;
        for (const cplx& z : v) sigma += std::norm(z);
        if (sigma == 0.0) continue;
        const double two_over = 2.0 / sigma;
        // Left: rows k+1.. <- (I - (2/sigma) v v^H) rows
        for (std::size_t j = k; j < n; ++j) {
            cplx acc(0.0);
            for (std::size_t i = 0; i < v.size(); ++i)
                acc += std::conj(v[i]) * a(k + 1 + i, j);
            acc *= two_over;
            for (std::size_t i = 0; i < v.size(); ++i)
                a(k + 1 + i, j) -= v[i] * acc;
        }
        // Right: cols k+1.. <- cols (I - (2/sigma) v v^H)
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc(0.0);
            for (std::size_t j = 0; j < v.size(); ++j)
                acc += a(i, k + 1 + j) * v[j];
            acc *= two_over;
            for (std::size_t j = 0; j < v.size(); ++j)
                a(i, k + 1 + j) -= acc * std::conj(v[j]);
        }
        a(k + 1, k) = beta;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
    return a;
}

}  // namespace detail

std::vector<cplx> eigenvalues(const Matrix& m) {
    require_square_finite(m, "eigenvalues");
    const std::size_t n = m.rows();
    if (n == 0) return {};
    if (n == 1) return {m(0, 0)};
    const double s = m.max_abs();
    if (s == 0.0) return std::vector<cplx>(n, cplx(0.0));
    Matrix w = (1.0 / s) * m;
    auto eigs = qr_eigenvalues(detail::hessenberg(std::move(w)));
    for (auto& z : eigs) z *= s;
    return eigs;
}

double spectral_radius(const Matrix& m) {
    if (m.empty()) {
        require_square_finite(m, "spectral_radius");
        return 0.0;
    }
    double r = 0.0;
    for (const cplx& z : eigenvalues(m)) r = std::max(r, std::abs(z));
    return r;
}

bool is_normal(const Matrix& m, double tol) {
    require_square_finite(m, "is_normal");
    if (m.rows() == 0) return true;
    const Matrix ad = m.adjoint();
    const Matrix comm = m * ad - ad * m;
    const double ma = m.max_abs();
    return comm.max_abs() <= tol * std::max(1.0, ma * ma);
}

double numerical_radius(const Matrix& m, const RadiusStrategy& strategy) {
    require_square_finite(m, "numerical_radius");
    if (std::holds_alternative<ExactNormal>(strategy)) {
        if (!is_normal(m, kNormalTol))
            throw std::invalid_argument(
                "numerical_radius: exact strategy requires a normal matrix");
        return spectral_radius(m);
    }
    const auto& sam = std::get<Sampled>(strategy);
    const std::size_t n = m.rows();
    if (n == 0 || sam.count == 0) return 0.0;
    Rng rng(derive_seed(sam.seed, 0x6e72ULL));
    double best = 0.0;
    CVec h(n);
    for (std::size_t k = 0; k < sam.count; ++k) {
        for (auto& z : h) z = rng.cgauss();
        const double nh = vec_norm2(h);
        if (nh < 1e-300) continue;
        const CVec mh = m.apply(h);
        best = std::max(best, std::abs(vec_inner(mh, h)) / (nh * nh));
    }
    return best;
}

namespace detail {

void refine_blocks(Matrix& basis, const std::vector<Matrix>& parts, double gap) {
    const std::size_t n = basis.rows();
    if (n == 0 || parts.empty()) return;
    std::vector<std::vector<std::size_t>> clusters(1);
    clusters[0].resize(n);
    std::iota(clusters[0].begin(), clusters[0].end(), std::size_t{0});

    for (const Matrix& p : parts) {
        const double split = gap * std::max(1.0, p.max_abs());
        const Matrix pb = p * basis;
        std::vector<std::vector<std::size_t>> next;
        for (const auto& cl : clusters) {
            const std::size_t k = cl.size();
            if (k == 1) {
                next.push_back(cl);
                continue;
            }
            // Compression of p onto the cluster's columns, averaged to be
            // exactly Hermitian before the small eigensolve.
            Matrix s(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) {
                    cplx acc(0.0);
                    for (std::size_t i = 0; i < n; ++i)
                        acc += std::conj(basis(i, cl[a])) * pb(i, cl[b]);
                    s(a, b) = acc;
                }
            Matrix sh(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b)
                    sh(a, b) = 0.5 * (s(a, b) + std::conj(s(b, a)));
            auto es = hermitian_eig(sh, 1.0, kEigTol);
            // Rotate the cluster's basis columns into p's eigenbasis.
            std::vector<CVec> old_cols(k);
            for (std::size_t b = 0; b < k; ++b) old_cols[b] = basis.column(cl[b]);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t i = 0; i < n; ++i) {
                    cplx acc(0.0);
                    for (std::size_t b = 0; b < k; ++b)
                        acc += old_cols[b][i] * es.basis(b, a);
                    basis(i, cl[a]) = acc;
                }
            // Split the cluster at eigenvalue gaps (ascending order).
            std::size_t start = 0;
            for (std::size_t a = 1; a <= k; ++a) {
                if (a == k || es.eigenvalues[a] - es.eigenvalues[a - 1] > split) {
                    next.emplace_back(cl.begin() + start, cl.begin() + a);
                    start = a;
                }
            }
        }
        clusters = std::move(next);
    }
}

}  // namespace detail

SimDiagResult simultaneous_diagonalize(const std::vector<Matrix>& generators,
                                       double tol, std::uint64_t seed) {
    if (generators.empty())
        throw std::invalid_argument("simultaneous_diagonalize: empty generator list");
    const std::size_t n = generators.front().rows();
    for (const Matrix& g : generators) {
        require_square_finite(g, "simultaneous_diagonalize");
        if (g.rows() != n)
            throw std::invalid_argument("simultaneous_diagonalize: mixed dimensions");
    }
    auto extract = [&](const Matrix& u) {
        SimDiagResult r;
        r.basis = u;
        r.diagonals.reserve(generators.size());
        for (const Matrix& g : generators) {
            const Matrix t = u.adjoint() * g * u;
            CVec d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = t(i, i);
            r.diagonals.push_back(std::move(d));
        }
        return r;
    };
    if (n == 0) return extract(Matrix(0, 0));

    for (const Matrix& g : generators)
        if (!is_normal(g, 1e-8))
            throw std::invalid_argument("simultaneous_diagonalize: generator is not normal");
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j) {
            const Matrix c = generators[i] * generators[j] - generators[j] * generators[i];
            const double sc = std::max(1.0, generators[i].max_abs() * generators[j].max_abs());
            if (c.max_abs() > 1e-8 * sc)
                throw std::invalid_argument(
                    "simultaneous_diagonalize: generators do not commute");
        }

    // Hermitian and anti-Hermitian parts; a common eigenbasis of these
    // diagonalizes every generator.
    std::vector<Matrix> parts;
    for (const Matrix& g : generators) {
        const Matrix ad = g.adjoint();
        Matrix h(n, n), k(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                h(i, j) = 0.5 * (g(i, j) + ad(i, j));
                k(i, j) = cplx(0.0, -0.5) * (g(i, j) - ad(i, j));
            }
        if (h.max_abs() > 0.0) parts.push_back(std::move(h));
        if (k.max_abs() > 0.0) parts.push_back(std::move(k));
    }
    if (parts.empty()) return extract(Matrix::identity(n));

    auto residual_ok = [&](const Matrix& u) {
        for (const Matrix& g : generators) {
            const Matrix t = u.adjoint() * g * u;
            double off = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) off = std::max(off, std::abs(t(i, j)));
            if (off > tol * std::max(1.0, g.max_abs())) return false;
        }
        return true;
    };

    const std::size_t attempts = 5;
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        Matrix c(n, n);
        for (const Matrix& p : parts) {
            const double w = rng.normal() / std::max(1.0, p.max_abs());
            Matrix scaled = p;
            scaled *= w;
            c += scaled;
        }
        Matrix u;
        try {
            u = hermitian_eig(c, 1e-8, kEigTol).basis;
        } catch (const ConvergenceError&) {
            continue;
        }
        if (residual_ok(u)) return extract(u);
        // Generic combination failed to separate; fall back to sequential
        // per-block refinement over the parts.
        detail::refine_blocks(u, parts, 1e-7);
        if (residual_ok(u)) return extract(u);
    }
    throw ConvergenceError("simultaneous_diagonalize: residual bound not met");
}

}  // namespace opnorm
