#include "opnorm/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "opnorm/analysis.hpp"
#include "opnorm/banach_embed.hpp"
#include "opnorm/ck_norms.hpp"
#include "opnorm/gelfand.hpp"
#include "opnorm/hilbert_norms.hpp"
#include "opnorm/json_io.hpp"
#include "opnorm/numkernel.hpp"
#include "opnorm/rng.hpp"
#include "opnorm/sampling.hpp"
#include "opnorm/spaces.hpp"
#include "opnorm/version.hpp"

namespace opnorm {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- models

enum class CtorKind { LH, CK, Algebra, Disc };

struct ParamInfo {
    const char* name;
    char type;      // 'u' integer, 'd' double, 'm' list of matrices
    double dflt;
    double lo;
    double hi;
    const char* doc;
};

struct CtorInfo {
    const char* name;
    CtorKind kind;
    const char* summary;
    std::vector<ParamInfo> params;
};

const std::vector<CtorInfo>& ctor_registry() {
    static const std::vector<CtorInfo> reg = {
        {"trivial", CtorKind::LH,
         "F(x) = ||x|| * I on a complex lp space",
         {{"dim", 'u', 4, 1, 64, "space dimension"},
          {"hilbert_dim", 'u', 3, 1, 64, "dimension of the value space"},
          {"p", 'd', 2, 1, std::numeric_limits<double>::infinity(), "lp exponent"}}},
        {"mult_l2", CtorKind::LH,
         "F(g) = diag(|g_i|): multiplication acting on square-summable grid vectors; "
         "domain carries the sup norm",
         {{"grid", 'u', 8, 1, 4096, "number of grid points"}}},
        {"compose", CtorKind::LH,
         "pullback x -> F(T x) of grid multiplication along a seeded "
         "well-conditioned endomorphism T",
         {{"grid", 'u', 6, 1, 64, "number of grid points"},
          {"condition", 'd', 10, 1, 1e8, "condition number of T"}}},
        {"adversarial_lh", CtorKind::LH,
         "trivial model whose evaluator subtracts shift * I away from the origin; "
         "positivity must fail with a witness",
         {{"dim", 'u', 4, 1, 64, "space dimension"},
          {"hilbert_dim", 'u', 3, 1, 64, "dimension of the value space"},
          {"shift", 'd', 0.01, 1e-15, 1e6, "size of the defect"}}},
        {"mult_ck", CtorKind::CK,
         "F(g) = diag(|g_i|) on functions over a grid of [0,1]",
         {{"grid", 'u', 8, 1, 4096, "number of grid points"}}},
        {"adversarial_ck", CtorKind::CK,
         "grid multiplication whose evaluator subtracts shift from entry (0,0) away "
         "from the origin; cone positivity must fail with a witness",
         {{"grid", 'u', 4, 1, 4096, "number of grid points"},
          {"shift", 'd', 0.01, 1e-15, 1e6, "size of the defect"}}},
        {"algebra", CtorKind::Algebra,
         "commutative *-algebra spanned by the joint spectral projections of "
         "pairwise-commuting normal generators; random generators share a seeded "
         "eigenbasis, or pass explicit matrices",
         {{"dim", 'u', 6, 1, 12, "ambient matrix dimension"},
          {"generators", 'u', 1, 1, 4, "number of random generators"},
          {"repeats", 'u', 3, 1, 64, "independent algebras per suite run"},
          {"matrices", 'm', 0, 0, 0, "explicit generators (matrix objects); overrides "
                                     "dim/generators and forces repeats = 1"}}},
        {"embed_l1", CtorKind::Disc,
         "exact dual-ball discretization of real l1: all 2^dim sign covectors",
         {{"dim", 'u', 3, 1, 16, "space dimension"}}},
        {"embed_linf", CtorKind::Disc,
         "exact dual-ball discretization of real linf: the 2*dim signed coordinate "
         "covectors",
         {{"dim", 'u', 3, 1, 64, "space dimension"}}},
        {"embed_l2_sampled", CtorKind::Disc,
         "the real Euclidean plane with count equispaced unit covectors (seeded "
         "rotation); isometry defect guaranteed <= (1 - cos(pi/count)) * ||b||",
         {{"count", 'u', 360, 1, 100000, "number of covectors"}}},
    };
    return reg;
}

const CtorInfo* find_ctor(const std::string& name) {
    for (const CtorInfo& c : ctor_registry())
        if (name == c.name) return &c;
    return nullptr;
}

// Accepts either integer representation; JSON built in code stores small
// literals as signed.
bool nonneg_integer(const json& v) {
    return v.is_number_integer() &&
           (v.is_number_unsigned() || v.get<std::int64_t>() >= 0);
}

std::size_t uparam(const json& p, const char* name, double dflt) {
    return p.contains(name) ? p.at(name).get<std::size_t>()
                            : static_cast<std::size_t>(dflt);
}

double dparam(const json& p, const char* name, double dflt) {
    return p.contains(name) ? p.at(name).get<double>() : dflt;
}

std::string ctor_label(const CtorInfo& info, const json& p) {
    std::string out = info.name;
    out += "(";
    bool first = true;
    for (const ParamInfo& pi : info.params) {
        if (pi.type == 'm') {
            if (!p.contains("matrices")) continue;
            if (!first) out += ", ";
            out += "matrices=" + std::to_string(p.at("matrices").size());
        } else {
            if (!first) out += ", ";
            out += std::string(pi.name) + "=";
            out += (pi.type == 'u') ? std::to_string(uparam(p, pi.name, pi.dflt))
                                    : format_double(dparam(p, pi.name, pi.dflt));
        }
        first = false;
    }
    out += ")";
    return out;
}

LHValuedNorm build_lh(const std::string& ctor, const json& p, std::uint64_t cseed) {
    if (ctor == "trivial")
        return trivial_norm(NormedSpaceModel::lp(uparam(p, "dim", 4), dparam(p, "p", 2.0)),
                            uparam(p, "hilbert_dim", 3));
    if (ctor == "mult_l2") return mult_norm_l2(uparam(p, "grid", 8));
    if (ctor == "compose") {
        const std::size_t grid = uparam(p, "grid", 6);
        Rng rng(derive_seed(cseed, 0x7));
        return compose_norm(mult_norm_l2(grid),
                            random_well_conditioned(rng, grid, dparam(p, "condition", 10.0)));
    }
    if (ctor == "adversarial_lh")
        return adversarial_shift(
            trivial_norm(NormedSpaceModel::lp(uparam(p, "dim", 4), 2.0),
                         uparam(p, "hilbert_dim", 3)),
            dparam(p, "shift", 0.01));
    throw ConfigError("internal: unknown L(H) constructor " + ctor);
}

std::vector<Matrix> algebra_generators(const json& p, std::uint64_t cseed) {
    if (p.contains("matrices")) {
        std::vector<Matrix> gens;
        for (const json& mj : p.at("matrices")) gens.push_back(matrix_from_json(mj));
        return gens;
    }
    Rng rng(derive_seed(cseed, 0x3));
    return random_commuting_normal_family(rng, uparam(p, "dim", 6),
                                          uparam(p, "generators", 1));
}

CommutativeStarAlgebra build_algebra_model(const json& p, std::uint64_t cseed) {
    return build_algebra(algebra_generators(p, cseed), 1e-10, derive_seed(cseed, 0x4));
}

DualBallDiscretization build_disc(const std::string& ctor, const json& p,
                                  std::uint64_t cseed) {
    if (ctor == "embed_l1") {
        const std::size_t n = uparam(p, "dim", 3);
        return discretize_dual_ball(
            NormedSpaceModel::lp(n, 1.0, ScalarField::Real, "l1(" + std::to_string(n) + ")"),
            ExactDual{});
    }
    if (ctor == "embed_linf") {
        const std::size_t n = uparam(p, "dim", 3);
        return discretize_dual_ball(
            NormedSpaceModel::lp(n, std::numeric_limits<double>::infinity(),
                                 ScalarField::Real, "linf(" + std::to_string(n) + ")"),
            ExactDual{});
    }
    if (ctor == "embed_l2_sampled")
        return discretize_dual_ball(
            NormedSpaceModel::lp(2, 2.0, ScalarField::Real, "l2(2)"),
            SampledDual{uparam(p, "count", 360), derive_seed(cseed, 0x2)});
    throw ConfigError("internal: unknown discretization constructor " + ctor);
}

// Any constructor usable where a C(K)-valued norm is expected.
CKValuedNorm build_ck(const CtorInfo& info, const json& p, std::uint64_t cseed) {
    switch (info.kind) {
        case CtorKind::CK:
            if (std::string(info.name) == "mult_ck") return mult_norm_ck(uparam(p, "grid", 8));
            return adversarial_ck_shift(mult_norm_ck(uparam(p, "grid", 4)),
                                        dparam(p, "shift", 0.01));
        case CtorKind::Algebra:
            return multiplicative_ovnorm(build_algebra_model(p, cseed));
        case CtorKind::Disc:
            return embedding_ovnorm(build_disc(info.name, p, cseed));
        case CtorKind::LH:
            break;
    }
    throw ConfigError("internal: constructor " + std::string(info.name) +
                      " does not yield a C(K)-valued norm");
}

// ---------------------------------------------------------------- suites

struct Residuals {
    double max = 0.0;
    double sum = 0.0;
    std::size_t n = 0;
    void add(double r) {
        if (!(r > 0.0)) r = 0.0;
        max = std::max(max, r);
        sum += r;
        ++n;
    }
    void finish(SuiteResult& out) const {
        out.max_residual = max;
        out.mean_residual = n ? sum / static_cast<double>(n) : 0.0;
    }
};

void add_witness(SuiteResult& out, std::string w) {
    if (out.witnesses.size() < 8) out.witnesses.push_back(std::move(w));
}

void fold_axiom_report(SuiteResult& out, Residuals& res, const AxiomReport& rep) {
    if (!rep.all_passed()) out.passed = false;
    for (const AxiomCheck& c : rep.checks) {
        res.add(-c.worst_margin);
        if (!c.passed) add_witness(out, c.axiom + ": " + c.witness);
    }
}

void fold_check_report(SuiteResult& out, const CheckReport& rep) {
    if (!rep.passed) {
        out.passed = false;
        add_witness(out, rep.name + ": " + (rep.witness.empty() ? "failed" : rep.witness));
    }
}

SuiteResult run_axioms_lh(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    const CtorInfo& info = *find_ctor(spec.constructor);
    const LHValuedNorm f = build_lh(spec.constructor, spec.params,
                                    derive_seed(suite_seed, 0xc0));
    out.constructor_label = ctor_label(info, spec.params);
    const AxiomReport rep = check_lh_axioms(f, spec.samples, derive_seed(suite_seed, 1),
                                            spec.tol);
    Residuals res;
    fold_axiom_report(out, res, rep);
    res.finish(out);
    out.details = json{{"axioms", json_of(rep)}, {"descriptor", f.descriptor}};
    return out;
}

SuiteResult run_axioms_ck(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    const CtorInfo& info = *find_ctor(spec.constructor);
    const CKValuedNorm f = build_ck(info, spec.params, derive_seed(suite_seed, 0xc0));
    out.constructor_label = ctor_label(info, spec.params);
    const AxiomReport rep = check_ck_axioms(f, spec.samples, spec.f_samples,
                                            derive_seed(suite_seed, 1), spec.tol);
    Residuals res;
    fold_axiom_report(out, res, rep);
    res.finish(out);
    out.details = json{{"axioms", json_of(rep)}, {"descriptor", f.descriptor}};
    return out;
}

SuiteResult run_prop5(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    const CtorInfo& info = *find_ctor(spec.constructor);
    const LHValuedNorm f = build_lh(spec.constructor, spec.params,
                                    derive_seed(suite_seed, 0xc0));
    out.constructor_label = ctor_label(info, spec.params);
    const CheckReport sub =
        check_norm_subadditivity(f, spec.samples, derive_seed(suite_seed, 1), spec.tol);
    const CheckReport rev =
        check_reverse_triangle(f, spec.samples, derive_seed(suite_seed, 2), spec.tol);
    fold_check_report(out, sub);
    fold_check_report(out, rev);
    Residuals res;
    res.add(-sub.metrics.at("worst_slack"));
    res.add(-rev.metrics.at("worst_slack"));
    res.finish(out);
    out.details = json{{"subadditivity", json_of(sub)}, {"reverse_triangle", json_of(rev)}};
    return out;
}

SuiteResult run_prop6(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    out.constructor_label = "random normal matrices (dims 2..8)";
    Residuals res;
    Rng rng(derive_seed(suite_seed, 1));
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const std::size_t d = 2 + i % 7;
        const Matrix m = random_normal_matrix(rng, d);
        const double sn = spectral_norm(m);
        const double sr = spectral_radius(m);
        const double nr = numerical_radius(m, ExactNormal{});
        const double gap = std::max(std::abs(sn - sr), std::abs(nr - sn));
        res.add(gap);
        if (gap > spec.tol) {
            out.passed = false;
            add_witness(out, "normal " + std::to_string(d) + "x" + std::to_string(d) +
                                 ": ||m|| = " + format_double(sn) + ", spectral radius = " +
                                 format_double(sr) + ", numerical radius = " +
                                 format_double(nr));
        }
    }
    // The 2x2 nilpotent shift: norm 1, numerical radius 1/2. A sampled
    // radius lands in [0.499, 0.5]; well short of the norm, so dropping
    // normality breaks the coincidence.
    Matrix shift2(2, 2);
    shift2(0, 1) = 1.0;
    const double nr = numerical_radius(shift2, Sampled{20000, derive_seed(suite_seed, 2)});
    const double sn = spectral_norm(shift2);
    const double sr = spectral_radius(shift2);
    const bool jordan_ok =
        nr >= 0.499 && nr <= 0.5 + 1e-12 && std::abs(sn - 1.0) <= 1e-12 && sr <= 1e-12;
    if (!jordan_ok) {
        out.passed = false;
        add_witness(out, "nilpotent shift: sampled radius " + format_double(nr) +
                             ", norm " + format_double(sn) + ", spectral radius " +
                             format_double(sr));
    }
    res.finish(out);
    out.details = json{{"normal_samples", spec.samples},
                       {"nilpotent_shift",
                        json{{"sampled_radius", nr}, {"norm", sn}, {"spectral_radius", sr}}}};
    return out;
}

SuiteResult run_theorem_b1(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    const CtorInfo& info = *find_ctor(spec.constructor);
    const LHValuedNorm f = build_lh(spec.constructor, spec.params,
                                    derive_seed(suite_seed, 0xc0));
    out.constructor_label = ctor_label(info, spec.params);
    const CheckReport rep = completeness_certificate(f, derive_seed(suite_seed, 1));
    fold_check_report(out, rep);
    Residuals res;
    res.add(rep.metrics.at("worst_modulus_excess"));
    res.add(rep.metrics.at("failed_sequences"));
    res.finish(out);
    out.details = json{{"certificate", json_of(rep)}, {"descriptor", f.descriptor}};
    return out;
}

SuiteResult run_gelfand(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    const CtorInfo& info = *find_ctor(spec.constructor);
    out.constructor_label = ctor_label(info, spec.params);
    const std::size_t repeats =
        spec.params.contains("matrices") ? 1 : uparam(spec.params, "repeats", 3);
    Residuals res;
    json algebras = json::array();
    for (std::size_t k = 0; k < repeats; ++k) {
        const std::uint64_t aseed = derive_seed(suite_seed, 0x10 + k);
        const CommutativeStarAlgebra alg =
            build_algebra_model(spec.params, derive_seed(aseed, 0xc0));
        const std::vector<Character> chars = characters(alg);
        const Matrix id = Matrix::identity(alg.ambient_dim);

        double worst_unital = 0.0;
        for (const Character& ch : chars)
            worst_unital = std::max(worst_unital, std::abs(ch(id) - cplx(1.0)));
        res.add(worst_unital);
        if (worst_unital > 1e-10) {
            out.passed = false;
            add_witness(out, "character with phi(1) off by " + format_double(worst_unital));
        }

        double worst_mult = 0.0;
        Rng rng(derive_seed(aseed, 1));
        for (std::size_t i = 0; i < spec.samples; ++i) {
            CVec u(alg.class_count()), v(alg.class_count());
            for (auto& z : u) z = rng.cgauss();
            for (auto& z : v) z = rng.cgauss();
            const Matrix a = alg.element_from_coeffs(u);
            const Matrix b = alg.element_from_coeffs(v);
            const Matrix ab = a * b;
            const double scale = std::max(1.0, vec_max_abs(u) * vec_max_abs(v));
            for (const Character& ch : chars)
                worst_mult = std::max(worst_mult, std::abs(ch(ab) - ch(a) * ch(b)) / scale);
        }
        res.add(worst_mult);
        if (worst_mult > spec.tol) {
            out.passed = false;
            add_witness(out, "multiplicativity residual " + format_double(worst_mult) +
                                 " on algebra " + std::to_string(k));
        }

        const CheckReport con = check_contractive(alg, 200, derive_seed(aseed, 2));
        const CheckReport iso = check_isometric(alg, 200, derive_seed(aseed, 3));
        fold_check_report(out, con);
        fold_check_report(out, iso);
        res.add(con.metrics.at("worst_equality_gap"));
        res.add(iso.metrics.at("worst_isometry_gap"));
        res.add(iso.metrics.at("worst_reconstruction"));

        json table = json::object();
        for (std::size_t c = 0; c < alg.class_count(); ++c)
            table[std::to_string(c)] = cvec_to_json(alg.joint_spectrum[c]);
        algebras.push_back(json{{"ambient_dim", alg.ambient_dim},
                                {"characters", chars.size()},
                                {"character_table", std::move(table)},
                                {"unital_residual", worst_unital},
                                {"multiplicativity_residual", worst_mult},
                                {"contractive", json_of(con)},
                                {"isometric", json_of(iso)}});
    }
    res.finish(out);
    out.details = json{{"algebras", std::move(algebras)}};
    return out;
}

SuiteResult run_cor_a9(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    const CtorInfo& info = *find_ctor(spec.constructor);
    out.constructor_label = ctor_label(info, spec.params);
    const std::size_t repeats =
        spec.params.contains("matrices") ? 1 : uparam(spec.params, "repeats", 3);
    Residuals res;
    json algebras = json::array();
    for (std::size_t k = 0; k < repeats; ++k) {
        const std::uint64_t aseed = derive_seed(suite_seed, 0x10 + k);
        const CommutativeStarAlgebra alg =
            build_algebra_model(spec.params, derive_seed(aseed, 0xc0));
        const CKValuedNorm f = multiplicative_ovnorm(alg);
        const AxiomReport ax =
            check_ck_axioms(f, 150, spec.f_samples, derive_seed(aseed, 1), spec.tol);
        fold_axiom_report(out, res, ax);

        double worst_mult = 0.0, worst_iso = 0.0;
        Rng rng(derive_seed(aseed, 2));
        for (std::size_t i = 0; i < spec.samples; ++i) {
            CVec u(alg.class_count()), v(alg.class_count());
            for (auto& z : u) z = rng.cgauss();
            for (auto& z : v) z = rng.cgauss();
            const Matrix a = alg.element_from_coeffs(u);
            const Matrix b = alg.element_from_coeffs(v);
            const Matrix fa = multiplicative_ovnorm_element(alg, a);
            const Matrix fb = multiplicative_ovnorm_element(alg, b);
            const Matrix fab = multiplicative_ovnorm_element(alg, a * b);
            worst_mult = std::max(worst_mult, op_norm_sup(fab - fa * fb));
            worst_iso = std::max(worst_iso, std::abs(op_norm_sup(fa) - spectral_norm(a)) /
                                                std::max(1.0, spectral_norm(a)));
        }
        res.add(worst_mult);
        res.add(worst_iso);
        if (worst_mult > spec.tol) {
            out.passed = false;
            add_witness(out, "||F(ab) - F(a)F(b)|| = " + format_double(worst_mult) +
                                 " on algebra " + std::to_string(k));
        }
        if (worst_iso > spec.tol) {
            out.passed = false;
            add_witness(out, "||F(b)|| vs ||b|| gap " + format_double(worst_iso) +
                                 " on algebra " + std::to_string(k));
        }
        algebras.push_back(json{{"ambient_dim", alg.ambient_dim},
                                {"characters", alg.class_count()},
                                {"axioms", json_of(ax)},
                                {"multiplicativity_residual", worst_mult},
                                {"isometry_residual", worst_iso}});
    }
    res.finish(out);
    out.details = json{{"algebras", std::move(algebras)}};
    return out;
}

SuiteResult run_embed_a6(const SuiteSpec& spec, std::uint64_t suite_seed) {
    SuiteResult out;
    const CtorInfo& info = *find_ctor(spec.constructor);
    const DualBallDiscretization disc =
        build_disc(spec.constructor, spec.params, derive_seed(suite_seed, 0xc0));
    out.constructor_label = ctor_label(info, spec.params);

    const EmbeddingReport er = isometry_defect(disc, spec.samples, derive_seed(suite_seed, 1));
    Residuals res;
    res.add(-er.min_defect);   // below -1e-12 would break the one-sided bound
    if (er.guarantee == DefectGuarantee::Exact) res.add(std::abs(er.max_defect));
    if (!er.one_sided_ok) {
        out.passed = false;
        add_witness(out, "discretized sup exceeded the norm: min defect " +
                             format_double(er.min_defect));
    }
    if (!er.bound_ok) {
        out.passed = false;
        add_witness(out, "defect " + format_double(er.max_defect) +
                             " exceeded the guaranteed bound coeff " +
                             format_double(er.defect_coeff));
    }

    const AxiomReport ax = check_ck_axioms(embedding_ovnorm(disc), 150, spec.f_samples,
                                           derive_seed(suite_seed, 2), spec.tol);
    fold_axiom_report(out, res, ax);

    double worst_lin = 0.0;
    Rng rng(derive_seed(suite_seed, 3));
    for (std::size_t i = 0; i < 50; ++i) {
        const CVec a = disc.space.sample(rng);
        const CVec b = disc.space.sample(rng);
        const cplx alpha = (disc.space.field() == ScalarField::Real)
                               ? cplx(rng.uniform(-2.0, 2.0))
                               : rng.cgauss();
        const CVec lhs = beta_embed(disc, vec_add(vec_scale(alpha, a), b));
        const CVec rhs = vec_add(vec_scale(alpha, beta_embed(disc, a)), beta_embed(disc, b));
        const double dev =
            vec_max_abs(vec_sub(lhs, rhs)) / std::max(1.0, vec_max_abs(lhs));
        worst_lin = std::max(worst_lin, dev);
    }
    res.add(worst_lin);
    if (worst_lin > 1e-12) {
        out.passed = false;
        add_witness(out, "embedding linearity deviation " + format_double(worst_lin));
    }

    res.finish(out);
    out.details = json{{"defect", json_of(er)},
                       {"axioms", json_of(ax)},
                       {"linearity_deviation", worst_lin},
                       {"functionals", disc.functionals.size()}};
    return out;
}

struct SuiteInfo {
    const char* name;
    std::uint64_t offset;           // suite_seed = derive_seed(master, offset)
    const char* default_ctor;       // nullptr: suite takes no constructor
    CtorKind wanted;                // meaningful when default_ctor != nullptr
    bool any_ck_source;             // CK suites also accept algebra/disc constructors
    std::size_t default_samples;
    std::size_t default_f_samples;
    double default_tol;
    const char* claim;
    SuiteResult (*runner)(const SuiteSpec&, std::uint64_t);
};

const std::vector<SuiteInfo>& suite_registry() {
    static const std::vector<SuiteInfo> reg = {
        {"axioms-lh", 1, "mult_l2", CtorKind::LH, false, 500, 0, 1e-9,
         "the evaluator is an L(H)-valued norm: values are positive semidefinite, "
         "F(x) + F(y) - F(x+y) >= 0 in the operator order, F(a x) = |a| F(x), and "
         "F(x) = 0 exactly at x = 0",
         run_axioms_lh},
        {"axioms-ck", 2, "mult_ck", CtorKind::CK, true, 300, 200, 1e-9,
         "the evaluator is a C(K)-valued norm: values preserve the nonnegative cone, "
         "F(x) + F(y) - F(x+y) preserves it too, F(a x) = |a| F(x), and F(x) = 0 "
         "exactly at x = 0",
         run_axioms_ck},
        {"prop5", 3, "mult_l2", CtorKind::LH, false, 1000, 0, 1e-9,
         "x -> ||F(x)|| is subadditive and satisfies the reverse triangle "
         "inequality | ||F(x)|| - ||F(y)|| | <= ||F(x - y)||",
         run_prop5},
        {"prop6", 4, nullptr, CtorKind::LH, false, 100, 0, 1e-8,
         "for a normal matrix the numerical radius, the spectral radius, and the "
         "operator norm coincide; the nilpotent 2x2 shift (norm 1, radius 1/2) shows "
         "normality is necessary",
         run_prop6},
        {"theorem-b1", 5, "mult_l2", CtorKind::LH, false, 1, 0, 1e-9,
         "a bounded operator-valued norm admits a single Lipschitz constant M with "
         "||F(x)|| <= M ||x||, so it is continuous at 0 and maps Cauchy sequences to "
         "Cauchy sequences",
         run_theorem_b1},
        {"gelfand", 6, "algebra", CtorKind::Algebra, false, 100, 0, 1e-9,
         "characters of the commutative matrix *-algebra are unital and "
         "multiplicative, and f -> (phi(f))_phi is an isometric isomorphism onto "
         "functions over the character set",
         run_gelfand},
        {"cor-a9", 7, "algebra", CtorKind::Algebra, false, 100, 60, 1e-9,
         "b -> multiplication by |Gamma b| over the character set is a C(K)-valued "
         "norm with F(ab) = F(a) F(b) and ||F(b)|| = ||b||",
         run_cor_a9},
        {"embed-a6", 8, "embed_l2_sampled", CtorKind::Disc, false, 500, 60, 1e-9,
         "b -> multiplication by |phi(b)| over a dual-ball discretization is a "
         "C(K)-valued norm with ||F(b)|| <= ||b||; equality holds exactly for "
         "extreme-point enumerations and within the stated defect bound otherwise",
         run_embed_a6},
    };
    return reg;
}

const SuiteInfo* find_suite(const std::string& name) {
    for (const SuiteInfo& s : suite_registry())
        if (name == s.name) return &s;
    return nullptr;
}

bool ctor_fits(const SuiteInfo& suite, const CtorInfo& ctor) {
    if (!suite.default_ctor) return false;
    if (ctor.kind == suite.wanted) return true;
    if (suite.any_ck_source &&
        (ctor.kind == CtorKind::Algebra || ctor.kind == CtorKind::Disc))
        return true;
    return false;
}

void validate_params(const json& params, const CtorInfo& info, const std::string& where) {
    if (!params.is_object())
        throw ConfigError(where + ": params must be an object");
    for (const auto& [key, value] : params.items()) {
        const ParamInfo* pi = nullptr;
        for (const ParamInfo& cand : info.params)
            if (key == cand.name) pi = &cand;
        if (!pi)
            throw ConfigError(where + ": unknown parameter '" + key + "' for constructor '" +
                              info.name + "'");
        const std::string pwhere = where + ".params." + key;
        if (pi->type == 'u') {
            if (!nonneg_integer(value))
                throw ConfigError(pwhere + ": expected a nonnegative integer");
            const double v = value.get<double>();
            if (v < pi->lo || v > pi->hi)
                throw ConfigError(pwhere + ": must lie in [" + format_double(pi->lo) + ", " +
                                  format_double(pi->hi) + "]");
        } else if (pi->type == 'd') {
            if (!value.is_number())
                throw ConfigError(pwhere + ": expected a number");
            const double v = value.get<double>();
            if (!(v >= pi->lo) || v > pi->hi)
                throw ConfigError(pwhere + ": must lie in [" + format_double(pi->lo) + ", " +
                                  format_double(pi->hi) + "]");
        } else {
            if (!value.is_array() || value.empty())
                throw ConfigError(pwhere + ": expected a non-empty array of matrix objects");
            std::vector<Matrix> gens;
            for (std::size_t k = 0; k < value.size(); ++k) {
                try {
                    gens.push_back(matrix_from_json(value[k]));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(pwhere + "[" + std::to_string(k) + "]: " + e.what());
                }
            }
            try {
                build_algebra(gens);   // admissibility: square, commuting, normal
            } catch (const std::exception& e) {
                throw ConfigError(pwhere + ": " + e.what());
            }
        }
    }
}

}  // namespace

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ConfigError("config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "master_seed" && key != "format" && key != "output" && key != "suites")
            throw ConfigError("config: unknown field '" + key + "'");
    }
    SuiteConfig cfg;
    if (j.contains("master_seed")) {
        if (!nonneg_integer(j.at("master_seed")))
            throw ConfigError("config: master_seed must be a nonnegative integer");
        cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    if (j.contains("format")) {
        if (!j.at("format").is_string())
            throw ConfigError("config: format must be a string");
        cfg.format = j.at("format").get<std::string>();
        if (cfg.format != "json" && cfg.format != "text")
            throw ConfigError("config: format must be \"json\" or \"text\", got \"" +
                              cfg.format + "\"");
    }
    if (j.contains("output")) {
        if (!j.at("output").is_string())
            throw ConfigError("config: output must be a string path");
        cfg.output_path = j.at("output").get<std::string>();
    }
    if (j.contains("suites")) {
        if (!j.at("suites").is_array())
            throw ConfigError("config: suites must be an array");
        const json& arr = j.at("suites");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "suites[" + std::to_string(i) + "]";
            const json& e = arr[i];
            if (!e.is_object())
                throw ConfigError(where + ": expected an object");
            for (const auto& [key, value] : e.items()) {
                (void)value;
                if (key != "name" && key != "constructor" && key != "params" &&
                    key != "samples" && key != "f_samples" && key != "tol")
                    throw ConfigError(where + ": unknown field '" + key + "'");
            }
            SuiteSpec spec;
            if (!e.contains("name") || !e.at("name").is_string())
                throw ConfigError(where + ": missing suite name");
            spec.name = e.at("name").get<std::string>();
            const SuiteInfo* suite = find_suite(spec.name);
            if (!suite)
                throw ConfigError(where + ": unknown suite '" + spec.name + "'");
            if (e.contains("constructor")) {
                if (!suite->default_ctor)
                    throw ConfigError(where + ": suite '" + spec.name +
                                      "' takes no constructor");
                if (!e.at("constructor").is_string())
                    throw ConfigError(where + ": constructor must be a string");
                spec.constructor = e.at("constructor").get<std::string>();
                const CtorInfo* ctor = find_ctor(spec.constructor);
                if (!ctor)
                    throw ConfigError(where + ": unknown constructor '" + spec.constructor +
                                      "'");
                if (!ctor_fits(*suite, *ctor))
                    throw ConfigError(where + ": constructor '" + spec.constructor +
                                      "' does not fit suite '" + spec.name + "'");
            }
            if (e.contains("params")) {
                const CtorInfo* ctor = find_ctor(
                    spec.constructor.empty() ? (suite->default_ctor ? suite->default_ctor : "")
                                             : spec.constructor);
                if (!ctor)
                    throw ConfigError(where + ": params given but suite '" + spec.name +
                                      "' takes no constructor");
                spec.params = e.at("params");
                validate_params(spec.params, *ctor, where);
            }
            if (e.contains("samples")) {
                if (!nonneg_integer(e.at("samples")) ||
                    e.at("samples").get<std::size_t>() == 0)
                    throw ConfigError(where + ": samples must be an integer >= 1");
                spec.samples = e.at("samples").get<std::size_t>();
            }
            if (e.contains("f_samples")) {
                if (!nonneg_integer(e.at("f_samples")) ||
                    e.at("f_samples").get<std::size_t>() == 0)
                    throw ConfigError(where + ": f_samples must be an integer >= 1");
                spec.f_samples = e.at("f_samples").get<std::size_t>();
            }
            if (e.contains("tol")) {
                if (!e.at("tol").is_number() || !(e.at("tol").get<double>() > 0.0))
                    throw ConfigError(where + ": tol must be a positive number");
                spec.tol = e.at("tol").get<double>();
            }
            cfg.suites.push_back(std::move(spec));
        }
    }
    return cfg;
}

SuiteConfig SuiteConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::json SuiteConfig::echo() const {
    json suites = json::array();
    for (const SuiteSpec& s : this->suites) {
        json e{{"name", s.name}};
        if (!s.constructor.empty()) e["constructor"] = s.constructor;
        if (!s.params.empty()) e["params"] = s.params;
        if (s.samples != 0) e["samples"] = s.samples;
        if (s.f_samples != 0) e["f_samples"] = s.f_samples;
        if (s.tol != 0.0) e["tol"] = s.tol;
        suites.push_back(std::move(e));
    }
    return json{{"master_seed", master_seed},
                {"format", format},
                {"output", output_path},
                {"suites", std::move(suites)}};
}

RunReport run_suites(const SuiteConfig& config) {
    RunReport report;
    report.version = kVersion;
    report.config_echo = config.echo();
    if (config.suites.empty())
        report.notes.push_back("zero suites configured; vacuous pass");
    for (const SuiteSpec& raw : config.suites) {
        const SuiteInfo& info = *find_suite(raw.name);
        SuiteSpec spec = raw;
        if (spec.constructor.empty() && info.default_ctor)
            spec.constructor = info.default_ctor;
        if (spec.samples == 0) spec.samples = info.default_samples;
        if (spec.f_samples == 0) spec.f_samples = info.default_f_samples;
        if (spec.tol == 0.0) spec.tol = info.default_tol;
        const std::uint64_t suite_seed = derive_seed(config.master_seed, info.offset);

        const auto start = std::chrono::steady_clock::now();
        SuiteResult result;
        try {
            result = info.runner(spec, suite_seed);
        } catch (const std::exception& e) {
            result = SuiteResult{};
            result.passed = false;
            result.witnesses.push_back(std::string("exception: ") + e.what());
        }
        const auto stop = std::chrono::steady_clock::now();
        result.name = spec.name;
        result.claim = info.claim;
        result.wall_ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start)
                .count();
        if (!result.passed) report.passed = false;
        report.suites.push_back(std::move(result));
    }
    return report;
}

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const SuiteInfo& s : suite_registry()) v.push_back(s.name);
        return v;
    }();
    return names;
}

const std::vector<std::string>& known_constructors() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const CtorInfo& c : ctor_registry()) v.push_back(c.name);
        return v;
    }();
    return names;
}

std::string describe(const std::string& name) {
    std::ostringstream os;
    if (const SuiteInfo* s = find_suite(name)) {
        os << "suite " << s->name << "\n";
        os << "  verifies: " << s->claim << "\n";
        os << "  seed: derive_seed(master_seed, " << s->offset << ")\n";
        if (s->default_ctor) {
            os << "  default constructor: " << s->default_ctor << "\n";
            os << "  accepts:";
            for (const CtorInfo& c : ctor_registry())
                if (ctor_fits(*s, c)) os << " " << c.name;
            os << "\n";
        } else {
            os << "  takes no constructor\n";
        }
        os << "  defaults: samples=" << s->default_samples;
        if (s->default_f_samples) os << ", f_samples=" << s->default_f_samples;
        os << ", tol=" << format_double(s->default_tol) << "\n";
        if (name == "theorem-b1")
            os << "  note: the certificate fixes its own battery (40 sequences, 7 radii); "
                  "samples is ignored\n";
        if (name == "embed-a6")
            os << "  defect guarantee policy: exact extreme-point enumerations promise zero "
                  "defect; equispaced planar Euclidean sampling promises defect <= "
                  "(1 - cos(pi/count)) * ||b||; all other samplings report the measured "
                  "defect with no guarantee, and the one-sided bound sup <= ||b|| is "
                  "enforced everywhere\n";
        if (name == "gelfand")
            os << "  generators: pairwise commuting, normal matrices (checked; offenders "
                  "named); explicit matrices via params.matrices\n";
        return os.str();
    }
    if (const CtorInfo* c = find_ctor(name)) {
        os << "constructor " << c->name << "\n";
        os << "  " << c->summary << "\n";
        os << "  yields: "
           << (c->kind == CtorKind::LH        ? "L(H)-valued norm"
               : c->kind == CtorKind::CK      ? "C(K)-valued norm"
               : c->kind == CtorKind::Algebra ? "commutative *-algebra"
                                              : "dual-ball discretization")
           << "\n";
        os << "  parameters:\n";
        for (const ParamInfo& p : c->params) {
            os << "    " << p.name << " (";
            if (p.type == 'u')
                os << "integer, default " << static_cast<std::size_t>(p.dflt);
            else if (p.type == 'd')
                os << "number, default " << format_double(p.dflt);
            else
                os << "array of matrix objects";
            os << "): " << p.doc << "\n";
        }
        return os.str();
    }
    throw ConfigError("describe: unknown name '" + name + "' (suites: " +
                      [] {
                          std::string acc;
                          for (const std::string& n : known_suites())
                              acc += (acc.empty() ? "" : ", ") + n;
                          return acc;
                      }() +
                      ")");
}

nlohmann::json RunReport::to_json() const {
    json suites_json = json::array();
    for (const SuiteResult& r : suites)
        suites_json.push_back(json{{"name", r.name},
                                   {"constructor", r.constructor_label},
                                   {"claim", r.claim},
                                   {"passed", r.passed},
                                   {"max_residual", r.max_residual},
                                   {"mean_residual", r.mean_residual},
                                   {"witnesses", r.witnesses},
                                   {"wall_ms", r.wall_ms},
                                   {"details", r.details}});
    return json{{"schema", schema},        {"version", version}, {"passed", passed},
                {"config", config_echo},   {"notes", notes},     {"suites", std::move(suites_json)}};
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "opnorm " << version << "\n";
    os << "suites: " << suites.size() << "\n";
    for (const SuiteResult& r : suites) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " :: " << r.constructor_label
           << "\n";
        os << "       claim: " << r.claim << "\n";
        os << "       max_residual " << format_double(r.max_residual) << ", mean_residual "
           << format_double(r.mean_residual) << ", wall " << format_double(r.wall_ms)
           << " ms\n";
        for (std::size_t i = 0; i < r.witnesses.size() && i < 3; ++i)
            os << "       witness: " << r.witnesses[i] << "\n";
    }
    for (const std::string& n : notes) os << "note: " << n << "\n";
    os << "overall: " << (passed ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace opnorm
