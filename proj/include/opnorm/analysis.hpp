#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opnorm/hilbert_norms.hpp"
#include "opnorm/matrix.hpp"
#include "opnorm/reports.hpp"

namespace opnorm {

// Recipe for a Cauchy sequence in a normed space. Geometric decays as
// x_n = x0 * r^n; convergent halves the distance to the limit each step,
// x_n = l + (x0 - l) * 2^-n. Custom takes the terms verbatim (any finite
// list is formally Cauchy). Lengths are capped at 100 so the pairwise
// checks stay at <= 4950 pairs.
struct CauchySequenceSpec {
    enum class Kind { Geometric, Convergent, Custom };
    Kind kind = Kind::Geometric;
    CVec x0;
    CVec limit;            // Convergent only
    double ratio = 0.5;    // Geometric only; must lie in (0,1)
    std::size_t length = 40;
    std::vector<CVec> terms;  // Custom only

    static CauchySequenceSpec geometric(CVec x0, double ratio, std::size_t length);
    static CauchySequenceSpec convergent(CVec x0, CVec limit, std::size_t length);
    static CauchySequenceSpec custom(std::vector<CVec> terms);

    // Materializes the terms; throws std::invalid_argument when the
    // parameters cannot produce a Cauchy sequence (ratio outside (0,1),
    // non-finite data, length 0 or > 100).
    std::vector<CVec> generate() const;
    std::string describe() const;
};

// Sampled sup of ||F(x)|| on spheres of decreasing radius.
struct ContinuityTable {
    std::vector<double> radii;
    std::vector<double> moduli;
    std::size_t samples_per_radius = 0;
};

// ||F(x+y)|| <= ||F(x)|| + ||F(y)|| on sampled pairs, slack tolerance
// tol * max(1, ||F(x)|| + ||F(y)||). Pair 0 pins y = 0 and pair 1 pins
// y = x so the equality cases are always covered.
CheckReport check_norm_subadditivity(const LHValuedNorm& f, std::size_t pairs,
                                     std::uint64_t seed, double tol = 1e-9);

// ||F(x) - F(y)|| <= ||F(x-y)|| on sampled pairs, slack tolerance
// tol * max(1, ||F(x-y)||). Pair 0 pins y = x, pair 1 pins y = 0.
CheckReport check_reverse_triangle(const LHValuedNorm& f, std::size_t pairs,
                                   std::uint64_t seed, double tol = 1e-9);

// radii must be positive and strictly decreasing.
ContinuityTable continuity_modulus(const LHValuedNorm& f,
                                   const std::vector<double>& radii,
                                   std::size_t samples_per_radius,
                                   std::uint64_t seed);

// Verifies the chain ||F(x_m) - F(x_k)|| <= ||F(x_m - x_k)|| <= M ||x_m - x_k||
// over all term pairs, and that the image Cauchy modulus is at most
// M times the domain modulus. With m_hat <= 0 the constant M is estimated
// internally (2000 sphere samples seeded from `seed`, then raised to the
// largest unit-direction value this sequence itself attains, which the
// report records); a caller-supplied m_hat > 0 is used as-is, making the
// second link a genuine external bound. Metrics include the worst ratio
// ||F(x_m)-F(x_k)|| / ||x_m-x_k|| and the first index from which all
// image increments drop below 1e-8.
CheckReport cauchy_propagation(const LHValuedNorm& f, const CauchySequenceSpec& spec,
                               double m_hat = 0.0, std::uint64_t seed = 0);

// Combined certificate that boundedness, continuity at 0, and
// completeness with respect to F stand together: one Lipschitz constant
// M_hat with ||F(x)|| <= M_hat ||x|| on every sample evaluated, a
// continuity table over radii 1..1e-6, and a battery of 20 geometric +
// 20 convergent Cauchy sequences run through cauchy_propagation.
// M_hat starts from boundedness_estimate(f, 2000, .) and is raised to
// any larger unit-direction value the certificate itself evaluates;
// the report records which of the two won. Battery seeds derive from `seed`
// at offsets 100+i (geometric) and 200+i (convergent).
CheckReport completeness_certificate(const LHValuedNorm& f, std::uint64_t seed);

}  // namespace opnorm
