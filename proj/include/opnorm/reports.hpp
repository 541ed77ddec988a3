#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "opnorm/matrix.hpp"

namespace opnorm {

// Result of a sampled check of one norm axiom. `worst_margin` is the
// smallest slack observed (negative means a violation); its meaning per
// axiom is documented at the check site.
struct AxiomCheck {
    std::string axiom;
    bool passed = true;
    std::size_t samples = 0;
    double worst_margin = 0.0;
    std::string witness;   // reproduction data for the first violation; empty if none
    std::string note;      // optional detail, e.g. which certification route ran
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;  // positivity, triangle, homogeneity, definiteness
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;

    bool all_passed() const;
    const AxiomCheck& check(const std::string& axiom) const;   // throws if absent
};

// Generic result of a sampled verification. `metrics` carries named
// scalars (worst ratios, bounds, counts) in deterministic key order.
struct CheckReport {
    std::string name;
    bool passed = true;
    std::size_t samples = 0;
    std::string witness;
    std::vector<std::string> notes;
    std::map<std::string, double> metrics;
};

// Compact numeric formatting shared by witness strings and text reports.
std::string format_double(double v);
std::string format_cplx(const cplx& z);
std::string format_cvec(const CVec& v, std::size_t max_entries = 8);

}  // namespace opnorm
