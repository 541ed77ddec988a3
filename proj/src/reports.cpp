#include "opnorm/reports.hpp"

#include <cstdio>
#include <stdexcept>

namespace opnorm {

bool AxiomReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const AxiomCheck& AxiomReport::check(const std::string& axiom) const {
    for (const auto& c : checks)
        if (c.axiom == axiom) return c;
    throw std::invalid_argument("AxiomReport::check: no axiom named " + axiom);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_cplx(const cplx& z) {
    char buf[96];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.9g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.9g%+.9gi", z.real(), z.imag());
    }
    return buf;
}

std::string format_cvec(const CVec& v, std::size_t max_entries) {
    std::string out = "[";
    const std::size_t shown = std::min(v.size(), max_entries);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i) out += ", ";
        out += format_cplx(v[i]);
    }
    if (shown < v.size()) out += ", ... (" + std::to_string(v.size()) + " entries)";
    out += "]";
    return out;
}

}  // namespace opnorm
