#include "opnorm/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace opnorm {

namespace {

using nlohmann::json;

json pair_of(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx pair_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument(where + ": expected [re, im]");
    const double re = j[0].get<double>(), im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument(where + ": non-finite value");
    return {re, im};
}

std::size_t size_field(const json& j, const char* name) {
    if (!j.contains(name))
        throw std::invalid_argument(std::string("matrix: missing field '") + name + "'");
    const json& f = j.at(name);
    // Accepts either integer representation; JSON built in code stores
    // small literals as signed.
    const bool ok = f.is_number_integer() &&
                    (f.is_number_unsigned() || f.get<std::int64_t>() >= 0);
    if (!ok)
        throw std::invalid_argument(std::string("matrix: field '") + name +
                                    "' must be a nonnegative integer");
    return f.get<std::size_t>();
}

}  // namespace

nlohmann::json matrix_to_json(const Matrix& m) {
    if (!m.all_finite())
        throw std::invalid_argument("matrix_to_json: non-finite entries");
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(pair_of(m(i, j)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("matrix: expected an object");
    const std::size_t rows = size_field(j, "rows");
    const std::size_t cols = size_field(j, "cols");
    if (!j.contains("entries") || !j.at("entries").is_array())
        throw std::invalid_argument("matrix: missing or non-array field 'entries'");
    const json& entries = j.at("entries");
    if (entries.size() != rows * cols)
        throw std::invalid_argument("matrix: expected " + std::to_string(rows * cols) +
                                    " entries, got " + std::to_string(entries.size()));
    Matrix m(rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k)
        m(k / cols, k % cols) = pair_from(entries[k], "entries[" + std::to_string(k) + "]");
    return m;
}

nlohmann::json cvec_to_json(const CVec& v) {
    if (!vec_all_finite(v))
        throw std::invalid_argument("cvec_to_json: non-finite entries");
    json out = json::array();
    for (const cplx& z : v) out.push_back(pair_of(z));
    return out;
}

CVec cvec_from_json(const nlohmann::json& j) {
    if (!j.is_array())
        throw std::invalid_argument("vector: expected an array of [re, im] pairs");
    CVec v(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        v[k] = pair_from(j[k], "vector[" + std::to_string(k) + "]");
    return v;
}

nlohmann::json json_of(const AxiomReport& r) {
    json checks = json::array();
    for (const AxiomCheck& c : r.checks)
        checks.push_back(json{{"axiom", c.axiom},
                              {"passed", c.passed},
                              {"samples", c.samples},
                              {"worst_margin", c.worst_margin},
                              {"witness", c.witness},
                              {"note", c.note}});
    return json{{"passed", r.all_passed()},
                {"sample_count", r.sample_count},
                {"seed", r.seed},
                {"tol", r.tol},
                {"checks", std::move(checks)}};
}

nlohmann::json json_of(const CheckReport& r) {
    return json{{"name", r.name},       {"passed", r.passed}, {"samples", r.samples},
                {"witness", r.witness}, {"notes", r.notes},   {"metrics", r.metrics}};
}

nlohmann::json json_of(const ContinuityTable& t) {
    return json{{"radii", t.radii},
                {"moduli", t.moduli},
                {"samples_per_radius", t.samples_per_radius}};
}

nlohmann::json json_of(const EmbeddingReport& r) {
    const char* g = r.guarantee == DefectGuarantee::Exact     ? "exact"
                    : r.guarantee == DefectGuarantee::Bounded ? "bounded"
                                                              : "none";
    return json{{"samples", r.samples},
                {"max_defect", r.max_defect},
                {"min_defect", r.min_defect},
                {"defect_coeff", r.defect_coeff},
                {"guarantee", g},
                {"one_sided_ok", r.one_sided_ok},
                {"bound_ok", r.bound_ok}};
}

}  // namespace opnorm
