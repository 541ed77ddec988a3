#pragma once

#include <string>

#include "json.hpp"
#include "opnorm/analysis.hpp"
#include "opnorm/banach_embed.hpp"
#include "opnorm/matrix.hpp"
#include "opnorm/reports.hpp"

namespace opnorm {

// Matrix interchange format:
//   {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
// Doubles round-trip bit-exactly; non-finite values are rejected on both
// directions. Parse errors throw std::invalid_argument naming the bad field
// or entry index.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

// Complex vectors use the same [re, im] pair encoding.
nlohmann::json cvec_to_json(const CVec& v);
CVec cvec_from_json(const nlohmann::json& j);

nlohmann::json json_of(const AxiomReport& r);
nlohmann::json json_of(const CheckReport& r);
nlohmann::json json_of(const ContinuityTable& t);
nlohmann::json json_of(const EmbeddingReport& r);

}  // namespace opnorm
