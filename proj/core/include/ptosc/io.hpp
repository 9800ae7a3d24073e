#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptosc/coperator.hpp"
#include "ptosc/models.hpp"
#include "ptosc/oscillate.hpp"
#include "ptosc/verify.hpp"

namespace ptosc {

using Json = nlohmann::json;

// Complex values serialize as {"re": x, "im": y}.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json spec_to_json(const ModelSpec& spec);
// Throws ParameterError on unknown models, unknown keys or malformed values.
ModelSpec spec_from_json(const Json& j);

Json report_to_json(const CheckReport& report);
std::string to_json_lines(const std::vector<CheckReport>& reports);

Json table_to_json(const TransitionTable& table);
Json c_operator_to_json(const COperator& c);
Json eigensystem_to_json(const EigenSystem& es);

}  // namespace ptosc
