#pragma once

#include "json.hpp"

#include "q2mono/constraints.hpp"
#include "q2mono/lorenz.hpp"
#include "q2mono/mmatrix.hpp"

namespace q2mono {

// Absent optionals serialize as null so every key is always present.
nlohmann::json to_json(const ConditionCheck& check);
nlohmann::json to_json(const CertificateReport& report);
nlohmann::json to_json(const ConstraintReport& report);
nlohmann::json to_json(const InversePositivityResult& result);

}  // namespace q2mono
