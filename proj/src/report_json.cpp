#include "q2mono/report_json.hpp"

namespace q2mono {

namespace {

template <typename T>
nlohmann::json or_null(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const ConditionCheck& check) {
    return {{"pass", check.pass},
            {"worst_value", or_null(check.worst_value)},
            {"row", or_null(check.row)},
            {"col", or_null(check.col)}};
}

nlohmann::json to_json(const CertificateReport& report) {
    return {{"row_condition", to_json(report.row_condition)},
            {"product_condition", to_json(report.product_condition)},
            {"sparsity_condition", to_json(report.sparsity_condition)},
            {"connectivity_condition", to_json(report.connectivity_condition)},
            {"overall", report.overall},
            {"params",
             {{"eps1", report.params.face_weight},
              {"eps2", report.params.knot_line_weight},
              {"ell", report.params.ell()}}}};
}

nlohmann::json to_json(const ConstraintReport& report) {
    nlohmann::json location = nullptr;
    if (report.location) {
        location = {{"kx", report.location->kx}, {"ky", report.location->ky}, {"inequality", report.location->inequality}};
    }
    return {{"pass", report.pass}, {"worst_margin", report.worst_margin}, {"location", location}};
}

nlohmann::json to_json(const InversePositivityResult& result) {
    return {{"min_entry", result.min_entry},
            {"row", result.row},
            {"col", result.col},
            {"is_nonnegative", result.is_nonnegative},
            {"cond_est", result.condition_estimate}};
}

}  // namespace q2mono
