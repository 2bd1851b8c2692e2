#include "q2mono/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace q2mono {

namespace {

void record(ConstraintReport& report, double lhs, double rhs, const char* name) {
    const double margin = (lhs - rhs) / lhs;
    if (!report.location || margin < report.worst_margin) {
        report.worst_margin = margin;
        report.location = ConstraintLocation{0, 0, name};
    }
}

ConstraintReport scan_mesh(const TensorMesh& mesh, double product, double ratio) {
    ConstraintReport report;
    for (std::size_t j = 1; j <= mesh.ny(); ++j) {
        for (std::size_t i = 1; i <= mesh.nx(); ++i) {
            if (mesh.classify(i, j) == PointClass::CellCenter) continue;
            ConstraintReport local = check_quadruple(mesh.half_widths(i, j), product, ratio);
            if (local.location && (!report.location || local.worst_margin < report.worst_margin)) {
                report.worst_margin = local.worst_margin;
                report.location = ConstraintLocation{i, j, local.location->inequality};
            }
        }
    }
    report.pass = report.worst_margin >= -kConstraintTolerance;
    return report;
}

}  // namespace

LocalConstants local_constants(double ell) {
    if (!(ell > 1.0 && ell <= 4.0)) throw std::invalid_argument("ell must lie in (1, 4]");
    return {7.0 / (4.0 * ell - 4.0), std::sqrt(1.0 / (ell - 1.0))};
}

ConstraintReport check_quadruple(const LocalHalfWidths& h, double product, double ratio) {
    ConstraintReport report;
    const double max_x = std::max(h.x_plus, h.x_minus);
    const double max_y = std::max(h.y_plus, h.y_minus);
    record(report, h.x_plus * h.x_minus, product * max_y * max_y, "product_x");
    record(report, h.y_plus * h.y_minus, product * max_x * max_x, "product_y");
    if (ratio > 0.0) {
        record(report, std::min(h.x_plus, h.x_minus), ratio * max_y, "ratio_x");
        record(report, std::min(h.y_plus, h.y_minus), ratio * max_x, "ratio_y");
    }
    report.pass = report.worst_margin >= -kConstraintTolerance;
    return report;
}

ConstraintReport check_local(const TensorMesh& mesh, double ell) {
    const LocalConstants c = local_constants(ell);
    return scan_mesh(mesh, c.product, c.ratio);
}

ConstraintReport check_main(const TensorMesh& mesh) { return check_local(mesh, 4.0); }

ConstraintReport check_global_ratio(const TensorMesh& mesh) {
    ConstraintReport report;
    const double ratio = mesh.max_half_width() / mesh.min_half_width();
    report.worst_margin = 1.0 - ratio / kGlobalRatioBound;
    report.pass = report.worst_margin >= -kConstraintTolerance;
    return report;
}

ConstraintReport check_q1(const TensorMesh& mesh) { return scan_mesh(mesh, 0.5, 0.0); }

}  // namespace q2mono
