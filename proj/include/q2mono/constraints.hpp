#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "q2mono/mesh.hpp"

namespace q2mono {

/// Where the worst inequality was found: grid indices (i, j) of the knot or
/// edge center whose half-width quadruple was tested.
struct ConstraintLocation {
    std::size_t kx = 0;
    std::size_t ky = 0;
    std::string inequality;
};

/// `worst_margin` is the smallest relative slack (lhs - rhs) / lhs over
/// every inequality tested; 1 when nothing was tested.
struct ConstraintReport {
    bool pass = true;
    double worst_margin = 1.0;
    std::optional<ConstraintLocation> location;
};

inline constexpr double kConstraintTolerance = 1e-12;

/// Constants of the local constraints for a given ell: product constant
/// 7/(4 ell - 4) and ratio constant sqrt(1/(ell - 1)).
struct LocalConstants {
    double product;
    double ratio;
};

/// Throws std::invalid_argument unless 1 < ell <= 4.
LocalConstants local_constants(double ell);

/// Inequalities on one half-width quadruple, named "product_x", "product_y",
/// "ratio_x", "ratio_y". `ratio` <= 0 skips the ratio pair.
ConstraintReport check_quadruple(const LocalHalfWidths& h, double product, double ratio);

/// Local constraints at every knot and edge center:
///   h_a h_{a-1} >= c max(h_b^2, h_{b-1}^2) and the transposed form,
///   min(h_a, h_{a-1}) >= r max(h_b, h_{b-1}) and the transposed form,
/// with c, r from local_constants(ell).
ConstraintReport check_local(const TensorMesh& mesh, double ell);

/// check_local with ell = 4: constants 7/12 and sqrt(1/3).
ConstraintReport check_main(const TensorMesh& mesh);

inline constexpr double kGlobalRatioBound = 32.0 / 25.0;

/// max half-width / min half-width over both axes jointly <= 32/25.
/// Margin is 1 - ratio / (32/25).
ConstraintReport check_global_ratio(const TensorMesh& mesh);

/// Product inequalities only, constant 1/2 (the bilinear element bound).
ConstraintReport check_q1(const TensorMesh& mesh);

}  // namespace q2mono
