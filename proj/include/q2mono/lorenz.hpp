#pragma once

#include <cstddef>
#include <optional>

#include "q2mono/grid_operator.hpp"
#include "q2mono/mesh.hpp"

namespace q2mono {

/// Weights of the splitting A_a^- = A^z + A^s. `face_weight` scales the
/// couplings to the two neighbours inside the same cell (the -1/h^2 terms);
/// `knot_line_weight` scales the distance-one couplings along a knot line
/// (the -4/(h(h+h')) terms).
struct LorenzParams {
    double face_weight = 1.0 / 1024.0;  // epsilon_1
    double knot_line_weight = 1.0;      // epsilon_2

    /// 4 * eps2 * (1 - eps1); larger values give weaker mesh constraints.
    double ell() const { return 4.0 * knot_line_weight * (1.0 - face_weight); }

    /// Throws std::invalid_argument unless both weights lie in (0, 1].
    void validate() const;
};

struct Decomposition {
    GridOperator diagonal;          // A_d
    GridOperator relaxed_diagonal;  // A_{d*}: A_d with interior-knot entries raised by 8/7
    GridOperator positive_offdiag;  // A_a^+
    GridOperator negative_offdiag;  // A_a^-
    GridOperator z_part;            // A^z
    GridOperator s_part;            // A^s = A_a^- - A^z
    LorenzParams params;
};

/// Throws std::invalid_argument when the operator does not match the mesh
/// or the parameters are out of range.
Decomposition decompose(const TensorMesh& mesh, const GridOperator& a, const LorenzParams& params);

/// Outcome of one hypothesis check. `worst_value` and the location are empty
/// when the check has nothing to measure (e.g. no positive off-diagonals).
struct ConditionCheck {
    bool pass = true;
    std::optional<double> worst_value;
    std::optional<std::size_t> row;
    std::optional<std::size_t> col;
};

/// (A_{d*} + A^z) 1 >= 0 with at least one positive entry; reports the
/// smallest row sum. Tolerance is 1e-12 times the largest diagonal of A_d.
ConditionCheck check_row_condition(const Decomposition& dec);

/// Same test with A_d in place of A_{d*}.
ConditionCheck check_row_condition_strict(const TensorMesh& mesh, const GridOperator& a, const LorenzParams& params);

/// A^z * A_{d*}^-1 * A^s, formed explicitly.
GridOperator lorenz_product(const Decomposition& dec);

/// A_a^+ <= A^z A_{d*}^-1 A^s at every positive off-diagonal; reports the
/// largest A_a^+ - product entry and where it occurs.
ConditionCheck check_product_condition(const Decomposition& dec);

/// True when some directed path of nonzero off-diagonal entries of `m`
/// leads from every index with (A e)_i = 0 to an index with (A e)_i > 0.
/// Throws std::invalid_argument unless e >= 0, e != 0 and A e >= 0.
bool check_connectivity(const GridOperator& m, const GridOperator& a, const GridVector& e);

bool same_sparsity(const GridOperator& a, const GridOperator& b);

struct CertificateReport {
    ConditionCheck row_condition;
    ConditionCheck product_condition;
    ConditionCheck sparsity_condition;
    ConditionCheck connectivity_condition;
    bool overall = false;
    LorenzParams params;
};

/// Assembles, decomposes and checks every hypothesis of the relaxed Lorenz
/// condition with e = 1. An overall pass certifies A^-1 >= 0.
CertificateReport certify(const TensorMesh& mesh, const LorenzParams& params = {});
CertificateReport certify(const TensorMesh& mesh, const GridOperator& a, const LorenzParams& params);

}  // namespace q2mono
