#include "q2mono/lorenz.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace q2mono {

void LorenzParams::validate() const {
    const auto in_unit = [](double w) { return w > 0.0 && w <= 1.0; };
    if (!in_unit(face_weight) || !in_unit(knot_line_weight)) {
        throw std::invalid_argument("Lorenz weights eps1, eps2 must lie in (0, 1]");
    }
}

namespace {

double largest_diagonal(const GridOperator& diag) {
    double m = 0.0;
    for (const auto& e : diag.entries()) m = std::max(m, e.value);
    return m;
}

// Weight applied to the negative coupling row -> col. A coupling along an
// axis on which the row's index is even runs along a knot line.
double splitting_weight(const TensorMesh& mesh, std::size_t row, std::size_t col, const LorenzParams& params) {
    const GridIndex p = mesh.unflatten(row);
    const GridIndex q = mesh.unflatten(col);
    const std::size_t along = p.j == q.j ? p.i : p.j;
    return along % 2 == 0 ? params.knot_line_weight : params.face_weight;
}

ConditionCheck row_condition(const GridOperator& diag, const GridOperator& z_part, double scale) {
    const GridOperator b = diag + z_part;
    const auto sums = b.row_sums();
    const double tol = 1e-12 * scale;
    ConditionCheck check;
    const auto worst = std::min_element(sums.begin(), sums.end());
    check.worst_value = *worst;
    check.row = static_cast<std::size_t>(worst - sums.begin());
    const bool nonnegative = *worst >= -tol;
    const bool some_positive = std::any_of(sums.begin(), sums.end(), [tol](double s) { return s > tol; });
    check.pass = nonnegative && some_positive;
    return check;
}

}  // namespace

Decomposition decompose(const TensorMesh& mesh, const GridOperator& a, const LorenzParams& params) {
    params.validate();
    if (a.dim() != mesh.size()) {
        throw std::invalid_argument("decompose: operator of dimension " + std::to_string(a.dim()) +
                                    " does not belong to a mesh with " + std::to_string(mesh.size()) + " points");
    }
    OperatorSplit parts = split(a);

    std::vector<MatrixEntry> z_entries;
    std::vector<MatrixEntry> s_entries;
    for (const auto& e : parts.negative_offdiag.entries()) {
        // The larger share is rounded, the smaller one is the exact
        // remainder (Sterbenz), so z + s reproduces the entry bit for bit.
        const double w = splitting_weight(mesh, e.row, e.col, params);
        double z = 0.0;
        double s = 0.0;
        if (w >= 0.5) {
            z = w * e.value;
            s = e.value - z;
        } else {
            s = (1.0 - w) * e.value;
            z = e.value - s;
        }
        z_entries.push_back({e.row, e.col, z});
        s_entries.push_back({e.row, e.col, s});
    }

    std::vector<double> relaxed = parts.diagonal.diagonal_values();
    for (std::size_t j = 1; j <= mesh.ny(); ++j) {
        for (std::size_t i = 1; i <= mesh.nx(); ++i) {
            if (mesh.classify(i, j) != PointClass::Knot) continue;
            const LocalHalfWidths h = mesh.half_widths(i, j);
            relaxed[mesh.flatten(i, j)] = 8.0 / (2.0 * h.x_plus * h.x_minus) + 8.0 / (2.0 * h.y_plus * h.y_minus);
        }
    }

    return Decomposition{std::move(parts.diagonal),
                         GridOperator::diagonal(relaxed),
                         std::move(parts.positive_offdiag),
                         std::move(parts.negative_offdiag),
                         GridOperator::from_entries(a.dim(), std::move(z_entries)),
                         GridOperator::from_entries(a.dim(), std::move(s_entries)),
                         params};
}

ConditionCheck check_row_condition(const Decomposition& dec) {
    return row_condition(dec.relaxed_diagonal, dec.z_part, largest_diagonal(dec.diagonal));
}

ConditionCheck check_row_condition_strict(const TensorMesh& mesh, const GridOperator& a, const LorenzParams& params) {
    const Decomposition dec = decompose(mesh, a, params);
    return row_condition(dec.diagonal, dec.z_part, largest_diagonal(dec.diagonal));
}

GridOperator lorenz_product(const Decomposition& dec) {
    const auto relaxed = dec.relaxed_diagonal.diagonal_values();
    std::vector<MatrixEntry> entries;
    std::map<std::size_t, double> row_acc;
    for (std::size_t r = 0; r < dec.z_part.dim(); ++r) {
        row_acc.clear();
        for (const auto& z : dec.z_part.row(r)) {
            const double d = relaxed[z.col];
            if (!(d > 0.0)) {
                throw std::logic_error("lorenz_product: nonpositive relaxed diagonal at row " + std::to_string(z.col));
            }
            for (const auto& s : dec.s_part.row(z.col)) row_acc[s.col] += z.value / d * s.value;
        }
        for (const auto& [c, v] : row_acc) entries.push_back({r, c, v});
    }
    return GridOperator::from_entries(dec.z_part.dim(), std::move(entries));
}

ConditionCheck check_product_condition(const Decomposition& dec) {
    const GridOperator product = lorenz_product(dec);
    const double tol = 1e-12 * largest_diagonal(dec.diagonal);
    ConditionCheck check;
    for (const auto& e : dec.positive_offdiag.entries()) {
        const double violation = e.value - product.at(e.row, e.col);
        if (!check.worst_value || violation > *check.worst_value) {
            check.worst_value = violation;
            check.row = e.row;
            check.col = e.col;
        }
    }
    check.pass = !check.worst_value || *check.worst_value <= tol;
    return check;
}

bool check_connectivity(const GridOperator& m, const GridOperator& a, const GridVector& e) {
    if (m.dim() != a.dim() || e.size() != a.dim()) {
        throw std::invalid_argument("check_connectivity: dimensions differ");
    }
    const auto values = e.values();
    if (std::any_of(values.begin(), values.end(), [](double v) { return v < 0.0; }) ||
        std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
        throw std::invalid_argument("check_connectivity: e must be nonnegative and nonzero");
    }
    const GridVector ae = apply(a, e);
    const double tol = 1e-12 * a.max_abs() * e.max_abs();

    std::vector<std::vector<std::size_t>> predecessors(m.dim());
    for (const auto& entry : m.entries()) {
        if (entry.row != entry.col) predecessors[entry.col].push_back(entry.row);
    }
    std::vector<char> reaches_positive(a.dim(), 0);
    std::deque<std::size_t> frontier;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (ae[k] < -tol) throw std::invalid_argument("check_connectivity: A e has a negative entry");
        if (ae[k] > tol) {
            reaches_positive[k] = 1;
            frontier.push_back(k);
        }
    }
    while (!frontier.empty()) {
        const std::size_t q = frontier.front();
        frontier.pop_front();
        for (std::size_t p : predecessors[q]) {
            if (!reaches_positive[p]) {
                reaches_positive[p] = 1;
                frontier.push_back(p);
            }
        }
    }
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (std::abs(ae[k]) <= tol && !reaches_positive[k]) return false;
    }
    return true;
}

bool same_sparsity(const GridOperator& a, const GridOperator& b) {
    if (a.dim() != b.dim() || a.nnz() != b.nnz()) return false;
    return std::equal(a.entries().begin(), a.entries().end(), b.entries().begin(),
                      [](const MatrixEntry& x, const MatrixEntry& y) { return x.row == y.row && x.col == y.col; });
}

CertificateReport certify(const TensorMesh& mesh, const LorenzParams& params) {
    return certify(mesh, assemble(mesh), params);
}

CertificateReport certify(const TensorMesh& mesh, const GridOperator& a, const LorenzParams& params) {
    const Decomposition dec = decompose(mesh, a, params);
    CertificateReport report;
    report.params = params;
    report.row_condition = check_row_condition(dec);
    report.product_condition = check_product_condition(dec);
    report.sparsity_condition.pass =
        same_sparsity(dec.z_part, dec.negative_offdiag) || same_sparsity(dec.s_part, dec.negative_offdiag);
    const GridVector ones(a.dim(), 1.0);
    report.connectivity_condition.pass =
        check_connectivity(dec.z_part, a, ones) || check_connectivity(dec.s_part, a, ones);
    report.overall = report.row_condition.pass && report.product_condition.pass &&
                     report.sparsity_condition.pass && report.connectivity_condition.pass;
    return report;
}

}  // namespace q2mono
