#include "q2mono/grid_operator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace q2mono {

double GridVector::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

GridOperator::GridOperator(std::size_t dim) : dim_(dim), row_start_(dim + 1, 0) {}

GridOperator GridOperator::from_entries(std::size_t dim, std::vector<MatrixEntry> entries) {
    for (const auto& e : entries) {
        if (e.row >= dim || e.col >= dim) {
            throw std::invalid_argument("matrix entry outside a " + std::to_string(dim) + "x" + std::to_string(dim) +
                                        " operator");
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    GridOperator op(dim);
    op.entries_.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size();) {
        MatrixEntry merged = entries[k++];
        while (k < entries.size() && entries[k].row == merged.row && entries[k].col == merged.col) {
            merged.value += entries[k++].value;
        }
        if (merged.value != 0.0) op.entries_.push_back(merged);
    }
    for (const auto& e : op.entries_) ++op.row_start_[e.row + 1];
    for (std::size_t r = 0; r < dim; ++r) op.row_start_[r + 1] += op.row_start_[r];
    return op;
}

GridOperator GridOperator::identity(std::size_t dim) {
    std::vector<double> ones(dim, 1.0);
    return diagonal(ones);
}

GridOperator GridOperator::diagonal(std::span<const double> diag) {
    std::vector<MatrixEntry> entries;
    entries.reserve(diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) entries.push_back({k, k, diag[k]});
    return from_entries(diag.size(), std::move(entries));
}

std::span<const MatrixEntry> GridOperator::row(std::size_t r) const {
    if (r >= dim_) throw std::out_of_range("row index out of range");
    return std::span<const MatrixEntry>(entries_).subspan(row_start_[r], row_start_[r + 1] - row_start_[r]);
}

double GridOperator::at(std::size_t r, std::size_t c) const {
    const auto entries = row(r);
    const auto it = std::lower_bound(entries.begin(), entries.end(), c,
                                     [](const MatrixEntry& e, std::size_t col) { return e.col < col; });
    return it != entries.end() && it->col == c ? it->value : 0.0;
}

std::vector<double> GridOperator::diagonal_values() const {
    std::vector<double> d(dim_, 0.0);
    for (const auto& e : entries_) {
        if (e.row == e.col) d[e.row] = e.value;
    }
    return d;
}

std::vector<double> GridOperator::row_sums() const {
    std::vector<double> s(dim_, 0.0);
    for (const auto& e : entries_) s[e.row] += e.value;
    return s;
}

double GridOperator::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
    return m;
}

Eigen::MatrixXd GridOperator::to_dense() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : entries_) {
        dense(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
    }
    return dense;
}

GridOperator operator+(const GridOperator& a, const GridOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator dimensions differ");
    std::vector<MatrixEntry> entries(a.entries().begin(), a.entries().end());
    entries.insert(entries.end(), b.entries().begin(), b.entries().end());
    return GridOperator::from_entries(a.dim(), std::move(entries));
}

namespace {

// Adds one axis' part of an interior row. `stride` is the flat-index step
// along the axis; `cell_interior` is true at odd indices (midpoint of a cell).
void add_axis_terms(std::vector<MatrixEntry>& out, std::size_t row, std::size_t stride, bool cell_interior,
                    double h_plus, double h_minus) {
    if (cell_interior) {
        const double h2 = h_plus * h_plus;
        out.push_back({row, row, 2.0 / h2});
        out.push_back({row, row + stride, -1.0 / h2});
        out.push_back({row, row - stride, -1.0 / h2});
        return;
    }
    const double sum = h_plus + h_minus;
    out.push_back({row, row, 7.0 / (2.0 * h_plus * h_minus)});
    out.push_back({row, row + stride, -4.0 / (h_plus * sum)});
    out.push_back({row, row - stride, -4.0 / (h_minus * sum)});
    out.push_back({row, row + 2 * stride, 1.0 / (2.0 * h_plus * sum)});
    out.push_back({row, row - 2 * stride, 1.0 / (2.0 * h_minus * sum)});
}

}  // namespace

GridOperator assemble(const TensorMesh& mesh) {
    std::vector<MatrixEntry> entries;
    entries.reserve(mesh.size() * 9);
    const std::size_t stride_y = mesh.points_x();
    for (std::size_t j = 0; j < mesh.points_y(); ++j) {
        for (std::size_t i = 0; i < mesh.points_x(); ++i) {
            const std::size_t row = mesh.flatten(i, j);
            if (mesh.is_boundary(i, j)) {
                entries.push_back({row, row, 1.0});
                continue;
            }
            const LocalHalfWidths h = mesh.half_widths(i, j);
            add_axis_terms(entries, row, 1, i % 2 == 1, h.x_plus, h.x_minus);
            add_axis_terms(entries, row, stride_y, j % 2 == 1, h.y_plus, h.y_minus);
        }
    }
    return GridOperator::from_entries(mesh.size(), std::move(entries));
}

OperatorSplit split(const GridOperator& a) {
    std::vector<MatrixEntry> diag;
    std::vector<MatrixEntry> plus;
    std::vector<MatrixEntry> minus;
    for (const auto& e : a.entries()) {
        if (e.row == e.col) {
            diag.push_back(e);
        } else if (e.value > 0.0) {
            plus.push_back(e);
        } else {
            minus.push_back(e);
        }
    }
    return {GridOperator::from_entries(a.dim(), std::move(diag)),
            GridOperator::from_entries(a.dim(), std::move(plus)),
            GridOperator::from_entries(a.dim(), std::move(minus))};
}

GridVector apply(const GridOperator& a, const GridVector& v) {
    if (a.dim() != v.size()) {
        throw std::invalid_argument("apply: operator dimension " + std::to_string(a.dim()) +
                                    " does not match vector length " + std::to_string(v.size()));
    }
    GridVector out(a.dim());
    for (const auto& e : a.entries()) out[e.row] += e.value * v[e.col];
    return out;
}

std::vector<std::size_t> interior_indices(const TensorMesh& mesh) {
    std::vector<std::size_t> idx;
    idx.reserve(mesh.nx() * mesh.ny());
    for (std::size_t j = 1; j <= mesh.ny(); ++j) {
        for (std::size_t i = 1; i <= mesh.nx(); ++i) idx.push_back(mesh.flatten(i, j));
    }
    return idx;
}

void write_matrix_market(std::ostream& out, const GridOperator& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.dim() << ' ' << a.dim() << ' ' << a.nnz() << '\n';
    const auto old_precision = out.precision(17);
    for (const auto& e : a.entries()) {
        out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
    }
    out.precision(old_precision);
}

GridOperator read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket matrix coordinate real general", 0) != 0) {
        throw std::invalid_argument("not a Matrix Market coordinate real general file");
    }
    while (std::getline(in, line) && !line.empty() && line[0] == '%') {
    }
    std::istringstream header(line);
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t nnz = 0;
    if (!(header >> rows >> cols >> nnz) || rows != cols) {
        throw std::invalid_argument("Matrix Market size line must describe a square matrix");
    }
    std::vector<MatrixEntry> entries;
    entries.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t r = 0;
        std::size_t c = 0;
        double v = 0.0;
        if (!(in >> r >> c >> v) || r == 0 || c == 0) {
            throw std::invalid_argument("truncated or malformed Matrix Market entry");
        }
        entries.push_back({r - 1, c - 1, v});
    }
    return GridOperator::from_entries(rows, std::move(entries));
}

}  // namespace q2mono
