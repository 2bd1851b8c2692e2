#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "q2mono/mesh.hpp"

namespace q2mono {

struct MatrixEntry {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Values at every grid point (boundary included), flattened like TensorMesh.
class GridVector {
public:
    GridVector() = default;
    explicit GridVector(std::size_t size, double fill = 0.0) : values_(size, fill) {}
    explicit GridVector(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double max_abs() const;

private:
    std::vector<double> values_;
};

/// Square sparse matrix over grid points, stored as (row, col, value)
/// triplets sorted by row then column with no duplicate positions. Explicit
/// zeros are never stored.
class GridOperator {
public:
    explicit GridOperator(std::size_t dim = 0);

    /// Sorts and merges duplicate positions by summation in input order;
    /// entries that merge to exactly zero are dropped.
    static GridOperator from_entries(std::size_t dim, std::vector<MatrixEntry> entries);
    static GridOperator identity(std::size_t dim);
    static GridOperator diagonal(std::span<const double> diag);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return entries_.size(); }
    std::span<const MatrixEntry> entries() const { return entries_; }
    std::span<const MatrixEntry> row(std::size_t r) const;

    /// Zero when the position is not stored.
    double at(std::size_t r, std::size_t c) const;
    std::vector<double> diagonal_values() const;
    std::vector<double> row_sums() const;
    double max_abs() const;

    Eigen::MatrixXd to_dense() const;

private:
    std::size_t dim_;
    std::vector<MatrixEntry> entries_;
    std::vector<std::size_t> row_start_;  // dim_+1 offsets into entries_
};

GridOperator operator+(const GridOperator& a, const GridOperator& b);

/// Matrix of the Q2 spectral element Laplacian on the whole grid: interior
/// rows carry the finite-difference form of the scheme, boundary rows are
/// identity rows (u = g).
GridOperator assemble(const TensorMesh& mesh);

struct OperatorSplit {
    GridOperator diagonal;
    GridOperator positive_offdiag;
    GridOperator negative_offdiag;
};

/// A = diagonal + positive_offdiag + negative_offdiag, entry by entry.
OperatorSplit split(const GridOperator& a);

/// Throws std::invalid_argument on dimension mismatch.
GridVector apply(const GridOperator& a, const GridVector& v);

/// Grid point samples of f(x, y).
template <typename F>
GridVector sample(const TensorMesh& mesh, F&& f) {
    GridVector v(mesh.size());
    for (std::size_t j = 0; j < mesh.points_y(); ++j) {
        for (std::size_t i = 0; i < mesh.points_x(); ++i) {
            v[mesh.flatten(i, j)] = f(mesh.x(i), mesh.y(j));
        }
    }
    return v;
}

/// Flattened indices of the interior grid points, ascending.
std::vector<std::size_t> interior_indices(const TensorMesh& mesh);

/// Matrix Market coordinate format, 1-based, 17 significant digits.
void write_matrix_market(std::ostream& out, const GridOperator& a);
GridOperator read_matrix_market(std::istream& in);

}  // namespace q2mono
