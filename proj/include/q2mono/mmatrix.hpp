#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "q2mono/grid_operator.hpp"

namespace q2mono {

/// Relative tolerance shared by every sign test in this module. Matrix sign
/// tests scale it by the matrix's largest |entry|, inverse sign tests by the
/// inverse's.
inline constexpr double kSignTolerance = 1e-12;

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t pivot, const std::string& what) : std::runtime_error(what), pivot_(pivot) {}
    std::size_t pivot() const { return pivot_; }

private:
    std::size_t pivot_;
};

struct InversePositivityResult {
    double min_entry = 0.0;
    std::size_t row = 0;
    std::size_t col = 0;
    double max_abs_entry = 0.0;  // ||A^-1||_max over the inspected block
    bool is_nonnegative = true;
    double condition_estimate = 1.0;  // max|u_kk| / min|u_kk| of the LU factor
};

bool is_z_matrix(const Eigen::MatrixXd& a);
bool is_z_matrix(const GridOperator& a);

/// Z-matrix with nonnegative row sums and at least one positive row sum.
/// A sufficient test only; a reducible matrix with a zero-row-sum singular
/// block can pass it.
bool sufficient_mmatrix(const Eigen::MatrixXd& a);
bool sufficient_mmatrix(const GridOperator& a);

struct MMatrixVerdict {
    bool is_mmatrix = false;
    bool singular = false;
};

/// Exact test for Z-matrices: nonsingular with a nonnegative inverse.
/// Throws std::invalid_argument if `a` is not a Z-matrix.
MMatrixVerdict exact_mmatrix_z(const Eigen::MatrixXd& a);

/// Minimum entry of A^-1 via dense LU with partial pivoting.
/// Throws SingularMatrixError when a pivot vanishes to working precision.
InversePositivityResult inverse_min_entry(const Eigen::MatrixXd& a);
InversePositivityResult inverse_min_entry(const GridOperator& a);

/// Same, restricted to the block `indices` x `indices` of A^-1. With the
/// interior indices of a grid operator this is the inverse of the interior
/// block (boundary rows are identity rows).
InversePositivityResult inverse_min_entry(const Eigen::MatrixXd& a, std::span<const std::size_t> indices);
InversePositivityResult inverse_min_entry(const GridOperator& a, std::span<const std::size_t> indices);

/// A^-1 >= 0 and all row sums of A nonnegative.
bool dmp_verdict(const Eigen::MatrixXd& a);
bool dmp_verdict(const GridOperator& a);

/// max |A * A^-1 - I|, used to gate the oracle itself.
double inverse_residual(const Eigen::MatrixXd& a);
double inverse_residual(const GridOperator& a);

}  // namespace q2mono
