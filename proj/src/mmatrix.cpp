#include "q2mono/mmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace q2mono {

namespace {

void require_square(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
}

struct DenseInverse {
    Eigen::MatrixXd inverse;
    double condition_estimate;
};

DenseInverse dense_inverse(const Eigen::MatrixXd& a) {
    require_square(a);
    if (a.rows() == 0) throw std::invalid_argument("matrix is empty");
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double scale = a.cwiseAbs().maxCoeff();
    const double floor =
        static_cast<double>(a.rows()) * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
    for (Eigen::Index k = 0; k < pivots.size(); ++k) {
        if (!(pivots(k) > floor)) {
            throw SingularMatrixError(static_cast<std::size_t>(k),
                                      "matrix is numerically singular at pivot " + std::to_string(k));
        }
    }
    return {lu.inverse(), pivots.maxCoeff() / pivots.minCoeff()};
}

template <typename IndexAt>
InversePositivityResult scan_block(const DenseInverse& inv, std::size_t count, IndexAt index_at) {
    InversePositivityResult result;
    result.min_entry = std::numeric_limits<double>::infinity();
    result.condition_estimate = inv.condition_estimate;
    // Column-major scan keeps the first minimum in (col, row) order.
    for (std::size_t c = 0; c < count; ++c) {
        const auto col = static_cast<Eigen::Index>(index_at(c));
        for (std::size_t r = 0; r < count; ++r) {
            const double v = inv.inverse(static_cast<Eigen::Index>(index_at(r)), col);
            result.max_abs_entry = std::max(result.max_abs_entry, std::abs(v));
            if (v < result.min_entry) {
                result.min_entry = v;
                result.row = index_at(r);
                result.col = index_at(c);
            }
        }
    }
    result.is_nonnegative = result.min_entry >= -kSignTolerance * result.max_abs_entry;
    return result;
}

bool row_sums_nonnegative(const Eigen::VectorXd& sums, double scale) {
    return (sums.array() >= -kSignTolerance * scale).all();
}

}  // namespace

bool is_z_matrix(const Eigen::MatrixXd& a) {
    require_square(a);
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (r == c ? !(a(r, c) > 0.0) : a(r, c) > 0.0) return false;
        }
    }
    return true;
}

bool is_z_matrix(const GridOperator& a) {
    const auto diag = a.diagonal_values();
    if (!std::all_of(diag.begin(), diag.end(), [](double d) { return d > 0.0; })) return false;
    return std::none_of(a.entries().begin(), a.entries().end(),
                        [](const MatrixEntry& e) { return e.row != e.col && e.value > 0.0; });
}

bool sufficient_mmatrix(const Eigen::MatrixXd& a) {
    if (!is_z_matrix(a)) return false;
    const double tol = kSignTolerance * a.cwiseAbs().maxCoeff();
    const Eigen::VectorXd sums = a.rowwise().sum();
    return (sums.array() >= -tol).all() && (sums.array() > tol).any();
}

bool sufficient_mmatrix(const GridOperator& a) {
    if (!is_z_matrix(a)) return false;
    const double tol = kSignTolerance * a.max_abs();
    const auto sums = a.row_sums();
    return std::all_of(sums.begin(), sums.end(), [tol](double s) { return s >= -tol; }) &&
           std::any_of(sums.begin(), sums.end(), [tol](double s) { return s > tol; });
}

MMatrixVerdict exact_mmatrix_z(const Eigen::MatrixXd& a) {
    if (!is_z_matrix(a)) throw std::invalid_argument("exact_mmatrix_z: matrix is not a Z-matrix");
    try {
        return {inverse_min_entry(a).is_nonnegative, false};
    } catch (const SingularMatrixError&) {
        return {false, true};
    }
}

InversePositivityResult inverse_min_entry(const Eigen::MatrixXd& a) {
    const DenseInverse inv = dense_inverse(a);
    return scan_block(inv, static_cast<std::size_t>(a.rows()), [](std::size_t k) { return k; });
}

InversePositivityResult inverse_min_entry(const GridOperator& a) { return inverse_min_entry(a.to_dense()); }

InversePositivityResult inverse_min_entry(const Eigen::MatrixXd& a, std::span<const std::size_t> indices) {
    if (indices.empty()) throw std::invalid_argument("inverse_min_entry: empty index block");
    for (std::size_t k : indices) {
        if (k >= static_cast<std::size_t>(a.rows())) throw std::invalid_argument("inverse_min_entry: index out of range");
    }
    const DenseInverse inv = dense_inverse(a);
    return scan_block(inv, indices.size(), [indices](std::size_t k) { return indices[k]; });
}

InversePositivityResult inverse_min_entry(const GridOperator& a, std::span<const std::size_t> indices) {
    return inverse_min_entry(a.to_dense(), indices);
}

bool dmp_verdict(const Eigen::MatrixXd& a) {
    require_square(a);
    if (!row_sums_nonnegative(a.rowwise().sum(), a.cwiseAbs().maxCoeff())) return false;
    return inverse_min_entry(a).is_nonnegative;
}

bool dmp_verdict(const GridOperator& a) { return dmp_verdict(a.to_dense()); }

double inverse_residual(const Eigen::MatrixXd& a) {
    const DenseInverse inv = dense_inverse(a);
    return (a * inv.inverse - Eigen::MatrixXd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff();
}

double inverse_residual(const GridOperator& a) {
    const DenseInverse inv = dense_inverse(a.to_dense());
    double worst = 0.0;
    std::vector<double> column(a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c) {
        std::fill(column.begin(), column.end(), 0.0);
        const auto x = inv.inverse.col(static_cast<Eigen::Index>(c));
        for (const auto& e : a.entries()) column[e.row] += e.value * x(static_cast<Eigen::Index>(e.col));
        column[c] -= 1.0;
        for (double v : column) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

}  // namespace q2mono
